"""Classical adaptive quadrature plus the pseudo-derivative, the three
pseudo-integral flavors, seminorms and the seminorm-connection check.

All integrals reduce to a classical integral in generator image space, where
adaptive Simpson with local error control is applied; the generator's
nonlinear image map only enters through the final pullback.  The weighted
flavor integrates against the Stieltjes density ``|g'|`` of the generator:
for increasing generators this is exactly ``g'``, for decreasing ones the
absolute value keeps the image integral non-negative and hence representable
(the signed weight would push every weighted integral out of image space).

Conventions:

* ``f`` arguments are raw-space callbacks mapping the integration variable
  into the generator domain;
* weighted flavors additionally require the integration interval itself to
  lie inside the domain, because the weight evaluates ``g'`` there;
* derivative steps default to ``cbrt(machine eps) * max(1, |x|)``.
"""

from __future__ import annotations

import enum
import math
import sys
from dataclasses import dataclass
from typing import Callable

from .algebra import PseudoValue, pseudo_abs, pseudo_pow
from .errors import (
    DepthExceeded,
    DivisionByZeroG,
    DomainError,
    NegativeWeight,
    NumericError,
    ParameterError,
    RangeError,
)
from .funcspec import EvalError
from .generator import PseudoContext, eval_g, eval_g_inv, g_prime_at, guard_image

__all__ = [
    "QuadratureConfig",
    "QuadResult",
    "DEFAULT_QUADRATURE",
    "quad",
    "quad_full",
    "SeminormFlavor",
    "SeminormParams",
    "stieltjes_weight",
    "integral_image_full",
    "g_integral",
    "oplus_integral",
    "gh_integral",
    "g_derivative",
    "oplus_derivative",
    "default_fd_step",
    "seminorm",
    "seminorm_image",
    "classical_weighted_norm",
    "ConnectionReport",
    "check_seminorm_connection",
]

_FD_SCALE = sys.float_info.epsilon ** (1.0 / 3.0)

_POINT_FAILURES = (EvalError, OverflowError, ZeroDivisionError, ValueError)


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerance and recursion limits for the classical quadrature."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_depth: int = 50

    def __post_init__(self) -> None:
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ParameterError("quadrature tolerances must be positive")
        if self.max_depth < 1:
            raise ParameterError("max_depth must be >= 1")


DEFAULT_QUADRATURE = QuadratureConfig()


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    evals: int


class _Counter:
    __slots__ = ("err", "evals")

    def __init__(self) -> None:
        self.err = 0.0
        self.evals = 0


def _eval_point(f: Callable[[float], float], x: float, acc: _Counter) -> float:
    acc.evals += 1
    try:
        v = float(f(x))
    except _POINT_FAILURES as exc:
        raise NumericError(f"integrand failed at {x!r}: {exc}") from exc
    if math.isnan(v):
        raise NumericError(f"integrand is NaN at {x!r}")
    if math.isinf(v):
        raise NumericError(f"integrand is infinite at {x!r}")
    return v


def _eval_endpoint(f, x: float, inward: float, acc: _Counter) -> float:
    """Endpoint singularities are handled by a tiny inward offset."""
    acc.evals += 1
    try:
        v = float(f(x))
        if math.isfinite(v):
            return v
    except _POINT_FAILURES:
        pass
    return _eval_point(f, x + inward, acc)


def _simpson(fa: float, fm: float, fb: float, a: float, b: float) -> float:
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def quad_full(f: Callable[[float], float], a: float, b: float,
              cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> QuadResult:
    """Adaptive Simpson integration of ``f`` over ``[a, b]``.

    Deterministic for fixed inputs; the returned error estimate accumulates
    the accepted Richardson corrections.  Raises :class:`DepthExceeded` when
    an interval still disagrees at the recursion cap.
    """
    if math.isnan(a) or math.isnan(b):
        raise ParameterError("integration bounds must not be NaN")
    if math.isinf(a) or math.isinf(b):
        raise ParameterError("unbounded intervals are out of scope")
    if a > b:
        raise ParameterError(f"need a <= b, got [{a}, {b}]")
    if a == b:
        return QuadResult(0.0, 0.0, 0)

    acc = _Counter()
    offset = max(1e-12 * (b - a), 1e-300)
    fa = _eval_endpoint(f, a, offset, acc)
    fb = _eval_endpoint(f, b, -offset, acc)
    m = 0.5 * (a + b)
    fm = _eval_point(f, m, acc)
    whole = _simpson(fa, fm, fb, a, b)
    # scale estimate from one refinement so rel_tol has something to hold on to
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm = _eval_point(f, lm, acc)
    frm = _eval_point(f, rm, acc)
    refined = _simpson(fa, flm, fm, a, m) + _simpson(fm, frm, fb, m, b)
    eps = max(cfg.abs_tol, cfg.rel_tol * max(abs(whole), abs(refined)))

    def adapt(x0, f0, x1, f1, x2, f2, est, tol, depth):
        xl, xr = 0.5 * (x0 + x1), 0.5 * (x1 + x2)
        fl = _eval_point(f, xl, acc)
        fr = _eval_point(f, xr, acc)
        left = _simpson(f0, fl, f1, x0, x1)
        right = _simpson(f1, fr, f2, x1, x2)
        delta = left + right - est
        if abs(delta) <= 15.0 * tol:
            acc.err += abs(delta) / 15.0
            return left + right + delta / 15.0
        if depth >= cfg.max_depth:
            raise DepthExceeded(
                f"adaptive Simpson did not converge on [{x0}, {x2}] at depth {depth}"
            )
        return adapt(x0, f0, xl, fl, x1, f1, left, 0.5 * tol, depth + 1) + adapt(
            x1, f1, xr, fr, x2, f2, right, 0.5 * tol, depth + 1
        )

    value = adapt(a, fa, m, fm, b, fb, whole, eps, 1)
    return QuadResult(value, acc.err, acc.evals)


def quad(f: Callable[[float], float], a: float, b: float,
         cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    return quad_full(f, a, b, cfg).value


# ---------------------------------------------------------------------------
# Pseudo-integrals
# ---------------------------------------------------------------------------


def stieltjes_weight(ctx: PseudoContext, x: float) -> float:
    """Density ``|g'(x)|`` of the measure the generator induces.

    Coincides with ``g'`` for increasing generators; taking the magnitude for
    decreasing ones keeps weighted image integrals inside ``[0, inf)``.
    """
    return abs(g_prime_at(ctx, x))


def _image_of(ctx: PseudoContext, f: Callable[[float], float]) -> Callable[[float], float]:
    def phi(t: float) -> float:
        return eval_g(ctx, f(t))

    return phi


def integral_image_full(ctx: PseudoContext, f: Callable[[float], float], a: float, b: float,
                        flavor: str = "g", h: Callable[[float], float] | None = None,
                        cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> QuadResult:
    """Image-space integral of ``f`` with full quadrature diagnostics.

    ``flavor`` selects the weight: ``"g"`` the Stieltjes density ``|g'|``,
    ``"oplus"`` unit weight, ``"gh"`` the caller-supplied non-negative ``h``.
    """
    phi = _image_of(ctx, f)
    if flavor == "oplus":
        integrand = phi
    elif flavor == "g":
        integrand = lambda t: phi(t) * stieltjes_weight(ctx, t)
    elif flavor == "gh":
        if h is None:
            raise ParameterError("flavor 'gh' needs a weight function h")

        def integrand(t: float) -> float:
            w = float(h(t))
            if w < 0.0:
                if w < -ctx.eps_cmp:
                    raise NegativeWeight(f"weight {w!r} at {t!r} is negative")
                w = 0.0
            return phi(t) * w

    else:
        raise ParameterError(f"unknown integral flavor {flavor!r}")
    return quad_full(integrand, a, b, cfg)


def g_integral(ctx: PseudoContext, f: Callable[[float], float], a: float, b: float,
               cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> PseudoValue:
    """Weighted pseudo-integral: ``g^{-1}( int_a^b g(f(x)) |g'(x)| dx )``."""
    img = integral_image_full(ctx, f, a, b, "g", cfg=cfg).value
    return eval_g_inv(ctx, guard_image(img, "weighted integral image"))


def oplus_integral(ctx: PseudoContext, f: Callable[[float], float], a: float, b: float,
                   cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> PseudoValue:
    """Plain pseudo-integral: ``g^{-1}( int_a^b g(f(x)) dx )``."""
    img = integral_image_full(ctx, f, a, b, "oplus", cfg=cfg).value
    return eval_g_inv(ctx, guard_image(img, "integral image"))


def gh_integral(ctx: PseudoContext, f: Callable[[float], float], h: Callable[[float], float],
                a: float, b: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> PseudoValue:
    """Generalized integral with a caller-supplied non-negative weight ``h``.

    ``h == 1`` recovers :func:`oplus_integral`; ``h == |g'|`` recovers
    :func:`g_integral`.  Sampled negative weights raise
    :class:`NegativeWeight`.
    """
    img = integral_image_full(ctx, f, a, b, "gh", h=h, cfg=cfg).value
    return eval_g_inv(ctx, guard_image(img, "weighted integral image"))


# ---------------------------------------------------------------------------
# Pseudo-derivatives
# ---------------------------------------------------------------------------


def default_fd_step(x: float) -> float:
    return _FD_SCALE * max(1.0, abs(x))


def _image_slope(ctx: PseudoContext, f, x: float, step: float | None) -> float:
    h = default_fd_step(x) if step is None else float(step)
    if h <= 0:
        raise ParameterError("finite-difference step must be positive")
    phi = _image_of(ctx, f)
    return (phi(x + h) - phi(x - h)) / (2.0 * h)


def g_derivative(ctx: PseudoContext, f: Callable[[float], float], x: float,
                 step: float | None = None) -> PseudoValue:
    """Pseudo-derivative ``g^{-1}( (g o f)'(x) / g'(x) )`` via central
    differences on the image of ``f``.

    A negative image (``f`` pseudo-decreasing at ``x``) has no representable
    derivative and raises :class:`RangeError`; a vanishing ``g'(x)`` raises
    :class:`DomainError` (the generator assumption excludes it).
    """
    gp = g_prime_at(ctx, x)
    if abs(gp) < 1e-300:
        raise DomainError(f"g' vanishes at {x!r}; pseudo-derivative undefined")
    img = _image_slope(ctx, f, x, step) / gp
    if img < 0.0:
        if img < -ctx.eps_cmp:
            raise RangeError(f"derivative image {img!r} is negative at {x!r}")
        img = 0.0
    return eval_g_inv(ctx, guard_image(img, "derivative image"))


def oplus_derivative(ctx: PseudoContext, f: Callable[[float], float], x: float,
                     step: float | None = None) -> PseudoValue:
    """Plain pseudo-derivative ``g^{-1}( (g o f)'(x) )``."""
    img = _image_slope(ctx, f, x, step)
    if img < 0.0:
        if img < -ctx.eps_cmp:
            raise RangeError(f"derivative image {img!r} is negative at {x!r}")
        img = 0.0
    return eval_g_inv(ctx, guard_image(img, "derivative image"))


# ---------------------------------------------------------------------------
# Seminorms
# ---------------------------------------------------------------------------


class SeminormFlavor(enum.Enum):
    PSEUDO_IMAGE_WEIGHTED = "weighted"   # integral with the |g'| density
    PSEUDO_PLAIN = "plain"               # integral with unit weight


@dataclass(frozen=True)
class SeminormParams:
    p: float
    a: float
    b: float
    flavor: SeminormFlavor = SeminormFlavor.PSEUDO_IMAGE_WEIGHTED

    def __post_init__(self) -> None:
        if self.p == 0.0 or math.isnan(self.p):
            raise ParameterError("seminorm exponent p must be nonzero")
        if not self.a < self.b:
            raise ParameterError(f"empty seminorm interval [{self.a}, {self.b}]")


def seminorm(ctx: PseudoContext, f: Callable[[float], float], params: SeminormParams,
             cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> PseudoValue:
    """Pseudo-seminorm: the ``1/p`` pseudo-power of the chosen integral of the
    pointwise ``p`` pseudo-power of ``|f|``.

    Composed structurally from :func:`pseudo_pow`, :func:`pseudo_abs` and the
    integral flavor, so it exercises the same operations user code would.
    For ``p < 0`` the image of ``f`` must stay bounded away from zero.
    """
    p = params.p

    def powered(t: float) -> float:
        try:
            return pseudo_pow(ctx, pseudo_abs(ctx, f(t)), p)
        except DivisionByZeroG as exc:
            raise RangeError(f"vanishing image with negative exponent p={p!r} at {t!r}") from exc

    if params.flavor is SeminormFlavor.PSEUDO_IMAGE_WEIGHTED:
        total = g_integral(ctx, powered, params.a, params.b, cfg)
    else:
        total = oplus_integral(ctx, powered, params.a, params.b, cfg)
    if p < 0.0 and eval_g(ctx, total) <= ctx.eps_cmp:
        raise RangeError("integral image vanished; cannot apply negative 1/p power")
    return pseudo_pow(ctx, total, 1.0 / p)


def seminorm_image(ctx: PseudoContext, f: Callable[[float], float], params: SeminormParams,
                   cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Image-space value of :func:`seminorm` (the authoritative comparison space)."""
    return eval_g(ctx, seminorm(ctx, f, params, cfg))


def classical_weighted_norm(ctx: PseudoContext, F: Callable[[float], float], p: float,
                            a: float, b: float,
                            cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Classical weighted expression ``( int |F|^p |g'| dx )^(1/p)`` as a
    plain real; a norm only when ``p > 1`` and the weight is positive."""
    if p == 0.0 or math.isnan(p):
        raise ParameterError("exponent p must be nonzero")

    def integrand(t: float) -> float:
        return abs(float(F(t))) ** p * stieltjes_weight(ctx, t)

    total = quad(integrand, a, b, cfg)
    if total < 0.0:
        raise RangeError(f"weighted integral {total!r} is negative")
    if total == 0.0 and p < 0.0:
        raise RangeError("vanishing integral with negative exponent")
    return guard_image(total ** (1.0 / p), "classical weighted norm")


@dataclass(frozen=True)
class ConnectionReport:
    """Both routes of the seminorm-connection identity plus their discrepancy."""

    p: float
    pseudo_raw: float
    classical_raw: float
    pseudo_image: float
    classical_image: float
    rel_discrepancy: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.rel_discrepancy <= self.tol


def check_seminorm_connection(ctx: PseudoContext, f: Callable[[float], float], p: float,
                              a: float, b: float,
                              cfg: QuadratureConfig = DEFAULT_QUADRATURE,
                              tol: float = 1e-7) -> ConnectionReport:
    """Verify that the pseudo-seminorm of ``f`` equals the pullback of the
    classical weighted norm of its image, comparing in image space."""
    params = SeminormParams(p=p, a=a, b=b, flavor=SeminormFlavor.PSEUDO_IMAGE_WEIGHTED)
    pseudo_raw = seminorm(ctx, f, params, cfg)
    pseudo_img = eval_g(ctx, pseudo_raw)
    classical_img = classical_weighted_norm(ctx, _image_of(ctx, f), p, a, b, cfg)
    classical_raw = eval_g_inv(ctx, classical_img)
    rel = abs(pseudo_img - classical_img) / max(1.0, abs(pseudo_img), abs(classical_img))
    return ConnectionReport(
        p=p,
        pseudo_raw=pseudo_raw,
        classical_raw=classical_raw,
        pseudo_image=pseudo_img,
        classical_image=classical_img,
        rel_discrepancy=rel,
        tol=tol,
    )
