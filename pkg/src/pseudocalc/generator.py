"""Generator functions and the context object that induces the pseudo-algebra.

A generator ``g`` is a strictly monotone function mapping its domain interval
``D`` onto ``[0, inf)``.  Conjugating classical arithmetic through ``g`` and
its inverse yields the pseudo-operations implemented in :mod:`.algebra` and
the integrals/derivatives in :mod:`.calculus`.  This module owns:

* :class:`GeneratorSpec` and sampling-based validation of its assumptions
  (strict monotonicity in the declared direction, image reaching zero and
  growing unboundedly, inverse/derivative consistency);
* :class:`PseudoContext`, the immutable bundle of a validated spec, the zero
  and unit elements and the numeric tolerances every operation consumes;
* numerically robust evaluation of ``g``, ``g^{-1}`` (closed form when given,
  bracketed bisection with optional Newton polish otherwise) and ``g'``
  (closed form or central differences, one sided at domain endpoints);
* the built-in generators ``identity``, ``power:<lam>`` and ``neglog`` plus
  loading of user generators from JSON documents with expression strings.

Everything here is pure and the context is frozen, so contexts can be shared
freely across threads.  Generator callbacks are required to be pure; that is
a documented contract, not something we can enforce.
"""

from __future__ import annotations

import enum
import math
import sys
from dataclasses import dataclass
from typing import Callable, Mapping

from . import funcspec
from .errors import (
    ConvergenceError,
    DomainError,
    NumericError,
    ParameterError,
    RangeError,
    ValidationError,
)

__all__ = [
    "Direction",
    "Interval",
    "GeneratorSpec",
    "PseudoContext",
    "ValidationCheck",
    "ValidationReport",
    "validate_spec",
    "make_context",
    "eval_g",
    "eval_g_inv",
    "g_prime_at",
    "guard_image",
    "identity_spec",
    "power_spec",
    "neglog_spec",
    "builtin_names",
    "resolve_spec",
    "spec_from_doc",
    "context_from_source",
    "DEFAULT_EPS_INV",
    "DEFAULT_EPS_CMP",
]

DEFAULT_EPS_INV = 1e-12
DEFAULT_EPS_CMP = 1e-9

# central-difference step scale: cbrt(machine epsilon)
_FD_SCALE = sys.float_info.epsilon ** (1.0 / 3.0)

_EVAL_FAILURES = (funcspec.EvalError, OverflowError, ZeroDivisionError, ValueError)


class Direction(enum.Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"


@dataclass(frozen=True)
class Interval:
    """Domain interval ``[lo, hi]`` with endpoint-openness flags; ``hi`` may be inf."""

    lo: float
    hi: float
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self) -> None:
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ParameterError("interval endpoints must not be NaN")
        if not self.lo < self.hi:
            raise ParameterError(f"empty interval [{self.lo}, {self.hi}]")
        if math.isinf(self.lo):
            raise ParameterError("unbounded lower endpoints are not supported")

    def contains(self, x: float, tol: float = 0.0) -> bool:
        return self.lo - tol <= x <= self.hi + tol

    def clamp(self, x: float) -> float:
        return min(max(x, self.lo), self.hi)

    def sampling_window(self, span: float = 10.0) -> tuple[float, float]:
        """Finite closed sub-interval used for grid-based checks."""
        width = span if math.isinf(self.hi) else self.hi - self.lo
        pad = 1e-6 * width
        a = self.lo + pad if self.lo_open else self.lo
        if math.isinf(self.hi):
            b = self.lo + span
        else:
            b = self.hi - pad if self.hi_open else self.hi
        return a, b


@dataclass(frozen=True)
class GeneratorSpec:
    """A generator ``g`` with optional closed-form inverse and derivative.

    ``g`` must be strictly monotone on ``domain`` in the declared
    ``direction`` with image ``[0, inf)``; :func:`validate_spec` probes those
    assumptions on a sample grid.
    """

    name: str
    g: Callable[[float], float]
    domain: Interval
    direction: Direction
    g_inv: Callable[[float], float] | None = None
    g_prime: Callable[[float], float] | None = None


@dataclass(frozen=True)
class PseudoContext:
    """Validated generator plus cached zero/unit elements and tolerances.

    ``eps_inv`` bounds the inverse-solve residual relative to ``max(1, |y|)``;
    ``eps_cmp`` is the image-space comparison tolerance used by the algebra.
    """

    spec: GeneratorSpec
    zero_g: float
    one_g: float
    eps_inv: float = DEFAULT_EPS_INV
    eps_cmp: float = DEFAULT_EPS_CMP

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def direction(self) -> Direction:
        return self.spec.direction

    @property
    def increasing(self) -> bool:
        return self.spec.direction is Direction.INCREASING


def guard_image(value: float, what: str = "image value") -> float:
    """Reject NaN (:class:`NumericError`) and infinities (:class:`RangeError`)."""
    if math.isnan(value):
        raise NumericError(f"{what} is NaN")
    if math.isinf(value):
        raise RangeError(f"{what} overflowed to {'+inf' if value > 0 else '-inf'}")
    return value


# ---------------------------------------------------------------------------
# Evaluation of g, g^{-1}, g'
# ---------------------------------------------------------------------------


def eval_g(ctx: PseudoContext, x: float) -> float:
    """Evaluate ``g(x)``, clamping ``x`` to the domain boundary when it lies
    within ``eps_cmp`` outside; beyond that raise :class:`DomainError`."""
    x = float(x)
    if math.isnan(x):
        raise NumericError("raw value is NaN")
    dom = ctx.spec.domain
    tol = ctx.eps_cmp * max(1.0, abs(x))
    if not dom.contains(x, tol):
        raise DomainError(f"{x!r} outside domain [{dom.lo}, {dom.hi}] of generator {ctx.name!r}")
    try:
        y = ctx.spec.g(dom.clamp(x))
    except OverflowError:
        raise RangeError(f"g({x!r}) overflowed for generator {ctx.name!r}") from None
    except _EVAL_FAILURES as exc:
        raise DomainError(f"generator {ctx.name!r} failed at {x!r}: {exc}") from exc
    return guard_image(float(y), f"g({x!r})")


def eval_g_inv(ctx: PseudoContext, y: float) -> float:
    """Map an image value back to its raw preimage.

    Slightly negative ``y`` (within ``eps_cmp``) is clamped to zero; genuinely
    negative values raise :class:`RangeError`.  The result is residual-checked
    against ``eps_inv * max(1, |y|)`` so that images whose preimage is lost to
    rounding (for example deep underflow of a decreasing generator) fail
    loudly instead of silently collapsing.
    """
    y = float(y)
    if math.isnan(y):
        raise NumericError("image value is NaN")
    if math.isinf(y):
        raise RangeError("image value is infinite")
    if y < 0.0:
        if y < -ctx.eps_cmp:
            raise RangeError(f"negative image {y!r} has no preimage")
        y = 0.0
    x = _solve_inverse(ctx.spec, y, ctx.eps_inv)
    dom = ctx.spec.domain
    if not dom.contains(x, ctx.eps_cmp * max(1.0, abs(x))):
        raise RangeError(f"preimage {x!r} of {y!r} escapes the domain")
    return dom.clamp(x)


def _solve_inverse(spec: GeneratorSpec, y: float, eps_inv: float) -> float:
    tol = eps_inv * max(1.0, abs(y))
    if spec.g_inv is not None:
        try:
            x = float(spec.g_inv(y))
        except _EVAL_FAILURES as exc:
            raise RangeError(f"closed-form inverse of {spec.name!r} failed at {y!r}: {exc}") from exc
        _check_residual(spec, x, y, tol)
        return x
    x = _bisect_inverse(spec, y, tol)
    if spec.g_prime is not None:
        x = _newton_polish(spec, x, y, tol)
    _check_residual(spec, x, y, tol)
    return x


def _check_residual(spec: GeneratorSpec, x: float, y: float, tol: float) -> None:
    try:
        gx = float(spec.g(spec.domain.clamp(x)))
    except _EVAL_FAILURES:
        gx = math.nan
    if not math.isfinite(gx) or abs(gx - y) > max(tol, 1e-7 * max(1.0, abs(y))):
        raise RangeError(
            f"image {y!r} has no representable preimage under {spec.name!r} "
            f"(residual {abs(gx - y) if math.isfinite(gx) else math.inf:.3e})"
        )


def _safe_g(spec: GeneratorSpec, x: float) -> float:
    try:
        v = float(spec.g(x))
    except _EVAL_FAILURES:
        return math.nan
    return v


def _bisect_inverse(spec: GeneratorSpec, y: float, tol: float, max_iter: int = 64) -> float:
    """Bracketed bisection on the domain; brackets expand geometrically toward
    open or unbounded ends before bisection starts."""
    dom = spec.domain
    increasing = spec.direction is Direction.INCREASING
    # g is smallest at the "zero end" and unbounded at the other end:
    # increasing -> zero end lo, unbounded end hi; decreasing -> the reverse.
    width = 1.0 if math.isinf(dom.hi) else dom.hi - dom.lo

    def probe_toward_hi() -> float:
        x = dom.lo + width if math.isinf(dom.hi) else dom.hi - (1e-9 * width if dom.hi_open else 0.0)
        for _ in range(600):
            gx = _safe_g(spec, x)
            reached = math.isfinite(gx) and ((increasing and gx >= y) or (not increasing and gx <= y))
            if reached:
                return x
            if not math.isinf(dom.hi):
                break
            x = dom.lo + (x - dom.lo) * 2.0
            if math.isinf(x):
                break
        raise RangeError(f"image {y!r} not reached toward the upper end of {spec.name!r}")

    def probe_toward_lo() -> float:
        off = 1e-9 * width if dom.lo_open else 0.0
        x = dom.lo + off
        for _ in range(600):
            gx = _safe_g(spec, x)
            reached = math.isfinite(gx) and ((increasing and gx <= y) or (not increasing and gx >= y))
            if reached:
                return x
            if not dom.lo_open:
                break
            off *= 0.5
            x = dom.lo + off
            if x == dom.lo:
                break
        raise RangeError(f"image {y!r} not reached toward the lower end of {spec.name!r}")

    a = probe_toward_lo()
    b = probe_toward_hi()
    ga, gb = _safe_g(spec, a), _safe_g(spec, b)
    if math.isnan(ga) or math.isnan(gb):
        raise ConvergenceError(f"generator {spec.name!r} not evaluable on the bracket")
    for _ in range(max_iter):
        m = 0.5 * (a + b)
        gm = _safe_g(spec, m)
        if math.isnan(gm):
            raise ConvergenceError(f"generator {spec.name!r} not evaluable at {m!r}")
        if abs(gm - y) <= tol:
            return m
        lower = gm < y if increasing else gm > y
        if lower:
            a, ga = m, gm
        else:
            b, gb = m, gm
    m = 0.5 * (a + b)
    if abs(_safe_g(spec, m) - y) <= max(tol, 1e-7 * max(1.0, abs(y))):
        return m
    raise ConvergenceError(
        f"bisection for {spec.name!r} did not reach residual {tol:.1e} at image {y!r}"
    )


def _newton_polish(spec: GeneratorSpec, x: float, y: float, tol: float, steps: int = 3) -> float:
    for _ in range(steps):
        gx = _safe_g(spec, x)
        if math.isnan(gx) or abs(gx - y) <= 0.25 * tol:
            break
        try:
            dg = float(spec.g_prime(x))  # type: ignore[misc]
        except _EVAL_FAILURES:
            break
        if not math.isfinite(dg) or dg == 0.0:
            break
        x_new = spec.domain.clamp(x - (gx - y) / dg)
        if not math.isfinite(x_new):
            break
        x = x_new
    return x


def g_prime_at(ctx: PseudoContext, x: float) -> float:
    """Derivative of ``g`` at ``x``: closed form when available, otherwise a
    central difference with step ``cbrt(eps) * max(1, |x|)`` (one sided at
    domain endpoints)."""
    x = float(x)
    dom = ctx.spec.domain
    if not dom.contains(x, ctx.eps_cmp * max(1.0, abs(x))):
        raise DomainError(f"{x!r} outside domain of generator {ctx.name!r}")
    x = dom.clamp(x)
    if ctx.spec.g_prime is not None:
        try:
            return guard_image(float(ctx.spec.g_prime(x)), f"g'({x!r})")
        except _EVAL_FAILURES as exc:
            raise DomainError(f"g' of {ctx.name!r} failed at {x!r}: {exc}") from exc
    h = _FD_SCALE * max(1.0, abs(x))
    lo_ok = dom.contains(x - h)
    hi_ok = dom.contains(x + h)
    g = lambda t: _safe_g(ctx.spec, t)
    if lo_ok and hi_ok:
        d = (g(x + h) - g(x - h)) / (2.0 * h)
    elif hi_ok:
        d = (g(x + h) - g(x)) / h
    elif lo_ok:
        d = (g(x) - g(x - h)) / h
    else:
        raise DomainError(f"no finite-difference stencil for g' at {x!r}")
    return guard_image(d, f"g'({x!r})")


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ValidationCheck:
    name: str
    passed: bool
    max_violation: float
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    spec_name: str
    direction: Direction
    checks: tuple[ValidationCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[ValidationCheck]:
        return [c for c in self.checks if not c.passed]

    def summary(self) -> str:
        lines = [f"generator {self.spec_name!r} ({self.direction.value}):"]
        for c in self.checks:
            status = "ok  " if c.passed else "FAIL"
            lines.append(f"  [{status}] {c.name}: max violation {c.max_violation:.3e} {c.detail}")
        return "\n".join(lines)


def _chebyshev_nodes(a: float, b: float, n: int) -> list[float]:
    # Chebyshev-Lobatto points, ascending, endpoints included
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return [mid + half * math.cos(math.pi * (n - 1 - k) / (n - 1)) for k in range(n)]


def validate_spec(spec: GeneratorSpec, samples: int = 65) -> ValidationReport:
    """Probe the structural assumptions of ``spec`` on a Chebyshev grid.

    The report carries one entry per property with the worst observed
    violation; it never raises for a failing generator, callers decide.
    """
    if samples < 2:
        raise ParameterError("samples must be >= 2")
    a, b = spec.domain.sampling_window()
    xs = _chebyshev_nodes(a, b, samples)
    gs = [_safe_g(spec, x) for x in xs]
    checks: list[ValidationCheck] = []

    nan_count = sum(1 for v in gs if not math.isfinite(v))
    checks.append(
        ValidationCheck(
            "evaluable_on_grid",
            nan_count == 0,
            float(nan_count),
            f"{nan_count} non-finite values on {samples} nodes",
        )
    )
    finite_pairs = [
        (gs[i], gs[i + 1])
        for i in range(len(gs) - 1)
        if math.isfinite(gs[i]) and math.isfinite(gs[i + 1])
    ]

    sign = 1.0 if spec.direction is Direction.INCREASING else -1.0
    worst_mono = 0.0
    strict = bool(finite_pairs)
    for g0, g1 in finite_pairs:
        step = sign * (g1 - g0)
        if step <= 0.0:
            strict = False
            worst_mono = max(worst_mono, -step)
    checks.append(
        ValidationCheck(
            "strict_monotonicity",
            strict,
            worst_mono,
            f"declared {spec.direction.value}",
        )
    )

    finite_gs = [v for v in gs if math.isfinite(v)]
    min_img = min(finite_gs) if finite_gs else math.inf
    # image must reach down to 0 at the zero end of the domain
    zero_end_ok = abs(min_img) <= 1e-6 and min_img >= -1e-6
    checks.append(
        ValidationCheck(
            "image_reaches_zero",
            zero_end_ok,
            abs(min_img),
            f"min sampled image {min_img:.3e}",
        )
    )

    # image must keep growing toward the unbounded end (sampled proxy)
    growth = _unboundedness_probes(spec, a, b)
    growing = all(g1 > g0 for g0, g1 in zip(growth, growth[1:])) and len(growth) >= 2
    checks.append(
        ValidationCheck(
            "image_unbounded_proxy",
            growing,
            0.0 if growing else 1.0,
            f"probe images {['%.3e' % v for v in growth]}",
        )
    )

    if spec.g_inv is not None:
        ys = [max(0.0, v) for v in finite_gs] or [0.0, 1.0]
        worst_rt = 0.0
        for y in ys:
            try:
                x = float(spec.g_inv(y))
                back = _safe_g(spec, spec.domain.clamp(x))
            except _EVAL_FAILURES:
                worst_rt = math.inf
                break
            if not math.isfinite(back):
                worst_rt = math.inf
                break
            worst_rt = max(worst_rt, abs(back - y) / max(1.0, abs(y)))
        checks.append(
            ValidationCheck("inverse_roundtrip", worst_rt <= 1e-8, worst_rt, "relative residual")
        )

    def _fd_step(x: float) -> float:
        # relative step keeps truncation error bounded near singular endpoints
        return 1e-5 * max(abs(x), 1e-6)

    interior = [
        x for x in xs
        if spec.domain.contains(x - _fd_step(x)) and spec.domain.contains(x + _fd_step(x))
    ]
    if spec.g_prime is not None:
        worst_fd = 0.0
        for x in interior:
            h = _fd_step(x)
            fd = (_safe_g(spec, x + h) - _safe_g(spec, x - h)) / (2.0 * h)
            try:
                claimed = float(spec.g_prime(x))
            except _EVAL_FAILURES:
                worst_fd = math.inf
                break
            if not (math.isfinite(fd) and math.isfinite(claimed)):
                worst_fd = math.inf
                break
            worst_fd = max(worst_fd, abs(claimed - fd) / max(1.0, abs(fd)))
        checks.append(
            ValidationCheck(
                "derivative_matches_fd",
                worst_fd <= 1e-6,
                worst_fd,
                "central difference, relative step 1e-5",
            )
        )

    min_slope = math.inf
    for x in interior:
        if spec.g_prime is not None:
            try:
                d = abs(float(spec.g_prime(x)))
            except _EVAL_FAILURES:
                d = math.nan
        else:
            h = _fd_step(x)
            d = abs((_safe_g(spec, x + h) - _safe_g(spec, x - h)) / (2.0 * h))
        if math.isnan(d):
            min_slope = math.nan
            break
        min_slope = min(min_slope, d)
    nonvanishing = math.isfinite(min_slope) and min_slope > 1e-12
    checks.append(
        ValidationCheck(
            "derivative_nonvanishing",
            nonvanishing,
            0.0 if nonvanishing else 1.0,
            f"min |g'| on interior nodes {min_slope:.3e}",
        )
    )

    return ValidationReport(spec.name, spec.direction, tuple(checks))


def _unboundedness_probes(spec: GeneratorSpec, a: float, b: float) -> list[float]:
    """Sample g approaching the end where its image is unbounded."""
    dom = spec.domain
    toward_hi = (spec.direction is Direction.INCREASING)
    values: list[float] = []
    if toward_hi:
        if math.isinf(dom.hi):
            points = [b, b * 4.0 + 1.0, b * 64.0 + 1.0]
        else:
            gap = dom.hi - b
            points = [b, dom.hi - gap * 1e-3, dom.hi - gap * 1e-6] if gap > 0 else [b]
    else:
        gap = a - dom.lo
        points = [a, dom.lo + gap * 1e-3, dom.lo + gap * 1e-6] if gap > 0 else [a]
    for x in points:
        v = _safe_g(spec, x)
        if math.isfinite(v):
            values.append(v)
    return values


# ---------------------------------------------------------------------------
# Context construction
# ---------------------------------------------------------------------------


def make_context(
    spec: GeneratorSpec,
    eps_inv: float = DEFAULT_EPS_INV,
    eps_cmp: float = DEFAULT_EPS_CMP,
    samples: int = 65,
) -> PseudoContext:
    """Validate ``spec`` and build a :class:`PseudoContext` with the zero and
    unit elements solved (closed form if ``g_inv`` is given, else bisection).

    Raises :class:`ValidationError` when validation fails and
    :class:`DomainError` when 0 or 1 is not attained by ``g`` on the domain.
    """
    if eps_inv <= 0 or eps_cmp <= 0:
        raise ParameterError("tolerances must be positive")
    report = validate_spec(spec, samples=samples)
    if not report.passed:
        failed = ", ".join(c.name for c in report.failures())
        raise ValidationError(f"generator {spec.name!r} failed checks: {failed}\n{report.summary()}")
    try:
        zero_g = _solve_inverse(spec, 0.0, eps_inv)
        one_g = _solve_inverse(spec, 1.0, eps_inv)
    except (RangeError, ConvergenceError) as exc:
        raise DomainError(f"0 or 1 not in the image of {spec.name!r}: {exc}") from exc
    zero_g = spec.domain.clamp(zero_g)
    one_g = spec.domain.clamp(one_g)
    return PseudoContext(spec=spec, zero_g=zero_g, one_g=one_g, eps_inv=eps_inv, eps_cmp=eps_cmp)


# ---------------------------------------------------------------------------
# Built-in generators and JSON loading
# ---------------------------------------------------------------------------


def identity_spec() -> GeneratorSpec:
    """g(x) = x on [0, inf): the pseudo-algebra degenerates to classical."""
    return GeneratorSpec(
        name="identity",
        g=lambda x: x,
        g_inv=lambda y: y,
        g_prime=lambda x: 1.0,
        domain=Interval(0.0, math.inf, hi_open=True),
        direction=Direction.INCREASING,
    )


def power_spec(lam: float) -> GeneratorSpec:
    """g(x) = x**lam on [0, inf) for lam > 0 (increasing)."""
    if not (lam > 0 and math.isfinite(lam)):
        raise ParameterError(f"power generator needs lam > 0, got {lam!r}")
    return GeneratorSpec(
        name=f"power:{lam:g}",
        g=lambda x, _l=lam: x**_l,
        g_inv=lambda y, _l=lam: y ** (1.0 / _l),
        g_prime=lambda x, _l=lam: _l * x ** (_l - 1.0),
        domain=Interval(0.0, math.inf, hi_open=True),
        direction=Direction.INCREASING,
    )


def neglog_spec() -> GeneratorSpec:
    """g(x) = -ln x on (0, 1]: the built-in decreasing generator."""
    return GeneratorSpec(
        name="neglog",
        g=lambda x: -math.log(x),
        g_inv=lambda y: math.exp(-y),
        g_prime=lambda x: -1.0 / x,
        domain=Interval(0.0, 1.0, lo_open=True),
        direction=Direction.DECREASING,
    )


def builtin_names() -> list[str]:
    return ["identity", "power:<lam>", "neglog"]


def resolve_spec(source: str | Mapping) -> GeneratorSpec:
    """Resolve a builtin name (``identity``, ``power:2``, ``neglog``) or a
    JSON-style mapping into a :class:`GeneratorSpec`."""
    if isinstance(source, Mapping):
        return spec_from_doc(source)
    name = source.strip()
    if name == "identity":
        return identity_spec()
    if name == "neglog":
        return neglog_spec()
    if name.startswith("power:"):
        try:
            lam = float(name.split(":", 1)[1])
        except ValueError as exc:
            raise ParameterError(f"bad power generator {name!r}") from exc
        return power_spec(lam)
    raise ParameterError(f"unknown generator {name!r}; builtins: {', '.join(builtin_names())}")


def spec_from_doc(doc: Mapping) -> GeneratorSpec:
    """Build a spec from a generator JSON document.

    Expected shape::

        {"schema_version": 1, "name": ..., "g": "<expr in x>",
         "g_inv": optional expr, "g_prime": optional expr,
         "domain": {"lo": .., "hi": .. or null, "lo_open": .., "hi_open": ..},
         "direction": "increasing" | "decreasing"}
    """
    version = doc.get("schema_version", 1)
    if version != 1:
        raise ValidationError(f"unsupported generator schema_version {version!r}")
    try:
        name = str(doc.get("name", "custom"))
        g_expr = funcspec.parse(doc["g"])
        g_inv_expr = funcspec.parse(doc["g_inv"]) if doc.get("g_inv") else None
        g_prime_expr = funcspec.parse(doc["g_prime"]) if doc.get("g_prime") else None
        dom = doc["domain"]
        hi = dom.get("hi", None)
        interval = Interval(
            lo=float(dom["lo"]),
            hi=math.inf if hi is None else float(hi),
            lo_open=bool(dom.get("lo_open", False)),
            hi_open=bool(dom.get("hi_open", False)),
        )
        direction = Direction(str(doc["direction"]).lower())
    except funcspec.ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed generator document: {exc}") from exc
    return GeneratorSpec(
        name=name,
        g=funcspec.compile_expr(g_expr),
        g_inv=funcspec.compile_expr(g_inv_expr) if g_inv_expr else None,
        g_prime=funcspec.compile_expr(g_prime_expr) if g_prime_expr else None,
        domain=interval,
        direction=direction,
    )


def context_from_source(
    source: str | Mapping,
    eps_inv: float = DEFAULT_EPS_INV,
    eps_cmp: float = DEFAULT_EPS_CMP,
) -> PseudoContext:
    """``resolve_spec`` + ``make_context`` in one step."""
    return make_context(resolve_spec(source), eps_inv=eps_inv, eps_cmp=eps_cmp)
