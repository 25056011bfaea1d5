"""Checkable verdicts for the Young, Holder, Minkowski and Hermite-Hadamard
inequality families over a generator-induced algebra, plus the
pseudo-convexity test underlying the Hermite-Hadamard chain.

Every verdict is decided in generator image space, where each pseudo
inequality reduces to a classical weighted inequality; the raw-order reading
then follows from the generator direction (increasing generators keep the
image direction, decreasing ones reverse it).  That reversal is exactly the
direction flip the decreasing-generator halves of the theorems assert, so a
single image-space computation yields both cases.

Margins are signed, normalized by ``max(1, |lhs|, |rhs|)`` in image space and
non-negative (up to ``VERDICT_TOLERANCE``) when the inequality holds in its
expected direction.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from .algebra import (
    Ordering,
    PseudoValue,
    cmp_g,
    odot,
    pseudo_add,
    pseudo_ln,
    pseudo_mul,
    pseudo_pow,
    pseudo_sub,
)
from .calculus import (
    DEFAULT_QUADRATURE,
    QuadratureConfig,
    SeminormFlavor,
    SeminormParams,
    oplus_integral,
    seminorm,
)
from .errors import ParameterError, RangeError
from .generator import Direction, PseudoContext, eval_g, eval_g_inv

__all__ = [
    "VERDICT_TOLERANCE",
    "ExpectedDirection",
    "InequalityVerdict",
    "ConvexityReport",
    "HHChain",
    "GlaResult",
    "conjugate_index",
    "young",
    "holder",
    "holder_general",
    "holder_interpolation",
    "minkowski",
    "is_pseudo_convex",
    "hermite_hadamard",
    "hh_refined",
    "gla_means",
]

VERDICT_TOLERANCE = 1e-8


class ExpectedDirection(enum.Enum):
    LHS_LEQ_RHS = "lhs<=rhs"
    LHS_GEQ_RHS = "lhs>=rhs"

    def flipped(self) -> "ExpectedDirection":
        if self is ExpectedDirection.LHS_LEQ_RHS:
            return ExpectedDirection.LHS_GEQ_RHS
        return ExpectedDirection.LHS_LEQ_RHS


@dataclass(frozen=True)
class InequalityVerdict:
    """Both sides of a checked inequality plus the signed, normalized margin.

    ``expected`` is the raw-order direction claimed by the theorem for this
    generator direction; ``margin`` is measured in image space along the
    matching image direction, so ``holds`` iff ``margin >= -tolerance``.
    Raw sides are ``None`` when an image has no representable preimage.
    """

    name: str
    lhs_img: float
    rhs_img: float
    expected: ExpectedDirection
    margin: float
    holds: bool
    generator_direction: Direction
    lhs_raw: float | None = None
    rhs_raw: float | None = None


def conjugate_index(p: float) -> float:
    """The index p' with 1/p + 1/p' = 1 (defined for p not in {0, 1})."""
    if p in (0.0, 1.0) or math.isnan(p):
        raise ParameterError(f"conjugate index undefined for p={p!r}")
    return p / (p - 1.0)


def _pullback_or_none(ctx: PseudoContext, img: float) -> float | None:
    if not math.isfinite(img) or img < 0.0:
        return None
    try:
        return eval_g_inv(ctx, img)
    except RangeError:
        return None


def _verdict(
    ctx: PseudoContext,
    name: str,
    lhs_img: float,
    rhs_img: float,
    image_leq: bool,
    lhs_raw: float | None = None,
    rhs_raw: float | None = None,
    tol: float = VERDICT_TOLERANCE,
) -> InequalityVerdict:
    """Build a verdict from image values; ``image_leq`` is the classical
    image-space direction, from which the raw-order expectation follows."""
    diff = (rhs_img - lhs_img) if image_leq else (lhs_img - rhs_img)
    margin = diff / max(1.0, abs(lhs_img), abs(rhs_img))
    expected_img = ExpectedDirection.LHS_LEQ_RHS if image_leq else ExpectedDirection.LHS_GEQ_RHS
    expected = expected_img if ctx.increasing else expected_img.flipped()
    if lhs_raw is None:
        lhs_raw = _pullback_or_none(ctx, lhs_img)
    if rhs_raw is None:
        rhs_raw = _pullback_or_none(ctx, rhs_img)
    return InequalityVerdict(
        name=name,
        lhs_img=lhs_img,
        rhs_img=rhs_img,
        expected=expected,
        margin=margin,
        holds=margin >= -tol,
        generator_direction=ctx.direction,
        lhs_raw=lhs_raw,
        rhs_raw=rhs_raw,
    )


# ---------------------------------------------------------------------------
# Young
# ---------------------------------------------------------------------------


def young(ctx: PseudoContext, a: PseudoValue, b: PseudoValue, p: float) -> InequalityVerdict:
    """Pseudo Young inequality between ``a (x) b`` and the conjugate-weighted
    power sum, for any ``p`` outside ``{0, 1}``.

    For ``p < 1`` the conjugate index is negative and its preimage does not
    exist, so the right side is evaluated in image space (matching the
    theorem's own proof mechanics) and pulled back only when non-negative.
    """
    if p in (0.0, 1.0) or not math.isfinite(p):
        raise ParameterError(f"Young requires p outside {{0, 1}}, got {p!r}")
    pp = conjugate_index(p)
    ga = eval_g(ctx, a)
    gb = eval_g(ctx, b)
    if p < 1.0 and (ga <= ctx.eps_cmp or gb <= ctx.eps_cmp):
        raise ParameterError("Young with p < 1 needs strictly positive images")
    lhs_img = ga * gb
    rhs_img = (ga**p) / p + (gb**pp) / pp
    return _verdict(ctx, "young", lhs_img, rhs_img, image_leq=(p > 1.0))


# ---------------------------------------------------------------------------
# Holder family
# ---------------------------------------------------------------------------


def _weighted(p: float, a: float, b: float) -> SeminormParams:
    return SeminormParams(p=p, a=a, b=b, flavor=SeminormFlavor.PSEUDO_IMAGE_WEIGHTED)


def holder(ctx: PseudoContext, f: Callable[[float], float], h: Callable[[float], float],
           p: float, a: float, b: float,
           cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> InequalityVerdict:
    """Pseudo Holder inequality between the unit seminorm of the pointwise
    pseudo-product and the product of conjugate seminorms.

    ``p > 1`` gives the direct inequality, ``p < 1`` (nonzero) the reverse;
    the reverse case needs images bounded away from zero on the interval.
    """
    if p in (0.0, 1.0) or not math.isfinite(p):
        raise ParameterError(f"Holder requires p outside {{0, 1}}, got {p!r}")
    pp = conjugate_index(p)
    product = lambda t: pseudo_mul(ctx, f(t), h(t))
    lhs_raw = seminorm(ctx, product, _weighted(1.0, a, b), cfg)
    rhs_raw = pseudo_mul(
        ctx,
        seminorm(ctx, f, _weighted(p, a, b), cfg),
        seminorm(ctx, h, _weighted(pp, a, b), cfg),
    )
    return _verdict(
        ctx, "holder", eval_g(ctx, lhs_raw), eval_g(ctx, rhs_raw),
        image_leq=(p > 1.0), lhs_raw=lhs_raw, rhs_raw=rhs_raw,
    )


def holder_general(ctx: PseudoContext, f: Callable[[float], float], h: Callable[[float], float],
                   p: float, q: float, r: float, a: float, b: float,
                   cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> InequalityVerdict:
    """Generalized Holder with exponent relation 1/p + 1/q = 1/r.

    ``p`` and ``q`` must exceed 1; ``r`` may equal 1, which specializes to the
    plain Holder inequality.
    """
    for name, v in (("p", p), ("q", q)):
        if not (1.0 < v < math.inf):
            raise ParameterError(f"generalized Holder needs 1 < {name} < inf, got {v!r}")
    if not (1.0 <= r < math.inf):
        raise ParameterError(f"generalized Holder needs 1 <= r < inf, got {r!r}")
    if abs(1.0 / p + 1.0 / q - 1.0 / r) > 1e-12:
        raise ParameterError(f"exponent mismatch: 1/{p} + 1/{q} != 1/{r}")
    product = lambda t: pseudo_mul(ctx, f(t), h(t))
    lhs_raw = seminorm(ctx, product, _weighted(r, a, b), cfg)
    rhs_raw = pseudo_mul(
        ctx,
        seminorm(ctx, f, _weighted(p, a, b), cfg),
        seminorm(ctx, h, _weighted(q, a, b), cfg),
    )
    return _verdict(
        ctx, "holder_general", eval_g(ctx, lhs_raw), eval_g(ctx, rhs_raw),
        image_leq=True, lhs_raw=lhs_raw, rhs_raw=rhs_raw,
    )


def holder_interpolation(ctx: PseudoContext, f: Callable[[float], float],
                         t: float, p: float, q: float, r: float, a: float, b: float,
                         cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> InequalityVerdict:
    """Interpolation (Lyapunov-type) inequality with t/p + (1-t)/q = 1/r, 0 < t < 1."""
    if not (0.0 < t < 1.0):
        raise ParameterError(f"interpolation parameter must satisfy 0 < t < 1, got {t!r}")
    for name, v in (("p", p), ("q", q), ("r", r)):
        if not (1.0 < v < math.inf):
            raise ParameterError(f"interpolation needs 1 < {name} < inf, got {v!r}")
    if abs(t / p + (1.0 - t) / q - 1.0 / r) > 1e-12:
        raise ParameterError(f"exponent mismatch: {t}/{p} + {1-t}/{q} != 1/{r}")
    lhs_raw = seminorm(ctx, f, _weighted(r, a, b), cfg)
    rhs_raw = pseudo_mul(
        ctx,
        pseudo_pow(ctx, seminorm(ctx, f, _weighted(p, a, b), cfg), t),
        pseudo_pow(ctx, seminorm(ctx, f, _weighted(q, a, b), cfg), 1.0 - t),
    )
    return _verdict(
        ctx, "holder_interpolation", eval_g(ctx, lhs_raw), eval_g(ctx, rhs_raw),
        image_leq=True, lhs_raw=lhs_raw, rhs_raw=rhs_raw,
    )


# ---------------------------------------------------------------------------
# Minkowski
# ---------------------------------------------------------------------------


def minkowski(ctx: PseudoContext, f: Callable[[float], float], h: Callable[[float], float],
              p: float, a: float, b: float,
              cfg: QuadratureConfig = DEFAULT_QUADRATURE,
              allow_negative_p: bool = False) -> InequalityVerdict:
    """Pseudo Minkowski inequality between the seminorm of the pointwise
    pseudo-sum and the pseudo-sum of seminorms.

    ``p > 1`` direct, ``0 < p < 1`` reversed.  Negative ``p`` also satisfies
    the reversed inequality but sits outside the theorem's stated range, so
    it is gated behind ``allow_negative_p``.
    """
    if p in (0.0, 1.0) or not math.isfinite(p):
        raise ParameterError(f"Minkowski requires p outside {{0, 1}}, got {p!r}")
    if p < 0.0 and not allow_negative_p:
        raise ParameterError("negative p is opt-in: pass allow_negative_p=True")
    total = lambda t: pseudo_add(ctx, f(t), h(t))
    lhs_raw = seminorm(ctx, total, _weighted(p, a, b), cfg)
    rhs_raw = pseudo_add(
        ctx,
        seminorm(ctx, f, _weighted(p, a, b), cfg),
        seminorm(ctx, h, _weighted(p, a, b), cfg),
    )
    return _verdict(
        ctx, "minkowski", eval_g(ctx, lhs_raw), eval_g(ctx, rhs_raw),
        image_leq=(p > 1.0), lhs_raw=lhs_raw, rhs_raw=rhs_raw,
    )


# ---------------------------------------------------------------------------
# Pseudo-convexity and Hermite-Hadamard
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConvexityReport:
    is_pseudo_convex: bool
    worst_violation: float
    witness: tuple[float, float, float] | None
    sense: str = "convex"


def is_pseudo_convex(ctx: PseudoContext, f: Callable[[float], float], a: float, b: float,
                     grid_x: int = 16, grid_lambda: int = 9,
                     sense: str = "convex") -> ConvexityReport:
    """Grid check of ``f(l x + (1-l) y)`` against the pseudo-combination of
    endpoint values; records the worst normalized image-space violation and a
    witness triple ``(x, y, l)`` when one exists.

    ``sense="concave"`` checks the reversed (pseudo-concavity) definition.
    """
    if grid_x < 2 or grid_lambda < 2:
        raise ParameterError("grid sizes must be >= 2")
    if sense not in ("convex", "concave"):
        raise ParameterError(f"sense must be 'convex' or 'concave', got {sense!r}")
    if not a < b:
        raise ParameterError(f"empty interval [{a}, {b}]")
    xs = [a + (b - a) * i / (grid_x - 1) for i in range(grid_x)]
    lams = [j / (grid_lambda - 1) for j in range(grid_lambda)]
    imgs = [eval_g(ctx, f(x)) for x in xs]
    worst = -math.inf
    witness: tuple[float, float, float] | None = None
    # image reading: increasing generator wants the image function convex,
    # decreasing wants it concave; "concave" sense flips either way
    want_convex_image = (ctx.increasing) == (sense == "convex")
    for i, x in enumerate(xs):
        for j in range(i, len(xs)):
            y = xs[j]
            for lam in lams:
                mix_img = eval_g(ctx, f(lam * x + (1.0 - lam) * y))
                combo = lam * imgs[i] + (1.0 - lam) * imgs[j]
                violation = mix_img - combo if want_convex_image else combo - mix_img
                violation /= max(1.0, abs(mix_img), abs(combo))
                if violation > worst:
                    worst = violation
                    if violation > VERDICT_TOLERANCE:
                        witness = (x, y, lam)
    ok = worst <= VERDICT_TOLERANCE
    return ConvexityReport(ok, worst, None if ok else witness, sense)


@dataclass(frozen=True)
class HHChain:
    """Hermite-Hadamard chain values (raw) with per-link verdicts.

    Plain chains carry ``left <= mid <= right``; refined chains insert the
    lower and upper refinement values around ``mid``.
    """

    left: float
    mid: float
    right: float
    verdicts: tuple[InequalityVerdict, ...]
    refined_lower: float | None = None
    refined_upper: float | None = None
    lam: float | None = None

    @property
    def holds(self) -> bool:
        return all(v.holds for v in self.verdicts)

    @property
    def min_margin(self) -> float:
        return min(v.margin for v in self.verdicts)


def _chain_verdict(ctx: PseudoContext, name: str, lo_raw: float, hi_raw: float,
                   ascending: bool) -> InequalityVerdict:
    # ascending raw order corresponds to ascending images iff g is increasing
    return _verdict(
        ctx, name, eval_g(ctx, lo_raw), eval_g(ctx, hi_raw),
        image_leq=(ascending == ctx.increasing), lhs_raw=lo_raw, rhs_raw=hi_raw,
    )


def hermite_hadamard(ctx: PseudoContext, f: Callable[[float], float], a: float, b: float,
                     cfg: QuadratureConfig = DEFAULT_QUADRATURE,
                     sense: str = "convex") -> HHChain:
    """Three-term Hermite-Hadamard chain for a pseudo-convex ``f`` using the
    plain (unweighted) pseudo-integral; ``sense="concave"`` reverses it.

    Callers are responsible for pseudo-convexity (see
    :func:`is_pseudo_convex`); the chain is still computed when it fails, the
    verdicts simply record the violation.
    """
    if not a < b:
        raise ParameterError(f"empty interval [{a}, {b}]")
    if sense not in ("convex", "concave"):
        raise ParameterError(f"sense must be 'convex' or 'concave', got {sense!r}")
    ascending = sense == "convex"
    left = f(0.5 * (a + b))
    mid = odot(ctx, 1.0 / (b - a), oplus_integral(ctx, f, a, b, cfg))
    right = odot(ctx, 0.5, pseudo_add(ctx, f(a), f(b)))
    verdicts = (
        _chain_verdict(ctx, "hh_left_mid", left, mid, ascending),
        _chain_verdict(ctx, "hh_mid_right", mid, right, ascending),
    )
    return HHChain(left=left, mid=mid, right=right, verdicts=verdicts)


def hh_refined(ctx: PseudoContext, f: Callable[[float], float], a: float, b: float,
               lam: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE,
               sense: str = "convex") -> HHChain:
    """Five-term refined Hermite-Hadamard chain at refinement parameter
    ``lam`` in [0, 1].

    The lower refinement combines midpoint values of the split intervals, the
    upper one averages the split point against the endpoint combination; at
    ``lam`` 0 or 1 both collapse onto the plain chain.
    """
    if not 0.0 <= lam <= 1.0:
        raise ParameterError(f"lambda must lie in [0, 1], got {lam!r}")
    if not a < b:
        raise ParameterError(f"empty interval [{a}, {b}]")
    if sense not in ("convex", "concave"):
        raise ParameterError(f"sense must be 'convex' or 'concave', got {sense!r}")
    ascending = sense == "convex"
    left = f(0.5 * (a + b))
    mid = odot(ctx, 1.0 / (b - a), oplus_integral(ctx, f, a, b, cfg))
    right = odot(ctx, 0.5, pseudo_add(ctx, f(a), f(b)))
    # midpoints of [a, sigma] and [sigma, b] with sigma = lam*b + (1-lam)*a
    lower = pseudo_add(
        ctx,
        odot(ctx, lam, f(0.5 * (lam * b + (2.0 - lam) * a))),
        odot(ctx, 1.0 - lam, f(0.5 * ((1.0 + lam) * b + (1.0 - lam) * a))),
    )
    sigma = lam * b + (1.0 - lam) * a
    upper = odot(
        ctx,
        0.5,
        pseudo_add(
            ctx,
            f(sigma),
            pseudo_add(ctx, odot(ctx, lam, f(a)), odot(ctx, 1.0 - lam, f(b))),
        ),
    )
    verdicts = (
        _chain_verdict(ctx, "hh_left_ell", left, lower, ascending),
        _chain_verdict(ctx, "hh_ell_mid", lower, mid, ascending),
        _chain_verdict(ctx, "hh_mid_L", mid, upper, ascending),
        _chain_verdict(ctx, "hh_L_right", upper, right, ascending),
    )
    return HHChain(
        left=left, mid=mid, right=right, verdicts=verdicts,
        refined_lower=lower, refined_upper=upper, lam=lam,
    )


# ---------------------------------------------------------------------------
# Geometric / logarithmic / arithmetic means
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GlaResult:
    """The two verdicts of the mean chain; ``swapped`` notes operand exchange
    performed so the pseudo-difference stays representable."""

    geometric_log: InequalityVerdict
    log_arithmetic: InequalityVerdict
    swapped: bool

    @property
    def holds(self) -> bool:
        return self.geometric_log.holds and self.log_arithmetic.holds

    @property
    def verdicts(self) -> tuple[InequalityVerdict, InequalityVerdict]:
        return (self.geometric_log, self.log_arithmetic)


def gla_means(ctx: PseudoContext, u: PseudoValue, v: PseudoValue) -> GlaResult:
    """Geometric <= logarithmic <= arithmetic pseudo-mean chain.

    Requires an increasing generator, distinct operands with images >= 1 (the
    pseudo-logarithm must exist).  When ``u`` is below ``v`` the operands are
    swapped (the chain is symmetric) and the result records it.
    """
    if not ctx.increasing:
        raise ParameterError("the mean chain requires an increasing generator")
    order = cmp_g(ctx, u, v)
    if order is Ordering.EQUAL_G:
        raise ParameterError("operands must be distinct")
    swapped = order is Ordering.LESS_G
    if swapped:
        u, v = v, u
    gu = eval_g(ctx, u)
    gv = eval_g(ctx, v)
    if gu <= ctx.eps_cmp or gv <= ctx.eps_cmp:
        raise ParameterError("operands must lie strictly above the zero element")
    ln_u = pseudo_ln(ctx, u)
    ln_v = pseudo_ln(ctx, v)
    denom = eval_g(ctx, ln_u) - eval_g(ctx, ln_v)
    geo = pseudo_pow(ctx, pseudo_mul(ctx, u, v), 0.5)
    log_mean = odot(ctx, 1.0 / denom, pseudo_sub(ctx, u, v))
    arith = odot(ctx, 0.5, pseudo_add(ctx, u, v))
    first = _verdict(
        ctx, "gla_geometric_log", eval_g(ctx, geo), eval_g(ctx, log_mean),
        image_leq=True, lhs_raw=geo, rhs_raw=log_mean,
    )
    second = _verdict(
        ctx, "gla_log_arithmetic", eval_g(ctx, log_mean), eval_g(ctx, arith),
        image_leq=True, lhs_raw=log_mean, rhs_raw=arith,
    )
    return GlaResult(first, second, swapped)
