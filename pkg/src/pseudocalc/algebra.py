"""Pseudo-arithmetic induced by a generator: binary operations, order,
scalar product, powers, absolute value and pseudo exp/log.

Raw values are plain floats interpreted relative to the :class:`PseudoContext`
passed to each operation; ``PseudoValue`` is a type alias rather than a
wrapper class.  Every operation conjugates through the generator image space,
where all tolerances live: ``g^{-1}`` can be arbitrarily ill-conditioned near
image zero, so equality and comparisons are decided on images, never on raws.
"""

from __future__ import annotations

import enum
import math
from typing import TypeAlias

from .errors import (
    DivisionByZeroG,
    LogDomainError,
    RangeError,
)
from .generator import PseudoContext, eval_g, eval_g_inv, guard_image

__all__ = [
    "PseudoValue",
    "BinaryKind",
    "Ordering",
    "binary_op",
    "pseudo_add",
    "pseudo_sub",
    "pseudo_mul",
    "pseudo_div",
    "odot",
    "cmp_g",
    "leq_g",
    "pseudo_pow",
    "pseudo_abs",
    "pseudo_exp",
    "pseudo_ln",
]

PseudoValue: TypeAlias = float


class BinaryKind(enum.Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"


class Ordering(enum.Enum):
    LESS_G = -1
    EQUAL_G = 0
    GREATER_G = 1


def binary_op(ctx: PseudoContext, kind: BinaryKind, x: PseudoValue, y: PseudoValue) -> PseudoValue:
    """``g^{-1}(g(x) o g(y))`` with ``o`` in ``{+, -, *, /}`` matching ``kind``.

    Subtraction must keep the image non-negative (tiny negative results are
    clamped, larger ones raise :class:`RangeError`); division by a value whose
    image is within ``eps_cmp`` of zero raises :class:`DivisionByZeroG`.
    """
    gx = eval_g(ctx, x)
    gy = eval_g(ctx, y)
    if kind is BinaryKind.ADD:
        img = gx + gy
    elif kind is BinaryKind.SUB:
        img = gx - gy
        if img < 0.0:
            if img < -ctx.eps_cmp * max(1.0, abs(gx), abs(gy)):
                raise RangeError(f"pseudo-difference image {img!r} is negative")
            img = 0.0
    elif kind is BinaryKind.MUL:
        img = gx * gy
    elif kind is BinaryKind.DIV:
        if abs(gy) <= ctx.eps_cmp:
            raise DivisionByZeroG(f"divisor image {gy!r} indistinguishable from zero element")
        img = gx / gy
    else:  # pragma: no cover - closed enumeration
        raise ValueError(f"unknown kind {kind!r}")
    return eval_g_inv(ctx, guard_image(img, f"{kind.value} image"))


def pseudo_add(ctx: PseudoContext, x: PseudoValue, y: PseudoValue) -> PseudoValue:
    return binary_op(ctx, BinaryKind.ADD, x, y)


def pseudo_sub(ctx: PseudoContext, x: PseudoValue, y: PseudoValue) -> PseudoValue:
    return binary_op(ctx, BinaryKind.SUB, x, y)


def pseudo_mul(ctx: PseudoContext, x: PseudoValue, y: PseudoValue) -> PseudoValue:
    return binary_op(ctx, BinaryKind.MUL, x, y)


def pseudo_div(ctx: PseudoContext, x: PseudoValue, y: PseudoValue) -> PseudoValue:
    return binary_op(ctx, BinaryKind.DIV, x, y)


def odot(ctx: PseudoContext, n: float, x: PseudoValue) -> PseudoValue:
    """Pseudo-scalar product ``g^{-1}(n * g(x))`` for real ``n``."""
    img = n * eval_g(ctx, x)
    if img < 0.0:
        if img < -ctx.eps_cmp:
            raise RangeError(f"scalar-product image {img!r} is negative")
        img = 0.0
    return eval_g_inv(ctx, guard_image(img, "scalar-product image"))


def cmp_g(ctx: PseudoContext, x: PseudoValue, y: PseudoValue) -> Ordering:
    """Total order on raw values with image-space equality tolerance.

    The induced order (x below y iff their pseudo-difference is below the
    zero element, read on raw representations) coincides with the standard
    real order on raws for both increasing and decreasing generators; that is
    what makes the reversed inequality statements for decreasing generators
    non-vacuous.
    """
    gx = eval_g(ctx, x)
    gy = eval_g(ctx, y)
    if abs(gx - gy) <= ctx.eps_cmp * max(1.0, abs(gx), abs(gy)):
        return Ordering.EQUAL_G
    return Ordering.LESS_G if x < y else Ordering.GREATER_G


def leq_g(ctx: PseudoContext, x: PseudoValue, y: PseudoValue) -> bool:
    return cmp_g(ctx, x, y) is not Ordering.GREATER_G


def pseudo_pow(ctx: PseudoContext, x: PseudoValue, p: float) -> PseudoValue:
    """Pseudo power ``g^{-1}(g(x)**p)``; ``p == 0`` gives the unit element and
    negative powers route through pseudo-division by definition."""
    if math.isnan(p):
        raise RangeError("exponent is NaN")
    if p == 0.0:
        return ctx.one_g
    if p < 0.0:
        return binary_op(ctx, BinaryKind.DIV, ctx.one_g, pseudo_pow(ctx, x, -p))
    gx = eval_g(ctx, x)
    try:
        img = gx**p
    except OverflowError:
        raise RangeError(f"power image {gx!r}**{p!r} overflows") from None
    return eval_g_inv(ctx, guard_image(img, "power image"))


def pseudo_abs(ctx: PseudoContext, x: PseudoValue) -> PseudoValue:
    """``g^{-1}(|g(x)|)``: the identity while images live in [0, inf), kept
    for structural fidelity and future signed-image generators."""
    return eval_g_inv(ctx, abs(eval_g(ctx, x)))


def pseudo_exp(ctx: PseudoContext, x: PseudoValue) -> PseudoValue:
    """Pseudo-exponential ``g^{-1}(e**g(x))``."""
    gx = eval_g(ctx, x)
    try:
        img = math.exp(gx)
    except OverflowError:
        raise RangeError(f"exp of image {gx!r} overflows") from None
    return eval_g_inv(ctx, guard_image(img, "pseudo-exp image"))


def pseudo_ln(ctx: PseudoContext, x: PseudoValue) -> PseudoValue:
    """Pseudo-logarithm ``g^{-1}(ln g(x))``.

    Needs a strictly positive image (else :class:`LogDomainError`); images
    below one would map to negative image space, which has no representation
    here, so they raise :class:`RangeError` instead of silently extending.
    """
    gx = eval_g(ctx, x)
    if gx <= ctx.eps_cmp:
        raise LogDomainError(f"pseudo-ln of vanishing image {gx!r}")
    img = math.log(gx)
    if img < 0.0:
        if img < -ctx.eps_cmp:
            raise RangeError(f"pseudo-ln image {img!r} is negative (g(x) < 1)")
        img = 0.0
    return eval_g_inv(ctx, img)
