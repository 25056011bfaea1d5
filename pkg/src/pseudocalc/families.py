"""Seeded polynomial/exponential function families used by verification
suites and tests.

Functions are constructed in generator image space, then pulled back through
``g^{-1}``: the same image function fed to two generators yields matched
image inputs, which is what direction-flip comparisons between increasing and
decreasing generators require.  Magnitude bands keep pullbacks representable
for the decreasing built-in (whose inverse is exponential, so large images
underflow and tiny images lose relative precision).
"""

from __future__ import annotations

import math
import random
from typing import Callable

from .generator import Direction, PseudoContext, eval_g_inv

__all__ = [
    "random_poly_image",
    "random_exp_image",
    "random_image_function",
    "nonneg_extra_image",
    "pullback",
    "convexish_image",
    "integration_interval",
]

ImageFn = Callable[[float], float]


def random_poly_image(rng: random.Random, floor: float = 0.3) -> ImageFn:
    """Quadratic with non-negative coefficients, bounded into roughly
    [floor, 3.3] on windows within [0, 2.5]."""
    c0 = floor + rng.uniform(0.0, 0.5)
    c1 = rng.uniform(0.0, 0.35)
    c2 = rng.uniform(0.0, 0.35)
    return lambda x: c0 + c1 * x + c2 * x * x


def random_exp_image(rng: random.Random, floor: float = 0.3) -> ImageFn:
    """Shifted exponential ``floor + c * e**(d x)`` within the same band."""
    c = rng.uniform(0.1, 0.8)
    d = rng.uniform(-0.6, 0.6)
    return lambda x: floor + c * math.exp(d * x)


def random_image_function(rng: random.Random, floor: float = 0.3) -> ImageFn:
    if rng.random() < 0.5:
        return random_poly_image(rng, floor)
    return random_exp_image(rng, floor)


def nonneg_extra_image(rng: random.Random) -> ImageFn:
    """Small non-negative image function; adding it preserves image order."""
    c0 = rng.uniform(0.0, 0.6)
    c1 = rng.uniform(0.0, 0.4)
    return lambda x: c0 + c1 * x


def pullback(ctx: PseudoContext, phi: ImageFn) -> Callable[[float], float]:
    """Raw-space function ``g^{-1} o phi`` (maps into the domain by construction)."""
    return lambda x: eval_g_inv(ctx, phi(x))


def convexish_image(ctx: PseudoContext, rng: random.Random) -> ImageFn:
    """Image function whose pullback is pseudo-convex for ``ctx``.

    Pseudo-convexity of ``g^{-1} o phi`` reads as convexity of ``phi`` for
    increasing generators and concavity for decreasing ones.
    """
    if ctx.direction is Direction.INCREASING:
        c = rng.uniform(0.2, 0.9)
        d = rng.uniform(0.2, 0.9)
        e0 = rng.uniform(0.0, 0.5)
        return lambda x: e0 + c * math.exp(d * x)
    c = rng.uniform(0.3, 1.0)
    s = rng.uniform(0.2, 0.8)
    e0 = rng.uniform(0.1, 0.5)
    return lambda x: e0 + c * math.sqrt(x + s)


def integration_interval(ctx: PseudoContext, rng: random.Random,
                         min_len: float = 0.3) -> tuple[float, float]:
    """Random interval suitable for weighted integrals under ``ctx``: it must
    lie inside the generator domain and keep enough weight mass for stable
    negative-exponent seminorms."""
    dom = ctx.spec.domain
    if math.isinf(dom.hi):
        lo, hi = 0.1, 2.2
    else:
        width = dom.hi - dom.lo
        lo, hi = dom.lo + 0.15 * width, dom.hi - 0.02 * width
    a = rng.uniform(lo, hi - min_len)
    b = rng.uniform(a + min_len, hi)
    return a, b
