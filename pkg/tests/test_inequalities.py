import math
import random

import pytest

import pseudocalc as pc
from pseudocalc import ExpectedDirection, families

import oracles


def _img_rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


# ---------------------------------------------------------------------------
# Young
# ---------------------------------------------------------------------------


def test_young_classical(identity_ctx):
    v = pc.young(identity_ctx, 3.0, 4.0, 2.0)
    assert v.lhs_img == pytest.approx(12.0)
    assert v.rhs_img == pytest.approx(12.5)
    assert v.holds and v.expected is ExpectedDirection.LHS_LEQ_RHS


def test_young_equality_at_unit(all_ctxs):
    for ctx in all_ctxs:
        v = pc.young(ctx, ctx.one_g, ctx.one_g, 2.0)
        assert abs(v.margin) <= 1e-9


def test_young_power2_derived(power2_ctx):
    v = pc.young(power2_ctx, 2.0, 3.0, 3.0)
    assert v.lhs_img == pytest.approx(36.0)
    assert v.rhs_img == pytest.approx(64.0 / 3.0 + 18.0)
    assert v.holds


def test_young_reversed_for_small_p(identity_ctx):
    v = pc.young(identity_ctx, 3.0, 4.0, 0.5)
    U, V = 3.0, 4.0
    lhs, rhs = oracles.young_sides(U, V, 0.5)
    assert v.lhs_img == pytest.approx(lhs) and v.rhs_img == pytest.approx(rhs)
    assert v.expected is ExpectedDirection.LHS_GEQ_RHS and v.holds


def test_young_direction_flip_matched_images(power2_ctx, neglog_ctx):
    U, V = 1.3, 0.8
    for p in (2.0, 3.0, 0.5, -1.0):
        verdicts = []
        for ctx in (power2_ctx, neglog_ctx):
            a = pc.eval_g_inv(ctx, U)
            b = pc.eval_g_inv(ctx, V)
            verdicts.append(pc.young(ctx, a, b, p))
        inc, dec = verdicts
        assert inc.holds and dec.holds
        assert inc.expected is dec.expected.flipped()
        assert _img_rel(inc.lhs_img, dec.lhs_img) <= 1e-9
        assert _img_rel(inc.rhs_img, dec.rhs_img) <= 1e-9


def test_young_equality_case(identity_ctx):
    # g(a)**p == g(b)**p' makes the weighted mean inequality tight
    p = 0.5
    pp = pc.conjugate_index(p)
    U = 4.0
    V = U ** (p / pp)
    v = pc.young(identity_ctx, U, V, p)
    assert abs(v.margin) <= 1e-6


def test_young_negative_raw_side_is_none(power2_ctx):
    # p = -1 puts the image-space right side below zero for small images
    a = pc.eval_g_inv(power2_ctx, 0.09)
    b = pc.eval_g_inv(power2_ctx, 0.16)
    v = pc.young(power2_ctx, a, b, -1.0)
    assert v.rhs_img < 0.0
    assert v.rhs_raw is None
    assert v.holds  # reversed direction: lhs_img >= rhs_img


def test_young_parameter_errors(identity_ctx):
    with pytest.raises(pc.ParameterError):
        pc.young(identity_ctx, 1.0, 1.0, 1.0)
    with pytest.raises(pc.ParameterError):
        pc.young(identity_ctx, 1.0, 1.0, 0.0)
    with pytest.raises(pc.ParameterError):
        pc.young(identity_ctx, 0.0, 1.0, 0.5)  # vanishing image with p < 1


# ---------------------------------------------------------------------------
# Holder family
# ---------------------------------------------------------------------------


def test_holder_cauchy_schwarz_equality(identity_ctx):
    v = pc.holder(identity_ctx, lambda x: x, lambda x: x, 2.0, 0, 1)
    assert v.lhs_img == pytest.approx(1.0 / 3.0, rel=1e-9)
    assert abs(v.margin) <= 1e-9


def test_holder_classical(identity_ctx):
    v = pc.holder(identity_ctx, lambda x: x, lambda x: 1.0, 2.0, 0, 1)
    assert v.lhs_img == pytest.approx(0.5, rel=1e-9)
    assert v.rhs_img == pytest.approx(1.0 / math.sqrt(3.0), rel=1e-9)
    assert v.holds


def test_holder_power2_proportional_images(power2_ctx):
    v = pc.holder(power2_ctx, lambda x: x, lambda x: x, 2.0, 0, 1)
    assert abs(v.margin) <= 1e-7


def test_holder_reverse(identity_ctx):
    v = pc.holder(identity_ctx, lambda x: x, lambda x: 1.0, 0.5, 0, 1)
    assert v.expected is ExpectedDirection.LHS_GEQ_RHS
    assert v.lhs_img == pytest.approx(0.5, rel=1e-9)
    assert v.rhs_img == pytest.approx((2.0 / 3.0) ** 2, rel=1e-9)
    assert v.holds


def test_holder_against_oracle(all_ctxs):
    rng = random.Random(19)
    for ctx in all_ctxs:
        for p in (1.5, 2.0, 4.0, 0.5):
            a, b = families.integration_interval(ctx, rng)
            phi_f = families.random_image_function(rng)
            phi_h = families.random_image_function(rng)
            v = pc.holder(ctx, families.pullback(ctx, phi_f), families.pullback(ctx, phi_h),
                          p, a, b)
            lhs, rhs = oracles.holder_sides(ctx.name, phi_f, phi_h, p, a, b)
            assert _img_rel(v.lhs_img, lhs) <= 1e-7
            assert _img_rel(v.rhs_img, rhs) <= 1e-7
            assert v.holds


def test_holder_general_equality(identity_ctx):
    v = pc.holder_general(identity_ctx, lambda x: x, lambda x: x, 4.0, 4.0, 2.0, 0, 1)
    assert v.lhs_img == pytest.approx(1.0 / math.sqrt(5.0), rel=1e-9)
    assert abs(v.margin) <= 1e-9


def test_holder_general_specializes_to_holder(identity_ctx):
    # r = 1 with p = q = 2 reproduces the plain Holder comparison
    general = pc.holder_general(identity_ctx, lambda x: x, lambda x: 1.0, 2.0, 2.0, 1.0, 0, 1)
    plain = pc.holder(identity_ctx, lambda x: x, lambda x: 1.0, 2.0, 0, 1)
    assert general.lhs_img == pytest.approx(plain.lhs_img, rel=1e-9)
    assert general.rhs_img == pytest.approx(plain.rhs_img, rel=1e-9)


def test_holder_general_power2(power2_ctx):
    f = lambda x: x
    h = lambda x: x + 0.1
    v = pc.holder_general(power2_ctx, f, h, 4.0, 4.0, 2.0, 0, 1)
    assert v.holds and v.margin >= 0
    phi_f = lambda x: x * x
    phi_h = lambda x: (x + 0.1) ** 2
    lhs, rhs = oracles.holder_general_sides("power:2", phi_f, phi_h, 4.0, 4.0, 2.0, 0, 1)
    assert _img_rel(v.lhs_img, lhs) <= 1e-7
    assert _img_rel(v.rhs_img, rhs) <= 1e-7


def test_holder_general_parameter_errors(identity_ctx):
    with pytest.raises(pc.ParameterError):
        pc.holder_general(identity_ctx, lambda x: x, lambda x: x, 2.0, 2.0, 1.5, 0, 1)
    with pytest.raises(pc.ParameterError):
        pc.holder_general(identity_ctx, lambda x: x, lambda x: x, 1.0, 2.0, 1.0, 0, 1)


def test_interpolation_degenerate_equality(identity_ctx):
    v = pc.holder_interpolation(identity_ctx, lambda x: x, 0.5, 2.0, 2.0, 2.0, 0, 1)
    assert abs(v.margin) <= 1e-9


def test_interpolation_lyapunov(identity_ctx):
    v = pc.holder_interpolation(identity_ctx, lambda x: x, 0.5, 1.5, 3.0, 2.0, 0, 1)
    lhs, rhs = oracles.interpolation_sides("identity", lambda x: x, 0.5, 1.5, 3.0, 2.0, 0, 1)
    assert _img_rel(v.lhs_img, lhs) <= 1e-7
    assert _img_rel(v.rhs_img, rhs) <= 1e-7
    assert v.holds


def test_interpolation_power2(power2_ctx):
    t, p, q = 0.3, 2.0, 4.0
    r = 1.0 / (t / p + (1.0 - t) / q)
    v = pc.holder_interpolation(power2_ctx, lambda x: x + 0.5, t, p, q, r, 0, 1)
    assert v.holds


def test_interpolation_parameter_errors(identity_ctx):
    with pytest.raises(pc.ParameterError):
        pc.holder_interpolation(identity_ctx, lambda x: x, 1.5, 2.0, 2.0, 2.0, 0, 1)
    with pytest.raises(pc.ParameterError):
        pc.holder_interpolation(identity_ctx, lambda x: x, 0.5, 2.0, 3.0, 2.0, 0, 1)


# ---------------------------------------------------------------------------
# Minkowski
# ---------------------------------------------------------------------------


def test_minkowski_classical(identity_ctx):
    v = pc.minkowski(identity_ctx, lambda x: x, lambda x: 1.0, 2.0, 0, 1)
    assert v.lhs_img == pytest.approx(math.sqrt(7.0 / 3.0), rel=1e-9)
    assert v.rhs_img == pytest.approx(1.0 + 1.0 / math.sqrt(3.0), rel=1e-9)
    assert v.holds


def test_minkowski_zero_summand_equality(all_ctxs):
    for ctx in all_ctxs:
        f = families.pullback(ctx, lambda t: 0.5 + 0.2 * t)
        zero = lambda t: ctx.zero_g
        a, b = (0.2, 0.9) if not ctx.increasing else (0.0, 1.0)
        for p in (2.0, 0.5):
            v = pc.minkowski(ctx, f, zero, p, a, b)
            assert abs(v.margin) <= 1e-7


def test_minkowski_reversed(identity_ctx):
    v = pc.minkowski(identity_ctx, lambda x: x, lambda x: 1.0, 0.5, 0, 1)
    lhs, rhs = oracles.minkowski_sides("identity", lambda x: x, lambda x: 1.0, 0.5, 0, 1)
    assert v.expected is ExpectedDirection.LHS_GEQ_RHS
    assert _img_rel(v.lhs_img, lhs) <= 1e-7
    assert _img_rel(v.rhs_img, rhs) <= 1e-7
    assert v.holds


def test_minkowski_scaled_equality_case(all_ctxs):
    rng = random.Random(21)
    for ctx in all_ctxs:
        a, b = families.integration_interval(ctx, rng)
        phi = families.random_image_function(rng)
        lam = 0.7
        f = families.pullback(ctx, phi)
        h = families.pullback(ctx, lambda t: lam * phi(t))
        for p in (2.0, 0.5):
            v = pc.minkowski(ctx, f, h, p, a, b)
            assert abs(v.margin) <= 1e-6


def test_minkowski_negative_p_gate(identity_ctx):
    with pytest.raises(pc.ParameterError):
        pc.minkowski(identity_ctx, lambda x: x + 0.5, lambda x: 1.0, -1.0, 0, 1)
    v = pc.minkowski(identity_ctx, lambda x: x + 0.5, lambda x: 1.0, -1.0, 0, 1,
                     allow_negative_p=True)
    assert v.expected is ExpectedDirection.LHS_GEQ_RHS and v.holds


def test_minkowski_against_oracle(all_ctxs):
    rng = random.Random(25)
    for ctx in all_ctxs:
        for p in (1.5, 3.0, 0.25):
            a, b = families.integration_interval(ctx, rng)
            phi_f = families.random_image_function(rng)
            phi_h = families.random_image_function(rng)
            v = pc.minkowski(ctx, families.pullback(ctx, phi_f),
                             families.pullback(ctx, phi_h), p, a, b)
            lhs, rhs = oracles.minkowski_sides(ctx.name, phi_f, phi_h, p, a, b)
            assert _img_rel(v.lhs_img, lhs) <= 1e-7
            assert _img_rel(v.rhs_img, rhs) <= 1e-7
            assert v.holds


# ---------------------------------------------------------------------------
# Pseudo-convexity
# ---------------------------------------------------------------------------


def test_convexity_classical(identity_ctx):
    rep = pc.is_pseudo_convex(identity_ctx, lambda x: x * x, 0, 1)
    assert rep.is_pseudo_convex and rep.worst_violation <= 1e-12


def test_concave_function_not_convex(identity_ctx):
    rep = pc.is_pseudo_convex(identity_ctx, lambda x: math.sqrt(x), 0, 1)
    assert not rep.is_pseudo_convex
    assert rep.witness is not None
    x, y, lam = rep.witness
    assert 0 <= x <= 1 and 0 <= y <= 1 and 0 <= lam <= 1


def test_concave_sense(identity_ctx):
    rep = pc.is_pseudo_convex(identity_ctx, lambda x: math.sqrt(x), 0, 1, sense="concave")
    assert rep.is_pseudo_convex


def test_exp_composite_is_pseudo_convex(power2_ctx, identity_ctx):
    # f(x) = pseudo-exp of the preimage of x has image e**x: pseudo-convex
    # for increasing generators
    for ctx in (identity_ctx, power2_ctx):
        f = lambda x: pc.pseudo_exp(ctx, pc.eval_g_inv(ctx, x))
        rep = pc.is_pseudo_convex(ctx, f, 0, 1)
        assert rep.is_pseudo_convex


def test_neglog_pseudo_convexity_means_concave_image(neglog_ctx):
    rng = random.Random(27)
    phi = families.convexish_image(neglog_ctx, rng)
    rep = pc.is_pseudo_convex(neglog_ctx, families.pullback(neglog_ctx, phi), 0, 2)
    assert rep.is_pseudo_convex
    # and a convex image is NOT pseudo-convex under a decreasing generator
    rep = pc.is_pseudo_convex(
        neglog_ctx, families.pullback(neglog_ctx, lambda t: 0.2 + t * t), 0, 2
    )
    assert not rep.is_pseudo_convex


def test_convexity_grid_validation(identity_ctx):
    with pytest.raises(pc.ParameterError):
        pc.is_pseudo_convex(identity_ctx, lambda x: x, 0, 1, grid_x=1)


# ---------------------------------------------------------------------------
# Hermite-Hadamard
# ---------------------------------------------------------------------------


def test_hh_classical(identity_ctx):
    chain = pc.hermite_hadamard(identity_ctx, lambda x: x * x, 0, 1)
    assert chain.left == pytest.approx(0.25)
    assert chain.mid == pytest.approx(1.0 / 3.0, rel=1e-9)
    assert chain.right == pytest.approx(0.5)
    assert chain.holds


def test_hh_affine_equality(identity_ctx):
    chain = pc.hermite_hadamard(identity_ctx, lambda x: x, 0, 1)
    assert chain.left == pytest.approx(0.5, rel=1e-9)
    assert chain.mid == pytest.approx(0.5, rel=1e-9)
    assert chain.right == pytest.approx(0.5, rel=1e-9)


def test_hh_power2_derived(power2_ctx):
    chain = pc.hermite_hadamard(power2_ctx, lambda x: x + 1.0, 0, 2)
    assert pc.eval_g(power2_ctx, chain.left) == pytest.approx(4.0, rel=1e-9)
    assert pc.eval_g(power2_ctx, chain.mid) == pytest.approx(13.0 / 3.0, rel=1e-7)
    assert pc.eval_g(power2_ctx, chain.right) == pytest.approx(5.0, rel=1e-9)
    assert chain.holds


def test_hh_neglog(neglog_ctx):
    rng = random.Random(33)
    phi = families.convexish_image(neglog_ctx, rng)
    chain = pc.hermite_hadamard(neglog_ctx, families.pullback(neglog_ctx, phi), 0.1, 1.9)
    assert chain.holds
    # the raw chain ascends regardless of generator direction
    assert chain.left <= chain.mid + 1e-9 and chain.mid <= chain.right + 1e-9


def test_hh_concave_sense(identity_ctx):
    chain = pc.hermite_hadamard(identity_ctx, lambda x: math.sqrt(x), 0, 1, sense="concave")
    assert chain.holds
    assert chain.left >= chain.mid >= chain.right


def test_hh_refined_midpoint_values(identity_ctx):
    chain = pc.hh_refined(identity_ctx, lambda x: x * x, 0, 1, 0.5)
    assert chain.refined_lower == pytest.approx(0.3125, abs=1e-12)
    assert chain.refined_upper == pytest.approx(0.375, abs=1e-12)
    assert chain.holds
    assert chain.min_margin >= -1e-8


def test_hh_refined_boundary_lambdas(identity_ctx):
    f = lambda x: x * x
    for lam in (0.0, 1.0):
        chain = pc.hh_refined(identity_ctx, f, 0, 1, lam)
        assert chain.refined_lower == pytest.approx(chain.left, rel=1e-12)
        assert chain.refined_upper == pytest.approx(chain.right, rel=1e-12)
        assert chain.holds


def test_hh_refined_oracle_images(power2_ctx):
    phi = lambda x: 0.3 + 0.5 * math.exp(0.6 * x)
    f = families.pullback(power2_ctx, phi)
    lam = 0.3
    chain = pc.hh_refined(power2_ctx, f, 0.2, 1.4, lam)
    lower_img, upper_img = oracles.hh_refined_images(phi, 0.2, 1.4, lam)
    assert _img_rel(pc.eval_g(power2_ctx, chain.refined_lower), lower_img) <= 1e-9
    assert _img_rel(pc.eval_g(power2_ctx, chain.refined_upper), upper_img) <= 1e-9
    assert chain.holds


def test_hh_refined_lambda_validation(identity_ctx):
    with pytest.raises(pc.ParameterError):
        pc.hh_refined(identity_ctx, lambda x: x * x, 0, 1, 1.5)


def test_hh_violated_for_nonconvex(identity_ctx):
    chain = pc.hermite_hadamard(identity_ctx, lambda x: math.sqrt(x), 0, 1)
    assert not chain.holds


# ---------------------------------------------------------------------------
# Means chain
# ---------------------------------------------------------------------------


def test_gla_classical_values(identity_ctx):
    res = pc.gla_means(identity_ctx, math.e, 1.0)
    geo, log = res.geometric_log, res.log_arithmetic
    assert geo.lhs_img == pytest.approx(math.sqrt(math.e), rel=1e-12)
    assert geo.rhs_img == pytest.approx(math.e - 1.0, rel=1e-12)
    assert log.rhs_img == pytest.approx((1.0 + math.e) / 2.0, rel=1e-12)
    assert res.holds and not res.swapped


def test_gla_4_2(identity_ctx):
    res = pc.gla_means(identity_ctx, 4.0, 2.0)
    assert res.geometric_log.lhs_img == pytest.approx(math.sqrt(8.0), rel=1e-12)
    assert res.geometric_log.rhs_img == pytest.approx(2.0 / math.log(2.0), rel=1e-12)
    assert res.log_arithmetic.rhs_img == pytest.approx(3.0, rel=1e-12)
    assert res.holds


def test_gla_swap(identity_ctx):
    swapped = pc.gla_means(identity_ctx, 2.0, 4.0)
    direct = pc.gla_means(identity_ctx, 4.0, 2.0)
    assert swapped.swapped and not direct.swapped
    assert swapped.geometric_log.lhs_img == pytest.approx(direct.geometric_log.lhs_img)
    assert swapped.log_arithmetic.margin == pytest.approx(direct.log_arithmetic.margin)


def test_gla_power2_image_reduction(power2_ctx):
    u = pc.eval_g_inv(power2_ctx, math.e**2)
    v = pc.eval_g_inv(power2_ctx, math.e)
    res = pc.gla_means(power2_ctx, u, v)
    geo_img, log_img, arith_img = oracles.gla_images(math.e**2, math.e)
    assert res.geometric_log.lhs_img == pytest.approx(geo_img, rel=1e-9)
    assert res.geometric_log.rhs_img == pytest.approx(log_img, rel=1e-9)
    assert res.log_arithmetic.rhs_img == pytest.approx(arith_img, rel=1e-9)
    assert res.holds


def test_gla_preconditions(identity_ctx, neglog_ctx):
    with pytest.raises(pc.ParameterError):
        pc.gla_means(neglog_ctx, 0.3, 0.5)  # decreasing generator
    with pytest.raises(pc.ParameterError):
        pc.gla_means(identity_ctx, 2.0, 2.0)
    with pytest.raises(pc.RangeError):
        pc.gla_means(identity_ctx, 0.5, 2.0)  # image below 1: pseudo-ln undefined


def test_hh_pseudo_affine_equality(power2_ctx):
    # affine image: the whole chain degenerates to equality
    f = families.pullback(power2_ctx, lambda t: 0.4 + 0.9 * t)
    chain = pc.hermite_hadamard(power2_ctx, f, 0.2, 1.6)
    for v in chain.verdicts:
        assert abs(v.margin) <= 1e-6


def test_verdict_raw_image_roundtrip(power2_ctx, neglog_ctx):
    for ctx in (power2_ctx, neglog_ctx):
        f = families.pullback(ctx, lambda t: 0.5 + 0.3 * t)
        h = families.pullback(ctx, lambda t: 0.6 + 0.1 * t)
        v = pc.holder(ctx, f, h, 2.0, 0.2, 0.9)
        assert pc.eval_g(ctx, v.lhs_raw) == pytest.approx(v.lhs_img, rel=1e-9)
        assert pc.eval_g(ctx, v.rhs_raw) == pytest.approx(v.rhs_img, rel=1e-9)


# ---------------------------------------------------------------------------
# Direction flip across the theorem families
# ---------------------------------------------------------------------------


def test_direction_flip_all_families(power2_ctx, neglog_ctx):
    rng = random.Random(43)
    a, b = 0.2, 0.9  # inside both domains
    phi_f = families.random_image_function(rng)
    phi_h = families.random_image_function(rng)

    def run(ctx):
        f = families.pullback(ctx, phi_f)
        h = families.pullback(ctx, phi_h)
        return [
            pc.young(ctx, pc.eval_g_inv(ctx, 1.2), pc.eval_g_inv(ctx, 0.7), 2.0),
            pc.young(ctx, pc.eval_g_inv(ctx, 1.2), pc.eval_g_inv(ctx, 0.7), 0.5),
            pc.holder(ctx, f, h, 2.0, a, b),
            pc.holder(ctx, f, h, 0.5, a, b),
            pc.holder_general(ctx, f, h, 4.0, 4.0, 2.0, a, b),
            pc.holder_interpolation(ctx, f, 0.5, 1.5, 3.0, 2.0, a, b),
            pc.minkowski(ctx, f, h, 2.0, a, b),
            pc.minkowski(ctx, f, h, 0.5, a, b),
        ]

    increasing = run(power2_ctx)
    decreasing = run(neglog_ctx)
    for vi, vd in zip(increasing, decreasing):
        assert vi.holds, vi.name
        assert vd.holds, vd.name
        assert vi.expected is vd.expected.flipped(), vi.name
