import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from glspace import (ConfigurationError, DomainError, GridFunction,
                     InvariantViolation, WeightSpec, anisotropic_norm,
                     decreasing_rearrangement, lorentz_norm, lp_norm,
                     power_tail, weighted_lp_norm)


def indicator(r):
    return lambda x: (np.abs(x) < r).astype(float)


def test_lp_indicator_measure_two():
    # grid aligned with +-1 so the sampled measure is exact
    f = GridFunction.sample(indicator(1.0), 4.0, 1024, 1)
    assert lp_norm(f, 2.0) == pytest.approx(math.sqrt(2.0), abs=1e-6)


@pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 3.0, 7.0])
def test_lp_gaussian_closed_form(p):
    # int exp(-p pi x^2) dx = p^(-1/2), so |f|_p = p^(-1/(2p))
    f = GridFunction.sample(lambda x: np.exp(-np.pi * x ** 2), 10.0, 4096, 1)
    assert lp_norm(f, p) == pytest.approx(p ** (-1 / (2 * p)), abs=1e-6)


def test_lp_dilation_scaling():
    f = GridFunction.sample(lambda x: np.exp(-np.pi * x ** 2), 10.0, 2048, 1)
    g = GridFunction.sample(lambda x: np.exp(-np.pi * (x / 2) ** 2), 20.0, 4096, 1)
    for p in (1.0, 2.0, 3.5):
        assert lp_norm(g, p) == pytest.approx(2 ** (1 / p) * lp_norm(f, p), abs=1e-6)


def test_lp_rejects_small_p_and_supports_inf():
    f = GridFunction.sample(indicator(1.0), 2.0, 64, 1)
    with pytest.raises(DomainError):
        lp_norm(f, 0.5)
    assert lp_norm(f, math.inf) == 1.0


def test_lp_large_exponent_no_underflow():
    f = GridFunction.sample(lambda x: 0.5 * np.exp(-x ** 2), 8.0, 1024, 1)
    v = lp_norm(f, 1000.0)
    assert 0.4 < v < 0.5


def test_weighted_zero_weight_equals_lp():
    f = GridFunction.sample(lambda x: np.exp(-x ** 2), 6.0, 512, 1)
    w = WeightSpec(alpha=(0.0,), beta=(0.0,))
    assert weighted_lp_norm(f, 2.0, w, "beta-positive") == pytest.approx(
        lp_norm(f, 2.0), rel=1e-12)


def test_weighted_radial_mu_ramp():
    # int_0^1 x dx = 1/2 (midpoint rule is exact on linear integrands)
    f = GridFunction.sample(lambda x: ((x > 0) & (x < 1)).astype(float), 2.0, 512, 1)
    w = WeightSpec(mu=1.0)
    assert weighted_lp_norm(f, 1.0, w, "radial-mu") == pytest.approx(0.5, abs=1e-6)


def test_weighted_power_tail_counterexample_norm():
    # | |x|^b f0 |_p^p = 2/(p(1-b)-1) for f0 = 1/|x| on |x|>=1, b=1/4, p=2
    R, N = 16.0, 2048
    f = GridFunction.sample(
        lambda x: np.where(np.abs(x) >= 1.0, 1.0 / np.maximum(np.abs(x), 1e-300), 0.0),
        R, N, 1, tail=power_tail(1.0, 1.0, start=R, sides=2))
    w = WeightSpec(alpha=(0.25,), beta=(0.25,))
    val = weighted_lp_norm(f, 2.0, w, "beta-positive")
    assert val == pytest.approx(2.0, abs=1e-3)


def test_weight_spec_validation():
    with pytest.raises(DomainError):
        WeightSpec(alpha=(0.7,), beta=(0.7,))
    with pytest.raises(DomainError):
        WeightSpec(alpha=(1.0,), beta=(0.0,))


def test_origin_sample_rejected():
    with pytest.raises(InvariantViolation):
        GridFunction(np.ones(5), (-1.0,), (1.0,), (1,))


def test_rearrangement_indicator():
    f = GridFunction.sample(indicator(0.5), 2.0, 256, 1)
    star = decreasing_rearrangement(f)
    t = star.axis_centers(0)
    assert np.all(star.samples[t < 1.0] == 1.0)
    assert np.all(star.samples[t > 1.0] == 0.0)


def test_rearrangement_preserves_lp():
    rng = np.random.default_rng(3)
    for _ in range(20):
        vals = rng.standard_normal(128)
        f = GridFunction(vals, (-2.0,), (2.0,), (1,))
        star = decreasing_rearrangement(f)
        for p in (1.0, 2.0, 3.7):
            assert lp_norm(star, p) == pytest.approx(lp_norm(f, p), rel=1e-12)


def test_rearrangement_tent_profile():
    # level sets of 1-|x| on [-1,1] give f*(t) = 1 - t/2 on [0,2)
    f = GridFunction.sample(lambda x: np.maximum(1 - np.abs(x), 0.0), 2.0, 2048, 1)
    star = decreasing_rearrangement(f)
    t = star.axis_centers(0)
    m = t < 2.0
    assert np.max(np.abs(star.samples[m] - (1 - t[m] / 2))) < 2 * star.h[0]


def test_rearrangement_grid_refinement_l1():
    f1 = GridFunction.sample(lambda x: np.maximum(1 - np.abs(x), 0.0), 2.0, 256, 1)
    f2 = GridFunction.sample(lambda x: np.maximum(1 - np.abs(x), 0.0), 2.0, 512, 1)
    s1, s2 = decreasing_rearrangement(f1), decreasing_rearrangement(f2)
    t = np.linspace(0.01, 3.9, 400)
    v1 = s1.samples[np.minimum((t / s1.h[0]).astype(int), s1.shape[0] - 1)]
    v2 = s2.samples[np.minimum((t / s2.h[0]).astype(int), s2.shape[0] - 1)]
    assert np.mean(np.abs(v1 - v2)) < 4 * f1.h[0]


@pytest.mark.parametrize("p,q", [(2.0, 1.5), (3.0, 2.0), (2.0, 0.7)])
def test_lorentz_indicator_value(p, q):
    # int_0^1 t^(q/p - 1) dt = p/q for an indicator of measure 1
    f = GridFunction.sample(indicator(0.5), 2.0, 512, 1)
    assert lorentz_norm(f, p, q) == pytest.approx((p / q) ** (1 / q), abs=1e-4)


def test_lorentz_qp_equals_lp():
    f = GridFunction.sample(lambda x: np.exp(-x ** 2), 6.0, 512, 1)
    for p in (1.5, 2.0, 4.0):
        assert lorentz_norm(f, p, p) == pytest.approx(lp_norm(f, p), rel=1e-6)


def test_lorentz_weak_indicator():
    f = GridFunction.sample(indicator(1.5), 4.0, 512, 1)
    assert lorentz_norm(f, 2.0, math.inf) == pytest.approx(math.sqrt(3.0), rel=1e-12)


def test_lorentz_domain_errors():
    f = GridFunction.sample(indicator(1.0), 2.0, 64, 1)
    with pytest.raises(DomainError):
        lorentz_norm(f, 0.5, 2.0)
    with pytest.raises(DomainError):
        lorentz_norm(f, 2.0, 0.0)


def test_anisotropic_factorization():
    # |g1 (x) g2|_{p1,p2} = |g1|_{p1} |g2|_{p2}
    g1 = GridFunction.sample(lambda x: np.exp(-x ** 2), 6.0, 256, 1)
    g2 = GridFunction.sample(lambda x: np.maximum(1 - np.abs(x), 0.0), 6.0, 256, 1)
    f = GridFunction(np.outer(g1.samples, g2.samples), (-6.0, -6.0), (6.0, 6.0), (1, 1))
    got = anisotropic_norm(f, (1.5, 3.0))
    assert got == pytest.approx(lp_norm(g1, 1.5) * lp_norm(g2, 3.0), rel=1e-6)


def test_anisotropic_equal_exponents_is_lp():
    rng = np.random.default_rng(0)
    f = GridFunction(rng.random((16, 16)), (0.0, 0.0), (1.0, 1.0), (1, 1))
    for p in (1.0, 2.0, 3.0):
        assert anisotropic_norm(f, (p, p)) == pytest.approx(lp_norm(f, p), rel=1e-12)


def test_anisotropic_triangle_order_dependence():
    # |1_{x<y}|_{1,2} = 3^(-1/2) while |1_{x<y}|_{2,1} = 2/3
    N = 1024
    h = 1.0 / N
    x = (np.arange(N) + 0.5) * h
    f = GridFunction((x[:, None] < x[None, :]).astype(float),
                     (0.0, 0.0), (1.0, 1.0), (1, 1))
    v12 = anisotropic_norm(f, (1.0, 2.0))
    v21 = anisotropic_norm(f, (2.0, 1.0))
    assert v12 == pytest.approx(3 ** -0.5, abs=1e-3)
    assert v21 == pytest.approx(2.0 / 3.0, abs=1e-3)
    assert abs(v12 - v21) / v21 > 0.01


def brute_force_mixed_norm(samples, hs, blocks, p_vec):
    """Nested pure-Python loops following the iterated-integral definition."""
    import itertools

    def reduce_block(arr, m, vol):
        out_shape = arr.shape[m:]
        out = np.empty(out_shape)
        for idx in itertools.product(*[range(s) for s in out_shape]):
            total = 0.0
            for bidx in itertools.product(*[range(s) for s in arr.shape[:m]]):
                total += arr[bidx + idx]
            out[idx] = total * vol
        return out

    acc = np.abs(samples).astype(float) ** p_vec[0]
    off = 0
    for j, m in enumerate(blocks):
        if j > 0:
            acc = acc ** (p_vec[j] / p_vec[j - 1])
        vol = float(np.prod([hs[off + k] for k in range(m)]))
        acc = reduce_block(acc, m, vol)
        off += m
    return float(acc) ** (1.0 / p_vec[-1])


@pytest.mark.parametrize("shape,blocks,p_vec", [
    ((6, 8), (1, 1), (1.5, 2.5)),
    ((4, 4, 6), (2, 1), (2.0, 3.0)),
    ((4, 4, 4), (1, 2), (1.0, 2.0)),
])
def test_anisotropic_matches_brute_force(shape, blocks, p_vec):
    rng = np.random.default_rng(7)
    f = GridFunction(rng.random(shape), tuple([0.0] * len(shape)),
                     tuple(float(s) / 8 for s in shape), blocks)
    got = anisotropic_norm(f, p_vec)
    want = brute_force_mixed_norm(np.asarray(f.samples), f.h, blocks, p_vec)
    assert got == pytest.approx(want, rel=1e-12)


def test_anisotropic_block_mismatch():
    f = GridFunction(np.ones((4, 4)), (0.0, 0.0), (1.0, 1.0), (1, 1))
    with pytest.raises(ConfigurationError):
        anisotropic_norm(f, (2.0,), block_dims=(1,))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 31 - 1),
       st.floats(1.0, 4.0), st.floats(0.1, 4.0))
def test_hoelder_consistency(seed, p, gap):
    """|f|_p <= (2R)^{n(1/p - 1/s)} |f|_s for p < s on the truncated box."""
    s = p + gap
    rng = np.random.default_rng(seed)
    f = GridFunction(rng.standard_normal(64), (-1.5,), (1.5,), (1,))
    lhs = lp_norm(f, p)
    rhs = 3.0 ** (1 / p - 1 / s) * lp_norm(f, s)
    assert lhs <= rhs * (1 + 1e-9)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 31 - 1), st.floats(-5.0, 5.0))
def test_lp_homogeneity(seed, c):
    rng = np.random.default_rng(seed)
    f = GridFunction(rng.standard_normal(64), (-1.0,), (1.0,), (1,))
    g = f.with_samples(c * np.asarray(f.samples))
    assert lp_norm(g, 2.5) == pytest.approx(abs(c) * lp_norm(f, 2.5), abs=1e-12)


def test_quadrature_convergence_rate():
    # smooth profile with definite midpoint-error sign: error shrinks 4x per
    # halving, far beyond the 1.8x floor
    exact = 2.0 / 3.0  # int_{-1}^{1} x^2 dx
    errs = []
    for N in (16, 32, 64):
        f = GridFunction.sample(lambda x: x ** 2, 1.0, N, 1)
        errs.append(abs(lp_norm(f, 1.0) - exact))
    assert errs[0] / errs[1] >= 1.8
    assert errs[1] / errs[2] >= 1.8
    # discontinuous profile: first order, error bounded by h at every level
    for N in (128, 256, 512):
        f = GridFunction.sample(lambda x: (np.abs(x) < 0.77).astype(float), 2.0, N, 1)
        assert abs(lp_norm(f, 2.0) - math.sqrt(2 * 0.77)) <= f.h[0]


def test_binary_round_trip():
    rng = np.random.default_rng(1)
    f = GridFunction(rng.standard_normal((8, 12)), (-1.0, 0.0), (1.0, 3.0), (1, 1),
                     label="roundtrip")
    g = GridFunction.from_binary(f.to_binary())
    assert g.lo == f.lo and g.hi == f.hi and g.blocks == f.blocks
    np.testing.assert_array_equal(np.asarray(g.samples), np.asarray(f.samples))


def test_binary_round_trip_complex():
    rng = np.random.default_rng(2)
    vals = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    f = GridFunction(vals, (0.0,), (2.0,), (1,))
    g = GridFunction.from_binary(f.to_binary())
    np.testing.assert_array_equal(np.asarray(g.samples), np.asarray(f.samples))


def test_csv_round_trip_1d_and_2d():
    f = GridFunction.sample(lambda x: np.exp(-x ** 2), 2.0, 32, 1)
    g = GridFunction.from_csv(f.to_csv())
    np.testing.assert_allclose(np.asarray(g.samples), np.asarray(f.samples), rtol=1e-15)
    assert g.lo == pytest.approx(f.lo)
    f2 = GridFunction.sample(lambda x, y: x + 2 * y, 1.0, 8, 2)
    g2 = GridFunction.from_csv(f2.to_csv())
    np.testing.assert_allclose(np.asarray(g2.samples), np.asarray(f2.samples),
                               rtol=1e-15)


def test_tail_dilation_consistency():
    # tail of x -> f(2x) matches the dilated grid's analytic correction
    R = 8.0
    f = GridFunction.sample(
        lambda x: np.where(np.abs(x) >= 1, 1 / np.maximum(np.abs(x), 1e-300), 0.0),
        R, 1024, 1, tail=power_tail(1.0, 1.0, start=R))
    t2 = f.tail.dilated(2.0)
    assert t2.start == pytest.approx(R / 2)
    # (T_2 f)(x) = f(2x), so the dilated tail at x equals the old tail at 2x
    assert float(t2.value(R)) == pytest.approx(float(f.tail.value(2 * R)))
