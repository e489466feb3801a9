import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from glspace import (BoydIndices, ConfigurationError, DomainError,
                     ExponentMap, GridFunction, InvariantViolation, ProductPsi,
                     PsiFunction, boyd_indices, combined_constant,
                     conjugate_exponent, exponent_grid, fundamental_function,
                     gls_norm, interpolation_psi, lp_norm, psi_eval,
                     theta_of_q, transform_moment)

INF = math.inf


# -- evaluation ------------------------------------------------------------------

def test_degenerate_values():
    psi2 = PsiFunction.degenerate(2.0)
    assert psi_eval(psi2, 2.0) == 1.0
    assert psi_eval(psi2, 3.0) == INF


def test_conjugate_power_value():
    psi = PsiFunction.conjugate_power(1.0, 1.0, (1.0, INF))
    assert psi_eval(psi, 2.0) == pytest.approx(2.0, rel=1e-15)


def test_tabulated_linear_reproduced():
    grid = np.geomspace(1.0001, 3.9999, 4097)
    psi = PsiFunction.from_table(grid, grid, support=(1.0, 4.0))
    assert psi_eval(psi, 2.5) == pytest.approx(2.5, abs=1e-6)


def test_outside_support_is_infinite():
    psi = PsiFunction.constant(1.0, (1.5, 3.0))
    assert psi_eval(psi, 1.2) == INF
    assert psi_eval(psi, 3.5) == INF
    assert psi_eval(psi, 1.5) == INF  # open interval


def test_p_below_one_rejected():
    psi = PsiFunction.constant(1.0, (1.0, 2.0))
    with pytest.raises(DomainError):
        psi_eval(psi, 0.8)


def test_nonpositive_rule_rejected():
    psi = PsiFunction.from_callable(lambda p: p - 2.0, (1.0, 3.0))
    with pytest.raises(InvariantViolation):
        psi_eval(psi, 1.5)


def test_json_round_trip():
    for psi in (PsiFunction.constant(2.0, (1.0, INF)),
                PsiFunction.power(1.5, 0.5, (2.0, 8.0)),
                PsiFunction.conjugate_power(1.0, 2.0, (1.0, 4.0)),
                PsiFunction.degenerate(3.0),
                PsiFunction.from_table([1.5, 2.0, 3.0], [1.0, 2.0, 1.5])):
        back = PsiFunction.from_json(psi.to_json())
        for p in (1.7, 2.5, 2.9):
            assert psi_eval(back, p) == pytest.approx(psi_eval(psi, p), rel=1e-9)


def test_json_serializes_derived_as_table():
    psi = PsiFunction.from_callable(lambda p: math.sqrt(p), (1.0, 4.0))
    data = psi.to_json()
    assert data["kind"] == "table"
    back = PsiFunction.from_json(data)
    assert psi_eval(back, 2.0) == pytest.approx(math.sqrt(2.0), rel=1e-4)


# -- exponent maps ------------------------------------------------------------------

@pytest.mark.parametrize("qmap", [
    ExponentMap.identity(1.5, 6.0),
    ExponentMap.conjugate(1.2, 3.0),
    ExponentMap.conjugate(1.0, INF),
    ExponentMap.pbo(0.25, 0.25, 1),
    ExponentMap.riesz_thorin(1.5, 2.5, 2.0, 4.0),
    ExponentMap.riesz_thorin(2.0, 4.0, 2.0, INF),
    ExponentMap.from_table([1.0, 2.0, 3.0, 4.0], [1.0, 4.0, 9.0, 16.0]),
])
def test_roundtrip_identity(qmap):
    # check_roundtrip raises when the error exceeds 1e-12 relative to the
    # exponent scale (the conjugate map is ill conditioned near p = 1)
    qmap.check_roundtrip(tol=1e-12)


def test_riesz_thorin_matches_closed_form():
    # r_RT(q) = p0 p1 (q1-q0) q / (p0 q1 (q-q0) + p1 q0 (q1-q))
    p0, p1, q0, q1 = 1.5, 2.5, 2.0, 4.0
    m = ExponentMap.riesz_thorin(p0, p1, q0, q1)
    for q in (2.3, 3.0, 3.9):
        closed = p0 * p1 * (q1 - q0) * q / (p0 * q1 * (q - q0) + p1 * q0 * (q1 - q))
        assert m.r(q) == pytest.approx(closed, rel=1e-14)


def test_conjugate_map_through_infinity_endpoint():
    m = ExponentMap.riesz_thorin(2.0, 1.0, 2.0, INF)
    for q in (2.5, 4.0, 10.0):
        assert m.r(q) == pytest.approx(q / (q - 1.0), rel=1e-14)


def test_pbo_map_codomain():
    m = ExponentMap.pbo(0.25, 0.25, 1)
    assert m.a == pytest.approx(4.0 / 3.0)
    assert m.d == pytest.approx(4.0)  # q -> n/alpha as p -> p0
    assert m.q(2.0) == pytest.approx(2.0)


def test_table_map_needs_monotone():
    with pytest.raises(ConfigurationError):
        ExponentMap.from_table([1.0, 2.0, 3.0], [1.0, 3.0, 2.0])


# -- transforms ----------------------------------------------------------------------

def test_transform_identity():
    psi = PsiFunction.power(1.0, 1.0, (1.0, 4.0))
    out = transform_moment(psi, lambda p: 1.0, ExponentMap.identity(1.0, 4.0))
    for p in (1.5, 2.0, 3.9):
        assert psi_eval(out, p) == pytest.approx(psi_eval(psi, p), rel=1e-14)


def test_transform_maximal_factor():
    psi = PsiFunction.constant(1.0, (1.0, INF))
    out = transform_moment(psi, lambda p: p / (p - 1.0),
                           ExponentMap.identity(1.0, INF))
    assert psi_eval(out, 2.0) == pytest.approx(2.0, rel=1e-14)


def test_transform_pbo_factor():
    psi = PsiFunction.constant(1.0, (2.0, INF))
    out = transform_moment(psi, lambda p: p / (p - 2.0),
                           ExponentMap.identity(2.0, INF))
    assert psi_eval(out, 4.0) == pytest.approx(2.0, rel=1e-14)


def test_transform_support_mismatch():
    psi = PsiFunction.constant(1.0, (1.0, 3.0))
    with pytest.raises(ConfigurationError):
        transform_moment(psi, lambda p: 1.0, ExponentMap.identity(1.0, 4.0))
    with pytest.raises(ConfigurationError):
        transform_moment(PsiFunction.degenerate(2.0), lambda p: 1.0,
                         ExponentMap.identity(1.0, 4.0))


def test_transform_roundtrip_recovers_psi_times_K():
    # psi1(q(p)) must equal K(p) psi(p) on a shared grid
    psi = PsiFunction.power(1.0, 0.5, (1.2, 2.0))
    K = lambda p: 1.0 + p ** 2
    qmap = ExponentMap.conjugate(1.2, 2.0)
    psi1 = transform_moment(psi, K, qmap)
    for p in exponent_grid(1.2, 2.0, 17):
        p = float(p)
        assert psi_eval(psi1, qmap.q(p)) == pytest.approx(
            K(p) * psi_eval(psi, p), rel=1e-12)


def test_interpolation_theta_hand_value():
    assert theta_of_q(3.0, 2.0, 4.0) == pytest.approx(2.0 / 3.0, rel=1e-15)


def test_interpolation_riesz_thorin_unit_bounds():
    psi = PsiFunction.constant(1.0, (1.5, 2.5))
    out = interpolation_psi("riesz-thorin", psi, 1.5, 2.5, 2.0, 4.0, 1.0, 1.0)
    for q in (2.2, 3.0, 3.8):
        assert psi_eval(out, q) == pytest.approx(2.0, rel=1e-12)


def test_interpolation_marcinkiewicz_midpoint():
    psi = PsiFunction.constant(1.0, (1.5, 2.5))
    out = interpolation_psi("marcinkiewicz", psi, 1.5, 2.5, 2.0, 4.0, 1.0, 1.0)
    assert psi_eval(out, 3.0) == pytest.approx(1.0, rel=1e-12)


def test_interpolation_marcinkiewicz_diverges_at_endpoints():
    psi = PsiFunction.constant(1.0, (1.5, 2.5))
    out = interpolation_psi("marcinkiewicz", psi, 1.5, 2.5, 2.0, 4.0, 1.0, 1.0)
    eps = (4.0 - 2.0) / 100
    assert psi_eval(out, 2.0 + eps) > 10.0 * psi_eval(out, 3.0)
    assert psi_eval(out, 4.0 - eps) > 10.0 * psi_eval(out, 3.0)


def test_interpolation_endpoint_ordering_rejected():
    psi = PsiFunction.constant(1.0, (1.5, 2.5))
    with pytest.raises(ConfigurationError):
        interpolation_psi("riesz-thorin", psi, 2.5, 1.5, 2.0, 4.0, 1.0, 1.0)
    with pytest.raises(ConfigurationError):
        interpolation_psi("marcinkiewicz", psi, 1.5, 2.5, 2.0, INF, 1.0, 1.0)


# -- fundamental function --------------------------------------------------------------

def test_fundamental_degenerate_exact():
    assert fundamental_function(PsiFunction.degenerate(3.0), 8.0) == 2.0


def test_fundamental_constant_on_1_inf():
    psi = PsiFunction.constant(1.0, (1.0, INF))
    assert fundamental_function(psi, 1.0) == pytest.approx(1.0, rel=1e-12)


def test_fundamental_endpoint_limit():
    # sup over (1,2) of 4^(1/p) is attained as p -> 1+
    psi = PsiFunction.constant(1.0, (1.0, 2.0))
    assert fundamental_function(psi, 4.0) == pytest.approx(4.0, abs=1e-3)


def test_fundamental_rejects_nonpositive_delta():
    with pytest.raises(DomainError):
        fundamental_function(PsiFunction.degenerate(2.0), 0.0)


@settings(max_examples=20, deadline=None)
@given(st.floats(1.1, 6.0), st.floats(1.05, 3.0))
def test_fundamental_monotone_in_delta(b, ratio):
    psi = PsiFunction.power(1.0, 0.3, (1.0, b))
    deltas = np.geomspace(1e-3, 1e3, 13)
    vals = [fundamental_function(psi, float(d), count=128) for d in deltas]
    assert all(v2 >= v1 * (1 - 1e-12) for v1, v2 in zip(vals, vals[1:]))


# -- combined constant ------------------------------------------------------------------

def test_combined_identity_pair():
    psi = PsiFunction.constant(1.0, (1.0, 2.0))
    assert combined_constant(lambda p, q: 1.0, psi, psi,
                             lambda p: p) == pytest.approx(1.0, rel=1e-12)


def test_combined_constant_ratio():
    psi = PsiFunction.constant(1.0, (1.0, 2.0))
    nu = PsiFunction.constant(2.0, (1.0, 2.0))
    assert combined_constant(lambda p, q: 1.0, psi, nu,
                             lambda p: p) == pytest.approx(0.5, rel=1e-12)


def test_combined_interval_region_matches_dense_oracle():
    # K(p,q) = q against nu(q) = q^2 gives K psi / nu = 1/q; the inf-sup on
    # dense grids therefore approaches sup over (1,2) of 1/q = 1 (q -> 1+).
    psi = PsiFunction.constant(1.0, (1.0, 2.0))
    nu = PsiFunction.power(1.0, 2.0, (1.0, 2.0))
    got = combined_constant(lambda p, q: q, psi, nu, lambda p: (1.0, 2.0))
    # independent dense-grid oracle
    qs = 1.0 + np.geomspace(1e-7, 1.0, 20001)[:-1]
    oracle = np.max(qs / qs ** 2)
    assert got == pytest.approx(float(oracle), abs=1e-3)


def test_combined_empty_region_rejected():
    psi = PsiFunction.constant(1.0, (1.0, 2.0))
    with pytest.raises(ConfigurationError):
        combined_constant(lambda p, q: 1.0, psi, psi, lambda p: None)


# -- GLS norms -------------------------------------------------------------------------

def test_gls_degenerate_equals_lp():
    rng = np.random.default_rng(11)
    for k in range(20):
        f = GridFunction(rng.standard_normal(64), (-1.0,), (1.0,), (1,))
        r = float(rng.uniform(1.0, 5.0))
        assert gls_norm(f, PsiFunction.degenerate(r)) == pytest.approx(
            lp_norm(f, r), rel=1e-12)


def test_gls_natural_function_is_one():
    f = GridFunction.sample(lambda x: np.exp(-x ** 2), 6.0, 512, 1)
    grid = exponent_grid(1.5, 6.0, 24)
    psi = PsiFunction.natural(f, grid)
    assert gls_norm(f, psi, grid) == pytest.approx(1.0, rel=1e-12)


def test_gls_homogeneity():
    f = GridFunction.sample(lambda x: np.exp(-x ** 2), 6.0, 256, 1)
    psi = PsiFunction.constant(1.0, (1.0, 4.0))
    grid = exponent_grid(1.0, 4.0, 16)
    base = gls_norm(f, psi, grid)
    scaled = gls_norm(f.with_samples(-3.0 * np.asarray(f.samples)), psi, grid)
    assert scaled == pytest.approx(3.0 * base, rel=1e-12)


def test_gls_monotone_under_refinement():
    f = GridFunction.sample(lambda x: np.exp(-np.abs(x)), 8.0, 512, 1)
    psi = PsiFunction.constant(1.0, (1.0, 6.0))
    coarse = gls_norm(f, psi, exponent_grid(1.0, 6.0, 8))
    fine = gls_norm(f, psi, exponent_grid(1.0, 6.0, 64))
    assert fine >= coarse - 1e-15


def test_gls_empty_grid_rejected():
    f = GridFunction.sample(lambda x: np.exp(-x ** 2), 4.0, 64, 1)
    psi = PsiFunction.constant(1.0, (1.0, 4.0))
    with pytest.raises(ConfigurationError):
        gls_norm(f, psi, np.array([]))


# -- dilation growth indices --------------------------------------------------------------

def test_boyd_power_box():
    pd = ProductPsi((PsiFunction.constant(1.0, (2.0, 4.0)),
                     PsiFunction.constant(1.0, (2.0, 4.0))))
    idx = boyd_indices(pd)
    assert idx.alpha_upper == pytest.approx(0.5, abs=1e-2)
    assert idx.alpha_lower == pytest.approx(0.25, abs=1e-2)
    assert idx.beta_upper == pytest.approx(0.5, abs=1e-2)
    assert idx.beta_lower == pytest.approx(0.25, abs=1e-2)


def test_boyd_infinite_support_truncated():
    pd = ProductPsi((PsiFunction.constant(1.0, (1.0, INF)),
                     PsiFunction.constant(1.0, (1.0, INF))))
    idx = boyd_indices(pd)
    assert idx.alpha_upper == pytest.approx(1.0, abs=1e-2)
    assert idx.alpha_lower == pytest.approx(0.0, abs=1e-2)


def test_boyd_swap_symmetry():
    a = ProductPsi((PsiFunction.constant(1.0, (2.0, 4.0)),
                    PsiFunction.constant(1.0, (3.0, 6.0))))
    b = ProductPsi((PsiFunction.constant(1.0, (3.0, 6.0)),
                    PsiFunction.constant(1.0, (2.0, 4.0))))
    ia, ib = boyd_indices(a), boyd_indices(b)
    assert (ia.alpha_upper, ia.alpha_lower) == pytest.approx(
        (ib.beta_upper, ib.beta_lower), rel=1e-12)


def test_boyd_degenerate_axes_exact():
    pd = ProductPsi((PsiFunction.degenerate(2.5), PsiFunction.degenerate(2.5)))
    idx = boyd_indices(pd)
    for v in (idx.alpha_upper, idx.alpha_lower, idx.beta_upper, idx.beta_lower):
        assert v == pytest.approx(1.0 / 2.5, rel=1e-12)


def test_boyd_rejects_narrow_scale_grid():
    pd = ProductPsi((PsiFunction.degenerate(2.0), PsiFunction.degenerate(2.0)))
    with pytest.raises(ConfigurationError):
        boyd_indices(pd, s_grid=np.geomspace(0.5, 2.0, 5))


def test_boyd_indices_invariant():
    with pytest.raises(InvariantViolation):
        BoydIndices(0.2, 0.5, 0.5, 0.2)


def test_conjugate_exponent_edges():
    assert conjugate_exponent(1.0) == INF
    assert conjugate_exponent(INF) == 1.0
    assert conjugate_exponent(2.0) == 2.0


def test_exponent_grid_properties():
    g = exponent_grid(1.0, 4.0, 64)
    assert g[0] > 1.0 and g[-1] < 4.0
    assert np.all(np.diff(g) > 0)
    # endpoint refinement reaches within 1e-5 of each endpoint
    assert g[0] - 1.0 < 1e-5
    assert 4.0 - g[-1] < 1e-5
    gi = exponent_grid(2.0, INF, 64)
    assert gi[-1] == pytest.approx(1000.0)
