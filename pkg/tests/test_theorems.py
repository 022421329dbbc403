import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdisc import catalog
from qdisc import theorems as T
from qdisc.classes import DiscGrid, Verdict
from qdisc.errors import (
    AngleOutOfRange,
    MembershipMismatch,
    NotConvexInput,
    ParameterOutOfRange,
    RadiusOutOfRange,
    ZetaEqualsOne,
    ZetaOnBoundary,
)
from qdisc.qcalc import bracket_n

GRID = DiscGrid.default()
HP = catalog.entry("half_plane")
LOG = catalog.entry("log_convex")
STRIP = catalog.entry("strip_convex")

# witness of the starlike counterexample, found by the default sweep and pinned here
PINNED_WITNESS = {"zeta": 1 + 0j, "z": -0.95, "margin": -9.0}


def test_zeta_grid_shape():
    g = T.zeta_grid()
    assert len(g) == 96
    assert sum(abs(abs(z) - 1) < 1e-15 for z in g) == 32


def test_hzeta_bounds():
    assert T.check_hzeta_starlike(0, GRID).min_margin == pytest.approx(1 / 1.95 - 0.5, abs=1e-13)
    k = T.check_hzeta_starlike(1, GRID)
    assert k.min_margin == pytest.approx(0.05 / 1.95, abs=1e-13)
    assert T.hzeta_bound(1j) == 0
    assert T.check_hzeta_starlike(1j, GRID).verdict is Verdict.PASS


def test_convex_inequality_half_plane_is_starlike_half_margin():
    for zeta in (0.0, 0.5, 1j, -1, 0.3 + 0.4j):
        rep = T.check_convex_zeta_inequality(HP, zeta, GRID)
        assert rep.min_margin == pytest.approx(1 / 1.95 - 0.5, abs=1e-12)


def test_convex_inequality_zeta_zero_is_starlike_order_half():
    rep = T.check_convex_zeta_inequality(LOG, 0, GRID)
    z = GRID.points()
    oracle = (z * LOG.fprime(z) / LOG.f(z)).real - 0.5
    assert rep.min_margin == pytest.approx(oracle.min(), abs=1e-12)


def test_convex_inequality_zeta_one_continuation():
    rep = T.check_convex_zeta_inequality(HP, 1.0, GRID)
    z = GRID.points()
    oracle = (z / (1 - z)).real + 0.5
    assert rep.min_margin == pytest.approx(oracle.min(), abs=1e-13)
    assert "interpretation" in rep.extras


def test_convex_inequality_rejects_non_convex():
    with pytest.raises(NotConvexInput):
        T.check_convex_zeta_inequality(catalog.entry("koebe"), 0.5, GRID)


@pytest.mark.parametrize("zeta", [0.5, -0.7j, 0.2 + 0.9j, -1.0, 0.95])
def test_h_series_matches_direct_form(zeta):
    view = LOG.view(exact=False)
    z = DiscGrid.default(0.8).points()
    h, _ = T.h_values(view, z, zeta)
    d, _ = T.displayed_form(view, z, zeta)
    assert np.max(np.abs(d - (h.value + 0.5))) <= 1e-8


def test_series_route_at_zeta_one_matches_closed_form():
    view = STRIP.view(exact=False)
    z = GRID.points()
    h, _ = T.h_values(view, z, 1.0)
    oracle = z * STRIP.fsecond(z) / (2 * STRIP.fprime(z)) + 0.5
    assert np.all(np.abs(h.value - oracle) <= h.err + 1e-12)


def test_h_sharpness_decreases():
    s = T.h_sharpness(HP, 0.5)
    oracle = [1 / (1 + r) - 0.5 for r in s["r_max"]]
    np.testing.assert_allclose(s["min_margin"], oracle, atol=1e-12)
    assert s["decreasing"]


def test_angle_identity_examples():
    assert T.rotation_term(np.pi / 2) == pytest.approx((-1 + 1j) / 2, abs=1e-15)
    assert T.check_proof_angle_identity(np.pi / 2, np.pi / 4).passed
    assert T.check_proof_angle_identity(2.9, 0.1).passed
    assert T.check_proof_angle_identity(1e-6 + 1.0, 1.0).passed
    with pytest.raises(AngleOutOfRange):
        T.check_proof_angle_identity(0.5, 1.0)


@given(st.floats(1e-3, math.pi - 1e-9), st.floats(1e-3, math.pi - 1e-9))
@settings(max_examples=200)
def test_angle_identity_relative_accuracy(a, b):
    # both sides carry roundoff of order eps * cot(min/2)
    a, b = max(a, b), min(a, b)
    if a == b:
        return
    scale = 1 + abs(1 / math.tan(b / 2)) + abs(1 / math.tan(a / 2))
    assert T.angle_identity_deviation(a, b) <= 8 * np.finfo(float).eps * scale


def test_rotation_inequality_examples():
    z = np.array([0.5 + 0j])
    a, b = np.pi / 2, np.pi / 4
    f = HP.f
    direct = (T.rotation_term(a) - T.rotation_term(b)) * (f(np.exp(1j * b) * z) - f(z)) / (
        f(z) - f(np.exp(1j * a) * z))
    assert direct.real[0] > 0
    assert T.check_proof_rotation_inequality(LOG, 3.0, 0.5, GRID).passed
    mirrored = T.check_proof_rotation_inequality(HP, -np.pi / 2, -np.pi / 4, GRID)
    assert mirrored.passed and mirrored.clauses["argument_range"]
    with pytest.raises(AngleOutOfRange):
        T.check_proof_rotation_inequality(HP, 0.5, -0.2, GRID)


def test_chain_examples():
    rep = T.check_zeta_ratio_chain(HP, 0.5, GRID)
    assert rep.extras["middle"] == 1.5
    assert rep.extras["first_min"] == pytest.approx(1.475 / (0.5 * 1.95) - 1.5, abs=1e-12)
    assert rep.passed
    assert T.check_zeta_ratio_chain(LOG, 0.3 + 0.4j, GRID).passed
    zero = T.check_zeta_ratio_chain(HP, 0, GRID)
    assert zero.extras["first_min"] == pytest.approx(1 / 1.95 - 0.5, abs=1e-13)
    with pytest.raises(ZetaEqualsOne):
        T.check_zeta_ratio_chain(HP, 1, GRID)


def test_sharp_bound_examples():
    assert T.half_plane_bound(0.5j) == pytest.approx(0.3, abs=1e-15)
    assert T.half_plane_bound(0) == 0.5
    rep = T.check_zeta_ratio_sharp(HP, 0.5, GRID)
    assert rep.extras["value_at_minus_one"] == pytest.approx(1.5, abs=1e-12)
    assert rep.passed and rep.clauses["gap_decreasing"]
    with pytest.raises(ParameterOutOfRange):
        T.check_zeta_ratio_sharp(HP, 1j, GRID)


def test_q_class_examples():
    assert T.check_q_class(HP, 0.5, GRID).min_margin == pytest.approx(1.475 / 1.95 - 0.75,
                                                                      abs=1e-13)
    assert T.check_q_class(LOG, 0.9, GRID).passed
    assert T.check_q_class(STRIP, 0.0, GRID).passed


def test_q_ratio_bounds_examples():
    assert T.q_ratio_bounds(0.5, 0.5) == pytest.approx((5 / 6, 1.5))
    assert T.q_ratio_bounds(0.0, 0.3) == pytest.approx((1 / 1.3, 1 / 0.7))
    rep = T.check_q_ratio_bounds(HP, 0.3, 0.9)
    assert rep.extras["attainment_deviation"]["lower"] <= 1e-12
    assert rep.passed
    with pytest.raises(RadiusOutOfRange):
        T.check_q_ratio_bounds(HP, 0.3, 1.0)


def test_log_convolution_examples():
    D = T.log_convolution_series(HP, 0.5, 16)
    assert all(D.coeffs[n] == bracket_n(0.5, n) / n for n in range(1, 17))
    D = T.log_convolution_series(LOG, 0.25, 16)
    assert all(D.coeffs[n] == bracket_n(0.25, n) * (1 / n) / n for n in range(1, 17))
    assert T.check_log_convolution(HP, 0.5, GRID).passed
    assert T.check_log_convolution(LOG, 0.25, GRID).passed


def test_log_convolution_routes_agree():
    z = DiscGrid.default(0.7, 32).points()
    from qdisc.series import evaluate
    exact = T.log_convolution_quadrature(STRIP.view(), 0.4, z)
    series = evaluate(T.log_convolution_series(STRIP, 0.4, 200), z)
    np.testing.assert_allclose(exact, series, atol=1e-12, rtol=0)


def test_log_convolution_near_origin():
    z = np.array([1e-6])
    ratio = STRIP.f(z) / T.log_convolution_quadrature(STRIP.view(), 0.5, z)
    assert ratio[0] == pytest.approx(1, abs=1e-9)


def test_convolution_closure_identity():
    # the all-ones series is the convolution identity
    g = catalog.truncate(STRIP, 128)
    prod = catalog.truncate(catalog.convolve(HP, STRIP, STRIP.tail_kind), 128)
    assert np.array_equal(prod.coeffs, g.coeffs)


def test_convolution_closure_examples():
    g = DiscGrid.default(0.9)
    rep = T.check_convolution_closure(LOG, LOG, g)
    assert rep.passed
    rep = T.check_convolution_closure(LOG, catalog.entry("koebe"), g, alpha=0.0)
    assert rep.passed
    assert all(c == 1 for c in rep.extras["coefficients_head"][1:])
    with pytest.raises(MembershipMismatch):
        T.check_convolution_closure(LOG, catalog.entry("koebe"), g)


def test_closure_budget_is_inconclusive_near_boundary():
    # the majorant |c_n| <= n cannot bound the tail at r = 0.95 with N = 128
    rep = T.check_convolution_closure(LOG, catalog.entry("koebe"), GRID, alpha=0.0)
    assert rep.verdict is Verdict.INCONCLUSIVE


def test_starlike_counterexample_witness_is_pinned():
    rep = T.find_starlike_counterexample(GRID)
    assert rep.verdict is Verdict.FAIL and rep.passed
    assert rep.extras["zeta_witness"] == PINNED_WITNESS["zeta"]
    assert rep.argmin == pytest.approx(PINNED_WITNESS["z"], abs=1e-15)
    assert rep.min_margin == pytest.approx(PINNED_WITNESS["margin"], abs=1e-9)


def test_starlike_counterexample_slices():
    # closed forms on the real axis: both slices go negative near z = -1
    z = -0.95
    slice0 = (1 + z) / (1 + z / 2) - 0.5
    slice1 = z / (2 * (1 + z)) + 0.5
    view = catalog.entry("quad_starlike").view()
    at = DiscGrid((0.95,), 8)
    assert T.h_margin(view, 0, at, tolerance=1e-9).min_margin == pytest.approx(slice0, abs=1e-12)
    assert T.h_margin(view, 1, at, tolerance=1e-9).min_margin == pytest.approx(slice1, abs=1e-12)
    assert slice0 < 0 and slice1 < 0
    # on the positive real axis both slices are positive
    pos = DiscGrid((0.3, 0.6, 0.9), 8)
    for zeta in (0, 1):
        m, _ = T.h_values(view, np.array(pos.radii, dtype=complex), zeta)
        assert np.all(m.value.real > 0)


def test_nonunivalent_examples():
    rep = T.check_nonunivalent_example(0, GRID)
    assert rep.extras["critical_point"] == -0.5 and rep.extras["a2_modulus"] == 1
    assert rep.passed
    rep = T.check_nonunivalent_example(0.5, GRID)
    assert rep.extras["a2_modulus"] == pytest.approx(2 / 3)
    assert T.check_nonunivalent_example(0.9j, GRID).passed
    with pytest.raises(ZetaOnBoundary):
        T.check_nonunivalent_example(1j, GRID)


def test_conjecture_real_slice_is_consistent():
    rep = T.explore_conjecture(zetas=[0.0, 0.3, 0.6, 0.9])
    assert rep.consistency_ok and not rep.counterexample_found
    zero = next(r for r in rep.rows if r["function"] == "half_plane" and r["zeta"] == 0)
    assert zero["min_margin"] == pytest.approx(1 / 1.95 - 0.5, abs=1e-13)


def test_conjecture_half_plane_complex_zeta_oracle():
    zeta = 0.9j
    rep = T.explore_conjecture([HP], zetas=[zeta])
    z = GRID.points()
    oracle = (zeta + (1 - zeta) / (1 - z)).real - (1 + abs(zeta)) / 2
    assert rep.global_min == pytest.approx(oracle.min(), abs=1e-12)
    assert rep.counterexample_found and rep.consistency_ok


def test_operator_equivalence_small():
    rep = T.check_operator_equivalence([HP, LOG], qs=(0.5,), grid=DiscGrid.default(0.8, 32))
    assert rep.passed


def test_degenerations_small():
    assert T.check_degenerations([LOG, catalog.entry("koebe")]).passed


def test_combine_keeps_worst_case():
    a = T.check_q_class(HP, 0.5, GRID)
    b = T.check_q_class(LOG, 0.5, GRID)
    c = T.combine("q-class", [a, b])
    assert c.min_margin == min(a.min_margin, b.min_margin)
    assert c.params["cases"] == 2 and c.clauses["all_cases_passed"]
