import math

import numpy as np
import pytest

from qdisc import catalog
from qdisc.classes import (
    DiscGrid,
    MarginReport,
    Verdict,
    convex_margin,
    herglotz_p,
    margin_verdict,
    r_class_margin,
    reduce_margins,
    starlike_margin,
)
from qdisc.errors import (
    AllPointsSingular,
    DenominatorSingular,
    EmptyGrid,
    ParameterOutOfRange,
)
from qdisc.evaluators import Approx
from qdisc.series import make_series

GRID = DiscGrid.default()


def hp(z):
    return z / (1 - z)


def hp1(z):
    return 1 / (1 - z) ** 2


def test_default_grid_layout():
    g = DiscGrid.default()
    assert g.radii == (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95)
    assert len(g) == 2560
    pts = g.points()
    assert pts[128] == -0.1 + pts[128].imag * 1j and abs(pts[128].imag) < 1e-16
    assert DiscGrid.default(0.99).radii[-2:] == (0.95, 0.99)
    assert DiscGrid.default(0.8).radii[-1] == 0.8


def test_grid_validation():
    for bad in ((0.5, 1.0), (0.5, 0.4), (0.0,)):
        with pytest.raises(ParameterOutOfRange):
            DiscGrid(bad)
    with pytest.raises(ParameterOutOfRange):
        DiscGrid((0.5,), 4)
    with pytest.raises(ParameterOutOfRange):
        DiscGrid.default(1.0)


def test_verdict_rule():
    assert margin_verdict(-1e-10, 1e-9, 0) is Verdict.PASS
    assert margin_verdict(-2e-9, 1e-9, 0) is Verdict.FAIL
    assert margin_verdict(-2e-9, 1e-9, 2e-9) is Verdict.PASS
    assert margin_verdict(5.0, 1e-9, math.inf) is Verdict.INCONCLUSIVE


def test_reduce_margins_skips_singular_points_and_breaks_ties_first():
    z = np.array([0.1, 0.2, 0.3, 0.4])
    m = Approx(np.array([2.0, 1.0, np.nan, 1.0]), np.zeros(4))
    rep = reduce_margins("x", z, m, np.array([False, False, True, False]), tolerance=0)
    assert rep.min_margin == 1.0 and rep.argmin == 0.2 and rep.singular_count == 1
    with pytest.raises(EmptyGrid):
        reduce_margins("x", np.array([]), Approx(np.array([]), np.array([])), tolerance=0)
    with pytest.raises(AllPointsSingular):
        reduce_margins("x", z, m, np.ones(4, bool), tolerance=0)


def test_report_record_fields():
    rep = starlike_margin(hp, hp1, 0.5, GRID)
    rec = rep.record()
    for key in ("check_id", "params", "min_margin", "witness", "tolerance", "tail_budget",
                "verdict", "expected", "passed"):
        assert key in rec
    assert isinstance(rep, MarginReport)


def test_starlike_identity_map():
    rep = starlike_margin(lambda z: z, lambda z: np.ones_like(z), 0.0, GRID)
    assert rep.min_margin == pytest.approx(1.0, abs=4e-16)


def test_starlike_h_zeta_half():
    v = catalog.entry("h_zeta", 0.5).view()
    rep = starlike_margin(v.f, v.fprime, 0.0, GRID)
    assert rep.min_margin >= 1 / 6 and rep.verdict is Verdict.PASS


def test_starlike_half_plane_order_half():
    rep = starlike_margin(hp, hp1, 0.5, GRID)
    assert rep.min_margin == pytest.approx(1 / 1.95 - 0.5, abs=1e-14)
    assert rep.argmin == pytest.approx(-0.95, abs=1e-15)


def test_alpha_range():
    with pytest.raises(ParameterOutOfRange):
        starlike_margin(hp, hp1, 1.0, GRID)


def test_convex_examples():
    assert convex_margin(lambda z: np.ones_like(z), lambda z: np.zeros_like(z), GRID).min_margin == 1
    rep = convex_margin(hp1, lambda z: 2 / (1 - z) ** 3, GRID)
    assert rep.min_margin == pytest.approx(0.05 / 1.95, abs=1e-14)
    bad = convex_margin(lambda z: 1 + z, lambda z: np.ones_like(z), GRID)
    assert bad.min_margin < 0 and bad.verdict is Verdict.FAIL


def test_r_class_at_zeta_one_is_constant():
    f = make_series([0, 1, 0.3, -0.2j])
    rep = r_class_margin(f, 1.0, 0.25, GRID)
    assert rep.min_margin == pytest.approx(0.75, abs=1e-15)


def test_r_class_real_zeta_half_plane():
    hpe = catalog.entry("half_plane")
    rep = r_class_margin(hpe, 0.5, 0.0, GRID)
    assert rep.min_margin == pytest.approx(1.475 / 1.95, abs=1e-13)
    for q in (0.0, 0.3, 0.6, 0.9):
        assert r_class_margin(hpe, q, (1 + q) / 2, GRID).verdict is Verdict.PASS


@pytest.mark.parametrize("zeta", [1j, -0.5, 0.6 * np.exp(2j)])
def test_half_plane_leaves_the_class_for_non_positive_zeta(zeta):
    # Re{(1 - zeta z)/(1 - z)} = Re zeta + Re{(1 - zeta)/(1 - z)} dips below (1+|zeta|)/2
    hpe = catalog.entry("half_plane")
    alpha = (1 + abs(zeta)) / 2
    if alpha >= 1:
        alpha = 0.99
    rep = r_class_margin(hpe, zeta, alpha, GRID)
    z = GRID.points()
    oracle = (zeta + (1 - zeta) / (1 - z)).real - alpha
    assert rep.min_margin == pytest.approx(oracle.min(), abs=1e-12)
    assert rep.verdict is Verdict.FAIL


def test_herglotz_examples():
    hpe = catalog.entry("half_plane")
    assert herglotz_p(hpe, 0.5, 0.0) == pytest.approx(1, abs=1e-15)
    assert herglotz_p(hpe, 0.5, 0.5j) == pytest.approx(0.6 + 0.8j, abs=1e-14)
    z = GRID.points()
    np.testing.assert_allclose(herglotz_p(hpe, 0.3, z), (1 + z) / (1 - z), atol=1e-10, rtol=0)


def test_herglotz_singular_denominator():
    poly = make_series([0, 1, 1])  # d_q f = 1 + (1+q) z vanishes at -1/(1+q)
    with pytest.raises(DenominatorSingular):
        herglotz_p(poly, 0.5, -1 / 1.5)
