import cmath

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qdisc import catalog
from qdisc.errors import NotNormalized, ParameterOutOfRange, PointOutsideDisc
from qdisc.evaluators import ClosedFormView, SeriesView, zeta_gap_coefficients
from qdisc.qcalc import (
    QParam,
    ZetaParam,
    bracket_n,
    brackets,
    h_zeta_series,
    jackson_quotient,
    zeta_derivative,
)
from qdisc.series import TailKind, differentiate, evaluate, make_series

disc = st.builds(lambda r, t: r * cmath.exp(1j * t), st.floats(0, 1), st.floats(0, 6.3))


def test_parameter_types():
    assert ZetaParam(1j).value == 1j
    with pytest.raises(ParameterOutOfRange):
        ZetaParam(1.01)
    with pytest.raises(ParameterOutOfRange):
        ZetaParam(complex("nan"))
    assert QParam(0).value == 0
    for bad in (1.0, -0.1):
        with pytest.raises(ParameterOutOfRange):
            QParam(bad)


def test_bracket_examples():
    assert bracket_n(0, 3) == 1
    assert bracket_n(1, 4) == 4
    assert bracket_n(1j, 3) == 1j
    assert bracket_n(0.5, 3) == 1.75


def test_brackets_at_one_are_exact_integers():
    b = brackets(1.0, 500)
    assert np.array_equal(b, np.arange(1, 501))


@given(disc)
def test_bracket_recurrence_holds_exactly(zeta):
    b = brackets(zeta, 40)
    assert b[0] == 1
    for k in range(39):
        assert complex(b[k + 1]) == 1 + zeta * complex(b[k])


@given(st.floats(0, 0.999))
def test_brackets_match_quotient_for_real_q(q):
    n = np.arange(1, 41)
    b = brackets(q, 40)
    np.testing.assert_allclose(b.real, (1 - q ** n) / (1 - q) if q else np.ones(40), rtol=1e-12)


def test_h_zeta_series_examples():
    assert np.array_equal(h_zeta_series(0, 6).coeffs[1:], np.ones(6))
    assert np.array_equal(h_zeta_series(1, 6).coeffs[1:], np.arange(1, 7))
    assert h_zeta_series(0.5, 5).coeffs[3] == 1.75


def test_zeta_derivative_examples():
    assert list(zeta_derivative(make_series([0, 1]), 0.3).coeffs) == [1]
    f = catalog.truncate(catalog.entry("log_convex"), 50)
    assert np.array_equal(zeta_derivative(f, 1.0).coeffs, differentiate(f).coeffs)
    geo = make_series([0] + [1] * 60)
    q, z = 0.3, 0.4 + 0.1j
    d = evaluate(zeta_derivative(geo, q), z)
    assert abs(d - 1 / ((1 - z) * (1 - q * z))) < 1e-15 + abs(z) ** 60 * 10


def test_zeta_derivative_needs_normalized():
    with pytest.raises(NotNormalized):
        zeta_derivative(make_series([0, 2, 1]), 0.5)


def test_jackson_examples():
    sq = lambda z: z * z
    assert jackson_quotient(sq, 0.5, 0.4) == pytest.approx(0.6, abs=1e-15)
    assert jackson_quotient(sq, 0.5, 0.4) == pytest.approx(bracket_n(0.5, 2) * 0.4, abs=1e-15)
    assert jackson_quotient(lambda z: z / (1 - z), 0.7, 0.0) == 1
    assert jackson_quotient(lambda z: z / (1 - z), 0.7, 1e-12) == 1
    geo = make_series([0] + [1] * 128)
    diff = abs(jackson_quotient(lambda z: z / (1 - z), 0.3, 0.5)
               - evaluate(zeta_derivative(geo, 0.3), 0.5))
    assert diff <= 2 * 0.5 ** 128 / 0.5 + 1e-15


def test_jackson_rejects_outside_points():
    with pytest.raises(PointOutsideDisc):
        jackson_quotient(lambda z: z, 0.5, 1.0)
    with pytest.raises(ParameterOutOfRange):
        jackson_quotient(lambda z: z, 1.0, 0.5)


def test_zeta_gap_coefficients_match_bracket_form():
    zeta = 0.3 - 0.6j
    c = zeta_gap_coefficients(zeta, 30)
    n = np.arange(1, 31)
    np.testing.assert_allclose(c, (n - brackets(zeta, 30)) / (1 - zeta), rtol=1e-12, atol=1e-12)
    assert np.array_equal(zeta_gap_coefficients(1.0, 10), n[:10] * (n[:10] - 1) / 2)


@pytest.mark.parametrize("zeta", [0.5, 1j, -0.9, 0.999, 1.0, 0.3 + 0.4j])
def test_closed_form_and_series_views_agree(zeta):
    e = catalog.entry("log_convex")
    exact = e.view()
    series = e.view(order=200, exact=False)
    z = np.array([0.2, -0.5j, 0.6 + 0.1j, 0.05])
    for meth in ("dzeta", "zeta_gap"):
        a = getattr(exact, meth)(z, zeta).value
        s = getattr(series, meth)(z, zeta)
        assert np.all(np.abs(a - s.value) <= s.err + 1e-13)


def test_quadrature_switch_is_seamless():
    # closed form with and without the hybrid quadrature, across the switch radius
    e = catalog.entry("strip_convex")
    v = ClosedFormView(e.f, e.fprime, e.fsecond)
    series = SeriesView(catalog.truncate(e, 400), TailKind.CONVEX_COEFF_BOUND)
    zeta = 0.95
    z = np.array([0.99, 1.01]) * 0.05 / abs(zeta - 1)
    z = z * 0.9
    np.testing.assert_allclose(v.zeta_gap(z, zeta).value, series.zeta_gap(z, zeta).value,
                               rtol=0, atol=1e-13)
