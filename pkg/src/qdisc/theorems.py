"""Grid checks of the inequalities satisfied by convex functions under d_zeta.

Every check returns a :class:`~qdisc.classes.MarginReport` (a sampled
strict inequality) or an :class:`IdentityReport` (a sampled equality).
Catalog entries are evaluated through their closed forms unless
``method="series"`` is requested, in which case the order-``order``
truncation is used and the dropped tail enters the budget.

The central quantity is

    h(zeta, z) = (f'(z) - d_zeta f(z)) / ((1 - zeta) d_zeta f(z)) + 1/2,

whose real part is positive for convex ``f`` and every ``|zeta| <= 1``.
The numerator is evaluated in a form that is regular at ``zeta = 1``
(see :meth:`~qdisc.evaluators.ClosedFormView.zeta_gap`), so ``h`` is used
as the definition on the whole closed disc, including ``zeta = 1`` where
the displayed quotient form is 0/0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import catalog
from .catalog import CatalogEntry, Membership, truncate
from .classes import (
    TOL_EXACT,
    TOL_SERIES,
    DiscGrid,
    MarginReport,
    Verdict,
    convex_margin,
    default_tolerance,
    herglotz_values,
    r_class_margin,
    reduce_margins,
    starlike_margin,
    zeta_ratio,
)
from .errors import (
    AngleOutOfRange,
    MembershipMismatch,
    NotConvexInput,
    ParameterOutOfRange,
    RadiusOutOfRange,
    ZetaEqualsOne,
    ZetaOnBoundary,
)
from .evaluators import Approx, SeriesView, ratio
from .qcalc import as_q, as_zeta, bracket_n, brackets, zeta_derivative
from .series import DEFAULT_ORDER, TailKind, hadamard, make_series

EPS = np.finfo(float).eps

ANCHORS = {
    "hzeta-starlike": "Re{z h'/h} > (1-|zeta|)/(2(1+|zeta|)) for h = z/((1-zeta z)(1-z))",
    "theorem1": "Re{(zeta/(1-zeta))(f'/(zeta d_zeta f) - 1)} > 1/2 for convex f, |zeta| <= 1",
    "angle-identity": "e^{ia}/(1-e^{ia}) - e^{ib}/(1-e^{ib}) = (i/2)(cot(a/2) - cot(b/2))",
    "rotation-inequality": "Re{(rot(a)-rot(b)) (f(e^{ib}z)-f(z))/(f(z)-f(e^{ia}z))} > 0",
    "zeta-ratio-chain": "Re{f'/((1-zeta) d_zeta f)} > Re{(1+zeta)/(2(1-zeta))} > 0",
    "zeta-ratio-sharp": "Re{f'/((1-zeta) d_zeta f)} > (1-|zeta|^2)/(2|1-zeta|^2), sharp",
    "q-class": "Re{f'/d_q f} > (1+q)/2 for convex f",
    "herglotz": "f' = ((1-q)p/2 + (1+q)/2) d_q f with Re p > 0, p(0) = 1",
    "q-ratio-bounds": "(1+qr)/(1+r) <= Re, |f'/d_q f| <= (1-qr)/(1-r) on |z| = r",
    "log-convolution": "Re{f / (log(1/(1-z)) * z d_q f)} > (1+q)/2",
    "convolution-closure": "convex * convex is convex; convex * starlike(alpha) is starlike(alpha)",
    "starlike-counterexample": "z + z^2/2 is starlike but violates the convex zeta inequality",
    "nonunivalent-example": "z + z^2/(1+zeta): Re d_zeta f > 0 yet f is not univalent",
    "conjecture": "is Re{f'/d_zeta f} > (1+|zeta|)/2 for convex f and complex zeta?",
    "operator-equivalence": "Jackson quotient (f(qz)-f(z))/((q-1)z) equals the coefficient operator",
    "degenerations": "d_1 f = f' and d_0 f = f/z",
}

ROTATION_ANGLES = (0.1, 0.5, 1.0, 2.0, 3.0)


@dataclass
class IdentityReport:
    check_id: str
    max_abs_deviation: float
    argmax: tuple
    tolerance: float
    params: dict = field(default_factory=dict)
    anchor: str = ""
    extras: dict = field(default_factory=dict)

    @property
    def verdict(self) -> Verdict:
        return Verdict.PASS if self.max_abs_deviation <= self.tolerance else Verdict.FAIL

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    expected = Verdict.PASS

    def record(self) -> dict:
        return {
            "check_id": self.check_id,
            "anchor": self.anchor,
            "params": self.params,
            "max_abs_deviation": self.max_abs_deviation,
            "witness": list(self.argmax),
            "tolerance": self.tolerance,
            "tail_budget": 0.0,
            "verdict": self.verdict.value,
            "expected": Verdict.PASS.value,
            "extras": dict(self.extras),
            "passed": self.passed,
        }


@dataclass
class ConjectureReport:
    """Per-(f, zeta) minima of ``Re{f'/d_zeta f} - (1+|zeta|)/2``."""

    zeta_grid: list
    rows: list
    global_min: float
    witness: dict
    tolerance: float
    tail_budget: float
    consistency_ok: bool
    params: dict = field(default_factory=dict)

    @property
    def counterexample_found(self) -> bool:
        return self.global_min < -(self.tolerance + self.tail_budget)

    check_id = "conjecture"
    expected = Verdict.PASS

    @property
    def verdict(self) -> Verdict:
        # the open question is reported, not asserted; only the gate can fail
        return Verdict.PASS if self.consistency_ok else Verdict.FAIL

    @property
    def passed(self) -> bool:
        return self.consistency_ok

    def record(self) -> dict:
        return {
            "check_id": "conjecture",
            "anchor": ANCHORS["conjecture"],
            "params": self.params,
            "min_margin": self.global_min,
            "witness": self.witness,
            "tolerance": self.tolerance,
            "tail_budget": self.tail_budget,
            "counterexample_found": self.counterexample_found,
            "consistency_ok": self.consistency_ok,
            "verdict": self.verdict.value,
            "expected": Verdict.PASS.value,
            "rows": self.rows,
            "passed": self.passed,
        }


# -- parameter grids ---------------------------------------------------------

def circle_points(modulus: float, count: int) -> np.ndarray:
    theta = 2 * np.pi * np.arange(count) / count
    return modulus * (np.cos(theta) + 1j * np.sin(theta))


def zeta_grid(boundary: int = 32, moduli: Sequence[float] = (0.25, 0.5, 0.75, 0.95),
              per_circle: int = 16) -> list:
    """Boundary points ``e^{i theta}`` followed by interior circles."""
    pts = list(circle_points(1.0, boundary))
    for m in moduli:
        pts.extend(circle_points(m, per_circle))
    return [complex(p) for p in pts]


def rotation_angle_pairs() -> list:
    """``(a, b)`` with ``0 < b < a < pi`` from the sampled set, then mirrored."""
    pos = [(a, b) for a in ROTATION_ANGLES for b in ROTATION_ANGLES if b < a]
    return pos + [(-a, -b) for a, b in pos]


# -- helpers -----------------------------------------------------------------

def _require_convex(e: CatalogEntry) -> None:
    if not e.is_(Membership.CONVEX):
        raise NotConvexInput(f"{e.label} is not declared convex")


def _view(e: CatalogEntry, method: str, order: int):
    if method not in ("exact", "series"):
        raise ValueError(f"unknown method {method!r}")
    return e.view(order=order, exact=(method == "exact"))


def _tol(view, tolerance):
    return default_tolerance(view) if tolerance is None else tolerance


def h_values(view, z, zeta):
    """``h(zeta, z)`` and its singular mask for any evaluator view."""
    h, sing = ratio(view.zeta_gap(z, zeta), view.dzeta(z, zeta))
    return Approx(h.value + 0.5, h.err), sing


def h_margin(view, zeta, grid: DiscGrid, *, tolerance: float,
                    check_id: str = "theorem1", expected: Verdict = Verdict.PASS,
                    params: Optional[dict] = None) -> MarginReport:
    zeta = as_zeta(zeta)
    z = grid.points()
    h, sing = h_values(view, z, zeta)
    p = {"function": view.name, "zeta": zeta, "grid": grid.describe(), **(params or {})}
    rep = reduce_margins(check_id, z, h, sing, tolerance=tolerance, params=p,
                         expected=expected, anchor=ANCHORS.get(check_id, ""))
    if abs(1 - zeta) < 1e-12:
        rep.extras["interpretation"] = "zeta = 1 evaluated by the continuation z f''/(2 f') + 1/2"
    return rep


def combine(check_id: str, reports: Sequence[MarginReport], params: Optional[dict] = None
            ) -> MarginReport:
    """Fold several sweeps into one record carrying the worst case.

    The worst case is the one with the least slack ``min_margin + tol + tail``;
    clauses are AND-ed across cases.
    """
    if not reports:
        raise ValueError("nothing to combine")
    worst = min(reports, key=lambda r: r.min_margin + r.tolerance + r.tail_budget)
    clauses: dict = {}
    for r in reports:
        for k, v in r.clauses.items():
            clauses[k] = clauses.get(k, True) and bool(v)
    clauses["all_cases_passed"] = all(r.passed for r in reports)
    return MarginReport(
        check_id=check_id,
        params={"cases": len(reports), **(params or {})},
        min_margin=worst.min_margin,
        argmin=worst.argmin,
        tolerance=worst.tolerance,
        tail_budget=worst.tail_budget,
        singular_count=sum(r.singular_count for r in reports),
        point_count=sum(r.point_count for r in reports),
        expected=worst.expected,
        anchor=ANCHORS.get(check_id, worst.anchor),
        clauses=clauses,
        extras={"worst_case": worst.params},
    )


# -- the generator h_zeta ----------------------------------------------------

def hzeta_bound(zeta) -> float:
    m = abs(as_zeta(zeta))
    return (1 - m) / (2 * (1 + m))


def check_hzeta_starlike(zeta, grid: DiscGrid, *, tolerance: float = TOL_EXACT) -> MarginReport:
    """``Re{z h_zeta'/h_zeta}`` minus its lower bound ``(1-|zeta|)/(2(1+|zeta|))``."""
    zeta = as_zeta(zeta)
    v = catalog.entry("h_zeta", zeta).view()
    rep = starlike_margin(v.f, v.fprime, hzeta_bound(zeta), grid, tolerance=tolerance,
                          check_id="hzeta-starlike", params={"zeta": zeta})
    rep.anchor = ANCHORS["hzeta-starlike"]
    return rep


# -- the main inequality -----------------------------------------------------

def check_convex_zeta_inequality(e: CatalogEntry, zeta, grid: DiscGrid, *, method: str = "exact",
                   order: int = DEFAULT_ORDER, tolerance: Optional[float] = None
                   ) -> MarginReport:
    """Margin ``Re{h(zeta, z)}`` for a convex entry over the grid."""
    _require_convex(e)
    view = _view(e, method, order)
    return h_margin(view, zeta, grid, tolerance=_tol(view, tolerance),
                           params={"method": method, "order": order})


def displayed_form(view, z, zeta):
    """``(f'/d_zeta f - zeta)/(1 - zeta)``, the displayed left side; needs zeta != 1."""
    zeta = as_zeta(zeta)
    r, sing = zeta_ratio(view, np.asarray(z, dtype=complex), zeta)
    return (r.value - zeta) / (1 - zeta), sing


def h_sharpness(e: CatalogEntry, zeta, r_maxes=(0.8, 0.9, 0.95, 0.99),
                       angles: int = 256, tolerance: float = TOL_EXACT) -> dict:
    """Grid minima for growing ``r_max``; sharp when they decrease towards 0."""
    mins = [check_convex_zeta_inequality(e, zeta, DiscGrid.default(rm, angles), tolerance=tolerance).min_margin
            for rm in r_maxes]
    decreasing = all(b < a for a, b in zip(mins, mins[1:])) and all(m > -tolerance for m in mins)
    return {"r_max": list(r_maxes), "min_margin": mins, "decreasing": decreasing}


# -- proof machinery ---------------------------------------------------------

def rotation_term(t):
    """``e^{it}/(1 - e^{it})`` with ``1 - e^{it} = 2 sin^2(t/2) - i sin t``."""
    t = np.asarray(t, dtype=float)
    one_minus = 2 * np.sin(t / 2) ** 2 - 1j * np.sin(t)
    return np.exp(1j * t) / one_minus


def angle_identity_deviation(a, b):
    lhs = rotation_term(a) - rotation_term(b)
    rhs = 0.5j * (1 / np.tan(np.asarray(a) / 2) - 1 / np.tan(np.asarray(b) / 2))
    return np.abs(lhs - rhs)


def _check_angles(a, b) -> None:
    a, b = np.asarray(a), np.asarray(b)
    if not np.all((0 < b) & (b < a) & (a < np.pi)):
        raise AngleOutOfRange("need 0 < b < a < pi")


def check_proof_angle_identity(a: float, b: float, *, tolerance: float = 1e-12) -> IdentityReport:
    _check_angles(a, b)
    dev = float(angle_identity_deviation(a, b))
    return IdentityReport("angle-identity", dev, (a, b), tolerance, params={"a": a, "b": b},
                          anchor=ANCHORS["angle-identity"])


def check_angle_identity_random(samples: int = 1000, seed: int = 0, *,
                                tolerance: float = 1e-12) -> IdentityReport:
    """Largest deviation over ``samples`` uniform pairs ``0 < b < a < pi``."""
    rng = np.random.default_rng(seed)
    u = rng.uniform(0, np.pi, size=(samples, 2))
    # uniform() may return the left endpoint; nudge exact zeros away
    u = np.where(u == 0, np.pi / 2, u)
    a, b = u.max(axis=1), u.min(axis=1)
    keep = b < a
    a, b = a[keep], b[keep]
    _check_angles(a, b)
    dev = angle_identity_deviation(a, b)
    k = int(np.argmax(dev))
    return IdentityReport("angle-identity", float(dev[k]), (float(a[k]), float(b[k])), tolerance,
                          params={"samples": int(a.size), "seed": seed},
                          anchor=ANCHORS["angle-identity"])


def check_proof_rotation_inequality(e: CatalogEntry, a: float, b: float, grid: DiscGrid, *,
                                    method: str = "exact", order: int = DEFAULT_ORDER,
                                    tolerance: Optional[float] = None) -> MarginReport:
    """Rotation-difference inequality for convex ``f`` and the argument range
    of ``(f(e^{ib}z) - f(z))/(f(e^{ia}z) - f(z))`` (principal branch).

    For ``0 < b < a`` the argument must lie in ``(-pi, 0)``; for the
    mirrored case ``a < b < 0`` in ``(0, pi)``.
    """
    _require_convex(e)
    if not (0 < abs(b) < abs(a) < np.pi and a * b > 0):
        raise AngleOutOfRange("need 0 < |b| < |a| < pi with a, b of the same sign")
    view = _view(e, method, order)
    z = grid.points()
    fz = view.f(z)
    fb = view.f(np.exp(1j * b) * z)
    fa = view.f(np.exp(1j * a) * z)
    num = Approx(fb.value - fz.value, fb.err + fz.err)
    den = Approx(fz.value - fa.value, fz.err + fa.err)
    q, sing = ratio(num, den)
    c = complex(rotation_term(a) - rotation_term(b))
    term = Approx(c * q.value, abs(c) * q.err)
    p = {"function": view.name, "a": a, "b": b, "method": method, "grid": grid.describe()}
    rep = reduce_margins("rotation-inequality", z, term, sing, tolerance=_tol(view, tolerance),
                         params=p, anchor=ANCHORS["rotation-inequality"])
    # (f(e^{ib}z)-f(z))/(f(e^{ia}z)-f(z)) = -q
    im = np.imag(-q.value)[~sing]
    inside = im < 0 if a > 0 else im > 0
    rep.clauses["argument_range"] = bool(np.all(inside))
    rep.extras["argument_violations"] = int(np.count_nonzero(~inside))
    return rep


# -- corollaries -------------------------------------------------------------

def _ratio_over(view, z, zeta):
    r, sing = zeta_ratio(view, z, zeta)
    d = 1 - zeta
    return Approx(r.value / d, r.err / abs(d)), sing


def half_plane_bound(zeta) -> float:
    """``Re{(1+zeta)/(2(1-zeta))} = (1-|zeta|^2)/(2|1-zeta|^2)``."""
    zeta = as_zeta(zeta)
    return (1 - abs(zeta) ** 2) / (2 * abs(1 - zeta) ** 2)


def check_zeta_ratio_chain(e: CatalogEntry, zeta, grid: DiscGrid, *, method: str = "exact",
                           order: int = DEFAULT_ORDER, tolerance: Optional[float] = None
                           ) -> MarginReport:
    """Both displayed forms of the ``(1 - zeta)``-normalized inequality.

    ``first``: ``Re{f'/((1-zeta) d_zeta f)} - Re{(1+zeta)/(2(1-zeta))}``;
    ``second``: ``Re{(f'/d_zeta f - 1)/(1-zeta)} + 1/2``. For ``|zeta| < 1``
    the clauses also assert, pointwise, that the middle term is positive
    and the weaker statement ``Re{f'/((1-zeta) d_zeta f)} > 0``.
    """
    _require_convex(e)
    zeta = as_zeta(zeta)
    if abs(1 - zeta) < 1e-12:
        raise ZetaEqualsOne("the quotient forms divide by 1 - zeta")
    view = _view(e, method, order)
    tol = _tol(view, tolerance)
    z = grid.points()
    R, sing = _ratio_over(view, z, zeta)
    middle = ((1 + zeta) / (2 * (1 - zeta))).real
    first = Approx(R.value.real - middle, R.err)
    r, _ = zeta_ratio(view, z, zeta)
    second = Approx(((r.value - 1) / (1 - zeta)).real + 0.5, R.err)
    both = Approx(np.minimum(first.value, second.value), R.err)
    p = {"function": view.name, "zeta": zeta, "method": method, "grid": grid.describe()}
    rep = reduce_margins("zeta-ratio-chain", z, both, sing, tolerance=tol, params=p,
                         anchor=ANCHORS["zeta-ratio-chain"])
    ok = ~sing
    rep.extras["first_min"] = float(np.min(first.value[ok]))
    rep.extras["second_min"] = float(np.min(second.value[ok]))
    rep.extras["middle"] = float(middle)
    if abs(zeta) < 1:
        weaker = R.value.real[ok]
        rep.extras["weaker_min"] = float(np.min(weaker))
        rep.clauses["middle_positive"] = bool(middle > 0)
        rep.clauses["pointwise_chain"] = bool(
            np.all(first.value[ok] > -(tol + R.err[ok])) and middle > 0)
        rep.clauses["weaker_result"] = bool(np.all(weaker > -(tol + R.err[ok])))
    return rep


def check_zeta_ratio_sharp(e: CatalogEntry, zeta, grid: DiscGrid, *, method: str = "exact",
                           order: int = DEFAULT_ORDER, tolerance: Optional[float] = None,
                           r_maxes: Sequence[float] = (0.8, 0.9, 0.95, 0.99)) -> MarginReport:
    """``Re{f'/((1-zeta) d_zeta f)} - (1-|zeta|^2)/(2|1-zeta|^2)`` over the grid.

    For ``half_plane`` the extremal behaviour is also recorded: the gap
    shrinks as ``r_max`` grows and the bound is reached at ``z = -1``.
    """
    _require_convex(e)
    zeta = as_zeta(zeta)
    if abs(zeta) >= 1:
        raise ParameterOutOfRange("need |zeta| < 1")
    view = _view(e, method, order)
    tol = _tol(view, tolerance)
    bound = half_plane_bound(zeta)

    def sweep(g):
        z = g.points()
        R, sing = _ratio_over(view, z, zeta)
        return reduce_margins("zeta-ratio-sharp", z, Approx(R.value.real - bound, R.err), sing,
                              tolerance=tol, anchor=ANCHORS["zeta-ratio-sharp"],
                              params={"function": view.name, "zeta": zeta, "method": method,
                                      "bound": bound, "grid": g.describe()})

    rep = sweep(grid)
    if e.id == "half_plane":
        gaps = [sweep(DiscGrid.default(rm, grid.angles_per_circle)).min_margin for rm in r_maxes]
        rep.extras["sharpness"] = {"r_max": list(r_maxes), "gap": gaps}
        rep.clauses["gap_decreasing"] = bool(
            all(b < a for a, b in zip(gaps, gaps[1:])) and all(g > 0 for g in gaps))
        # closed forms extend continuously to z = -1
        at_minus_one = (e.fprime(-1.0) / ((1 - zeta) * e.exact_dzeta(-1.0, zeta))).real
        rep.extras["value_at_minus_one"] = float(at_minus_one)
        rep.clauses["attained_at_minus_one"] = bool(abs(at_minus_one - bound) <= 1e-12)
    return rep


def check_q_class(e: CatalogEntry, q, grid: DiscGrid, *, method: str = "exact",
                  order: int = DEFAULT_ORDER, tolerance: Optional[float] = None) -> MarginReport:
    """Membership of a convex ``f`` in ``R(q, (1+q)/2)``."""
    _require_convex(e)
    q = as_q(q)
    view = _view(e, method, order)
    rep = r_class_margin(view, q, (1 + q) / 2, grid, tolerance=tolerance, check_id="q-class",
                         params={"q": q, "method": method})
    rep.anchor = ANCHORS["q-class"]
    return rep


def check_herglotz(e: CatalogEntry, q, grid: DiscGrid, *, method: str = "exact",
                   order: int = DEFAULT_ORDER, tolerance: Optional[float] = None,
                   identity_tolerance: float = 1e-10) -> MarginReport:
    """``Re p > 0`` on the grid; for ``half_plane`` also ``p = (1+z)/(1-z)``."""
    _require_convex(e)
    q = as_q(q)
    view = _view(e, method, order)
    z = grid.points()
    p, sing = herglotz_values(view, q, z)
    rep = reduce_margins("herglotz", z, p, sing, tolerance=_tol(view, tolerance),
                         params={"function": view.name, "q": q, "method": method,
                                 "grid": grid.describe()},
                         anchor=ANCHORS["herglotz"])
    p0, _ = herglotz_values(view, q, np.zeros(1))
    rep.extras["p_at_origin"] = complex(p0.value[0])
    rep.clauses["normalized_at_origin"] = bool(abs(p0.value[0] - 1) <= 1e-14)
    if e.id == "half_plane":
        dev = float(np.max(np.abs(p.value - (1 + z) / (1 - z))))
        rep.extras["half_plane_deviation"] = dev
        rep.clauses["half_plane_identity"] = bool(dev <= identity_tolerance)
    return rep


def q_ratio_bounds(q: float, r: float) -> tuple:
    return (1 + q * r) / (1 + r), (1 - q * r) / (1 - r)


def check_q_ratio_bounds(e: CatalogEntry, q, r: float, angles: int = 512, *,
                         method: str = "exact", order: int = DEFAULT_ORDER,
                         tolerance: float = 1e-12) -> MarginReport:
    """Two-sided bounds on ``Re`` and ``|.|`` of ``f'/d_q f`` on ``|z| = r``.

    The reported margin is the least of the four one-sided margins.
    """
    _require_convex(e)
    q = as_q(q)
    if not 0 < r < 1:
        raise RadiusOutOfRange(f"radius {r!r} not in (0, 1)")
    view = _view(e, method, order)
    z = circle_points(r, angles)
    R, sing = zeta_ratio(view, z, q)
    lo, hi = q_ratio_bounds(q, r)
    parts = {
        "re_lower": R.value.real - lo,
        "re_upper": hi - R.value.real,
        "abs_lower": np.abs(R.value) - lo,
        "abs_upper": hi - np.abs(R.value),
    }
    stacked = np.concatenate(list(parts.values()))
    errs = np.tile(R.err, 4)
    rep = reduce_margins("q-ratio-bounds", np.tile(z, 4), Approx(stacked, errs), np.tile(sing, 4),
                         tolerance=tolerance, anchor=ANCHORS["q-ratio-bounds"],
                         params={"function": view.name, "q": q, "r": r, "angles": angles,
                                 "method": method, "lower": lo, "upper": hi})
    ok = ~sing
    rep.extras["clause_minima"] = {k: float(np.min(v[ok])) for k, v in parts.items()}
    if e.id == "half_plane":
        ends, _ = zeta_ratio(view, np.array([-r, r], dtype=complex), q)
        d_lo = abs(ends.value[0] - lo)
        d_hi = abs(ends.value[1] - hi)
        rep.extras["attainment_deviation"] = {"lower": float(d_lo), "upper": float(d_hi)}
        rep.clauses["lower_attained"] = bool(d_lo <= 1e-12)
        rep.clauses["upper_attained"] = bool(d_hi <= 1e-12)
    return rep


# -- convolution with log(1/(1-z)) -------------------------------------------

def log_convolution_series(e: CatalogEntry, q, order: int = DEFAULT_ORDER):
    """Coefficients ``[n]_q a_n / n`` of ``log(1/(1-z)) * (z d_q f)``."""
    q = as_q(q)
    a = e.coefficients(order)
    n = np.arange(order + 1, dtype=float)
    c = np.zeros(order + 1, dtype=complex)
    p = brackets(q, order) * a[1:]
    # componentwise division rounds correctly; complex/real in numpy does not
    c[1:] = p.real / n[1:] + 1j * (p.imag / n[1:])
    return make_series(c, normalized_expected=True)


_GL96 = np.polynomial.legendre.leggauss(96)


def log_convolution_quadrature(view, q, z):
    """``D(z) = z int_0^1 d_q f(t z) dt``, the antiderivative of ``d_q f``."""
    z = np.asarray(z, dtype=complex)
    t = 0.5 * (_GL96[0] + 1)
    w = 0.5 * _GL96[1]
    pts = (z[..., None] * t).ravel()
    d = view.dzeta(pts, q).value.reshape(z.shape + t.shape)
    return z * (d @ w)


def check_log_convolution(e: CatalogEntry, q, grid: DiscGrid, *, method: str = "series",
                          order: int = DEFAULT_ORDER, tolerance: Optional[float] = None
                          ) -> MarginReport:
    """``Re{f/D} - (1+q)/2`` with ``D = log(1/(1-z)) * (z d_q f)``.

    ``method="series"`` builds ``D`` coefficientwise (truncated at
    ``order``) and divides truncations; ``method="exact"`` integrates the
    closed-form ``d_q f`` along the radius instead.
    """
    _require_convex(e)
    q = as_q(q)
    z = grid.points()
    if method == "series":
        fview = e.view(order=order, exact=False)
        D = log_convolution_series(e, q, order)
        B = fview.bound
        cap = 1 / (1 - q)
        dview = SeriesView(D, e.tail_kind)
        # |[n]_q| <= min(n, 1/(1-q)) for real q in [0, 1)
        dval = Approx(dview.f(z).value,
                      dview.tail_error(z, lambda n: np.minimum(n, cap) * B(n) / n, 0))
        fval = fview.f(z)
        tol = TOL_SERIES if tolerance is None else tolerance
        # the coefficient identity, recomputed term by term
        a = e.coefficients(order)
        expect = [bracket_n(q, n) * complex(a[n]) / n for n in range(1, order + 1)]
        identity = bool(np.array_equal(D.coeffs[1:], np.array(expect)))
    elif method == "exact":
        fview = e.view()
        fval = fview.f(z)
        dval = Approx(log_convolution_quadrature(fview, q, z), np.zeros(z.shape))
        tol = TOL_EXACT if tolerance is None else tolerance
        identity = None
    else:
        raise ValueError(f"unknown method {method!r}")
    val, sing = ratio(fval, dval)
    rep = reduce_margins("log-convolution", z, Approx(val.value - (1 + q) / 2, val.err), sing,
                         tolerance=tol, anchor=ANCHORS["log-convolution"],
                         params={"function": e.label, "q": q, "method": method, "order": order,
                                 "grid": grid.describe()})
    if identity is not None:
        rep.clauses["coefficient_identity"] = identity
    return rep


# -- convolution closure -----------------------------------------------------

def check_convolution_closure(f: CatalogEntry, g: CatalogEntry, grid: DiscGrid, *,
                              alpha: Optional[float] = None, order: int = DEFAULT_ORDER,
                              tolerance: float = TOL_SERIES) -> MarginReport:
    """Convexity of ``f * g`` (``alpha=None``) or starlikeness of order ``alpha``.

    The product is formed from the exact coefficient rules, truncated at
    ``order`` and swept with the class majorant of the product as tail
    bound: ``|a_n b_n| <= 1`` for convex * convex, ``<= n`` for convex *
    starlike.
    """
    if not f.is_(Membership.CONVEX):
        raise MembershipMismatch(f"{f.label} is not declared convex")
    if alpha is None:
        if not g.is_(Membership.CONVEX):
            raise MembershipMismatch(f"{g.label} is not declared convex")
        kind = TailKind.CONVEX_COEFF_BOUND
    else:
        ok = g.is_(Membership.STARLIKE) and alpha == 0 or (
            g.is_(Membership.STARLIKE_HALF) and alpha <= 0.5)
        if not ok:
            raise MembershipMismatch(f"{g.label} is not declared starlike of order {alpha}")
        kind = TailKind.STARLIKE_COEFF_BOUND
    prod = catalog.convolve(f, g, kind)
    series = truncate(prod, order)
    view = SeriesView(series, kind, name=f"{prod.label}[N={order}]")
    p = {"f": f.label, "g": g.label, "alpha": alpha, "order": order}
    if alpha is None:
        rep = convex_margin(view.fprime, view.fsecond, grid, tolerance=tolerance,
                            check_id="convolution-closure", params=p)
    else:
        rep = starlike_margin(view.f, view.fprime, alpha, grid, tolerance=tolerance,
                              check_id="convolution-closure", params=p)
    rep.anchor = ANCHORS["convolution-closure"]
    floating = hadamard(truncate(f, order), truncate(g, order))
    drift = np.abs(floating.coeffs - series.coeffs)
    rep.clauses["float_product_agrees"] = bool(np.all(drift <= 4 * EPS * np.abs(series.coeffs)))
    rep.extras["coefficients_head"] = [complex(c) for c in series.coeffs[:6]]
    return rep


# -- counterexamples ---------------------------------------------------------

def find_starlike_counterexample(grid: DiscGrid, zeta_samples: Optional[Iterable] = None, *,
                                 tolerance: float = TOL_EXACT) -> MarginReport:
    """Most negative ``Re h(zeta, z)`` for the starlike, non-convex ``z + z^2/2``.

    A FAIL verdict (a violation) is the expected outcome.
    """
    e = catalog.entry("quad_starlike")
    view = e.view()
    zetas = zeta_grid() if zeta_samples is None else [as_zeta(s) for s in zeta_samples]
    best = None
    best_zeta = None
    slices = {}
    for zeta in zetas:
        rep = h_margin(view, zeta, grid, tolerance=tolerance,
                              check_id="starlike-counterexample", expected=Verdict.FAIL)
        if zeta in (0j, 1 + 0j):
            slices[str(zeta.real)] = rep.min_margin
        if best is None or rep.min_margin < best.min_margin:
            best, best_zeta = rep, zeta
    best.params = {"function": e.label, "zeta_samples": len(zetas), "grid": grid.describe()}
    best.extras = {"zeta_witness": best_zeta, "slices": slices}
    best.anchor = ANCHORS["starlike-counterexample"]
    return best


def check_nonunivalent_example(zeta, grid: DiscGrid, *, tolerance: float = 1e-12) -> MarginReport:
    """``f = z + z^2/(1+zeta)``: ``d_zeta f = 1 + z`` has positive real part,
    yet ``f'`` vanishes inside the disc and ``f`` takes a value twice."""
    zeta = as_zeta(zeta)
    if abs(zeta) >= 1 - 1e-12:
        raise ZetaOnBoundary("|zeta| = 1 gives |a_2| = 1/2, which is univalent")
    e = catalog.entry("quad_nonunivalent", zeta)
    f = truncate(e, 2)
    d = zeta_derivative(f, zeta)
    view = SeriesView(f, name=e.label)
    z = grid.points()
    rep = reduce_margins("nonunivalent-example", z, view.dzeta(z, zeta), tolerance=tolerance,
                         params={"zeta": zeta, "grid": grid.describe()},
                         anchor=ANCHORS["nonunivalent-example"])
    a2 = f.coeffs[2]
    z0 = -(1 + zeta) / 2
    delta = (1 - abs(z0)) / 2
    z1, z2 = z0 + delta, z0 - delta
    rep.extras.update({
        "dzeta_coefficients": [complex(c) for c in d.coeffs],
        "a2_modulus": float(abs(a2)),
        "critical_point": z0,
        "equal_value_pair": [z1, z2],
    })
    rep.clauses.update({
        "dzeta_is_one_plus_z": bool(d.order == 1 and d.coeffs[0] == 1
                                    and abs(d.coeffs[1] - 1) <= 4 * EPS),
        "min_real_part_is_one_minus_rmax": bool(abs(rep.min_margin - (1 - grid.r_max)) <= 1e-12),
        "a2_exceeds_half": bool(abs(a2) > 0.5),
        "critical_point_inside": bool(abs(z0) < 1 and abs(e.fprime(z0)) <= 1e-12),
        "not_injective": bool(max(abs(z1), abs(z2)) < 1
                              and abs(e.f(z1) - e.f(z2)) <= 1e-12 and z1 != z2),
    })
    return rep


# -- open problem ------------------------------------------------------------

def conjecture_zetas(moduli: Sequence[float] = (0.3, 0.6, 0.9), args: int = 64) -> list:
    out = []
    for m in moduli:
        out.extend(complex(c) for c in circle_points(m, args))
    return out


def explore_conjecture(functions: Optional[Sequence[CatalogEntry]] = None,
                       zetas: Optional[Sequence] = None, grid: Optional[DiscGrid] = None, *,
                       method: str = "exact", order: int = DEFAULT_ORDER,
                       tolerance: Optional[float] = None) -> ConjectureReport:
    """Sweep ``Re{f'/d_zeta f} - (1+|zeta|)/2`` over convex ``f`` and complex ``zeta``.

    Rows with real ``zeta = q >= 0`` are a consistency gate: there the bound
    is known to hold. Elsewhere the outcome is only reported.
    """
    functions = catalog.convex_corpus() if functions is None else list(functions)
    zetas = conjecture_zetas() if zetas is None else [as_zeta(s) for s in zetas]
    grid = DiscGrid.default() if grid is None else grid
    z = grid.points()
    rows = []
    tails = []
    gate = True
    tol = None
    for e in functions:
        _require_convex(e)
        view = _view(e, method, order)
        tol = _tol(view, tolerance)
        for zeta in zetas:
            alpha = (1 + abs(zeta)) / 2
            r, sing = zeta_ratio(view, z, zeta)
            rep = reduce_margins("conjecture", z, Approx(r.value.real - alpha, r.err), sing,
                                 tolerance=tol)
            real_q = zeta.imag == 0 and zeta.real >= 0
            if real_q and rep.verdict is not Verdict.PASS:
                gate = False
            tails.append(rep.tail_budget)
            rows.append({"function": e.label, "zeta": zeta, "zeta_modulus": abs(zeta),
                         "zeta_arg": math.atan2(zeta.imag, zeta.real), "bound": alpha,
                         "min_margin": rep.min_margin, "argmin": rep.argmin,
                         "real_q_gate": real_q})
    k = min(range(len(rows)), key=lambda i: rows[i]["min_margin"])
    w = rows[k]
    return ConjectureReport(
        zeta_grid=list(zetas), rows=rows, global_min=w["min_margin"],
        witness={"function": w["function"], "zeta": w["zeta"], "z": w["argmin"]},
        tolerance=tol, tail_budget=max(tails), consistency_ok=gate,
        params={"functions": [e.label for e in functions], "zetas": len(zetas),
                "method": method, "grid": grid.describe()},
    )


# -- operator identities -----------------------------------------------------

def check_operator_equivalence(entries: Optional[Sequence[CatalogEntry]] = None,
                               qs: Sequence[float] = (0.0, 0.25, 0.5, 0.9),
                               grid: Optional[DiscGrid] = None, *, order: int = DEFAULT_ORDER,
                               tolerance: float = 1e-10) -> IdentityReport:
    """Jackson difference quotient of the closed form against the
    coefficient operator applied to the truncation.

    The allowance is ``tolerance`` plus the largest tail bound of the
    truncated ``d_q f`` on the grid.
    """
    from .qcalc import jackson_quotient

    entries = catalog.corpus() if entries is None else list(entries)
    grid = grid if grid is not None else DiscGrid.uniform(40, 0.8, 260)
    z = grid.points()
    worst = (-1.0, None)
    tail = 0.0
    for e in entries:
        sview = e.view(order=order, exact=False)
        for q in qs:
            jq = jackson_quotient(e.f, q, z)
            op = sview.dzeta(z, q)
            dev = np.abs(jq - op.value)
            tail = max(tail, float(np.max(op.err)))
            k = int(np.argmax(dev))
            if dev[k] > worst[0]:
                worst = (float(dev[k]), (e.label, q, complex(z[k])))
    return IdentityReport("operator-equivalence", worst[0], worst[1], tolerance + tail,
                          params={"functions": [e.label for e in entries], "q": list(qs),
                                  "order": order, "points": int(z.size)},
                          anchor=ANCHORS["operator-equivalence"],
                          extras={"base_tolerance": tolerance, "tail_budget": tail})


def check_degenerations(entries: Optional[Sequence[CatalogEntry]] = None,
                        grid: Optional[DiscGrid] = None, *, order: int = DEFAULT_ORDER,
                        tolerance: float = 1e-12) -> IdentityReport:
    """``d_1 f`` equals ``f'`` coefficient for coefficient, and ``d_0 f`` evaluates to ``f/z``."""
    from .series import differentiate, evaluate

    entries = catalog.corpus() if entries is None else list(entries)
    grid = grid if grid is not None else DiscGrid.default()
    z = grid.points()
    exact = True
    worst = (0.0, None)
    for e in entries:
        f = truncate(e, order)
        exact &= bool(np.array_equal(zeta_derivative(f, 1.0).coeffs, differentiate(f).coeffs))
        dev = np.abs(evaluate(zeta_derivative(f, 0.0), z) - evaluate(f, z) / z)
        k = int(np.argmax(dev))
        if dev[k] > worst[0] or worst[1] is None:
            worst = (float(dev[k]), (e.label, 0.0, complex(z[k])))
    dev = worst[0] if exact else math.inf
    return IdentityReport("degenerations", dev, worst[1], tolerance,
                          params={"functions": [e.label for e in entries], "order": order},
                          anchor=ANCHORS["degenerations"],
                          extras={"zeta_one_exact": exact})
