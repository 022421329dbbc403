"""Grid samplers for starlikeness, convexity and the classes R(zeta, alpha).

A sampler evaluates a strict inequality at every point of a polar grid
and reduces it to a :class:`MarginReport`. Samplers can only refute
membership: a PASS means the inequality held at every grid point, up to
the stated tolerance and tail budget.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Optional

import numpy as np

from .errors import AllPointsSingular, DenominatorSingular, EmptyGrid, ParameterOutOfRange
from .evaluators import Approx, as_view, ratio, split
from .qcalc import as_q, as_zeta

DEFAULT_RADII = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95)
DEFAULT_ANGLES = 256
TOL_EXACT = 1e-9
TOL_SERIES = 1e-6


class Verdict(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class DiscGrid:
    """Polar lattice ``r_j exp(2 pi i k / M)``, enumerated radius-major."""

    radii: tuple
    angles_per_circle: int = DEFAULT_ANGLES

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        object.__setattr__(self, "radii", radii)
        if any(not 0 < r < 1 for r in radii):
            raise ParameterOutOfRange("grid radii must lie in (0, 1)")
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise ParameterOutOfRange("grid radii must be strictly increasing")
        if self.angles_per_circle < 8:
            raise ParameterOutOfRange("need at least 8 angles per circle")

    @classmethod
    def default(cls, r_max: float = 0.95, angles: int = DEFAULT_ANGLES) -> "DiscGrid":
        """Radii 0.1, 0.2, ... below ``r_max``, then ``r_max`` itself."""
        if not 0 < r_max < 1:
            raise ParameterOutOfRange("r_max must lie in (0, 1)")
        radii = [r for r in DEFAULT_RADII if r < r_max - 1e-12]
        return cls(tuple(radii) + (r_max,), angles)

    @classmethod
    def uniform(cls, count: int, r_max: float, angles: int = DEFAULT_ANGLES) -> "DiscGrid":
        """``count`` equally spaced radii ending at ``r_max``."""
        radii = r_max * np.arange(1, count + 1) / count
        return cls(tuple(radii), angles)

    @property
    def r_max(self) -> float:
        return self.radii[-1] if self.radii else 0.0

    def __len__(self):
        return len(self.radii) * self.angles_per_circle

    @cached_property
    def _points(self) -> np.ndarray:
        theta = 2 * np.pi * np.arange(self.angles_per_circle) / self.angles_per_circle
        unit = np.cos(theta) + 1j * np.sin(theta)
        pts = (np.asarray(self.radii)[:, None] * unit[None, :]).ravel()
        pts.setflags(write=False)
        return pts

    def points(self) -> np.ndarray:
        return self._points

    def describe(self) -> dict:
        return {"radii": list(self.radii), "angles": self.angles_per_circle}


@dataclass
class MarginReport:
    """Outcome of one grid sweep of a strict inequality ``lhs - rhs > 0``.

    ``clauses`` holds any side assertions of the check (argument ranges,
    coefficient identities, ...); ``passed`` requires the verdict to match
    ``expected`` and every clause to hold.
    """

    check_id: str
    params: dict
    min_margin: float
    argmin: complex
    tolerance: float
    tail_budget: float
    singular_count: int = 0
    point_count: int = 0
    expected: Verdict = Verdict.PASS
    anchor: str = ""
    clauses: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)

    @property
    def verdict(self) -> Verdict:
        return margin_verdict(self.min_margin, self.tolerance, self.tail_budget)

    @property
    def passed(self) -> bool:
        return self.verdict is self.expected and all(self.clauses.values())

    def record(self) -> dict[str, Any]:
        return {
            "check_id": self.check_id,
            "anchor": self.anchor,
            "params": self.params,
            "min_margin": self.min_margin,
            "witness": self.argmin,
            "tolerance": self.tolerance,
            "tail_budget": self.tail_budget,
            "singular_count": self.singular_count,
            "point_count": self.point_count,
            "verdict": self.verdict.value,
            "expected": self.expected.value,
            "clauses": dict(self.clauses),
            "extras": dict(self.extras),
            "passed": self.passed,
        }


def margin_verdict(min_margin: float, tolerance: float, tail_budget: float) -> Verdict:
    if math.isinf(tail_budget):
        return Verdict.INCONCLUSIVE
    if min_margin > -(tolerance + tail_budget):
        return Verdict.PASS
    return Verdict.FAIL


def reduce_margins(check_id: str, points: np.ndarray, margin: Approx,
                   singular: Optional[np.ndarray] = None, *, tolerance: float,
                   params: Optional[dict] = None, expected: Verdict = Verdict.PASS,
                   anchor: str = "") -> MarginReport:
    """Min and argmin over the non-singular points, first index on ties.

    The tail budget is the largest propagated error among those points.
    """
    points = np.asarray(points)
    if points.size == 0:
        raise EmptyGrid(f"{check_id}: grid has no points")
    vals = np.real(np.asarray(margin.value)).ravel()
    errs = np.asarray(margin.err, dtype=float).ravel()
    bad = ~np.isfinite(vals)
    if singular is not None:
        bad |= np.asarray(singular).ravel()
    if np.all(bad):
        raise AllPointsSingular(f"{check_id}: every grid point is singular")
    masked = np.where(bad, np.inf, vals)
    k = int(np.argmin(masked))
    tail = float(np.max(errs[~bad])) if errs.size else 0.0
    return MarginReport(
        check_id=check_id,
        params=dict(params or {}),
        min_margin=float(masked[k]),
        argmin=complex(points.ravel()[k]),
        tolerance=tolerance,
        tail_budget=tail,
        singular_count=int(np.count_nonzero(bad)),
        point_count=int(points.size),
        expected=expected,
        anchor=anchor,
    )


def default_tolerance(view) -> float:
    from .series import TailKind

    kind = getattr(view, "tail_kind", TailKind.EXACT_CLOSED_FORM)
    return TOL_EXACT if kind is TailKind.EXACT_CLOSED_FORM else TOL_SERIES


def _check_alpha(alpha: float) -> None:
    if not 0 <= alpha < 1:
        raise ParameterOutOfRange(f"alpha = {alpha!r} not in [0, 1)")


def _scale(z: np.ndarray, a: Approx) -> Approx:
    return Approx(z * a.value, np.abs(z) * a.err)


def _shift(a: Approx, c) -> Approx:
    return Approx(a.value - c, a.err)


def starlike_margin(f_eval, fprime_eval, alpha: float, grid: DiscGrid, *,
                    tolerance: float = TOL_EXACT, check_id: str = "starlike",
                    params: Optional[dict] = None) -> MarginReport:
    """Grid minimum of ``Re{z f'(z)/f(z)} - alpha``.

    Evaluators may return plain arrays or :class:`Approx` values; errors of
    the latter are propagated into the tail budget.
    """
    _check_alpha(alpha)
    z = grid.points()
    val, sing = ratio(_scale(z, split(fprime_eval(z))), split(f_eval(z)))
    p = {"alpha": alpha, "grid": grid.describe(), **(params or {})}
    return reduce_margins(check_id, z, _shift(val, alpha), sing,
                          tolerance=tolerance, params=p)


def convex_margin(fprime_eval, fsecond_eval, grid: DiscGrid, *,
                  tolerance: float = TOL_EXACT, check_id: str = "convex",
                  params: Optional[dict] = None) -> MarginReport:
    """Grid minimum of ``Re{1 + z f''(z)/f'(z)}``."""
    z = grid.points()
    val, sing = ratio(_scale(z, split(fsecond_eval(z))), split(fprime_eval(z)))
    p = {"grid": grid.describe(), **(params or {})}
    return reduce_margins(check_id, z, _shift(val, -1.0), sing,
                          tolerance=tolerance, params=p)


def zeta_ratio(view, z, zeta):
    """``f'(z) / d_zeta f(z)`` with its error bound and singular mask."""
    return ratio(view.fprime(z), view.dzeta(z, zeta))


def r_class_margin(f, zeta, alpha: float, grid: DiscGrid, *,
                   tolerance: Optional[float] = None, check_id: str = "r-class",
                   params: Optional[dict] = None) -> MarginReport:
    """Grid minimum of ``Re{f'/d_zeta f} - alpha``.

    ``f`` is a normalized PowerSeries (treated as an exact polynomial), a
    catalog entry, or an evaluator view.
    """
    _check_alpha(alpha)
    zeta = as_zeta(zeta)
    view = as_view(f)
    z = grid.points()
    val, sing = zeta_ratio(view, z, zeta)
    tol = default_tolerance(view) if tolerance is None else tolerance
    p = {"zeta": zeta, "alpha": alpha, "function": view.name, "grid": grid.describe(),
         **(params or {})}
    return reduce_margins(check_id, z, _shift(val, alpha), sing, tolerance=tol, params=p)


def herglotz_values(f, q, z) -> tuple[Approx, np.ndarray]:
    """``p = (2 f'/d_q f - (1 + q))/(1 - q)`` with error bound and singular mask."""
    qq = as_q(q)
    view = as_view(f)
    zz = np.asarray(z, dtype=complex)
    val, sing = zeta_ratio(view, zz, qq)
    p = Approx((2 * val.value - (1 + qq)) / (1 - qq), 2 * val.err / (1 - qq))
    return p, sing


def herglotz_p(f, q, z):
    """The function ``p`` with positive real part attached to a convex ``f``.

    Raises :class:`DenominatorSingular` where ``|d_q f(z)| < 1e-14``.
    """
    p, sing = herglotz_values(f, q, z)
    if np.any(sing):
        raise DenominatorSingular("d_q f vanishes at an evaluation point")
    if np.ndim(z) == 0:
        return complex(p.value)
    return p.value


def herglotz_margin(f, q, grid: DiscGrid, *, tolerance: Optional[float] = None,
                    check_id: str = "herglotz") -> MarginReport:
    view = as_view(f)
    z = grid.points()
    p, sing = herglotz_values(view, q, z)
    tol = default_tolerance(view) if tolerance is None else tolerance
    return reduce_margins(check_id, z, p, sing, tolerance=tol,
                          params={"q": as_q(q), "function": view.name,
                                  "grid": grid.describe()})

