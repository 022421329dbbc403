"""Truncated complex power series.

A :class:`PowerSeries` stores the coefficients ``a_0, ..., a_N`` of a
polynomial approximation to a function analytic in the unit disc. All
arithmetic is double precision and every operation returns a new value.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (
    NonfiniteCoefficient,
    NormalizationViolation,
    PointOutsideDisc,
    RadiusOutOfRange,
)

DEFAULT_ORDER = 128


@dataclass(frozen=True, eq=False)
class PowerSeries:
    """Coefficients ``coeffs[n]`` of ``z**n`` for ``n = 0..order``."""

    coeffs: np.ndarray
    normalized: bool = False

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __call__(self, z):
        return evaluate(self, z)

    def __repr__(self):
        head = ", ".join(f"{c:.6g}" for c in self.coeffs[:6])
        more = ", ..." if self.order > 5 else ""
        return f"PowerSeries([{head}{more}], order={self.order})"


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def make_series(coeffs: Sequence[complex], normalized_expected: bool = False) -> PowerSeries:
    """Build a series from coefficients listed from power 0 upwards.

    With ``normalized_expected`` the coefficients must satisfy
    ``a_0 = 0`` and ``a_1 = 1`` exactly.
    """
    a = np.array(coeffs, dtype=complex).ravel()
    if a.size == 0:
        raise ValueError("coefficient list is empty")
    if not np.all(np.isfinite(a)):
        raise NonfiniteCoefficient("series coefficients must be finite")
    normalized = a.size >= 2 and a[0] == 0 and a[1] == 1
    if normalized_expected and not normalized:
        raise NormalizationViolation(
            f"expected a_0 = 0 and a_1 = 1, got a_0 = {a[0]}, "
            f"a_1 = {a[1] if a.size > 1 else 'missing'}"
        )
    return PowerSeries(_freeze(a), bool(normalized))


def _check_in_disc(z: np.ndarray) -> None:
    if np.any(np.abs(z) >= 1):
        raise PointOutsideDisc("evaluation point must satisfy |z| < 1")


def evaluate(f: PowerSeries, z):
    """Horner evaluation of ``f`` at a scalar or array of points inside the disc."""
    zz = np.asarray(z, dtype=complex)
    _check_in_disc(zz)
    acc = np.zeros_like(zz)
    for c in f.coeffs[::-1]:
        acc = acc * zz + c
    if np.ndim(z) == 0:
        return complex(acc)
    return acc


def differentiate(f: PowerSeries) -> PowerSeries:
    if f.order < 1:
        raise ValueError("cannot differentiate a series of order 0")
    n = np.arange(1, f.order + 1, dtype=float)
    return make_series(n * f.coeffs[1:])


def hadamard(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """Coefficientwise product, truncated to the shorter of the two orders."""
    m = min(f.order, g.order) + 1
    return make_series(f.coeffs[:m] * g.coeffs[:m])


def shift_down(f: PowerSeries) -> PowerSeries:
    """``f(z)/z`` for a series with zero constant term."""
    if f.coeffs[0] != 0:
        raise ValueError("series has a nonzero constant term")
    return make_series(f.coeffs[1:])


class TailKind(enum.Enum):
    EXACT_CLOSED_FORM = "exact"
    CONVEX_COEFF_BOUND = "convex"
    STARLIKE_COEFF_BOUND = "starlike"
    NONE = "none"


# Classical coefficient estimates: |a_n| <= 1 on convex, |a_n| <= n on starlike.
_COEFF_BOUND: dict[TailKind, Callable[[np.ndarray], np.ndarray]] = {
    TailKind.EXACT_CLOSED_FORM: lambda n: np.zeros_like(n),
    TailKind.CONVEX_COEFF_BOUND: lambda n: np.ones_like(n),
    TailKind.STARLIKE_COEFF_BOUND: lambda n: n,
    TailKind.NONE: lambda n: np.full_like(n, np.inf),
}


def coefficient_bound(kind: TailKind) -> Callable[[np.ndarray], np.ndarray]:
    """Majorant ``n -> B(n)`` with ``|a_n| <= B(n)`` for the given class."""
    return _COEFF_BOUND[kind]


def _check_radius(r: float) -> None:
    if not 0 < r < 1:
        raise RadiusOutOfRange(f"radius {r!r} not in (0, 1)")


def tail_estimate(kind: TailKind, order: int, r: float) -> float:
    """Bound on ``|sum_{n > order} a_n z^n|`` for ``|z| = r``."""
    _check_radius(r)
    if kind is TailKind.EXACT_CLOSED_FORM:
        return 0.0
    if kind is TailKind.NONE:
        return math.inf
    N = order
    if kind is TailKind.CONVEX_COEFF_BOUND:
        return r ** (N + 1) / (1 - r)
    # sum_{n >= N+1} n r^n = r^(N+1) ((N+1) - N r) / (1 - r)^2
    return r ** (N + 1) * ((N + 1) - N * r) / (1 - r) ** 2


def weighted_tail(
    weight: Callable[[np.ndarray], np.ndarray], order: int, r, shift: int = 0
) -> np.ndarray:
    """``sum_{n > order} weight(n) r^(n - shift)`` by direct summation.

    ``r`` may be an array of radii in ``[0, 1)``. Summation runs until
    ``r^n`` drops below 1e-40, which swamps any polynomial weight used here.
    """
    radii = np.atleast_1d(np.asarray(r, dtype=float))
    out = np.zeros(radii.shape)
    for i, rad in enumerate(radii):
        if rad == 0:
            continue
        if not 0 < rad < 1:
            raise RadiusOutOfRange(f"radius {rad!r} not in (0, 1)")
        count = int(math.ceil(92.0 / -math.log(rad))) + 64
        n = np.arange(order + 1, order + 1 + count, dtype=float)
        w = weight(n)
        if np.any(np.isinf(w)):
            out[i] = math.inf
            continue
        # ascending powers; summing smallest terms last is fine at this accuracy
        out[i] = float(np.sum(w * np.exp((n - shift) * math.log(rad))))
    if np.ndim(r) == 0:
        return float(out[0])
    return out


@dataclass(frozen=True)
class TailBound:
    """Evaluable bound on the dropped tail of an order-``order`` truncation."""

    bound_kind: TailKind
    order: int

    def at_radius(self, r: float) -> float:
        return tail_estimate(self.bound_kind, self.order, r)
