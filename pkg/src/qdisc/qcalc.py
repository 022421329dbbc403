"""The zeta-derivative operator and the Jackson q-difference quotient.

For ``|zeta| <= 1`` the operator acts on a normalized series by
multiplying the coefficient of ``z^n`` by ``[n]_zeta = 1 + zeta + ... +
zeta^(n-1)`` and dividing by ``z``. At ``zeta = 1`` it is ordinary
differentiation; at real ``zeta = q`` in ``[0, 1)`` it is Jackson's
q-derivative.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NotNormalized, ParameterOutOfRange, PointOutsideDisc
from .series import PowerSeries, make_series

BOUNDARY_SLACK = 1e-12
ORIGIN_THRESHOLD = 1e-9


@dataclass(frozen=True)
class ZetaParam:
    value: complex

    def __post_init__(self):
        v = complex(self.value)
        if not np.isfinite(v.real) or not np.isfinite(v.imag):
            raise ParameterOutOfRange("zeta must be finite")
        if abs(v) > 1 + BOUNDARY_SLACK:
            raise ParameterOutOfRange(f"|zeta| = {abs(v)!r} exceeds 1")
        object.__setattr__(self, "value", v)


@dataclass(frozen=True)
class QParam:
    value: float

    def __post_init__(self):
        v = float(self.value)
        if not 0 <= v < 1:
            raise ParameterOutOfRange(f"q = {v!r} not in [0, 1)")
        object.__setattr__(self, "value", v)


def as_zeta(zeta) -> complex:
    if isinstance(zeta, (ZetaParam, QParam)):
        return complex(zeta.value)
    return ZetaParam(zeta).value


def as_q(q) -> float:
    if isinstance(q, QParam):
        return q.value
    return QParam(q).value


def brackets(zeta, count: int) -> np.ndarray:
    """``[1]_zeta, ..., [count]_zeta`` as running sums ``[n+1] = 1 + zeta [n]``.

    Never uses ``(1 - zeta^n)/(1 - zeta)``, so ``zeta = 1`` gives the
    integers exactly and there is no cancellation near 1.
    """
    z = as_zeta(zeta)
    out = np.empty(count, dtype=complex)
    acc = 1.0 + 0j
    for k in range(count):
        out[k] = acc
        acc = 1.0 + z * acc
    return out


def bracket_n(zeta, n: int) -> complex:
    if n < 1:
        raise ValueError("bracket index must be >= 1")
    return complex(brackets(zeta, n)[-1])


def h_zeta_series(zeta, order: int) -> PowerSeries:
    """Truncation of ``z / ((1 - zeta z)(1 - z))``; coefficients ``[n]_zeta``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    c = np.zeros(order + 1, dtype=complex)
    c[1:] = brackets(zeta, order)
    return make_series(c, normalized_expected=True)


def zeta_derivative(f: PowerSeries, zeta) -> PowerSeries:
    """``d_zeta f``: coefficient of ``z^(n-1)`` is ``[n]_zeta a_n``."""
    if not f.normalized:
        raise NotNormalized("zeta_derivative needs f(0) = 0, f'(0) = 1")
    b = brackets(zeta, f.order)
    return make_series(b * f.coeffs[1:])


def jackson_quotient(f: Callable, q, z, fprime0: complex = 1.0):
    """``(f(qz) - f(z)) / ((q - 1) z)``, with ``f'(0)`` used near the origin.

    ``f`` is any callable evaluating the function at an array of points.
    ``fprime0`` is the derivative at the origin (1 for normalized ``f``).
    """
    qq = as_q(q)
    zz = np.asarray(z, dtype=complex)
    if np.any(np.abs(zz) >= 1):
        raise PointOutsideDisc("evaluation point must satisfy |z| < 1")
    near = np.abs(zz) < ORIGIN_THRESHOLD
    safe = np.where(near, 0.5, zz)
    out = (np.asarray(f(qq * safe)) - np.asarray(f(safe))) / ((qq - 1) * safe)
    out = np.where(near, complex(fprime0), out)
    if np.ndim(z) == 0:
        return complex(out)
    return out
