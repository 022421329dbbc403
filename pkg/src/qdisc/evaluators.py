"""Point evaluators that carry an error bound alongside each value.

Two kinds of view expose the same methods (``f``, ``fprime``, ``fsecond``,
``dzeta``, ``zeta_gap``), each returning an :class:`Approx`:

* :class:`SeriesView` evaluates a truncated series and bounds the dropped
  tail from a coefficient majorant;
* :class:`ClosedFormView` wraps exact formulas for ``f, f', f''`` and
  reports zero error.

``zeta_gap`` is ``(f' - d_zeta f)/(1 - zeta)``, which stays analytic at
``zeta = 1`` where it equals ``z f''/2``.
"""
from __future__ import annotations

from typing import Callable, NamedTuple, Optional

import numpy as np

from .qcalc import as_zeta, zeta_derivative
from .series import (
    PowerSeries,
    TailKind,
    coefficient_bound,
    differentiate,
    evaluate,
    make_series,
    weighted_tail,
)

SINGULAR_GUARD = 1e-14
# below this |(zeta - 1) z| the difference quotient is replaced by quadrature
QUADRATURE_SWITCH = 0.05
_GL_X, _GL_W = np.polynomial.legendre.leggauss(48)
_GL_T = 0.5 * (_GL_X + 1.0)
_GL_W = 0.5 * _GL_W


class Approx(NamedTuple):
    value: np.ndarray
    err: np.ndarray


def split(x) -> Approx:
    """Accept a plain array or an Approx; plain values get zero error."""
    if isinstance(x, Approx):
        return x
    v = np.asarray(x, dtype=complex)
    return Approx(v, np.zeros(v.shape))


def ratio(num, den, guard: float = SINGULAR_GUARD):
    """``num/den`` with first-order error propagation.

    Returns ``(Approx, singular)`` where ``singular`` marks points with
    ``|den| < guard`` (their value is NaN).
    """
    a, b = split(num), split(den)
    mag = np.abs(b.value)
    singular = mag < guard
    safe = np.where(singular, 1.0, b.value)
    val = a.value / safe
    with np.errstate(divide="ignore", invalid="ignore"):
        err = np.where(
            mag > b.err, (a.err + np.abs(val) * b.err) / (mag - b.err), np.inf
        )
    val = np.where(singular, np.nan, val)
    return Approx(val, err), singular


def _radii(z: np.ndarray) -> np.ndarray:
    # round up slightly so that angle-dependent rounding of |z| shares a tail
    return np.minimum(np.ceil(np.abs(z) * 1e12) / 1e12, np.nextafter(1.0, 0.0))


def _tail_at(z: np.ndarray, weight, order: int, shift: int) -> np.ndarray:
    r = _radii(z)
    uniq, inv = np.unique(r, return_inverse=True)
    return np.asarray(weighted_tail(weight, order, uniq, shift=shift))[inv].reshape(z.shape)


def zeta_gap_coefficients(zeta, count: int) -> np.ndarray:
    """``c_n = sum_{k=1}^{n-1} k zeta^(n-1-k)`` for ``n = 1..count``.

    Uses ``c_(n+1) = n + zeta c_n``; ``c_n = (n - [n]_zeta)/(1 - zeta)``.
    """
    z = as_zeta(zeta)
    out = np.empty(count, dtype=complex)
    acc = 0j
    for k in range(count):
        out[k] = acc
        acc = (k + 1) + z * acc
    return out


class SeriesView:
    """Evaluate a truncated series, bounding the tail by ``tail_kind``."""

    def __init__(self, series: PowerSeries, tail_kind: TailKind = TailKind.EXACT_CLOSED_FORM,
                 name: Optional[str] = None):
        self.series = series
        self.tail_kind = tail_kind
        self.name = name or "series"
        self.bound = coefficient_bound(tail_kind)
        self._dseries = differentiate(series) if series.order >= 1 else make_series([0])
        self._d2series = (
            differentiate(self._dseries) if self._dseries.order >= 1 else make_series([0])
        )

    @property
    def order(self) -> int:
        return self.series.order

    def tail_error(self, z, weight, shift):
        if self.tail_kind is TailKind.EXACT_CLOSED_FORM:
            return np.zeros(np.shape(z))
        return _tail_at(z, weight, self.order, shift)

    def f(self, z) -> Approx:
        z = np.asarray(z, dtype=complex)
        return Approx(evaluate(self.series, z) * np.ones(z.shape), self.tail_error(z, self.bound, 0))

    def fprime(self, z) -> Approx:
        z = np.asarray(z, dtype=complex)
        B = self.bound
        return Approx(evaluate(self._dseries, z) * np.ones(z.shape),
                      self.tail_error(z, lambda n: n * B(n), 1))

    def fsecond(self, z) -> Approx:
        z = np.asarray(z, dtype=complex)
        B = self.bound
        return Approx(evaluate(self._d2series, z) * np.ones(z.shape),
                      self.tail_error(z, lambda n: n * (n - 1) * B(n), 2))

    def _bracket_weight(self, zeta):
        # |[n]_zeta| <= min(n, 2/|1 - zeta|) on the closed disc
        d = abs(1 - zeta)
        cap = 2.0 / d if d > 0 else np.inf
        return lambda n: np.minimum(n, cap)

    def dzeta(self, z, zeta) -> Approx:
        zeta = as_zeta(zeta)
        z = np.asarray(z, dtype=complex)
        s = zeta_derivative(self.series, zeta)
        bw, B = self._bracket_weight(zeta), self.bound
        return Approx(evaluate(s, z) * np.ones(z.shape), self.tail_error(z, lambda n: bw(n) * B(n), 1))

    def zeta_gap_series(self, zeta) -> PowerSeries:
        """Series of ``(f' - d_zeta f)/(1 - zeta)``; ``c_n a_n`` at ``z^(n-1)``."""
        c = zeta_gap_coefficients(zeta, self.order)
        return make_series(c * self.series.coeffs[1:])

    def zeta_gap(self, z, zeta) -> Approx:
        zeta = as_zeta(zeta)
        z = np.asarray(z, dtype=complex)
        s = self.zeta_gap_series(zeta)
        bw, B = self._bracket_weight(zeta), self.bound
        d = abs(1 - zeta)

        def weight(n):
            tri = n * (n - 1) / 2
            if d == 0:
                return tri * B(n)
            return np.minimum(tri, (n + bw(n)) / d) * B(n)

        return Approx(evaluate(s, z) * np.ones(z.shape), self.tail_error(z, weight, 1))


class ClosedFormView:
    """Exact evaluators for ``f, f', f''`` (and optionally ``d_zeta f``)."""

    tail_kind = TailKind.EXACT_CLOSED_FORM

    def __init__(self, f: Callable, fprime: Callable, fsecond: Callable,
                 dzeta: Optional[Callable] = None, name: str = "closed-form"):
        self._f, self._fp, self._fpp = f, fprime, fsecond
        self._dz = dzeta
        self.name = name

    @staticmethod
    def _exact(v, shape) -> Approx:
        v = np.asarray(v, dtype=complex) * np.ones(shape)
        return Approx(v, np.zeros(shape))

    def f(self, z) -> Approx:
        z = np.asarray(z, dtype=complex)
        return self._exact(self._f(z), z.shape)

    def fprime(self, z) -> Approx:
        z = np.asarray(z, dtype=complex)
        return self._exact(self._fp(z), z.shape)

    def fsecond(self, z) -> Approx:
        z = np.asarray(z, dtype=complex)
        return self._exact(self._fpp(z), z.shape)

    def _split_points(self, z, zeta):
        w = (zeta - 1) * z
        return w, np.abs(w) < QUADRATURE_SWITCH

    def dzeta(self, z, zeta) -> Approx:
        zeta = as_zeta(zeta)
        z = np.asarray(z, dtype=complex)
        if self._dz is not None:
            return self._exact(self._dz(z, zeta), z.shape)
        w, near = self._split_points(z, zeta)
        out = np.empty(z.shape, dtype=complex)
        far = ~near
        if np.any(far):
            zf = z[far]
            out[far] = (self._f(zf) - self._f(zeta * zf)) / ((1 - zeta) * zf)
        if np.any(near):
            # d_zeta f(z) = int_0^1 f'(z + t w) dt,  w = (zeta - 1) z
            pts = z[near][:, None] + _GL_T[None, :] * w[near][:, None]
            out[near] = np.asarray(self._fp(pts)) @ _GL_W
        return Approx(out, np.zeros(z.shape))

    def zeta_gap(self, z, zeta) -> Approx:
        zeta = as_zeta(zeta)
        z = np.asarray(z, dtype=complex)
        w, near = self._split_points(z, zeta)
        out = np.empty(z.shape, dtype=complex)
        far = ~near
        if np.any(far):
            zf = z[far]
            out[far] = (np.asarray(self._fp(zf)) - self.dzeta(zf, zeta).value) / (1 - zeta)
        if np.any(near):
            # (f' - d_zeta f)/(1 - zeta) = z int_0^1 (1 - t) f''(z + t w) dt
            pts = z[near][:, None] + _GL_T[None, :] * w[near][:, None]
            out[near] = z[near] * (np.asarray(self._fpp(pts)) @ (_GL_W * (1 - _GL_T)))
        return Approx(out, np.zeros(z.shape))


def as_view(obj):
    """Coerce a PowerSeries (taken as an exact polynomial), catalog entry or view."""
    if isinstance(obj, PowerSeries):
        return SeriesView(obj)
    if hasattr(obj, "view") and callable(obj.view):
        return obj.view()
    return obj
