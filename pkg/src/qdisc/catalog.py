"""Named analytic functions used as the test corpus.

Each entry carries a coefficient rule, closed-form evaluators where they
exist, and *declared* class memberships. Memberships are metadata that the
samplers in :mod:`qdisc.classes` can contradict; they are not derived.

Coefficient rules return exact rationals (:class:`fractions.Fraction`)
whenever the coefficients are rational, so that Hadamard products of
entries can be formed exactly before conversion to floating point.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .errors import UnknownEntry
from .evaluators import ClosedFormView, SeriesView
from .qcalc import as_zeta, brackets
from .series import DEFAULT_ORDER, PowerSeries, TailKind, make_series


class Membership(str, enum.Enum):
    CONVEX = "CONVEX"
    STARLIKE = "STARLIKE"
    STARLIKE_HALF = "STARLIKE_HALF"
    NOT_CONVEX = "NOT_CONVEX"
    NOT_UNIVALENT = "NOT_UNIVALENT"


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    coeff_rule: Callable[[int], object]
    memberships: frozenset
    tail_kind: TailKind
    f: Optional[Callable] = None
    fprime: Optional[Callable] = None
    fsecond: Optional[Callable] = None
    exact_dzeta: Optional[Callable] = None
    params: dict = field(default_factory=dict)
    core: bool = True
    formula: str = ""

    @property
    def has_exact(self) -> bool:
        return None not in (self.f, self.fprime, self.fsecond)

    @property
    def label(self) -> str:
        if not self.params:
            return self.id
        inner = ",".join(f"{k}={_fmt(v)}" for k, v in self.params.items())
        return f"{self.id}({inner})"

    def is_(self, m: Membership) -> bool:
        return m in self.memberships

    def coefficients(self, order: int) -> np.ndarray:
        return np.array([complex(self.coeff_rule(n)) for n in range(order + 1)])

    def view(self, order: int = DEFAULT_ORDER, exact: bool = True):
        """Closed-form view when available (and wanted), else the truncation."""
        if exact and self.has_exact:
            return ClosedFormView(self.f, self.fprime, self.fsecond, self.exact_dzeta,
                                  name=self.label)
        return SeriesView(truncate(self, order), self.tail_kind, name=f"{self.label}[N={order}]")


def _fmt(v) -> str:
    v = complex(v)
    if v.imag == 0:
        return repr(v.real)
    return f"{v.real!r}{v.imag:+}i"


def truncate(e: CatalogEntry, order: int) -> PowerSeries:
    if order < 1:
        raise ValueError("order must be >= 1")
    return make_series(e.coefficients(order), normalized_expected=True)


def _poly_rule(coeffs: dict) -> Callable[[int], object]:
    return lambda n: coeffs.get(n, 0)


def _half_plane() -> CatalogEntry:
    return CatalogEntry(
        id="half_plane",
        coeff_rule=lambda n: Fraction(1) if n >= 1 else Fraction(0),
        memberships=frozenset({Membership.CONVEX, Membership.STARLIKE, Membership.STARLIKE_HALF}),
        tail_kind=TailKind.CONVEX_COEFF_BOUND,
        f=lambda z: z / (1 - z),
        fprime=lambda z: 1 / (1 - z) ** 2,
        fsecond=lambda z: 2 / (1 - z) ** 3,
        exact_dzeta=lambda z, zeta: 1 / ((1 - z) * (1 - zeta * z)),
        formula="z/(1-z)",
    )


def _koebe() -> CatalogEntry:
    return CatalogEntry(
        id="koebe",
        coeff_rule=lambda n: Fraction(n),
        memberships=frozenset({Membership.STARLIKE, Membership.NOT_CONVEX}),
        tail_kind=TailKind.STARLIKE_COEFF_BOUND,
        f=lambda z: z / (1 - z) ** 2,
        fprime=lambda z: (1 + z) / (1 - z) ** 3,
        fsecond=lambda z: (4 + 2 * z) / (1 - z) ** 4,
        formula="z/(1-z)^2",
    )


def _h_zeta(zeta) -> CatalogEntry:
    c = as_zeta(zeta)

    def P(z):
        return (1 - z) * (1 - c * z)

    def dP(z):
        return -(1 + c) + 2 * c * z

    def rule(n):
        return 0j if n == 0 else complex(brackets(c, n)[-1])

    return CatalogEntry(
        id="h_zeta",
        coeff_rule=rule,
        memberships=frozenset({Membership.STARLIKE}),
        tail_kind=TailKind.STARLIKE_COEFF_BOUND,
        f=lambda z: z / P(z),
        fprime=lambda z: (1 - c * z * z) / P(z) ** 2,
        fsecond=lambda z: (-2 * c * z * P(z) - 2 * (1 - c * z * z) * dP(z)) / P(z) ** 3,
        params={"zeta": c},
        formula="z/((1-zeta z)(1-z))",
    )


def _quad_starlike() -> CatalogEntry:
    return CatalogEntry(
        id="quad_starlike",
        coeff_rule=_poly_rule({1: Fraction(1), 2: Fraction(1, 2)}),
        memberships=frozenset({Membership.STARLIKE, Membership.NOT_CONVEX}),
        tail_kind=TailKind.EXACT_CLOSED_FORM,
        f=lambda z: z + z * z / 2,
        fprime=lambda z: 1 + z,
        fsecond=lambda z: np.ones_like(np.asarray(z, dtype=complex)),
        formula="z + z^2/2",
    )


def _quad_nonunivalent(zeta=0.0) -> CatalogEntry:
    c = as_zeta(zeta)
    a = 1 / (1 + c)
    return CatalogEntry(
        id="quad_nonunivalent",
        coeff_rule=_poly_rule({1: 1, 2: a}),
        memberships=frozenset({Membership.NOT_UNIVALENT, Membership.NOT_CONVEX}),
        tail_kind=TailKind.EXACT_CLOSED_FORM,
        f=lambda z: z + a * z * z,
        fprime=lambda z: 1 + 2 * a * z,
        fsecond=lambda z: 2 * a * np.ones_like(np.asarray(z, dtype=complex)),
        params={"zeta": c},
        formula="z + z^2/(1+zeta)",
    )


def _log_convex() -> CatalogEntry:
    return CatalogEntry(
        id="log_convex",
        coeff_rule=lambda n: Fraction(1, n) if n >= 1 else Fraction(0),
        memberships=frozenset({Membership.CONVEX, Membership.STARLIKE, Membership.STARLIKE_HALF}),
        tail_kind=TailKind.CONVEX_COEFF_BOUND,
        f=lambda z: -np.log1p(-np.asarray(z, dtype=complex)),
        fprime=lambda z: 1 / (1 - z),
        fsecond=lambda z: 1 / (1 - z) ** 2,
        formula="log(1/(1-z))",
    )


def _strip_convex() -> CatalogEntry:
    return CatalogEntry(
        id="strip_convex",
        coeff_rule=lambda n: Fraction(1, n) if n % 2 == 1 else Fraction(0),
        memberships=frozenset({Membership.CONVEX, Membership.STARLIKE, Membership.STARLIKE_HALF}),
        tail_kind=TailKind.CONVEX_COEFF_BOUND,
        f=lambda z: np.arctanh(np.asarray(z, dtype=complex)),
        fprime=lambda z: 1 / (1 - z * z),
        fsecond=lambda z: 2 * z / (1 - z * z) ** 2,
        core=False,
        formula="(1/2) log((1+z)/(1-z))",
    )


_REGISTRY: dict[str, Callable[..., CatalogEntry]] = {
    "half_plane": _half_plane,
    "koebe": _koebe,
    "h_zeta": _h_zeta,
    "quad_starlike": _quad_starlike,
    "quad_nonunivalent": _quad_nonunivalent,
    "log_convex": _log_convex,
    "strip_convex": _strip_convex,
}
PARAMETRIZED = ("h_zeta", "quad_nonunivalent")
CONVEX_IDS = ("half_plane", "log_convex", "strip_convex")


def ids() -> list[str]:
    return list(_REGISTRY)


def entry(id: str, zeta=None) -> CatalogEntry:
    """Look up a registered entry; ``zeta`` parametrizes ``h_zeta`` and
    ``quad_nonunivalent`` (defaults 1/2 and 0)."""
    try:
        make = _REGISTRY[id]
    except KeyError:
        raise UnknownEntry(f"no catalog entry named {id!r}") from None
    if id in PARAMETRIZED:
        if zeta is None:
            zeta = 0.5 if id == "h_zeta" else 0.0
        return make(zeta)
    if zeta is not None:
        raise ValueError(f"{id} takes no parameter")
    return make()


def corpus() -> list[CatalogEntry]:
    """Every entry, parametrized ones at representative values."""
    return [
        entry("half_plane"),
        entry("koebe"),
        entry("h_zeta", 0.5),
        entry("h_zeta", 1j),
        entry("h_zeta", 1.0),
        entry("quad_starlike"),
        entry("quad_nonunivalent", 0.0),
        entry("quad_nonunivalent", 0.9j),
        entry("log_convex"),
        entry("strip_convex"),
    ]


def convex_corpus() -> list[CatalogEntry]:
    return [entry(i) for i in CONVEX_IDS]


def convolve(f: CatalogEntry, g: CatalogEntry, tail_kind: TailKind) -> CatalogEntry:
    """Entry whose coefficient rule is the exact product of the two rules.

    No closed forms are attached; the product is evaluated from its
    truncation with the given tail majorant.
    """
    rf, rg = f.coeff_rule, g.coeff_rule
    return CatalogEntry(
        id=f"{f.label}*{g.label}",
        coeff_rule=lambda n: rf(n) * rg(n),
        memberships=frozenset(),
        tail_kind=tail_kind,
        core=f.core and g.core,
        formula=f"({f.formula}) * ({g.formula})",
    )


def describe(e: CatalogEntry) -> dict:
    return {
        "id": e.id,
        "params": dict(e.params),
        "formula": e.formula,
        "memberships": sorted(m.value for m in e.memberships),
        "exact_eval": e.has_exact,
        "exact_dzeta": e.exact_dzeta is not None,
        "tail_kind": e.tail_kind.value,
        "core": e.core,
    }


def list_catalog() -> list[dict]:
    return [describe(entry(i)) for i in ids()]
