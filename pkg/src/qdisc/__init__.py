"""Numerical checks for the zeta-derivative, Hadamard products and convex functions on the unit disc."""
from .catalog import CatalogEntry, Membership, convex_corpus, corpus, entry, truncate
from .classes import (
    DiscGrid,
    MarginReport,
    Verdict,
    convex_margin,
    herglotz_p,
    r_class_margin,
    starlike_margin,
)
from .errors import QDiscError
from .qcalc import QParam, ZetaParam, bracket_n, brackets, h_zeta_series, jackson_quotient, zeta_derivative
from .series import PowerSeries, TailBound, TailKind, differentiate, evaluate, hadamard, make_series
from .suite import Settings, check_ids, run_check

__all__ = [
    "CatalogEntry", "Membership", "convex_corpus", "corpus", "entry", "truncate",
    "DiscGrid", "MarginReport", "Verdict", "convex_margin", "herglotz_p", "r_class_margin",
    "starlike_margin", "QDiscError", "QParam", "ZetaParam", "bracket_n", "brackets",
    "h_zeta_series", "jackson_quotient", "zeta_derivative", "PowerSeries", "TailBound",
    "TailKind", "differentiate", "evaluate", "hadamard", "make_series", "Settings",
    "check_ids", "run_check",
]
