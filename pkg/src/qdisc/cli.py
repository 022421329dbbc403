"""Command-line driver: ``qdisc verify | explore | identity | list-catalog | list-checks``.

Exit status: 0 when every check met its expected verdict, 1 when some
did not, 2 for an invalid configuration, 3 when a check raised.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import fields
from typing import Any, Optional

import numpy as np

from . import catalog, suite
from .errors import ConfigInvalid, QDiscError, UnknownEntry

SCHEMA_VERSION = 1
EXIT_OK, EXIT_UNEXPECTED, EXIT_CONFIG, EXIT_CHECK = 0, 1, 2, 3


# -- value formatting --------------------------------------------------------

def parse_complex(text: str) -> complex:
    """Parse ``"a+bi"``, ``"bi"``, ``"i"``, ``"-i"`` or a plain real number."""
    s = str(text).strip().replace(" ", "").replace("I", "i").replace("j", "i")
    if not s:
        raise ConfigInvalid("empty complex literal")
    try:
        return complex(s.replace("i", "j"))
    except ValueError:
        raise ConfigInvalid(f"cannot parse complex value {text!r}") from None


def fmt_float(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def fmt_complex(z: complex) -> str:
    z = complex(z)
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{fmt_float(z.real)}{sign}{fmt_float(abs(z.imag))}i"


def _plain(v: Any) -> Any:
    """Map report values onto JSON-ready ones with stable float text."""
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, np.ndarray):
        return [_plain(x) for x in v.tolist()]
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return _Raw(fmt_float(v)) if math.isfinite(v) else fmt_float(v)
    if isinstance(v, (complex, np.complexfloating)):
        return fmt_complex(v)
    if hasattr(v, "value") and isinstance(getattr(v, "value"), str):
        return v.value
    return v


class _Raw(str):
    """A float already rendered to its 17-digit text."""


def to_json(obj: Any, indent: int = 2) -> str:
    def enc(v, depth):
        pad, inner = " " * (indent * depth), " " * (indent * (depth + 1))
        if isinstance(v, _Raw):
            return str(v)
        if isinstance(v, dict):
            if not v:
                return "{}"
            items = [f"{inner}{json.dumps(k)}: {enc(x, depth + 1)}" for k, x in v.items()]
            return "{\n" + ",\n".join(items) + "\n" + pad + "}"
        if isinstance(v, list):
            if not v:
                return "[]"
            return "[\n" + ",\n".join(inner + enc(x, depth + 1) for x in v) + "\n" + pad + "]"
        return json.dumps(v)

    return enc(_plain(obj), 0) + "\n"


# -- configuration -----------------------------------------------------------

_SETTING_KEYS = {f.name for f in fields(suite.Settings)}


def _load_config(path: Optional[str]) -> dict:
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigInvalid(f"cannot read config {path!r}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigInvalid("config file must hold a JSON object")
    return data


def _csv_list(text) -> list:
    if text is None:
        return None
    if isinstance(text, (list, tuple)):
        return list(text)
    return [t for t in str(text).split(",") if t.strip()]


def build_settings(args: argparse.Namespace) -> tuple[list, suite.Settings]:
    """Merge the config file with flags (flags win) and validate the result."""
    cfg = _load_config(getattr(args, "config", None))
    unknown = set(cfg) - _SETTING_KEYS - {"check", "suite", "out", "format", "deterministic"}
    if unknown:
        raise ConfigInvalid(f"unknown config keys: {sorted(unknown)}")

    def pick(name, key=None):
        v = getattr(args, name, None)
        return cfg.get(key or name) if v is None else v

    checks = _csv_list(pick("check")) or []
    if pick("suite"):
        if pick("suite") not in suite.SUITES:
            raise ConfigInvalid(f"unknown suite {pick('suite')!r}")
        if not checks:
            checks = ["all"]
    if checks == ["all"]:
        checks = list(suite.SUITES[pick("suite") or "paper"])
    if not checks:
        raise ConfigInvalid("no check selected")
    for c in checks:
        if c not in suite.REGISTRY:
            raise ConfigInvalid(f"unknown check {c!r}")

    functions = _csv_list(pick("function", "functions"))
    if functions is not None:
        for fid in functions:
            if fid not in catalog.ids():
                raise ConfigInvalid(f"unknown catalog entry {fid!r}")
    zetas = _csv_list(pick("zeta", "zetas"))
    qs = _csv_list(pick("q", "qs"))
    kw = {
        "functions": tuple(functions) if functions is not None else None,
        "zetas": tuple(parse_complex(z) for z in zetas) if zetas is not None else None,
        "qs": tuple(float(q) for q in qs) if qs is not None else None,
        "order": pick("order"),
        "r_max": pick("rmax", "r_max"),
        "radii": pick("radii"),
        "angles": pick("angles"),
        "tolerance": pick("tol", "tolerance"),
        "method": pick("method"),
        "samples": pick("samples"),
        "seed": pick("seed"),
        "zeta_moduli": tuple(float(m) for m in _csv_list(pick("zeta_moduli"))) if pick(
            "zeta_moduli") is not None else None,
        "zeta_args": pick("zeta_args"),
    }
    try:
        settings = suite.with_overrides(suite.Settings(), **kw)
    except (TypeError, ValueError) as exc:
        raise ConfigInvalid(str(exc)) from None
    _validate(settings)
    return checks, settings


def _validate(s: suite.Settings) -> None:
    if not 0 < float(s.r_max) < 1:
        raise ConfigInvalid("r_max must lie in (0, 1)")
    if int(s.order) < 8:
        raise ConfigInvalid("series order must be at least 8")
    if int(s.angles) < 8:
        raise ConfigInvalid("need at least 8 angles per circle")
    if s.radii is not None and int(s.radii) < 1:
        raise ConfigInvalid("radii count must be positive")
    if s.method not in ("exact", "series"):
        raise ConfigInvalid("method must be 'exact' or 'series'")
    if s.tolerance is not None and not float(s.tolerance) >= 0:
        raise ConfigInvalid("tolerance must be non-negative")
    for z in s.zetas or ():
        if abs(z) > 1 + 1e-12:
            raise ConfigInvalid(f"|zeta| > 1 for {fmt_complex(z)}")
    for q in s.qs or ():
        if not 0 <= q < 1:
            raise ConfigInvalid(f"q = {q} not in [0, 1)")


def _threads() -> Optional[int]:
    raw = os.environ.get("QDISC_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise ConfigInvalid(f"QDISC_THREADS={raw!r} is not an integer") from None
    if n < 0:
        raise ConfigInvalid("QDISC_THREADS must be >= 0")
    return None if n == 0 else n


# -- running -----------------------------------------------------------------

def _run_one(check_id: str, settings: suite.Settings, deterministic: bool) -> dict:
    t0 = time.perf_counter()
    try:
        rec = suite.run_check(check_id, settings).record()
        rec["status"] = "ok"
    except QDiscError as exc:
        rec = {"check_id": check_id, "status": "error", "error_code": exc.code,
               "message": str(exc), "passed": False}
    except Exception as exc:  # a crashed check becomes a diagnostic record
        rec = {"check_id": check_id, "status": "error", "error_code": "CHECK_ERROR",
               "message": f"{type(exc).__name__}: {exc}", "passed": False}
    rec["wall_time_s"] = 0.0 if deterministic else time.perf_counter() - t0
    return rec


def run(checks: list, settings: suite.Settings, deterministic: bool = False) -> list:
    """Run the checks (possibly in parallel) and return records in request order."""
    width = _threads()
    if width == 1 or len(checks) == 1:
        return [_run_one(c, settings, deterministic) for c in checks]
    with ThreadPoolExecutor(max_workers=width) as pool:
        return list(pool.map(lambda c: _run_one(c, settings, deterministic), checks))


def exit_status(records: list) -> int:
    if any(r.get("status") == "error" for r in records):
        return EXIT_CHECK
    return EXIT_OK if all(r.get("passed") for r in records) else EXIT_UNEXPECTED


def _document(kind: str, records: list, settings: suite.Settings) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": kind,
        "settings": {k: getattr(settings, k) for k in sorted(_SETTING_KEYS)},
        "overall": "PASS" if exit_status(records) == EXIT_OK else "FAIL",
        "records": records,
    }


VERIFY_COLUMNS = ("check_id", "status", "verdict", "expected", "passed", "min_margin",
                  "max_abs_deviation", "witness", "tolerance", "tail_budget", "wall_time_s")
CONJECTURE_COLUMNS = ("function", "zeta", "zeta_modulus", "zeta_arg", "bound", "min_margin",
                      "argmin", "real_q_gate")


def _csv_cell(v) -> str:
    v = _plain(v)
    if isinstance(v, (dict, list)):
        return to_json(v, indent=0).replace("\n", "")
    return str(v)


def to_csv(rows: list, columns: tuple) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_csv_cell(r.get(c, "")) for c in columns])
    return buf.getvalue()


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _summary(records: list) -> None:
    for r in records:
        state = "ok" if r.get("passed") else ("ERROR" if r.get("status") == "error" else "UNEXPECTED")
        print(f"{r['check_id']:<26} {r.get('verdict', '-'):<13} {state}", file=sys.stderr)


def _format(args, cfg_default="json") -> str:
    fmt = getattr(args, "format", None) or cfg_default
    if fmt not in ("json", "csv"):
        raise ConfigInvalid(f"unknown format {fmt!r}")
    return fmt


def cmd_verify(args) -> int:
    checks, settings = build_settings(args)
    cfg = _load_config(args.config)
    deterministic = args.deterministic or bool(cfg.get("deterministic", False))
    records = run(checks, settings, deterministic)
    out = args.out or cfg.get("out")
    if _format(args, cfg.get("format", "json")) == "csv":
        text = to_csv(records, VERIFY_COLUMNS)
    else:
        text = to_json(_document("verify", records, settings))
    _emit(text, out)
    if not args.quiet:
        _summary(records)
    return exit_status(records)


def cmd_explore(args) -> int:
    if args.check not in (None, "conjecture"):
        raise ConfigInvalid("explore supports only --check conjecture")
    args.check = "conjecture"
    _, settings = build_settings(args)
    rec = _run_one("conjecture", settings, args.deterministic)
    fmt = _format(args, "csv")
    if rec.get("status") == "error":
        text = to_json(_document("explore", [rec], settings))
    elif fmt == "csv":
        text = to_csv(rec["rows"], CONJECTURE_COLUMNS)
    else:
        text = to_json(_document("explore", [rec], settings))
    _emit(text, args.out)
    if rec.get("status") == "ok" and not args.quiet:
        print(f"global min {fmt_float(rec['min_margin'])} at {_plain(rec['witness'])}; "
              f"counterexample_found={rec['counterexample_found']} "
              f"consistency_ok={rec['consistency_ok']}", file=sys.stderr)
    return exit_status([rec])


def cmd_identity(args) -> int:
    if args.check not in ("angle-identity", "operator-equivalence", "degenerations"):
        raise ConfigInvalid(f"{args.check!r} is not an identity check")
    _, settings = build_settings(args)
    rec = _run_one(args.check, settings, args.deterministic)
    _emit(to_json(_document("identity", [rec], settings)), args.out)
    return exit_status([rec])


def cmd_list_catalog(args) -> int:
    _emit(to_json(catalog.list_catalog()), None)
    return EXIT_OK


def cmd_list_checks(args) -> int:
    _emit(to_json(suite.list_checks()), None)
    return EXIT_OK


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--function", help="catalog ids, comma separated")
    p.add_argument("--zeta", help="complex values such as 0.3+0.4i, comma separated")
    p.add_argument("--q", help="real q values in [0, 1), comma separated")
    p.add_argument("--order", type=int, help="series truncation order N")
    p.add_argument("--rmax", type=float, help="outermost grid radius")
    p.add_argument("--radii", type=int, help="use this many equally spaced radii")
    p.add_argument("--angles", type=int, help="angles per circle")
    p.add_argument("--tol", type=float, help="verdict tolerance")
    p.add_argument("--method", choices=("exact", "series"))
    p.add_argument("--config", help="JSON file with settings; flags override it")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--deterministic", action="store_true",
                   help="record wall time as 0 so reruns are byte-identical")
    p.add_argument("--quiet", action="store_true")


def parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qdisc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run registered checks")
    v.add_argument("--check", help="check ids, comma separated, or 'all'")
    v.add_argument("--suite", help="named suite (paper)")
    v.add_argument("--format", choices=("json", "csv"))
    _common(v)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("explore", help="sweep the open question over complex zeta")
    e.add_argument("--check", default="conjecture")
    e.add_argument("--zeta-moduli", dest="zeta_moduli")
    e.add_argument("--zeta-args", dest="zeta_args", type=int)
    e.add_argument("--format", choices=("json", "csv"))
    _common(e)
    e.set_defaults(func=cmd_explore)

    i = sub.add_parser("identity", help="run a sampled identity check")
    i.add_argument("--check", default="angle-identity")
    i.add_argument("--samples", type=int)
    i.add_argument("--seed", type=int)
    _common(i)
    i.set_defaults(func=cmd_identity)

    sub.add_parser("list-catalog", help="print the function catalog").set_defaults(
        func=cmd_list_catalog)
    sub.add_parser("list-checks", help="print the check registry").set_defaults(
        func=cmd_list_checks)
    return ap


def main(argv: Optional[list] = None) -> int:
    ap = parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ConfigInvalid, UnknownEntry) as exc:
        print(f"CONFIG_INVALID: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
