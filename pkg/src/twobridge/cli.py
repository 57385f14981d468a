"""Command-line front end: ``python -m twobridge <verb>``.

Exit codes: 0 success, 1 verification failure, 2 solver failure, 3 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import mpmath

from . import __version__
from .errors import RegimeError, TwoBridgeError
from .invariants import (
    TABLE1_PANELS,
    TABLE2_PANELS,
    chern_simons,
    chern_simons_complete,
    cyclic_cover,
    decimal,
    result_json,
    volume,
)
from .solver import PrecisionConfig, cone_geometry

EXIT_OK, EXIT_VERIFY, EXIT_SOLVER, EXIT_USAGE = 0, 1, 2, 3
BITS_ENV = "TWOBRIDGE_BITS"
DEFAULT_N = tuple(range(1, 10)) + tuple(range(-1, -10, -1))
DEFAULT_K = tuple(range(3, 11))
MISSING = "-"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    bits: int = 256
    panels: int | None = None
    fmt: str = "csv"
    cache: str | None = None
    jobs: int = 1
    n_values: tuple = DEFAULT_N
    k_values: tuple = DEFAULT_K

    def __post_init__(self):
        if self.bits < 64:
            raise UsageError(f"--bits must be at least 64, got {self.bits}")
        if self.panels is not None and (self.panels < 2 or self.panels % 2):
            raise UsageError(f"--panels must be a positive even number, got {self.panels}")
        if self.jobs < 1:
            raise UsageError("--jobs must be positive")

    @property
    def precision(self) -> PrecisionConfig:
        return PrecisionConfig(mantissa_bits=self.bits)

    def panels_or(self, default: int) -> int:
        return self.panels if self.panels is not None else default


def default_bits() -> int:
    raw = os.environ.get(BITS_ENV)
    if raw is None:
        return 256
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{BITS_ENV} must be an integer, got {raw!r}") from None


def _int_list(raw: str) -> tuple:
    """'1,2,-3' or '1..9' (inclusive, both signs allowed)."""
    out = []
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            a, b = (int(v) for v in part.split(".."))
            step = 1 if b >= a else -1
            out.extend(range(a, b + step, step))
        else:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError("empty list")
    return tuple(out)


# ---------------------------------------------------------------------------
# alpha0 cache


class Alpha0Cache:
    """JSON file of {"n","alpha0","bits","tol"} entries, owned by the driver process."""

    def __init__(self, path):
        self.path = Path(path) if path else None
        self.entries = []
        if self.path and self.path.exists():
            data = json.loads(self.path.read_text(encoding="utf-8"))
            self.entries = list(data.get("entries", []))

    def lookup(self, n: int, bits: int, tol: str):
        for e in self.entries:
            if e.get("n") == n and e.get("bits") == bits and e.get("tol") == tol:
                return e["alpha0"]
        return None

    def store(self, entry: dict):
        key = (entry["n"], entry["bits"], entry["tol"])
        self.entries = [e for e in self.entries if (e.get("n"), e.get("bits"), e.get("tol")) != key]
        self.entries.append(entry)

    def save(self):
        if not self.path:
            return
        self.entries.sort(key=lambda e: (e["bits"], e["tol"], e["n"]))
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.write_text(json.dumps({"entries": self.entries}, indent=1) + "\n", encoding="utf-8")


def _cache_tol(cfg: PrecisionConfig) -> str:
    return mpmath.nstr(mpmath.mpf(cfg.collision_tol), 6)


def alpha0_string(n: int, rc: RunConfig, cache: Alpha0Cache) -> str:
    cfg = rc.precision
    tol = _cache_tol(cfg)
    hit = cache.lookup(n, rc.bits, tol)
    if hit is not None:
        return hit
    entry = cone_geometry(n, cfg).to_json(cfg.collision_tol)
    cache.store(entry)
    return entry["alpha0"]


# ---------------------------------------------------------------------------
# workers (module level so they pickle)


def _table1_row(n, bits, panels):
    cfg = PrecisionConfig(mantissa_bits=bits)
    try:
        geo = cone_geometry(n, cfg)
        cs = chern_simons_complete(n, panels, cfg)
        entry = geo.to_json(cfg.collision_tol)
        return {"twist": 2 * n, "alpha0": entry["alpha0"], "cs": decimal(cs.value, bits)}, entry, None
    except (TwoBridgeError, ArithmeticError) as exc:
        return {"twist": 2 * n, "alpha0": MISSING, "cs": MISSING}, None, f"n={n}: {exc}"


def _table2_row(n, k, bits, panels):
    cfg = PrecisionConfig(mantissa_bits=bits)
    try:
        res = cyclic_cover(n, k, panels, cfg)
        return {"n": n, "k": k, "cs": decimal(res.orbifold_cs.value, bits),
                "cs_cover": decimal(res.cs.value, bits)}, None
    except RegimeError:
        return {"n": n, "k": k, "cs": MISSING, "cs_cover": MISSING}, None
    except (TwoBridgeError, ArithmeticError) as exc:
        return {"n": n, "k": k, "cs": MISSING, "cs_cover": MISSING}, f"n={n}, k={k}: {exc}"


def _run(fn, arg_tuples, jobs):
    if jobs == 1:
        return [fn(*a) for a in arg_tuples]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, *zip(*arg_tuples)))


# ---------------------------------------------------------------------------
# output


def emit(rows: list[dict], columns: list[str], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(rows, indent=1) + "\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([r[c] for c in columns])


# ---------------------------------------------------------------------------
# verbs


def cmd_table1(rc: RunConfig, out) -> int:
    cache = Alpha0Cache(rc.cache)
    panels = rc.panels_or(TABLE1_PANELS)
    results = _run(_table1_row, [(n, rc.bits, panels) for n in rc.n_values], rc.jobs)
    code = EXIT_OK
    for _, entry, err in results:
        if entry:
            cache.store(entry)
        if err:
            print(f"solver failure: {err}", file=sys.stderr)
            code = EXIT_SOLVER
    cache.save()
    emit([r for r, _, _ in results], ["twist", "alpha0", "cs"], rc.fmt, out)
    return code


def cmd_table2(rc: RunConfig, out) -> int:
    panels = rc.panels_or(TABLE2_PANELS)
    cells = [(n, k, rc.bits, panels) for n in rc.n_values for k in rc.k_values]
    results = _run(_table2_row, cells, rc.jobs)
    code = EXIT_OK
    for _, err in results:
        if err:
            print(f"solver failure: {err}", file=sys.stderr)
            code = EXIT_SOLVER
    emit([r for r, _ in results], ["n", "k", "cs", "cs_cover"], rc.fmt, out)
    return code


def cmd_alpha0(rc: RunConfig, n: int, out) -> int:
    cache = Alpha0Cache(rc.cache)
    cfg = rc.precision
    value = alpha0_string(n, rc, cache)
    cache.save()
    if rc.fmt == "json":
        out.write(json.dumps({"n": n, "alpha0": value, "bits": rc.bits, "tol": _cache_tol(cfg)}) + "\n")
    else:
        emit([{"n": n, "alpha0": value}], ["n", "alpha0"], "csv", out)
    return EXIT_OK


def cmd_volume(rc: RunConfig, n: int, alpha, k, out) -> int:
    cfg = rc.precision
    with cfg.workprec():
        a = 2 * mpmath.pi / k if k is not None else mpmath.mpf(alpha)
    vol = volume(n, a, rc.panels_or(TABLE1_PANELS), cfg)
    row = {"n": n, "alpha": decimal(a, rc.bits), "vol": decimal(vol, rc.bits)}
    emit([row], ["n", "alpha", "vol"], rc.fmt, out)
    return EXIT_OK


def cmd_cs(rc: RunConfig, n: int, k: int, out) -> int:
    cfg = rc.precision
    res = cyclic_cover(n, k, rc.panels_or(TABLE2_PANELS), cfg)
    payload = result_json(n, k, res.orbifold_volume, res.orbifold_cs, cfg)
    payload_cover = {"cs_cover": decimal(res.cs.value, rc.bits), "vol_cover": decimal(res.volume, rc.bits)}
    if rc.fmt == "json":
        out.write(json.dumps(payload) + "\n")
    else:
        row = dict(payload, **payload_cover)
        row["panels"] = " ".join(str(p) for p in payload["panels"])
        emit([row], ["n", "k", "alpha0", "vol", "cs", "cs_modulus", "cs_cover", "vol_cover", "bits", "panels"],
             "csv", out)
    return EXIT_OK


def cmd_profile(rc: RunConfig, n: int, a_from, a_to, points: int, out) -> int:
    from .profile import profile_rows

    rows = profile_rows(n, a_from, a_to, points, rc.panels_or(200), rc.precision)
    emit(rows, ["alpha", "re_x", "im_x", "log_abs_L", "l_alpha", "vol_partial", "beta", "regime"], rc.fmt, out)
    return EXIT_OK


def cmd_verify(rc: RunConfig, out) -> int:
    from .verify import run_checks

    results = run_checks(rc.precision, n_values=rc.n_values if rc.n_values != DEFAULT_N else None)
    ok = True
    for name, passed, detail in results:
        ok &= passed
        out.write(f"{'PASS' if passed else 'FAIL'} {name}: {detail}\n")
    return EXIT_OK if ok else EXIT_VERIFY


# ---------------------------------------------------------------------------
# parser


def _global_flags(parser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--bits", type=int, default=d(None), help=f"mantissa bits (default 256 or ${BITS_ENV})")
    parser.add_argument("--panels", type=int, default=d(None),
                        help=f"Simpson subintervals per segment ({TABLE1_PANELS} for table1, {TABLE2_PANELS} for table2)")
    parser.add_argument("--format", dest="fmt", choices=("csv", "json"), default=d("csv"))
    parser.add_argument("--cache", default=d(None), help="alpha0 cache file (JSON)")
    parser.add_argument("--jobs", type=int, default=d(1), help="worker processes for table verbs")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="twobridge", description="Cone-manifold invariants of the two-bridge knots C(2n,4).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, help_):
        p = sub.add_parser(name, help=help_)
        _global_flags(p, suppress=True)
        return p

    p = verb("table1", "alpha0 and complete-structure cs for each n")
    p.add_argument("--n", dest="n_values", type=_int_list, default=DEFAULT_N, help="e.g. 1..9 or 1,-2")
    p = verb("table2", "orbifold and cyclic-cover cs on an (n, k) grid")
    p.add_argument("--n", dest="n_values", type=_int_list, default=DEFAULT_N)
    p.add_argument("--k", dest="k_values", type=_int_list, default=DEFAULT_K)
    p = verb("alpha0", "transition angle alpha0")
    p.add_argument("--n", type=int, required=True)
    p = verb("volume", "hyperbolic volume of X_2n(alpha)")
    p.add_argument("--n", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--alpha", type=str)
    g.add_argument("--k", type=int)
    p = verb("cs", "Chern-Simons invariant of X_2n(2pi/k) and of its k-fold cover")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p = verb("profile", "branch and integrand samples for plotting")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--from", dest="a_from", type=str, required=True)
    p.add_argument("--to", dest="a_to", type=str, required=True)
    p.add_argument("--points", type=int, required=True)
    p = verb("verify", "oracle and regression checks")
    p.add_argument("--n", dest="n_values", type=_int_list, default=DEFAULT_N)
    return parser


def _validate(args):
    n = getattr(args, "n", None)
    if isinstance(n, int) and n == 0:
        raise UsageError("n must be nonzero")
    if 0 in getattr(args, "n_values", ()):
        raise UsageError("n must be nonzero")
    if args.verb in ("cs", "table2"):
        ks = [args.k] if args.verb == "cs" else list(args.k_values)
        if any(k < 3 for k in ks):
            raise UsageError("k must be at least 3")
    if args.verb == "volume" and args.k is not None and args.k < 1:
        raise UsageError("k must be positive")
    if args.verb == "profile":
        if args.points < 2:
            raise UsageError("--points must be at least 2")
        for v in (args.a_from, args.a_to):
            a = mpmath.mpf(v)
            if not 0 < a <= mpmath.pi + mpmath.mpf(2) ** -40:
                raise UsageError(f"profile angles must lie in (0, pi], got {v}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = io.StringIO()
    try:
        _validate(args)
        rc = RunConfig(bits=args.bits if args.bits is not None else default_bits(), panels=args.panels,
                       fmt=args.fmt, cache=args.cache, jobs=args.jobs)
        if hasattr(args, "n_values"):
            rc = replace(rc, n_values=args.n_values)
        if hasattr(args, "k_values"):
            rc = replace(rc, k_values=args.k_values)
        if args.verb == "table1":
            code = cmd_table1(rc, out)
        elif args.verb == "table2":
            code = cmd_table2(rc, out)
        elif args.verb == "alpha0":
            code = cmd_alpha0(rc, args.n, out)
        elif args.verb == "volume":
            code = cmd_volume(rc, args.n, args.alpha, args.k, out)
        elif args.verb == "cs":
            code = cmd_cs(rc, args.n, args.k, out)
        elif args.verb == "profile":
            code = cmd_profile(rc, args.n, args.a_from, args.a_to, args.points, out)
        else:
            code = cmd_verify(rc, out)
    except (UsageError, ValueError) as exc:
        # RegimeError is a ValueError: the request lies outside the hyperbolic range
        print(f"twobridge: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TwoBridgeError, ArithmeticError) as exc:
        print(f"twobridge: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    sys.stdout.write(out.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
