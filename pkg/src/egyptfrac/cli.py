"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage or domain error.
Every run writes a ``# registry=... seed=...`` header to stderr; results go
to stdout (or --out) as JSON or CSV with LF line endings.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence

from . import coverage, lcmfn, tables
from .arith import ArithmeticDomainError, is_prime
from .cascade import StrategyError, decompose, decompose_all
from .egyptian import record_from_json
from .families import (REGISTRY_VERSION, DomainError, IdentityViolation, NotAProgression,
                       family_ids, grid_sweep, list_families, verify_identity)


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _pmap(fn: Callable, items: Sequence, jobs: int) -> List:
    # results come back in input order whatever the worker count
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _family_list(spec: Optional[str]) -> Optional[List[str]]:
    if spec is None or spec == "all":
        return None
    return [f.strip().upper() for f in spec.split(",") if f.strip()]


def _range(spec: str) -> range:
    try:
        lo, hi = spec.split("..")
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise UsageError(f"bad range {spec!r}, expected A..B") from None


# -- subcommands -------------------------------------------------------------

def cmd_decompose(args) -> int:
    params = json.loads(args.params) if args.params else None
    if args.all:
        recs = decompose_all(args.k, args.n, args.strategy)
        _emit(args, _dump([r.to_json() for r in recs]))
        return 0 if recs and all(r.verified for r in recs) else 1
    rec = decompose(args.k, args.n, args.strategy, params)
    if rec is None:
        _emit(args, _dump(None))
        return 1
    _emit(args, _dump(rec.to_json()))
    return 0


def cmd_verify(args) -> int:
    with open(args.infile, encoding="utf-8") as fh:
        data = json.load(fh)
    items = data if isinstance(data, list) else [data]
    out, ok = [], True
    for obj in items:
        rec = record_from_json(obj)
        ok = ok and rec.verified
        out.append({"k": rec.k, "n": str(rec.n), "dens": [str(t.den) for t in rec.terms],
                    "verified": rec.verified})
    _emit(args, _dump(out))
    return 0 if ok else 1


def _verify_one(job):
    fid, samples, seed, top = job
    return {"identity": verify_identity(fid, samples, seed), "grid": grid_sweep(fid, top)}


def cmd_families(args) -> int:
    if args.action == "list":
        _emit(args, _dump(list_families()))
        return 0
    fids = _family_list(args.families) or family_ids()
    results = _pmap(_verify_one, [(f, args.samples, args.seed, args.grid_top) for f in fids],
                    args.jobs)
    ok = all(r["identity"]["ok"] and r["grid"]["ok"] for r in results)
    _emit(args, _dump({"registry": REGISTRY_VERSION, "ok": ok, "families": results}))
    return 0 if ok else 1


def cmd_cover(args) -> int:
    fams = _family_list(args.families)
    if args.mordell:
        rows = tables.load_paper_rows("4a1") + tables.load_paper_rows("120a1")
        rows = [r for r in rows if tables.verify_brvs_row(r)]
        _emit(args, _dump(coverage.mordell_check(fams, args.printed, rows, args.grid_top)))
        return 0
    rep = coverage.covers(fams, args.mod, top=args.grid_top)
    if args.figure:
        from .plots import cover_figure
        cover_figure(rep, args.figure)
    _emit(args, _dump(rep.to_json()))
    return 0


def cmd_reach(args) -> int:
    if args.rational:
        w = coverage.rational_size_reachable(args.n, args.k, args.bound)
        keys = ("e", "u", "f", "t")
    else:
        w = coverage.integer_size_reachable(args.n, args.k)
        keys = ("c", "d", "t")
    out = {"n": str(args.n), "k": args.k, "kind": "rational" if args.rational else "integer",
           "witness": None if w is None else dict(zip(keys, map(str, w)))}
    if args.rational:
        out["bound"] = args.bound
    _emit(args, _dump(out))
    return 0


def _brvs_one(job):
    w, b_max, s_max = job
    return tables.search_brvs(w, b_max, s_max)


def _witness_one(n):
    return tables.search_integer_witness(n)


def _mod840_one(job):
    m, c_max, b_max = job
    return tables.search_abc_mod840(0, c_max, b_max, m_values=[m])


def cmd_tables(args) -> int:
    if args.kind == "brvs":
        if args.paper:
            rows = tables.load_paper_rows(args.primes)
            bad = [r for r in rows if not tables.verify_brvs_row(r)]
            report = {"table": args.primes, "rows": len(rows), "verified": len(rows) - len(bad),
                      "failed": [r.to_json() for r in bad]}
            _emit(args, _dump(report))
            return 1 if bad else 0
        step, start = (120, 121) if args.primes == "120a1" else (4, 5)
        ws = [w for w in range(start, args.max + 1, step) if is_prime(w)]
        found = _pmap(_brvs_one, [(w, args.b_max, args.s_max) for w in ws], args.jobs)
        rows = [r for r in found if r is not None]
        missing = [w for w, r in zip(ws, found) if r is None]
        if missing:
            sys.stderr.write(f"# none within caps b<={args.b_max} s<={args.s_max}: "
                             f"{','.join(map(str, missing))}\n")
        if args.figure:
            from .plots import brvs_figure
            brvs_figure(rows, args.figure)
        _emit(args, tables.render_table(rows, args.format))
        return 0
    if args.kind == "witness":
        rows = _pmap(_witness_one, list(_range(args.range)), args.jobs)
        _emit(args, tables.render_table(rows, args.format))
        return 0
    ms = list(range(1, args.m_max + 1, 840))
    rows = [r for chunk in _pmap(_mod840_one, [(m, args.c_max, args.b_max) for m in ms], args.jobs)
            for r in chunk]
    _emit(args, tables.render_table(rows, args.format))
    return 0


def cmd_lcmfn(args) -> int:
    if args.action == "q":
        out = {"brute": lcmfn.q_brute(args.a, args.b).to_json()}
        if args.closed:
            out["closed"] = lcmfn.q_closed(args.a, args.b).to_json()
        _emit(args, _dump(out))
        if args.closed and out["closed"] != out["brute"]:
            return 1
        return 0
    n = args.max_n
    rep = lcmfn.run_suite(closed_max=min(n, 2000), tau_max=n, restricted_max=min(n, 2000),
                          p2_max=min(n, 2000))
    _emit(args, _dump(rep))
    return 0 if rep["gate"] else 1


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="egyptfrac", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0, help="seed for randomized procedures")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for searches")
    p.add_argument("--out", help="write results here instead of stdout")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    d = sub.add_parser("decompose", help="decompose k/n into three unit fractions")
    d.add_argument("--k", type=int, required=True)
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--strategy", default="cascade", help="cascade | oracle | family:F##")
    d.add_argument("--all", action="store_true", help="every decomposition the strategy yields")
    d.add_argument("--params", help="JSON binding for a family strategy")
    d.set_defaults(fn=cmd_decompose)

    v = sub.add_parser("verify", help="re-verify DecompRecord JSON")
    v.add_argument("--in", dest="infile", required=True)
    v.set_defaults(fn=cmd_verify)

    f = sub.add_parser("families", help="list or verify the identity registry")
    f.add_argument("action", choices=["list", "verify"])
    f.add_argument("--families", help="all or F##,F##")
    f.add_argument("--samples", type=int, default=1000)
    f.add_argument("--grid-top", type=int, default=6)
    f.set_defaults(fn=cmd_families)

    c = sub.add_parser("cover", help="coverage of residues by family progressions")
    c.add_argument("--mod", type=int, default=8)
    c.add_argument("--families", help="all or F##,F##")
    c.add_argument("--grid-top", type=int, default=coverage.GRID_TOP)
    c.add_argument("--mordell", action="store_true", help="the six residues mod 840")
    c.add_argument("--printed", action="store_true", help="with --mordell: digits as printed")
    c.add_argument("--figure", help="save a PNG of the report")
    c.set_defaults(fn=cmd_cover)

    r = sub.add_parser("reach", help="integer- or rational-size reachability")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--k", type=int, default=4)
    r.add_argument("--rational", action="store_true")
    r.add_argument("--bound", type=int, default=200)
    r.set_defaults(fn=cmd_reach)

    t = sub.add_parser("tables", help="witness tables")
    tsub = t.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    tb = tsub.add_parser("brvs", help="(b, r, v, s) rows for primes 4a+1 or 120a+1")
    tb.add_argument("--primes", choices=["4a1", "120a1"], default="4a1")
    tb.add_argument("--max", type=int, default=1009)
    tb.add_argument("--b-max", type=int, default=tables.B_MAX)
    tb.add_argument("--s-max", type=int, default=tables.S_MAX)
    tb.add_argument("--paper", action="store_true", help="verify the printed rows instead")
    tb.add_argument("--format", choices=["csv", "json"], default="csv")
    tb.add_argument("--figure", help="save a PNG of b and s against w")
    tw = tsub.add_parser("witness", help="reachability witnesses over a range")
    tw.add_argument("--range", required=True, help="A..B")
    tw.add_argument("--format", choices=["csv", "json"], default="csv")
    tm = tsub.add_parser("mod840", help="F17 parameters for m = 1 mod 840")
    tm.add_argument("--m-max", type=int, default=594000)
    tm.add_argument("--c-max", type=int, default=100)
    tm.add_argument("--b-max", type=int, default=11)
    tm.add_argument("--format", choices=["csv", "json"], default="csv")
    t.set_defaults(fn=cmd_tables)

    q = sub.add_parser("lcmfn", help="Q, SQ, MQ and the identity suite")
    qsub = q.add_subparsers(dest="action", required=True, parser_class=_Parser)
    qq = qsub.add_parser("q")
    qq.add_argument("--a", type=int, required=True)
    qq.add_argument("--b", type=int, required=True)
    qq.add_argument("--closed", action="store_true")
    qs = qsub.add_parser("suite")
    qs.add_argument("--max-n", type=int, default=5000)
    q.set_defaults(fn=cmd_lcmfn)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        sys.stderr.write(f"# registry={REGISTRY_VERSION} seed={args.seed}\n")
        return args.fn(args)
    except UsageError as exc:
        sys.stderr.write(f"error: usage: {exc}\n")
        return 2
    except (DomainError, StrategyError, NotAProgression, ArithmeticDomainError,
            lcmfn.LcmDomainError, tables.TableDomainError, ValueError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2
    except IdentityViolation as exc:
        sys.stderr.write(f"error: verification: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"error: io: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())
