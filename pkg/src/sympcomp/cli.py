"""sympcomp command line: complete, verify, demo, orbit, witt.

Exit codes: 0 success, 2 construction failure, 3 invalid input,
4 verification failure.
"""

import argparse
import json
import os
import sys

from . import __version__
from .certificates import completion_certificate, orbit_report, verify_file, witt_certificate, write_atomic
from .completion import graded_complete, relative_complete, symplectic_complete, theorem34_trace
from .errors import (
    CompletionError,
    MatrixError,
    ParseError,
    ReductionUnavailable,
    RingError,
    RowError,
    SearchFailed,
    StepFailed,
    WittError,
    WordError,
)
from .matrix import AlternatingForm
from .parse import parse_matrix, parse_ring, parse_row
from .unimodular import as_unimod
from .witt import change_witness, find_equivalence
from .words import DEFAULT_BUDGET, DEFAULT_SEED

OK, CONSTRUCTION, INVALID, VERIFY = 0, 2, 3, 4

CONSTRUCTION_ERRORS = (CompletionError, ReductionUnavailable, SearchFailed, WordError, WittError)
INPUT_ERRORS = (ParseError, RingError, MatrixError, RowError, ValueError)


def default_budget():
    env = os.environ.get("SYMPCOMP_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_BUDGET


def failure(exc, code):
    report = {"status": "failed", "exit": code, "error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, StepFailed):
        report["step"] = exc.step
        tr = exc.trace
        if tr is not None and hasattr(tr, "flags"):
            report["flags"] = tr.flags
        elif isinstance(tr, list):
            report["trace"] = tr
    print(json.dumps(report))
    return code


def _emit(data, out):
    if out:
        write_atomic(out, data)
        print(f"wrote {data['kind']} certificate to {out}")
    else:
        print(json.dumps(data, indent=2, ensure_ascii=False))


def cmd_complete(args):
    budget = args.budget if args.budget is not None else default_budget()
    try:
        R = parse_ring(args.ring)
        row = parse_row(args.row, R)
        as_unimod(row)
        ideal = parse_row(args.ideal, R) if args.ideal else None
        if args.mode == "relative" and not ideal:
            raise ValueError("--mode relative needs --ideal")
    except INPUT_ERRORS as exc:
        return failure(exc, INVALID)
    trace = None
    try:
        if args.mode == "trace":
            tr = theorem34_trace(row, budget=budget, seed=args.seed)
            theta, trace = tr.theta, tr.to_json()
        elif args.mode == "reduce":
            theta, mu = symplectic_complete(row, budget=budget, seed=args.seed)
            trace = [{"step": "word", "word": mu.to_json()}]
        elif args.mode == "relative":
            trace = []
            theta = relative_complete(row, ideal, budget=budget, trace=trace)
        else:
            trace = []
            theta = graded_complete(row, budget=budget, seed=args.seed, trace=trace)
    except CONSTRUCTION_ERRORS as exc:
        return failure(exc, CONSTRUCTION)
    except INPUT_ERRORS as exc:
        return failure(exc, INVALID)
    data = completion_certificate(R, row, theta, args.mode, args.seed, budget, trace, ideal)
    _emit(data, args.out)
    return OK


def cmd_verify(args):
    try:
        fails = verify_file(args.file)
    except (OSError, json.JSONDecodeError) as exc:
        return failure(exc, INVALID)
    if fails:
        print(json.dumps({"status": "rejected", "exit": VERIFY, "failed": fails}))
        return VERIFY
    print("ok")
    return OK


def cmd_demo(args):
    from .demo import SUITES, run_suite

    names = list(SUITES) if args.name == "all" else [args.name]
    if any(n not in SUITES for n in names):
        print(f"unknown suite {args.name!r}; choose from: all, {', '.join(SUITES)}", file=sys.stderr)
        return INVALID
    code = OK
    for n in names:
        ok, detail, dt = run_suite(n)
        print(f"{'PASS' if ok else 'FAIL'} {n}: {detail} ({dt:.2f}s)")
        if not ok:
            code = VERIFY
    return code


def cmd_orbit(args):
    try:
        R = parse_ring(args.ring)
        data, tables = orbit_report(R, args.length, tuple(args.generators))
    except INPUT_ERRORS as exc:
        return failure(exc, INVALID)
    for g, t in tables.items():
        print(f"{g}: {t.num_rows} unimodular rows, {t.num_orbits} orbits", file=sys.stderr)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            next(iter(tables.values())).to_csv(fh)
    _emit(data, args.out)
    return OK


def cmd_witt(args):
    budget = args.budget if args.budget is not None else default_budget()
    try:
        R = parse_ring(args.ring)
        if args.row:
            v = parse_row(args.row, R)
            w = parse_row(args.witness, R)
            w2 = parse_row(args.witness2, R)
            job = lambda: change_witness(v, w, w2, budget=budget, seed=args.seed)  # noqa: E731
        elif args.left and args.right:
            A = AlternatingForm(parse_matrix(args.left, R))
            B = AlternatingForm(parse_matrix(args.right, R))
            job = lambda: find_equivalence(A, B, budget=budget, seed=args.seed, pad=args.pad)  # noqa: E731
        else:
            raise ValueError("give --row/--witness/--witness2 or --left/--right")
    except INPUT_ERRORS as exc:
        return failure(exc, INVALID)
    try:
        cert = job()
    except CONSTRUCTION_ERRORS as exc:
        return failure(exc, CONSTRUCTION)
    _emit(witt_certificate(cert, args.seed, budget), args.out)
    return OK


def build_parser():
    p = argparse.ArgumentParser(prog="sympcomp", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("complete", help="build a symplectic completion certificate")
    c.add_argument("--ring", required=True, help='e.g. "ZZ", "ZZ/101", "QQ[x]/(x^3)"')
    c.add_argument("--row", required=True, help='e.g. "[3,5,7,0]"')
    c.add_argument("--mode", choices=("trace", "reduce", "relative", "graded"), default="trace")
    c.add_argument("--ideal", help='ideal generators for relative mode, e.g. "[2]"')
    c.add_argument("--seed", type=int, default=DEFAULT_SEED)
    c.add_argument("--budget", type=int)
    c.add_argument("--out")
    c.set_defaults(func=cmd_complete)

    v = sub.add_parser("verify", help="recheck a certificate file")
    v.add_argument("file")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("demo", help="run a demonstration suite")
    d.add_argument("name", nargs="?", default="all")
    d.set_defaults(func=cmd_demo)

    o = sub.add_parser("orbit", help="orbit partition report over ZZ/n")
    o.add_argument("--ring", required=True)
    o.add_argument("--length", type=int, default=4)
    o.add_argument("--generators", nargs="+", default=["E", "ESp"], choices=("E", "ESp"))
    o.add_argument("--csv", help="also write row,representative pairs")
    o.add_argument("--out")
    o.set_defaults(func=cmd_orbit)

    w = sub.add_parser("witt", help="Witt equivalence certificate")
    w.add_argument("--ring", required=True)
    w.add_argument("--row")
    w.add_argument("--witness")
    w.add_argument("--witness2")
    w.add_argument("--left")
    w.add_argument("--right")
    w.add_argument("--pad", type=int, default=0)
    w.add_argument("--seed", type=int, default=DEFAULT_SEED)
    w.add_argument("--budget", type=int)
    w.add_argument("--out")
    w.set_defaults(func=cmd_witt)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
