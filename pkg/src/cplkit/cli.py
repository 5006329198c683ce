"""Command-line entry point: ``cplkit prove|check|run|axioms``.

Exit codes: 0 provable / true / all verdicts match, 1 refuted / false /
deviation, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .cpl import decide_cpl
from .errors import CplkitError
from .focused import prove_neg
from .frames import parse_frame
from .nd import explain, extract_nd, parse_term, to_text
from .textio import parse_sequent

OK, NO, ERR = 0, 1, 2
LOGICS = {"cpl": "cpl", "cpls": "cpl*"}
RECURSION_LIMIT = 20_000


class _Usage(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from exc


def _load(args):
    frame = parse_frame(_read(args.frame), args.frame)
    seq = parse_sequent(_read(args.sequent), args.sequent, frame)
    return frame, seq


def _emit(doc: dict) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def cmd_prove(args) -> int:
    if args.certificate and args.logic != "cpl":
        raise _Usage("--certificate is only available with --logic cpl")
    frame, seq = _load(args)
    t0 = time.perf_counter()
    if args.logic == "cpl":
        res = decide_cpl(frame, seq.context, seq.goal, seq.world)
    else:
        res = prove_neg(frame, seq.context, seq.goal, seq.world)
    elapsed = time.perf_counter() - t0
    verdict = "provable" if res.provable else "refuted"
    cert = None
    if args.certificate and res.provable:
        term = extract_nd(frame, seq.context, seq.goal, seq.world, res.proof)
        problem = explain("cpl", frame, seq.context, term, seq.goal, seq.world)
        if problem:  # would be an extraction bug, never a user error
            raise CplkitError(f"extracted certificate does not check: {problem}")
        Path(args.certificate).write_text(to_text(term) + "\n")
        cert = args.certificate
    if args.json:
        _emit({"command": "prove", "logic": args.logic, "verdict": verdict,
               "certificate": cert, "timings": {"decide_seconds": round(elapsed, 6)}})
    else:
        print(verdict)
        if cert:
            print(f"certificate written to {cert}")
    return OK if res.provable else NO


def cmd_check(args) -> int:
    frame, seq = _load(args)
    term = parse_term(_read(args.nd), args.nd, frame)
    problem = explain(LOGICS[args.logic], frame, seq.context, term, seq.goal, seq.world)
    if problem is None:
        print("ok")
        return OK
    print(f"rejected: {problem}")
    return NO


def cmd_run(args) -> int:
    from .datalog import query, run_program
    from .datalog.translate import world_of

    sp, db = run_program(_read(args.program), args.program)
    if args.query is not None:
        ans = query(db, args.query)
        if args.json:
            _emit({"command": "run", "query": args.query, "answer": ans})
        else:
            print("true" if ans else "false")
        return OK if ans else NO
    lines = db.lines()
    if args.json:
        _emit({"command": "run", "database": lines,
               "worlds": {"1": world_of(1), "2": world_of(2)}})
    else:
        for line in lines:
            print(line)
    return OK


def cmd_axioms(args) -> int:
    from .validation import format_report, run_suite

    if args.frames < 0:
        raise _Usage("--frames must be non-negative")
    if args.max_worlds < 1:
        raise _Usage("--max-worlds must be at least 1")
    seed = args.seed
    env = os.environ.get("CPLKIT_SEED")
    if env is not None:
        try:
            seed = int(env)
        except ValueError as exc:
            raise _Usage(f"CPLKIT_SEED must be an integer, got {env!r}") from exc
    res = run_suite(seed, args.frames, args.max_worlds)
    sys.stdout.write(format_report(res))
    return OK if res.ok else NO


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cplkit", description="Provers and tools for CPL and CPL*.")
    sub = ap.add_subparsers(dest="command", required=True)

    def files(p):
        p.add_argument("--logic", choices=sorted(LOGICS), default="cpl")
        p.add_argument("--frame", required=True, help="frame file (world/edge lines)")
        p.add_argument("--sequent", required=True, help="sequent file (hyp/goal lines)")

    p = sub.add_parser("prove", help="decide a sequent")
    files(p)
    p.add_argument("--certificate", metavar="FILE", help="write the extracted ND term (cpl only)")
    p.add_argument("--json", action="store_true", help="structured output")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("check", help="check a serialized ND term against a sequent")
    files(p)
    p.add_argument("--nd", required=True, metavar="FILE")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("run", help="saturate a stratified Datalog program")
    p.add_argument("program")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--query", metavar="ATOM")
    g.add_argument("--all", action="store_true", help="print the saturated database (default)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("axioms", help="run the axiom-schema battery")
    p.add_argument("--seed", type=int, default=2011)
    p.add_argument("--frames", type=int, default=50)
    p.add_argument("--max-worlds", type=int, default=5)
    p.set_defaults(func=cmd_axioms)
    return ap


def main(argv=None) -> int:
    sys.setrecursionlimit(max(sys.getrecursionlimit(), RECURSION_LIMIT))
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:   # argparse exits 2 on bad flags already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (_Usage, CplkitError) as exc:
        print(f"cplkit: {exc}", file=sys.stderr)
        return ERR


if __name__ == "__main__":
    sys.exit(main())
