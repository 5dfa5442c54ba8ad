"""``nframe`` command line: analyze, verify, generate.

Exit codes: 0 everything passed, 1 a check failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__, _tol
from .certify import THEOREMS, run_verification
from .errors import InputError, PreconditionError
from .frames import frame_bounds
from .generate import KINDS, PRNG_NAME, generate_instance
from .io import SCHEMA_VERSION, bundled_example, dump_instance, load_instance, to_jsonable, write_json
from .kframes import kframe_bounds
from .tight import disjoint_sum_theorem_4_6, tightness

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _resolve(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    # examples/parseval.json and friends ship with the package
    if p.parent.name == "examples" or len(p.parts) == 1:
        bundled = bundled_example(p.name)
        if bundled is not None:
            return bundled
    return p


def _fmt(x) -> str:
    return f"{x:.6g}" if isinstance(x, float) else str(x)


def analyze(path: str) -> tuple[dict, bool]:
    start = time.perf_counter()
    started = datetime.now(timezone.utc).isoformat()
    inst = load_instance(_resolve(path))
    q = inst.qs.q
    K = inst.operators.get("K", np.eye(q))
    fb = frame_bounds(inst.frame)
    kb = kframe_bounds(inst.frame, K)
    tr = tightness(inst.frame, K)
    report = {
        "schema_version": SCHEMA_VERSION,
        "toolkit_version": __version__,
        "command": "analyze",
        "source": str(path),
        "dim": inst.space.dim,
        "arity": inst.space.arity,
        "q": q,
        "m": inst.frame.m,
        "kind": inst.kind,
        "seed": inst.seed,
        "K_given": "K" in inst.operators,
        "frame_bounds": {"lower": fb.lower, "upper": fb.upper, "is_frame": fb.is_frame},
        "kframe": {"lower": kb.lower, "upper": kb.upper, "is_kframe": kb.is_kframe, "degenerate_k": kb.degenerate_k},
        "tightness": {
            "is_tight": tr.is_tight,
            "constant": tr.constant,
            "residual": tr.residual,
            "matrix_residual": tr.matrix_residual,
            "is_parseval": tr.is_parseval,
            "degenerate": tr.degenerate,
        },
    }
    ok = True
    if inst.kind == "frame":
        ok = fb.is_frame
    elif inst.kind == "kframe":
        ok = kb.is_kframe
    elif inst.kind == "tight-kframe":
        ok = tr.is_tight
    elif inst.kind == "parseval-disjoint-pair":
        if inst.second_frame is None:
            raise InputError("a parseval-disjoint-pair instance needs second_frame")
        try:
            _, rep = disjoint_sum_theorem_4_6(inst.frame, inst.second_frame, K)
            ok = rep.passed
            report["disjoint_sum"] = {"checks": rep.checks, "constant": rep.achieved["constant"]}
        except PreconditionError as exc:
            ok = False
            report["disjoint_sum"] = {"error": str(exc)}
    report["advertised_property_holds"] = bool(ok)
    report["timestamp"] = {"started": started, "wall_clock_s": time.perf_counter() - start}
    return report, ok


def _print_analyze(rep: dict) -> None:
    print(f"instance {rep['source']}: d={rep['dim']} n={rep['arity']} q={rep['q']} m={rep['m']}")
    fb, kb, tr = rep["frame_bounds"], rep["kframe"], rep["tightness"]
    print(f"  frame bounds   A={_fmt(fb['lower'])} B={_fmt(fb['upper'])} frame={fb['is_frame']}")
    kname = "K" if rep["K_given"] else "K=I"
    print(f"  {kname:<5} bounds  A={_fmt(kb['lower'])} B={_fmt(kb['upper'])} k-frame={kb['is_kframe']}")
    print(f"  tightness      tight={tr['is_tight']} A={_fmt(tr['constant'])} parseval={tr['is_parseval']}"
          f" residual={tr['matrix_residual']:.2e}")
    if rep.get("kind"):
        print(f"  advertised {rep['kind']}: {'holds' if rep['advertised_property_holds'] else 'FAILS'}")


def _print_verify(rep: dict) -> None:
    print(f"verify {rep['theorem']}: {rep['passed']}/{rep['count']} passed (seed {rep['seed']}, {rep['prng']})")
    for key, val in sorted(rep["max_residuals"].items()):
        print(f"  max {key:<24} {val:.3e}")
    for case in rep["cases"]:
        if not case["passed"]:
            print(f"  FAIL index {case['index']} (d={case['dim']}, n={case['arity']}): {', '.join(case['failed_checks'])}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nframe", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"nframe {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="bounds and tightness of an instance file")
    a.add_argument("file")
    a.add_argument("--json", metavar="OUT", help="write the report as JSON")

    v = sub.add_parser("verify", help="certify one construction on seeded random instances")
    v.add_argument("theorem", metavar="theorem-id", help=", ".join(THEOREMS))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--count", type=int, default=200)
    v.add_argument("--dim", type=int)
    v.add_argument("--arity", type=int)
    v.add_argument("--json", metavar="OUT")

    g = sub.add_parser("generate", help="write a random instance with a checked property")
    g.add_argument("kind", choices=KINDS)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--dim", type=int, default=4)
    g.add_argument("--arity", type=int, default=2)
    g.add_argument("--size", type=int, help="number of elements m")
    g.add_argument("--out", metavar="FILE", help="output path (default: stdout)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _tol.identity_tol()
        if args.command == "analyze":
            rep, ok = analyze(args.file)
            _print_analyze(rep)
            if args.json:
                write_json(rep, args.json)
            return EXIT_OK if ok else EXIT_FAIL
        if args.command == "verify":
            if args.theorem not in THEOREMS:
                raise InputError(f"unknown theorem id {args.theorem!r}; expected one of {', '.join(THEOREMS)}")
            if args.count < 1:
                raise InputError("--count must be positive")
            if args.dim is not None and args.arity is not None and args.dim < args.arity:
                raise InputError("--dim must be at least --arity")
            rep = run_verification(args.theorem, args.seed, args.count, args.dim, args.arity)
            _print_verify(rep)
            if args.json:
                write_json(rep, args.json)
            return EXIT_OK if rep["all_passed"] else EXIT_FAIL
        inst = generate_instance(args.kind, args.seed, args.dim, args.arity, args.size)
        doc = dump_instance(inst, generator=f"nframe {__version__} / {PRNG_NAME}")
        if args.out:
            write_json(doc, args.out)
            print(f"wrote {args.kind} instance to {args.out}")
        else:
            print(json.dumps(to_jsonable(doc), indent=2))
        return EXIT_OK
    except InputError as exc:
        print(f"nframe: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
