"""Command-line interface: ``framelab <command> ...``.

Exit codes: 0 success (or membership holds), 1 membership/check failed,
2 usage, parse or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import constructions as cons
from .erasure import MeasureKind, worst_case
from .exceptions import FrameLabError
from .frame import DualPair, canonical_dual, classify_frame, classify_pair
from .io import (
    dumps,
    fmt_complex,
    fmt_real,
    frame_to_dict,
    load_frame,
    load_pair,
    pair_to_dict,
    table,
    write_json,
)
from .optimality import (
    AveragingInstance,
    averaging_lower_bound,
    check_membership,
    relations_report,
)
from .search import SearchConfig, search


def _emit(obj: dict, out):
    if out:
        write_json(out, obj)
    else:
        print(dumps(obj))


def _say(args, text: str):
    # keep stdout clean for JSON when no output file is given
    print(text, file=sys.stdout if args.out else sys.stderr)


def _pair_summary(P: DualPair) -> str:
    pc = classify_pair(P)
    parts = []
    if pc.one_uniform:
        parts.append(f"1-uniform c'={fmt_real(pc.c1.real)}")
    if pc.two_uniform:
        parts.append(f"2-uniform c''={fmt_complex(pc.c2)}")
    return " ".join(parts) or "not 1-uniform"


def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "harmonic":
        F = cons.harmonic_frame(args.N, args.n)
        _emit(frame_to_dict(F), args.out)
        _say(args, " ".join(classify_frame(F).labels()) or "general frame")
    elif kind in ("onb-extension", "two-uniform"):
        P = cons.onb_extension_pair(args.N, args.n) if kind == "onb-extension" else cons.two_uniform_pair(args.n)
        _emit(pair_to_dict(P), args.out)
        _say(args, _pair_summary(P))
    elif kind == "random":
        if args.dual == "none":
            F = cons.random_frame(args.N, args.n, args.seed)
            _emit(frame_to_dict(F), args.out)
            _say(args, " ".join(classify_frame(F).labels()) or "general frame")
        else:
            if args.dual == "random":
                P = cons.random_dual_pair(args.N, args.n, args.seed)
            else:
                F = cons.random_frame(args.N, args.n, args.seed)
                P = DualPair(F, canonical_dual(F))
            _emit(pair_to_dict(P), args.out)
            _say(args, _pair_summary(P))
    else:  # example
        F = cons.example_frame()
        P = DualPair(F, canonical_dual(F))
        _emit(pair_to_dict(P), args.out)
        _say(args, _pair_summary(P))
    return 0


def cmd_analyze(args) -> int:
    P = load_pair(args.pair, args.tol)
    rep = worst_case(P, args.m, args.measure, keep_all=args.keep_all or bool(args.csv))
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(rep.to_csv())
    if args.json:
        print(dumps(rep.to_dict()))
        return 0
    rows = [
        ["measure", rep.measure.value],
        ["m", str(rep.m)],
        ["N, n", f"{P.N}, {P.dim}"],
        ["worst", fmt_real(rep.worst_value)],
        ["theoretical", fmt_real(rep.theoretical_optimum)],
        ["argmax", " ".join(str(s) for s in rep.argmax_sets)],
    ]
    print(table(rows))
    if rep.per_set_values is not None and not args.csv:
        print()
        print(table([[str(s), fmt_real(v)] for s, v in rep.per_set_values.items()], ["set", "value"]))
    return 0


def cmd_check(args) -> int:
    P = load_pair(args.pair, args.tol)
    cls = args.cls
    if cls.lower() == "fm":
        cls = f"F{args.m}"
    v = check_membership(P, cls, args.tol)
    if args.json:
        print(dumps(v.to_dict()))
    else:
        print(f"class {v.cls}: {'HOLDS' if v.holds else 'FAILS'}"
              + ("  (conditional on existence)" if v.conditional_on_existence else ""))
        print(table([[c, f"{x:.3e}"] for c, x in v.certificate], ["condition", "max violation"]))
        print(f"measured worst-case: {fmt_real(v.measured)}   optimum: {fmt_real(v.optimum)}")
        for note in v.notes:
            print(f"note: {note}")
    return 0 if v.holds else 1


def cmd_search(args) -> int:
    F = load_frame(args.frame)
    cfg = SearchConfig(
        measure=args.measure, m=args.m, max_iters=args.max_iters, restarts=args.restarts,
        step_init=args.step_init, step_min=args.step_min, seed=args.seed,
        lower_bound=args.lower_bound,
    )
    res = search(F, cfg)
    if args.out:
        write_json(args.out, res.to_dict())
    print(table([
        ["measure", cfg.measure.value],
        ["m", str(cfg.m)],
        ["best value", fmt_real(res.best_value)],
        ["gap to bound", fmt_real(res.gap_to_bound)],
        ["converged", str(res.converged)],
        ["best restart", str(res.best_restart)],
    ]))
    return 0


def cmd_relations(args) -> int:
    P = load_pair(args.pair, args.tol)
    rep = relations_report(P, args.tol)
    if args.json:
        print(dumps(rep.to_dict()))
    else:
        rows = [[v.cls, "yes" if v.holds else "no", f"{v.certificate[0][1]:.3e}", fmt_real(v.measured)]
                for v in (rep.F1, rep.R1, rep.N1)]
        print(table(rows, ["class", "member", "violation", "measured"]))
        print(f"tight frame with canonical dual: {rep.tight_canonical}")
        print("implications: " + ("consistent" if rep.consistent else "; ".join(rep.violations)))
    return 0 if rep.consistent else 1


def cmd_lemma_test(args) -> int:
    rng = np.random.default_rng(args.seed)
    worst = np.inf
    failures = 0
    for _ in range(args.trials):
        N = int(rng.integers(max(args.m, 2), args.N + 1))
        inst = AveragingInstance(rng.standard_normal((N, N)), args.m)
        bound, best = averaging_lower_bound(inst)
        worst = min(worst, best - bound)
        failures += best < bound - args.tol
    print(table([
        ["trials", str(args.trials)],
        ["m", str(args.m)],
        ["min (max_partial - bound)", fmt_real(worst)],
        ["failures", str(failures)],
    ]))
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="framelab", description="Erasure analysis of finite frame dual pairs.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a frame or dual pair")
    g.add_argument("kind", choices=["harmonic", "onb-extension", "two-uniform", "random", "example"])
    g.add_argument("--N", type=int, default=None)
    g.add_argument("--n", type=int, required=False)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--dual", choices=["none", "canonical", "random"], default="none",
                   help="for random frames: also emit a dual")
    g.add_argument("--out", "-o", default=None)
    g.set_defaults(func=cmd_gen)

    def measure_args(sp):
        sp.add_argument("--measure", type=MeasureKind.parse, default=MeasureKind.FROBENIUS,
                        help="frobenius | spectral | numerical")
        sp.add_argument("--m", type=int, default=1)

    a = sub.add_parser("analyze", help="worst-case erasure error of a pair")
    a.add_argument("pair")
    measure_args(a)
    a.add_argument("--keep-all", action="store_true")
    a.add_argument("--csv", default=None, help="write per-set values to this CSV file")
    a.add_argument("--json", action="store_true")
    a.add_argument("--tol", type=float, default=1e-9)
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("check", help="optimality class membership")
    c.add_argument("pair")
    c.add_argument("--class", dest="cls", required=True, help="F1, F<m>, Fm (with --m), R1, R2, N1")
    c.add_argument("--m", type=int, default=2)
    c.add_argument("--tol", type=float, default=1e-9)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("search", help="search for an optimal dual of a frame")
    s.add_argument("frame")
    measure_args(s)
    s.add_argument("--restarts", type=int, default=8)
    s.add_argument("--max-iters", type=int, default=5000)
    s.add_argument("--step-init", type=float, default=0.5)
    s.add_argument("--step-min", type=float, default=1e-7)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--lower-bound", type=float, default=None)
    s.add_argument("--out", "-o", default=None)
    s.set_defaults(func=cmd_search)

    r = sub.add_parser("relations", help="consistency of F1, R1, N1 memberships")
    r.add_argument("pair")
    r.add_argument("--tol", type=float, default=1e-9)
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_relations)

    lt = sub.add_parser("lemma-test", help="random trials of the averaging lower bound")
    lt.add_argument("--N", type=int, default=9)
    lt.add_argument("--m", type=int, default=2)
    lt.add_argument("--trials", type=int, default=500)
    lt.add_argument("--seed", type=int, default=0)
    lt.add_argument("--tol", type=float, default=1e-12)
    lt.set_defaults(func=cmd_lemma_test)
    return p


def _check_gen_args(parser, args):
    if args.command != "gen" or args.kind == "example":
        return
    if args.n is None:
        parser.error(f"gen {args.kind} requires --n")
    if args.kind != "two-uniform" and args.N is None:
        parser.error(f"gen {args.kind} requires --N")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _check_gen_args(parser, args)
    try:
        return args.func(args)
    except (FrameLabError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"framelab {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
