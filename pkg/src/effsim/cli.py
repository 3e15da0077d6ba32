"""Command-line interface.

Commands:
    queens   --n N --pipeline P [--output text|json]
    difftest --suite <theorem id> [--trials T] [--seed K] [--depth D]
    laws     --suite <law suite>  [--trials T] [--seed K]
    lemmas   --suite <lemma id>   [--trials T] [--seed K]
    bench    --n N
    trace    --pipeline fusedF|fusedTF --n N

Exit codes: 0 success, 1 suite failure, 2 usage error.  The seed falls back
to the EFFSIM_SEED environment variable, then to 42.
"""

import argparse
import json
import os
import sys
import time

from .difftest import (
    THEOREM_IDS, LAW_SUITES, LEMMA_IDS,
    check_theorem, check_laws, check_lemma,
)
from .queens import PIPELINES, run_pipeline, queens, queens_m, INITIAL, QUEENS_UNDO
from .machines import simulate_f, simulate_tf
from .handlers import h_nil


def _default_seed():
    env = os.environ.get("EFFSIM_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            pass
    return 42


def _positive(kind, minimum=1):
    def parse(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError("%s must be an integer" % kind)
        if v < minimum:
            raise argparse.ArgumentTypeError(
                "%s must be >= %d" % (kind, minimum))
        return v
    return parse


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="effsim",
        description="Backtracking-effects engine: pipelines, differential "
                    "test suites, benchmarks, and machine traces.")
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("queens", help="solve n-queens with one pipeline")
    q.add_argument("--n", type=_positive("n"), required=True)
    q.add_argument("--pipeline", choices=sorted(PIPELINES), default="local")
    q.add_argument("--output", choices=("text", "json"), default="text")

    d = sub.add_parser("difftest", help="run a theorem suite")
    d.add_argument("--suite", choices=THEOREM_IDS, required=True)
    d.add_argument("--trials", type=_positive("trials"), default=1000)
    d.add_argument("--seed", type=int, default=None)
    d.add_argument("--depth", type=int, choices=range(0, 11), default=6)
    d.add_argument("--output", choices=("text", "json"), default="text")

    l = sub.add_parser("laws", help="run a law suite")
    l.add_argument("--suite", choices=LAW_SUITES, required=True)
    l.add_argument("--trials", type=_positive("trials"), default=500)
    l.add_argument("--seed", type=int, default=None)
    l.add_argument("--output", choices=("text", "json"), default="text")

    m = sub.add_parser("lemmas", help="run a lemma suite")
    m.add_argument("--suite", choices=LEMMA_IDS, required=True)
    m.add_argument("--trials", type=_positive("trials"), default=300)
    m.add_argument("--seed", type=int, default=None)
    m.add_argument("--output", choices=("text", "json"), default="text")

    b = sub.add_parser("bench", help="time every pipeline on n-queens")
    b.add_argument("--n", type=_positive("n"), required=True)
    b.add_argument("--output", choices=("text", "json"), default="text")

    t = sub.add_parser("trace", help="emit machine step records")
    t.add_argument("--pipeline", choices=("fusedF", "fusedTF"),
                   default="fusedTF")
    t.add_argument("--n", type=_positive("n"), required=True)
    t.add_argument("--output", choices=("text", "json"), default="text")

    return parser


def _emit(payload, output):
    if output == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in payload.get("lines", []):
            print(line)


def _report_exit(report, output):
    ok = not report["failures"]
    if output == "json":
        print(json.dumps(report, sort_keys=True))
    else:
        print("suite %s: %d trials, %d failures"
              % (report["suite"], report["trials"], len(report["failures"])))
        for f in report["failures"][:5]:
            print("  trialSeed=%d  %s" % (f["trialSeed"], f["astText"]))
            print("    lhs=%s" % f["lhs"])
            print("    rhs=%s" % f["rhs"])
        if report.get("counterexample"):
            print("  put-or violated under local semantics (as expected):")
            print("    %s" % report["counterexample"]["astText"])
    return 0 if ok else 1


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    seed = getattr(args, "seed", None)
    if seed is None:
        seed = _default_seed()

    if args.command == "queens":
        solutions = run_pipeline(args.pipeline, args.n)
        if args.output == "json":
            print(json.dumps({"n": args.n, "solutions": solutions,
                              "count": len(solutions)}, sort_keys=True))
        else:
            for sol in solutions:
                print(sol)
            print("%d solutions" % len(solutions))
        return 0

    if args.command == "difftest":
        report = check_theorem(args.suite, args.trials, seed,
                               depth=args.depth)
        return _report_exit(report, args.output)

    if args.command == "laws":
        report = check_laws(args.suite, args.trials, seed)
        return _report_exit(report, args.output)

    if args.command == "lemmas":
        report = check_lemma(args.suite, args.trials, seed)
        return _report_exit(report, args.output)

    if args.command == "bench":
        rows = []
        reference = None
        agree = True
        for name in PIPELINES:
            t0 = time.perf_counter()
            solutions = run_pipeline(name, args.n)
            dt = time.perf_counter() - t0
            if reference is None:
                reference = solutions
            elif solutions != reference:
                agree = False
            rows.append({"pipeline": name, "seconds": round(dt, 4),
                         "count": len(solutions)})
        payload = {"n": args.n, "agreement": agree, "timings": rows}
        if args.output == "json":
            print(json.dumps(payload, sort_keys=True))
        else:
            print("n=%d  agreement=%s" % (args.n, agree))
            for row in rows:
                print("  %-8s %8.4fs  %d solutions"
                      % (row["pipeline"], row["seconds"], row["count"]))
        return 0 if agree else 1

    if args.command == "trace":
        steps = []
        if args.pipeline == "fusedF":
            result = h_nil(simulate_f(queens(args.n), INITIAL, trace=steps))
        else:
            result = h_nil(simulate_tf(queens_m(args.n), INITIAL,
                                       QUEENS_UNDO, trace=steps))
        if args.output == "json":
            print(json.dumps({"n": args.n, "pipeline": args.pipeline,
                              "steps": len(steps),
                              "solutions": result,
                              "trace": [list(s) for s in steps]},
                             sort_keys=True))
        else:
            for s in steps:
                print("\t".join(str(x) for x in s))
            print("%d steps, %d solutions" % (len(steps), len(result)))
        return 0

    parser.error("unknown command")  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
