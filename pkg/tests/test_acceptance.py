"""Acceptance suite: one test (and one printed PASS/FAIL line) per criterion.

Run with `pytest -v -s tests/test_acceptance.py` to see the lines inline;
under plain `pytest` they appear in captured output on failure.
"""

import time

from effsim.cli import main as cli_main
from effsim.difftest import (
    THEOREM_IDS, LAW_SUITES, LEMMA_IDS, MUTATIONS,
    check_theorem, check_laws, check_lemma, check_mutation,
    gen_program, lower, oracle_eval, SN,
)
from effsim.handlers import h_nil, h_local, h_global
from effsim.queens import PIPELINES, run_pipeline

N4_GROUND_TRUTH = [[2, 4, 1, 3], [3, 1, 4, 2]]

# [DERIVED] independently before the build: solution counts for n = 4..8.
COUNTS_4_TO_8 = {4: 2, 5: 10, 6: 4, 7: 40, 8: 92}


def _verdict(name, ok, detail=""):
    line = "%s [%s]" % ("PASS" if ok else "FAIL", name)
    if detail:
        line += " " + detail
    print(line)
    return ok


def test_queens_ground_truth():
    t0 = time.perf_counter()
    results = {name: run_pipeline(name, 4) for name in PIPELINES}
    dt = time.perf_counter() - t0
    ok = all(r == N4_GROUND_TRUTH for r in results.values()) and dt < 1.0
    assert _verdict("queens-ground-truth", ok,
                    "10 pipelines n=4 in %.3fs" % dt)


def test_queens_cross_agreement():
    worst = 0.0
    ok = True
    for n in range(1, 9):
        seen = None
        for name in PIPELINES:
            t0 = time.perf_counter()
            sols = run_pipeline(name, n)
            worst = max(worst, time.perf_counter() - t0)
            if seen is None:
                seen = sols
            elif sols != seen:
                ok = False
        if n in COUNTS_4_TO_8 and len(seen) != COUNTS_4_TO_8[n]:
            ok = False
    ok = ok and worst < 30.0
    assert _verdict("queens-cross-agreement", ok,
                    "n=1..8, counts 2/10/4/40/92, slowest run %.2fs" % worst)


def test_theorem_suite():
    t0 = time.perf_counter()
    failures = 0
    for j, ident in enumerate(THEOREM_IDS):
        rep = check_theorem(ident, trials=1000, seed=41 + j, depth=6)
        failures += len(rep["failures"])
    dt = time.perf_counter() - t0
    ok = failures == 0 and dt < 60.0
    assert _verdict("theorem-suite", ok,
                    "10 ids x 1000 trials, seeds 41..50, %d failures, %.1fs"
                    % (failures, dt))


def test_law_suite():
    failures = 0
    cex_found = False
    for suite in LAW_SUITES:
        rep = check_laws(suite, trials=500, seed=42)
        failures += len(rep["failures"])
        if suite == "globalstate":
            cex_found = rep.get("counterexample") is not None
    ok = failures == 0 and cex_found
    assert _verdict("law-suite", ok,
                    "6 suites x 500 trials, %d failures, "
                    "put-or counterexample %s"
                    % (failures, "found" if cex_found else "MISSING"))


def test_lemma_suite():
    failures = 0
    for ident in LEMMA_IDS:
        rep = check_lemma(ident, trials=400, seed=42)
        failures += len(rep["failures"])
    ok = failures == 0
    assert _verdict("lemma-suite", ok,
                    "8 lemmas x 400 trials, %d failures" % failures)


def test_oracle_anchor():
    mismatches = 0
    for seed in range(1000):
        ast = gen_program(seed, 6, ("state", "nondet"))
        t = lower(ast, SN)
        if h_nil(h_local(t, 0)) != oracle_eval(ast, 0, "local")["answers"]:
            mismatches += 1
        g = oracle_eval(ast, 0, "global")
        if h_nil(h_global(t, 0)) != g["answers"]:
            mismatches += 1
    ok = mismatches == 0
    assert _verdict("oracle-anchor", ok,
                    "1000 programs, %d mismatches" % mismatches)


def test_mutation_sensitivity():
    ok = True
    caught_at = {}
    for name in MUTATIONS:
        rep = check_mutation(name, trials=1000, seed=42)
        caught_at[name] = rep.get("firstFailingTrial")
        if not rep["detected"]:
            ok = False
    assert _verdict("mutation-sensitivity", ok,
                    "caught at trials %s" % (caught_at,))


def test_bench_agreement_only(capsys):
    # The paper gives no performance figures: bench is checked purely for
    # pipeline agreement; timings are reported but never asserted on.
    import json
    code = cli_main(["bench", "--n", "6", "--output", "json"])
    payload = json.loads(capsys.readouterr().out)
    ok = code == 0 and payload["agreement"] is True
    with capsys.disabled():
        assert _verdict("bench-agreement", ok,
                        "n=6, agreement=%s" % payload["agreement"])
