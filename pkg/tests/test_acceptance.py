"""Acceptance criteria 1-10, one PASS/FAIL line each.

Runtime limits are wall-clock seconds.  Every comparison is exact (rational or
integer equality, set equality); there is no numerical tolerance anywhere.
"""
import itertools
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from hetramsey.cli import rerun, run, strip_timing, to_json
from hetramsey.config import config_from_mapping, parse_config
from hetramsey.core import MATRIX, SCALAR, Matrix, sorted_prefix
from hetramsey.matrices import det, matrix_mul, matrix_signature
from hetramsey.reduction import MIXED, Bounds, fr_set
from hetramsey.terms import _enumerate_cached, enumerate_orderly_terms, is_orderly, term_profile
from hetramsey.verifier import (
    VERIFIED,
    verify_final_theorem,
    verify_homomorphism_lemma,
    verify_mod5_theorem,
    verify_pythagorean_lemma,
    verify_subalgebra_transfer,
    verify_ubr_theorem,
    sweep,
    witness_sequence,
    omega0_word,
)
from hetramsey.colorings import residue_class
from hetramsey.matrices import G_matrix, y_value
from oracles import brute_fr_set, cofactor_det, count_binary_trees, y_members_upto

EXACT = 0  # tolerance for every numeric comparison below

LIMIT_1 = 1.0
LIMIT_2 = 10.0
LIMIT_3 = 30.0
LIMIT_4 = 30.0
LIMIT_5 = 10.0
LIMIT_6 = 30.0
LIMIT_7 = 30.0
LIMIT_8 = 5.0
LIMIT_9 = 10.0

TERM_COUNTS = [1, 1, 2, 5, 14, 42]
FR_PREFIXES = 50
FR_MAX_LEN = 4
FR_MAX_ARITY = 4
MOD5_ORDERS = (1, 2)
MOD5_INDEX_BOUND = 3
MOD5_OUT_LEN = 2
UBR_ORDERS = (1, 2)
UBR_INDEX_BOUND = 3
UBR_OUT_LEN = 4  # shortest out_len whose reductions carry two matrix entries
PYTH_INDEX_BOUND = 5
PYTH_LEN_BOUND = 3
FINAL_ORDERS = (2, 3)
FINAL_INDEX_BOUND = 3
HOM_TRIALS = 20
HOM_MAX_LEN = 3
HOM_ORDERS = (1, 2)
DET_SAMPLES = 200
DET_ORDERS = (1, 2, 3)
SUBALG_TRIALS = 20

RESULTS = []


def record(n, ok, elapsed, limit, detail):
    status = "PASS" if ok and (limit is None or elapsed < limit) else "FAIL"
    budget = f" (limit {limit:g}s)" if limit is not None else ""
    line = f"{status} {n}: {detail}; {elapsed:.3f}s{budget}"
    RESULTS.append(line)
    print(line)
    return status == "PASS"


def test_criterion_1_orderly_term_counts():
    sig = matrix_signature(["mul"])
    _enumerate_cached.cache_clear()
    start = time.perf_counter()
    terms = enumerate_orderly_terms(sig, MATRIX, 6, 5)
    elapsed = time.perf_counter() - start
    counts = [sum(1 for t in terms if term_profile(t).arity == k) for k in range(1, 7)]
    oracle = [count_binary_trees(k) for k in range(1, 7)]
    ok = counts == oracle == TERM_COUNTS
    assert record(1, ok, elapsed, LIMIT_1, f"counts {counts}, oracle {oracle}")


def test_criterion_2_fr_oracle_equivalence():
    rng = random.Random(2024)
    sig = matrix_signature(["fadd", "fmul"])
    bounds = Bounds(FR_MAX_ARITY, FR_MAX_ARITY - 1)
    start = time.perf_counter()
    mismatches = []
    for _ in range(FR_PREFIXES):
        items = [rng.randint(-5, 9) for _ in range(rng.randint(1, FR_MAX_LEN))]
        b = sorted_prefix(items)
        got = fr_set(b, SCALAR, sig, bounds).as_set()
        want = brute_fr_set(b.items, SCALAR, sig, bounds.max_arity, bounds.max_depth, is_orderly)
        if got != want:
            mismatches.append(items)
    elapsed = time.perf_counter() - start
    ok = not mismatches
    assert record(2, ok, elapsed, LIMIT_2, f"{FR_PREFIXES} prefixes, {len(mismatches)} set mismatches")


def test_criterion_3_mod5_sweep():
    start = time.perf_counter()
    x = residue_class(5, 1)
    sig = matrix_signature(("mul", "fadd", "det"))
    problems = []
    summary = []
    for n in MOD5_ORDERS:
        report = verify_mod5_theorem(n=n, index_bound=MOD5_INDEX_BOUND, out_len=MOD5_OUT_LEN)
        if report.status != VERIFIED or report.stats["non_mixed"] or not report.exhibits:
            problems.append(f"n={n}: status {report.status}, non-Mixed {report.stats['non_mixed']}")
        if any(e.value % 5 != 1 for e in report.exhibits if e.verdict == "in"):
            problems.append(f"n={n}: an in-exhibit is not 1 mod 5")
        if n == 2 and not {("6", "in"), ("17", "out")} <= {(e.element, e.verdict) for e in report.exhibits}:
            problems.append("n=2: exhibit pair (6, 17) missing")
        b = witness_sequence(omega0_word(2 * MOD5_INDEX_BOUND), lambda k: G_matrix(k, n))
        cands = sweep(b, omega0_word(2 * MOD5_INDEX_BOUND), sig, MOD5_OUT_LEN, Bounds(), x)
        lacking = [c for c in cands if not any(v % 5 == 2 for v in c.fr)]
        if lacking:
            problems.append(
                f"n={n}: {len(lacking)}/{len(cands)} Mixed candidates have no FR element 2 mod 5, "
                f"e.g. a=<{', '.join(map(str, lacking[0].prefix.items))}>"
            )
        summary.append(f"n={n}: {report.stats['mixed']}/{report.stats['candidates']} Mixed")
    elapsed = time.perf_counter() - start
    ok = not problems
    detail = "; ".join(summary) + ("" if ok else " | " + "; ".join(problems))
    assert record(3, ok, elapsed, LIMIT_3, detail), detail


def test_criterion_4_ubr_sweep():
    start = time.perf_counter()
    problems = []
    summary = []
    for n in UBR_ORDERS:
        r = verify_ubr_theorem(n=n, index_bound=UBR_INDEX_BOUND, out_len=UBR_OUT_LEN)
        c = r.stats["candidates"]
        if r.status != VERIFIED or not r.exhibits or r.stats["mixed"] != c:
            problems.append(f"n={n}: {r.status}")
        if r.stats["candidates_with_odd_form"] != c or r.stats["candidates_with_even_form"] != c:
            problems.append(f"n={n}: odd {r.stats['candidates_with_odd_form']}, even {r.stats['candidates_with_even_form']} of {c}")
        if r.stats["even_forms_in_X"]:
            problems.append(f"n={n}: even products inside X {r.stats['even_forms_in_X']}")
        summary.append(f"n={n}: {r.stats['mixed']}/{c} Mixed, odd {r.stats['candidates_with_odd_form']}/{c}, even {r.stats['candidates_with_even_form']}/{c}")
    elapsed = time.perf_counter() - start
    ok = not problems
    detail = f"out_len {UBR_OUT_LEN}; " + "; ".join(summary + problems)
    assert record(4, ok, elapsed, LIMIT_4, detail), detail


def test_criterion_5_pythagorean():
    start = time.perf_counter()
    r = verify_pythagorean_lemma(PYTH_INDEX_BOUND, PYTH_LEN_BOUND)
    elapsed = time.perf_counter() - start
    s = r.stats
    ok = r.status == VERIFIED and s["equalities"] == 0 and s["longsum1_mismatches"] == 0 and s["longsum2_mismatches"] == 0
    assert record(5, ok, elapsed, LIMIT_5, f"{s['comparisons']} comparisons, {s['equalities']} equalities, "
                  f"expansion mismatches {s['longsum1_mismatches']}+{s['longsum2_mismatches']}")


def _index_subsets(bound):
    return [c for k in range(1, bound + 2) for c in itertools.combinations(range(bound + 1), k)]


def _is_theta_oracle(v, n):
    root = round(v ** (1 / n))
    for r in (root - 1, root, root + 1):
        if r > 0 and r**n == v:
            return r in y_members_upto(r + 1)
    return False


def test_criterion_6_final_theorem():
    start = time.perf_counter()
    problems = []
    parts = []
    for n in FINAL_ORDERS:
        r = verify_final_theorem(n=n, index_bound=FINAL_INDEX_BOUND)
        if r.status != VERIFIED or r.stats["theta_sums_in_X"]:
            problems.append(f"n={n}: {r.status}, {r.stats['theta_sums_in_X']} Theta sums in X")
        parts.append(f"n={n}: {r.stats['theta_sums_checked']} Theta sums, {r.stats['theta_sums_in_X']} in X")
        values = [y_value(sub) ** n for sub in _index_subsets(FINAL_INDEX_BOUND)]
        pairs = list(itertools.combinations_with_replacement(values, 2))
        hits = [p + q for p, q in pairs if _is_theta_oracle(p + q, n)]
        if hits:
            problems.append(f"n={n}: Theta pair sums inside X {hits[:3]}")
        parts.append(f"n={n}: {len(pairs)} unrestricted pair sums, {len(hits)} in X")
    r1 = verify_final_theorem(n=1)
    if r1.status != VERIFIED or r1.stats["constructed"] != r1.stats["colorings"]:
        problems.append(f"n=1: {r1.stats['constructed']}/{r1.stats['colorings']} constructions")
    if any(e.verdict == MIXED for e in r1.exhibits):
        problems.append("n=1: a Mixed verdict")
    parts.append(f"n=1: {r1.stats['constructed']}/{r1.stats['colorings']} pure constructions")
    elapsed = time.perf_counter() - start
    assert record(6, not problems, elapsed, LIMIT_6, "; ".join(parts + problems))


def test_criterion_7_homomorphism_set_equality():
    start = time.perf_counter()
    r = verify_homomorphism_lemma(prefix_len=HOM_MAX_LEN, orders=HOM_ORDERS, trials=HOM_TRIALS, seed=0)
    elapsed = time.perf_counter() - start
    ok = r.status == VERIFIED and r.stats["checked"] == HOM_TRIALS and r.stats["mismatches"] == 0
    assert record(7, ok, elapsed, LIMIT_7, f"{r.stats['checked']} prefixes, {r.stats['mismatches']} unequal sets")


def _rand_matrix(rng, n):
    return Matrix([[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)])


def test_criterion_8_det_multiplicativity():
    rng = random.Random(8)
    start = time.perf_counter()
    bad_mult = bad_oracle = 0
    for n in DET_ORDERS:
        for _ in range(DET_SAMPLES):
            a, b = _rand_matrix(rng, n), _rand_matrix(rng, n)
            ab = matrix_mul(a, b)
            if abs(det(ab) - det(a) * det(b)) > EXACT:
                bad_mult += 1
            for m in (a, b, ab):
                if abs(det(m) - cofactor_det(m.rows)) > EXACT:
                    bad_oracle += 1
    elapsed = time.perf_counter() - start
    ok = bad_mult == 0 and bad_oracle == 0
    assert record(8, ok, elapsed, LIMIT_8,
                  f"{DET_SAMPLES} pairs per n in {list(DET_ORDERS)}, {bad_mult} product failures, {bad_oracle} cofactor disagreements")


def test_criterion_9_subalgebra_agreement():
    start = time.perf_counter()
    r = verify_subalgebra_transfer(trials=SUBALG_TRIALS, seed=0)
    elapsed = time.perf_counter() - start
    ok = r.status == VERIFIED and r.stats["checked"] == SUBALG_TRIALS and r.stats["mismatches"] == 0
    assert record(9, ok, elapsed, LIMIT_9, f"{r.stats['checked']} cases, {r.stats['mismatches']} mismatches")


CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"
EXTRA_RUNS = [
    {"command": "enumerate-terms", "ops": ["add", "det", "fadd"], "max_arity": 3},
    {"command": "fr-set", "sequence": "G:1,2", "ops": ["mul", "det"]},
    {"command": "check-reduction", "sequence": "list:1,2,3", "target_sequence": "list:3,3", "ops": ["fadd"]},
    {"command": "search-homogeneous", "sequence": "D:1,2", "coloring": "theta:2", "ops": ["add", "fmul", "det"]},
    {"theorem": "mod5", "scalar_only": True, "index_bound": 1, "out_len": 1},
]


def _canonical(report):
    return json.dumps(strip_timing(json.loads(to_json(report))), sort_keys=True)


def test_criterion_10_determinism():
    start = time.perf_counter()
    cfgs = [parse_config(p.read_text()) for p in sorted(CONFIG_DIR.glob("*.yaml"))]
    cfgs += [config_from_mapping(d) for d in EXTRA_RUNS]
    differing = []
    for cfg in cfgs:
        first = run(cfg.command, cfg)
        doc = json.loads(to_json(first))
        if _canonical(first) != _canonical(rerun(doc)) or _canonical(first) != _canonical(run(cfg.command, cfg)):
            differing.append(cfg.theorem or cfg.command)
    elapsed = time.perf_counter() - start
    assert record(10, not differing, elapsed, None, f"{len(cfgs)} reports re-run from echoed config, {len(differing)} differ")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
