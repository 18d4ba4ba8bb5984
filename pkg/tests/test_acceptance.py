"""Acceptance gate: one PASS/FAIL line per criterion.

Run directly (``python3 tests/test_acceptance.py``) or through pytest; either
way each criterion prints a single status line.
"""

import time

import numpy as np

from gradering import (AdditiveMap, certify_grading, check_condition, classify_map,
                       is_derivation, is_gr_prime, is_graded_ideal, is_homogeneous,
                       is_homogeneous_derivation, is_homogeneous_map, is_prime, lie_bracket,
                       pair_map, product_ring, split_map, validate_grading)
from gradering.cli import run
from gradering.corpus import (build_paper_example, enumerate_instances, load_document,
                              run_expectations, shipped_path)
from gradering.corpus.families import group_algebra
from gradering.ideals import ideal_generate, whole_ring
from gradering.maps import homogeneous_derivations
from gradering.primeness import annihilates_brute
from gradering.ring import is_commutative
from gradering.theorems import check_lemma_2_1, condition_for, sweep

from oracles import gr_prime_brute, homogeneous_map_brute, leibniz_brute

SWEEP_FAMILIES = ["matrix-pattern", "group-algebra"]
SWEEP_PARAMS = {"primes": [2, 3], "max_n": 2, "max_order": 4}


def _instances():
    return [inst for fam in SWEEP_FAMILIES for inst in enumerate_instances(fam, SWEEP_PARAMS)]


def _all_pass(doc):
    return [c.name for c in run_expectations(doc) if not c.passed]


def criterion_1():
    problems = []
    ex1 = build_paper_example("ex3.4.1", 5)
    problems += _all_pass(ex1.document())
    c = classify_map(ex1.maps["F1"], ex1.ring, ex1.grading)
    if not c.generalized_homogeneous_derivation:
        problems.append("F1 not generalized homogeneous")
    if not is_homogeneous_derivation(ex1.maps["d1"], ex1.ring, ex1.grading):
        problems.append("d1 not a homogeneous derivation")
    x = ex1.ring.from_dict({"E11": 2, "E22": -7})
    y = ex1.maps["rF1"](x)
    if y != ex1.ring.from_dict({"E12": -63, "E22": -14}) or y.to_list() != [0, 2, 1]:
        problems.append(f"rF1(diag(2,-7)) = {y.to_list()}")
    if is_homogeneous(y, ex1.grading) is not None:
        problems.append("rF1(diag(2,-7)) homogeneous")

    ex2 = build_paper_example("ex3.4.2", 5)
    problems += _all_pass(ex2.document())

    ex6 = build_paper_example("ex3.6", 5)
    problems += _all_pass(ex6.document())
    c = classify_map(ex6.maps["F"], ex6.ring, ex6.grading)
    if not c.generalized_homogeneous_derivation or c.homogeneous_derivation:
        problems.append("ex3.6 F misclassified")

    ex43 = build_paper_example("ex4.3", 5, 8)
    problems += _all_pass(ex43.document())
    ring, grading = ex43.ring, ex43.grading
    I = ideal_generate(ex43.ideals["I"][1], "two-sided", ring)
    if is_gr_prime(ring, grading).gr_prime is not False:
        problems.append("ex4.3 gr-prime")
    if I.is_zero():
        problems.append("ex4.3 I zero")
    if not is_graded_ideal(I, grading):
        problems.append("ex4.3 I not graded")
    for theorem, maps in (("4.1", [ex43.maps["F1"]]), ("4.2", [ex43.maps["F1"], ex43.maps["F2"]])):
        for sign in ("minus", "plus"):
            if not check_condition(condition_for(theorem, sign), maps, I, ring, grading):
                problems.append(f"condition {theorem} {sign} fails")
    if is_commutative(ring):
        problems.append("ex4.3 commutative")
    return not problems, "; ".join(problems) or "ex3.4.1, ex3.4.2, ex3.6, ex4.3 reproduce"


WITNESSES = {"ex3.2.1": ("E12", "E23"), "ex3.2.2": ("E12", "E23"), "ex3.8": ("E12", "E21")}


def criterion_2():
    problems = []
    for eid, pair in WITNESSES.items():
        ex = build_paper_example(eid, 5, 8)
        v = validate_grading(ex.ring, ex.grading)
        if v:
            problems.append(f"{eid} verbatim validates")
            continue
        names = ex.ring.basis_names
        if (names[v.witness[0]], names[v.witness[1]]) != pair:
            problems.append(f"{eid} witness {v.witness}")
        doc = load_document(shipped_path(eid))
        if doc.expectations["grading_witness"][:2] != list(v.witness[:2]):
            problems.append(f"{eid} shipped witness differs")
        fixed = build_paper_example(f"{eid}-corrected", 5, 10)
        if not validate_grading(fixed.ring, fixed.grading):
            problems.append(f"{eid}-corrected fails validation")
        problems += [f"{eid}-corrected: {n}" for n in _all_pass(fixed.document())]
    ex8 = build_paper_example("ex3.8-corrected", 5)
    r = ex8.ring.from_dict({"E11": 2, "E22": 1})
    y = ex8.maps["F"](r)
    if y != ex8.ring.from_dict({"E11": 2, "E21": 9, "E22": 1}) or is_homogeneous(y, ex8.grading) is not None:
        problems.append(f"F(diag(2,1)) = {y.to_list()}")
    c = classify_map(ex8.maps["F"], ex8.ring, ex8.grading)
    if not c.generalized_derivation or c.generalized_homogeneous_derivation is not False:
        problems.append("ex3.8-corrected F misclassified")
    return not problems, "; ".join(problems) or "3 verbatim gradings rejected at the documented pairs"


def criterion_3():
    details = []
    ok = True
    for theorem in ("4.1", "4.2"):
        rep = sweep(SWEEP_FAMILIES, SWEEP_PARAMS, theorem)
        t = rep["totals"]
        ok &= t["inconsistent"] == 0 and t["undecided"] == 0 and t["instances"] > 0
        details.append(f"{theorem}: {t['instances']} instances, {t['inconsistent']} inconsistent, "
                       f"{t['undecided']} undecided")
    return ok, "; ".join(details)


def criterion_4():
    details = []
    ok = True
    for check in ("prop-F-nonzero", "prop-restriction", "lemma-2.1"):
        rep = sweep(SWEEP_FAMILIES, SWEEP_PARAMS, check)
        t = rep["totals"]
        checked = t["by_status"].get("checked", 0)
        ok &= t["inconsistent"] == 0 and t["undecided"] == 0 and checked > 0
        details.append(f"{check}: {checked} gr-prime instances, {t['violations']} violations")
    for p in (3, 5):
        ring, grading = group_algebra(p, (2,))
        if not check_lemma_2_1(ring, grading):
            ok = False
            details.append(f"lemma fails on Z{p}[Z2]")
    return ok, "; ".join(details)


def criterion_5():
    rng = np.random.default_rng(2024)
    counts = {"leibniz": 0, "homogeneity": 0, "gr-prime": 0, "sign-flip": 0}
    bad = {k: 0 for k in counts}
    for ring, grading in _instances():
        m, n = ring.modulus, ring.dim
        maps = [rng.integers(0, m, (n, n)) for _ in range(2)]
        maps += list(homogeneous_derivations(ring, grading)[:2])
        if m ** n <= 10 ** 4:
            counts["leibniz"] += 1
            for M in maps:
                bad["leibniz"] += bool(is_derivation(AdditiveMap(ring, M))) != leibniz_brute(ring.c, m, M)
        counts["homogeneity"] += 1
        for M in maps:
            bad["homogeneity"] += (bool(is_homogeneous_map(AdditiveMap(ring, M), grading))
                                   != homogeneous_map_brute(m, grading.degrees, M))
        counts["gr-prime"] += 1
        bad["gr-prime"] += is_gr_prime(ring, grading).gr_prime != gr_prime_brute(ring.c, m, grading.degrees)
        counts["sign-flip"] += 1
        R = whole_ring(ring)
        for theorem in ("4.1", "4.2"):
            k = 1 if theorem == "4.1" else 2
            Fs = [AdditiveMap(ring, maps[t % len(maps)]) for t in range(k)]
            minus = check_condition(condition_for(theorem, "minus"), Fs, R, ring, grading)
            plus = check_condition(condition_for(theorem, "plus"), [-Fs[0]] + Fs[1:], R, ring, grading)
            bad["sign-flip"] += bool(minus) != bool(plus)
    ok = all(c >= 20 for c in counts.values()) and not any(bad.values())
    detail = ", ".join(f"{k}: {counts[k]} instances/{bad[k]} disagreements" for k in counts)
    return ok, detail


def criterion_6():
    problems = []
    sample = build_paper_example("rem2.3.1", 3)
    ring, grading = sample.ring, sample.grading
    ders = homogeneous_derivations(ring, grading)
    nonzero = ders[ders.reshape(len(ders), -1).any(axis=1)]
    rng = np.random.default_rng(7)
    for _ in range(200):
        s, t = rng.integers(0, len(nonzero), 2)
        B = lie_bracket(AdditiveMap(ring, nonzero[s]), AdditiveMap(ring, nonzero[t]))
        if not is_homogeneous_derivation(B, ring, grading):
            problems.append("bracket not a homogeneous derivation")
            break
    upper = build_paper_example("ex3.4.1", 3)
    a, ga = upper.ring, upper.grading
    prod, gp = product_ring(a, ga, ring, grading)
    if not validate_grading(prod, gp):
        problems.append("product grading invalid")
    da = homogeneous_derivations(a, ga)
    for t in range(min(len(da), 20)):
        d1, d2 = AdditiveMap(a, da[t]), AdditiveMap(ring, nonzero[t % len(nonzero)])
        D = pair_map(d1, d2, prod)
        if split_map(D, a, ring) != (d1, d2) or not is_derivation(D):
            problems.append("pair/split round trip")
            break
    doc = load_document(shipped_path("rem2.3.1"))
    problems += _all_pass(doc)
    r, g = doc.ring(), certify_grading(doc.ring(), doc.raw_grading())
    D1, D2 = doc.map("D1", r), doc.map("D2", r)
    if is_homogeneous_map(D1 + D2, g) or not is_homogeneous_derivation(D1, r, g) \
            or not is_homogeneous_derivation(D2, r, g):
        problems.append("stored sum witness invalid")
    return not problems, "; ".join(problems) or "200 brackets, pair/split, stored sum witness"


def criterion_7():
    ring, grading = group_algebra(5, (2,))
    gr = is_gr_prime(ring, grading)
    pr = is_prime(ring)
    if not gr.gr_prime or pr.prime is not False:
        return False, f"gr_prime={gr.gr_prime} prime={pr.prime}"
    a, b = pr.prime_witness
    ok = bool(a) and bool(b) and annihilates_brute(a, b)
    return ok, f"Z5[Z2] gr-prime, not prime; witness a={a.to_list()} b={b.to_list()}"


def criterion_8():
    argv = ["sweep", "--family", "matrix-pattern,group-algebra", "--params", "primes=2,3",
            "max_n=2", "max_order=4", "--json"]
    diffs = []
    for theorem in ("4.1", "lemma-2.1"):
        _, one = run(argv + ["--theorem", theorem, "--jobs", "1"])
        _, two = run(argv + ["--theorem", theorem, "--jobs", "2"])
        if one != two or not one:
            diffs.append(theorem)
    _, s1 = run(["search", "--problem", "pr1.i", "--jobs", "1", "--json"])
    _, s2 = run(["search", "--problem", "pr1.i", "--jobs", "3", "--json"])
    if s1 != s2:
        diffs.append("pr1.i")
    return not diffs, f"differs: {diffs}" if diffs else "byte-identical reports for jobs 1 vs 2/3"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]
LIMITS = {1: 10, 2: 5, 3: 600, 4: 120}


def evaluate(number):
    start = time.perf_counter()
    ok, detail = CRITERIA[number - 1]()
    elapsed = time.perf_counter() - start
    limit = LIMITS.get(number)
    if limit is not None and elapsed > limit:
        ok = False
        detail += f"; took {elapsed:.1f}s, limit {limit}s"
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s) {detail}"
    return ok, line


def _check(number, capsys):
    ok, line = evaluate(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


def test_criterion_1_catalog_examples(capsys):
    _check(1, capsys)


def test_criterion_2_erratum_detection(capsys):
    _check(2, capsys)


def test_criterion_3_theorem_sweeps(capsys):
    _check(3, capsys)


def test_criterion_4_propositions_and_lemma(capsys):
    _check(4, capsys)


def test_criterion_5_oracle_equivalence(capsys):
    _check(5, capsys)


def test_criterion_6_structural_remarks(capsys):
    _check(6, capsys)


def test_criterion_7_gr_prime_not_prime(capsys):
    _check(7, capsys)


def test_criterion_8_determinism(capsys):
    _check(8, capsys)


if __name__ == "__main__":
    import sys
    results = [evaluate(k) for k in range(1, len(CRITERIA) + 1)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
