"""Acceptance gate: nine criteria, exact equality throughout.

Each test records one PASS/FAIL line, printed together at the end of the
pytest run (see conftest.py).  Run just this file with
``pytest tests/test_acceptance.py -v``.
"""

import math
import random
import subprocess
import sys
import time

import numpy as np
import pytest

from ekrtools.algebra import coefficient_matrix, ekr_inclusion_matrix, exact_rank, frw_independence_check
from ekrtools.oracle import (
    all_intersecting_subfamilies,
    derive_seed,
    iter_subfamilies,
    max_intersecting_bruteforce,
    max_t_intersecting_bruteforce,
    random_l_intersecting,
    random_maximal_intersecting,
    rational_rank,
)
from ekrtools.pipeline import check_intersection_identity, check_shadow_disjoint, decompose, run_chain
from ekrtools.setcore import intersection_sizes, min_pairwise_intersection
from ekrtools.shadows import ExtremalCase, katona_check, katona_exhaustive

pytestmark = pytest.mark.acceptance

SEED = 20240601


def cells(lo, hi):
    return [(n, k) for n in range(lo, hi + 1) for k in range(2, n // 2 + 1)]


def corpus(max_n, samples):
    """Seeded maximal intersecting families, plus every intersecting family of ([5] choose 2) and ([6] choose 2)."""
    for n, k in cells(4, max_n):
        for s in range(samples):
            yield random_maximal_intersecting(n, k, derive_seed(SEED, n, k, s))
    for n, k in [(5, 2), (6, 2)]:
        yield from all_intersecting_subfamilies(n, k)


def test_1_ekr_bound(record_acceptance):
    start = time.perf_counter()
    grid = cells(4, 14)
    failures = 0
    checked = 0
    for n, k in grid:
        bound = math.comb(n - 1, k - 1)
        for s in range(100):
            f = random_maximal_intersecting(n, k, derive_seed(SEED, n, k, s))
            r = run_chain(decompose(f))
            checked += 1
            if not (r.final_bound and len(f) <= bound):
                failures += 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and len(grid) == 36 and elapsed < 30
    record_acceptance("1. EKR bound", ok, f"{checked} families in {len(grid)} cells, {failures} failures, {elapsed:.1f}s")
    assert len(grid) == 36
    assert failures == 0
    assert elapsed < 30


def test_2_tightness_and_uniqueness(record_acceptance):
    start = time.perf_counter()
    expected_stars = {(4, 2): False, (5, 2): True, (6, 2): True, (7, 2): True, (6, 3): False, (7, 3): True}
    bad = []
    for (n, k), stars in expected_stars.items():
        r = max_intersecting_bruteforce(n, k)
        if r.max_size != math.comb(n - 1, k - 1) or r.all_maximum_are_stars != stars:
            bad.append((n, k, r.max_size, r.all_maximum_are_stars))
        assert (n > 2 * k) == stars
    elapsed = time.perf_counter() - start
    record_acceptance("2. Tightness and uniqueness", not bad and elapsed < 60, f"mismatches={bad}, {elapsed:.1f}s")
    assert not bad
    assert elapsed < 60


def test_3_katona_exhaustive(record_acceptance):
    start = time.perf_counter()
    allowed = {ExtremalCase.EMPTY, ExtremalCase.EQUAL_A_B, ExtremalCase.COMPLETE_ON_2A_MINUS_B}

    # ([5] choose 3): one family at a time through the public check
    small = {"families": 0, "violations": 0, "unclassified": 0}
    for f in iter_subfamilies(5, 3):
        if not len(f):
            continue
        b = min_pairwise_intersection(f)
        r = katona_check(f, f.k if b is None else b)
        small["families"] += 1
        small["violations"] += not r.holds
        if r.family_size == r.shadow_size and r.extremal_class not in allowed:
            small["unclassified"] += 1

    # ([6] choose 3): the vectorised sweep over all 2^20 - 1 subfamilies
    big = katona_exhaustive(6, 3)
    big_unclassified = sum(big.unclassified_by_b.values())
    elapsed = time.perf_counter() - start

    violations = small["violations"] + big.violations
    unclassified = small["unclassified"] + big_unclassified
    ok = (small["families"] == 2 ** 10 - 1 and big.families == 2 ** 20 - 1
          and violations == 0 and unclassified == 0 and elapsed < 120)
    detail = (f"violations={violations}, equalities outside the three classes: "
              f"(5,3)={small['unclassified']}, (6,3)={big_unclassified} by b={big.unclassified_by_b}, {elapsed:.1f}s")
    record_acceptance("3. Katona exhaustive", ok, detail)
    assert small["families"] == 2 ** 10 - 1 and big.families == 2 ** 20 - 1
    assert violations == 0
    assert elapsed < 120
    assert unclassified == 0, detail


def test_4_proof_identities(record_acceptance):
    families = 0
    bad_identity = bad_disjoint = 0
    for f in corpus(max_n=12, samples=10):
        for pivot in range(1, f.ground_n + 1):
            d = decompose(f, pivot)
            bad_identity += not check_intersection_identity(d)[0]
            bad_disjoint += not check_shadow_disjoint(d)[0]
        families += 1
    ok = bad_identity == 0 and bad_disjoint == 0
    record_acceptance("4. Proof identities", ok,
                      f"{families} families x every pivot, identity failures={bad_identity}, shadow witnesses={bad_disjoint}")
    assert ok


def test_5_matrix_polynomial_identity(record_acceptance):
    start = time.perf_counter()
    families = mismatches = rank_failures = 0
    for f in corpus(max_n=12, samples=10):
        for pivot in range(1, f.ground_n + 1):
            d = decompose(f, pivot)
            inc = ekr_inclusion_matrix(d)
            coeff, _ = coefficient_matrix(f, pivot)
            if not np.array_equal(coeff, inc.entries):
                mismatches += 1
            if exact_rank(inc) != len(f):
                rank_failures += 1
        families += 1
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and rank_failures == 0 and elapsed < 60
    record_acceptance("5. Matrix-polynomial identity", ok,
                      f"{families} families x every pivot, mismatches={mismatches}, rank failures={rank_failures}, {elapsed:.1f}s")
    assert mismatches == 0 and rank_failures == 0
    assert elapsed < 60


def test_6_frw(record_acceptance):
    rng = random.Random(SEED)
    counterexamples = []
    for i in range(500):
        k = rng.randint(1, 4)
        n = rng.randint(k + 1, 10)
        allowed = frozenset(rng.sample(range(k), rng.randint(1, k)))
        f = random_l_intersecting(n, k, allowed, derive_seed(SEED, i))
        s = len(intersection_sizes(f))
        if not frw_independence_check(f, s):
            counterexamples.append((n, k, f.to_lists()))
    record_acceptance("6. FRW independence", not counterexamples, f"500 families, counterexamples={len(counterexamples)}")
    assert not counterexamples


def test_7_rank_oracle(record_acceptance):
    disagreements = 0
    for bits in range(512):
        m = [[(bits >> (3 * i + j)) & 1 for j in range(3)] for i in range(3)]
        disagreements += exact_rank(m) != rational_rank(m)
    rng = random.Random(SEED)
    for _ in range(1000):
        r, c = rng.randint(1, 12), rng.randint(1, 12)
        m = [[rng.randint(0, 1) for _ in range(c)] for _ in range(r)]
        disagreements += exact_rank(m) != rational_rank(m)
    record_acceptance("7. Rank oracle", disagreements == 0, f"1512 matrices, disagreements={disagreements}")
    assert disagreements == 0


def test_8_t_intersecting(record_acceptance):
    above = max_t_intersecting_bruteforce(8, 3, 2, max_binom=56)
    below = max_t_intersecting_bruteforce(5, 3, 2)
    # threshold (t+1)(k-t+1) = 6 for k=3, t=2
    ok = above.max_size == math.comb(6, 1) and below.max_size == 4 and below.max_size > math.comb(3, 1)
    record_acceptance("8. t-intersecting spot-check", ok, f"(8,3,2)={above.max_size}, (5,3,2)={below.max_size}")
    assert ok


def test_9_determinism(record_acceptance):
    argv = [sys.executable, "-m", "ekrtools", "sweep", "--n", "4..10", "--k", "2..4",
            "--samples", "3", "--seed", "7", "--checks", "katona,chain,matrix,polynomial", "--format", "csv"]
    first = subprocess.run(argv, capture_output=True, check=False)
    second = subprocess.run(argv, capture_output=True, check=False)
    ok = first.returncode == 0 and first.stdout == second.stdout and len(first.stdout) > 0
    record_acceptance("9. Determinism", ok, f"{len(first.stdout)} bytes, identical={first.stdout == second.stdout}")
    assert ok
