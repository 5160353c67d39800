import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ekrtools.algebra import (
    build_polynomial,
    coefficient_matrix,
    ekr_inclusion_matrix,
    ekr_matrix_proof,
    exact_rank,
    format_matrix_dump,
    frw_independence_check,
    inclusion_matrix,
    parse_matrix_dump,
    polynomials_independent,
)
from ekrtools.errors import BoundNotApplicableError, GroundMismatchError, PreconditionError, RangeError
from ekrtools.oracle import all_intersecting_subfamilies, derive_seed, random_maximal_intersecting, rational_rank
from ekrtools.pipeline import decompose, run_chain, star
from ekrtools.setcore import Subset, all_k_subsets

from conftest import fam

TRIANGLE5 = fam(5, 2, [[1, 2], [1, 3], [2, 3]])

int_matrices = st.integers(1, 7).flatmap(
    lambda r: st.integers(1, 7).flatmap(
        lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)))


class TestInclusionMatrix:
    def test_single_row(self):
        m = inclusion_matrix(fam(3, 2, [[1, 2]]), all_k_subsets(3, 1))
        assert m.entries.tolist() == [[1, 1, 0]]

    def test_pairs_vs_singletons(self):
        m = inclusion_matrix(all_k_subsets(3, 2), all_k_subsets(3, 1))
        assert m.shape == (3, 3)
        assert m.entries.sum(axis=1).tolist() == [2, 2, 2]
        assert exact_rank(m) == 3

    def test_equal_size_rows_are_units(self):
        cols = all_k_subsets(6, 2)
        for s in cols.sets:
            row = inclusion_matrix([s], cols).entries[0]
            assert row.sum() == 1 and cols.sets[int(np.argmax(row))] == s

    def test_mixed_rows_keep_order(self):
        rows = [Subset.of(5, [4, 5]), Subset.of(5, [2]), Subset.of(5, [3])]
        m = inclusion_matrix(rows, all_k_subsets(5, 1))
        assert m.entries.tolist() == [[0, 0, 0, 1, 1], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0]]

    def test_ground_mismatch(self):
        with pytest.raises(GroundMismatchError):
            inclusion_matrix([Subset.of(4, [1])], all_k_subsets(5, 1))

    def test_brute_force(self):
        rows, cols = all_k_subsets(6, 3), all_k_subsets(6, 2)
        m = inclusion_matrix(rows, cols)
        for i, r in enumerate(rows.sets):
            for j, c in enumerate(cols.sets):
                assert m.entries[i, j] == (set(c.members) <= set(r.members))


class TestExactRank:
    def test_examples(self):
        assert exact_rank(np.ones((3, 3), dtype=np.int64)) == 1
        assert exact_rank([[1, 1, 0], [1, 0, 1], [0, 1, 1]]) == 3
        assert exact_rank([[0, 0], [0, 0]]) == 0
        assert exact_rank(np.zeros((0, 4), dtype=np.int64)) == 0

    def test_all_3x3(self):
        for bits in range(512):
            m = [[(bits >> (3 * i + j)) & 1 for j in range(3)] for i in range(3)]
            assert exact_rank(m) == rational_rank(m), m

    def test_random_01(self):
        rng = random.Random(99)
        for _ in range(300):
            r, c = rng.randint(1, 12), rng.randint(1, 12)
            m = [[rng.randint(0, 1) for _ in range(c)] for _ in range(r)]
            assert exact_rank(m) == rational_rank(m)

    @given(int_matrices)
    def test_matches_rational(self, m):
        assert exact_rank(m) == rational_rank(m)

    @given(int_matrices, st.data())
    def test_duplicate_row(self, m, data):
        i = data.draw(st.integers(0, len(m) - 1))
        r = exact_rank(m)
        assert r <= min(len(m), len(m[0]))
        assert exact_rank(m + [m[i]]) == r

    def test_big_integers(self):
        big = 1 << 80
        m = [[big, big + 1], [big + 2, big + 3], [3 * big, 3 * big + 3]]
        assert exact_rank(m) == rational_rank(m) == 2
        # near-singular integer matrix where floats would lose the difference
        h = [[1 << 70, (1 << 70) + 1], [1 << 70, 1 << 70]]
        assert exact_rank(h) == 2

    def test_growth_moves_to_object(self):
        rng = random.Random(5)
        m = [[rng.randint(-10 ** 6, 10 ** 6) for _ in range(9)] for _ in range(9)]
        assert exact_rank(m) == rational_rank(m)

    def test_rejects_non_integers(self):
        with pytest.raises(RangeError):
            exact_rank([[0.5, 1]])


class TestFrw:
    def test_star(self):
        assert frw_independence_check(fam(4, 2, [[1, 2], [1, 3], [1, 4]]), 1)

    def test_single_set(self):
        assert frw_independence_check(fam(4, 2, [[1, 2]]), 0)

    def test_complete_triples(self):
        f = all_k_subsets(4, 3)
        m = inclusion_matrix(f, all_k_subsets(4, 1))
        assert round(np.linalg.det(m.entries.astype(float))) in (3, -3)
        assert frw_independence_check(f, 1)

    def test_too_many_sizes(self):
        f = fam(6, 3, [[1, 2, 3], [1, 2, 4], [1, 5, 6]])
        with pytest.raises(PreconditionError) as info:
            frw_independence_check(f, 1)
        assert info.value.intersection_sizes == {1, 2}

    def test_s_above_k(self):
        with pytest.raises(PreconditionError):
            frw_independence_check(fam(4, 2, [[1, 2]]), 3)


class TestEkrMatrix:
    def test_triangle(self):
        d = decompose(TRIANGLE5)
        m = ekr_inclusion_matrix(d)
        assert [s.members for s in m.col_labels] == [(2,), (3,), (4,), (5,)]
        assert m.entries.tolist() == [[0, 0, 1, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
        assert exact_rank(m) == 3 and ekr_matrix_proof(d)

    def test_star_unit_rows(self):
        d = decompose(star(7, 3, 2), 2)
        m = ekr_inclusion_matrix(d)
        assert (m.entries.sum(axis=1) == 1).all()
        assert ekr_matrix_proof(d)

    def test_small_n(self):
        with pytest.raises(BoundNotApplicableError):
            ekr_matrix_proof(decompose(fam(5, 3, [[1, 2, 3]])))

    def test_agrees_with_chain(self):
        for n in range(4, 10):
            for k in range(2, n // 2 + 1):
                for s in range(3):
                    f = random_maximal_intersecting(n, k, derive_seed(3, n, k, s))
                    for pivot in (1, n):
                        d = decompose(f, pivot)
                        assert ekr_matrix_proof(d) == run_chain(d).final_bound is True
                        assert len(f) <= math.comb(n - 1, k - 1)


class TestPolynomials:
    def test_pivot_in_set(self):
        assert str(build_polynomial(Subset.of(5, [1, 4]), 5, 2)) == "x4"

    def test_pivot_outside(self):
        assert str(build_polynomial(Subset.of(5, [2, 3]), 5, 2)) == "x4 + x5"
        assert str(build_polynomial(Subset.of(4, [2, 3]), 4, 2)) == "x4"

    def test_evaluate(self):
        p = build_polynomial(Subset.of(6, [2, 3, 4]), 6, 3)
        # monomials x5x6 only
        assert p.evaluate({i: i for i in range(2, 7)}) == 30

    def test_range(self):
        with pytest.raises(RangeError):
            build_polynomial(Subset.of(5, [1, 2]), 5, 3)
        with pytest.raises(RangeError):
            build_polynomial(Subset.of(5, [1, 2]), 5, 2, pivot=6)

    def test_triangle(self):
        mat, basis = coefficient_matrix(TRIANGLE5)
        assert [s.members for s in basis] == [(2,), (3,), (4,), (5,)]
        assert sorted(mat.tolist()) == sorted([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1]])
        assert polynomials_independent(TRIANGLE5)

    def test_star(self):
        assert polynomials_independent(star(6, 3, 1), 1)

    def test_matrix_identity_exhaustive(self):
        for n, k in [(4, 2), (5, 2), (6, 2)]:
            for f in all_intersecting_subfamilies(n, k):
                for pivot in (1, n):
                    d = decompose(f, pivot)
                    mat, _ = coefficient_matrix(f, pivot)
                    assert np.array_equal(mat, ekr_inclusion_matrix(d).entries)

    @settings(max_examples=30)
    @given(st.integers(4, 10).flatmap(lambda n: st.tuples(st.just(n), st.integers(2, n // 2), st.integers(0, 10 ** 6), st.integers(1, n))))
    def test_matrix_identity_random(self, args):
        n, k, seed, pivot = args
        f = random_maximal_intersecting(n, k, seed)
        d = decompose(f, pivot)
        mat, _ = coefficient_matrix(f, pivot)
        assert np.array_equal(mat, ekr_inclusion_matrix(d).entries)
        assert polynomials_independent(f, pivot) == ekr_matrix_proof(d) is True


class TestDump:
    def test_round_trip_triangle(self):
        m = ekr_inclusion_matrix(decompose(TRIANGLE5))
        text = format_matrix_dump(m)
        assert text.startswith("3 4\n0 0 1 1\n1 0 0 0\n0 1 0 0\n")
        assert parse_matrix_dump(text) == m

    def test_round_trip_corpus(self):
        for n, k in [(6, 3), (7, 3), (8, 2), (9, 4)]:
            f = random_maximal_intersecting(n, k, derive_seed(11, n, k))
            for pivot in range(1, n + 1):
                m = ekr_inclusion_matrix(decompose(f, pivot))
                assert parse_matrix_dump(format_matrix_dump(m)) == m

    def test_round_trip_when_blocks_share_size(self):
        # at n = 2k the G0 and G1 rows have the same cardinality
        m = ekr_inclusion_matrix(decompose(fam(4, 2, [[1, 2], [1, 3], [2, 3]])))
        assert len({len(s) for s in m.row_labels}) == 1
        assert parse_matrix_dump(format_matrix_dump(m)) == m
