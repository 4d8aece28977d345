import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import FIXTURES, random_rational, random_unitriangular
from gendawson.errors import DomainError, InputLengthError
from gendawson.series import DerivativeSeq, dawson_derivatives
from gendawson.triangular import (
    BorderedSystem,
    UniTriangular,
    bordered_det,
    bordered_system_for,
    build_system,
    chain_term_counts,
    cofactor,
    cofactor_chains,
    cofactor_closed_form,
    cofactor_oracle,
    dawson_derivative_cramer,
    dense_det,
    expanded_cramer_sum,
    format_matrix,
    forward_solve,
    parse_matrix,
)

small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def unitriangulars(draw, min_order=2, max_order=7):
    k = draw(st.integers(min_order, max_order))
    rows = tuple(tuple(draw(small_ints) for _ in range(r)) for r in range(k))
    return UniTriangular(rows)


def b(*vals):
    return DerivativeSeq.exact(vals)


class TestUniTriangular:
    def test_entry_accessor(self):
        m = UniTriangular(((), (4,), (5, 6)))
        assert m.entry(1, 1) == 1 and m.entry(1, 3) == 0
        assert m.entry(3, 2) == 6 and m.entry(2, 1) == 4
        with pytest.raises(DomainError):
            m.entry(0, 1)

    def test_from_dense_validates(self):
        with pytest.raises(ValueError):
            UniTriangular.from_dense([[1, 1], [0, 1]])
        with pytest.raises(ValueError):
            UniTriangular.from_dense([[2, 0], [0, 1]])
        m = UniTriangular.from_dense([[1, 0], [3, 1]])
        assert m.rows == ((), (3,))

    def test_bad_row_shape(self):
        with pytest.raises(ValueError):
            UniTriangular(((), (1, 2)))

    @given(unitriangulars(1, 7))
    def test_determinant_is_one(self, m):
        assert dense_det(m.dense()) == 1

    @given(unitriangulars(1, 6))
    def test_text_round_trip(self, m):
        assert parse_matrix(format_matrix(m)) == m

    def test_parse_rational_fixture(self):
        m = parse_matrix((FIXTURES / "m4_rational.txt").read_text())
        assert m.entry(2, 1) == Fraction(1, 2) and m.entry(4, 3) == Fraction(5, 7)


class TestBuildSystem:
    def test_classical_k3(self):
        a, rhs = build_system(b(0, 2, 0), 3)
        assert a.entry(2, 1) == 0 and a.entry(3, 1) == 6 and a.entry(3, 2) == 0
        assert rhs == (0, -4, 0)

    def test_k1(self):
        a, rhs = build_system(b(Fraction(7, 3)), 1)
        assert a.order == 1 and rhs == (Fraction(-7, 3),)

    def test_zero_b_gives_identity(self):
        a, rhs = build_system(b(*[0] * 6), 6)
        assert a == UniTriangular.identity(6) and rhs == (0,) * 6

    def test_needs_k_derivatives(self):
        with pytest.raises(InputLengthError):
            build_system(b(0, 2), 3)

    def test_element_law(self):
        vals = [Fraction(n + 1, 3) for n in range(8)]
        a, rhs = build_system(DerivativeSeq.exact(vals), 8)
        for i in range(1, 9):
            assert rhs[i - 1] == -i * vals[i - 1]
            for j in range(1, i):
                assert a.entry(i, j) == math.comb(i, j + 1) * vals[i - j - 1]


class TestForwardSolve:
    def test_identity(self):
        assert forward_solve(UniTriangular.identity(3), (4, 5, 6)) == (4, 5, 6)

    def test_two_by_two(self):
        assert forward_solve(UniTriangular(((), (5,))), (1, 0)) == (1, -5)

    def test_classical_k4(self):
        a, rhs = build_system(b(0, 2, 0, 0), 4)
        assert forward_solve(a, rhs) == (0, -4, 0, 32)

    @given(unitriangulars(1, 7), st.data())
    def test_solution_satisfies_system(self, m, data):
        rhs = [data.draw(small_ints) for _ in range(m.order)]
        x = forward_solve(m, rhs)
        dense = m.dense()
        assert [sum(r * v for r, v in zip(row, x)) for row in dense] == rhs

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            forward_solve(UniTriangular.identity(2), (1,))


class TestCofactors:
    def test_n_equal_one(self):
        m = UniTriangular(((), (4,), (5, 6), (1, 2, 3)))
        for i in range(1, 4):
            assert cofactor_closed_form(m, i, 1) == -m.entry(i + 1, i)

    def test_order_three_by_hand(self):
        a, bb, c = 2, 5, 7
        m = UniTriangular(((), (a,), (bb, c)))
        assert cofactor_closed_form(m, 1, 2) == a * c - bb
        assert cofactor_oracle(m, 1, 3) == a * c - bb

    def test_zero_strict_lower_part(self):
        m = UniTriangular.identity(6)
        assert all(cofactor_closed_form(m, i, n) == 0
                   for i in range(1, 6) for n in range(1, 7 - i))

    def test_oracle_diagonal_and_below(self):
        m = random_unitriangular(random.Random(3), 6)
        for r in range(1, 7):
            assert cofactor_oracle(m, r, r) == 1
            for s in range(1, r):
                assert cofactor_oracle(m, r, s) == 0

    def test_domain_errors(self):
        m = UniTriangular.identity(4)
        for i, n in [(0, 1), (4, 1), (2, 3), (1, 0)]:
            with pytest.raises(DomainError):
                cofactor_closed_form(m, i, n)
        with pytest.raises(DomainError):
            cofactor_oracle(m, 5, 1)

    @given(unitriangulars(2, 7))
    def test_closed_form_equals_oracle(self, m):
        k = m.order
        for i in range(1, k):
            for n in range(1, k - i + 1):
                assert cofactor_closed_form(m, i, n) == cofactor_oracle(m, i, i + n)

    @given(unitriangulars(2, 6))
    def test_oracle_methods_agree(self, m):
        k = m.order
        for r in range(1, k + 1):
            for s in range(1, k + 1):
                assert cofactor_oracle(m, r, s) == cofactor_oracle(m, r, s, method="permutation")

    @given(unitriangulars(2, 7))
    def test_alien_cofactor_expansion(self, m):
        # row i+n+1's elements against row i's cofactors sum to zero
        k = m.order
        for i in range(1, k):
            for n in range(0, k - i):
                total = sum(m.entry(i + n + 1, j) * cofactor(m, i, j) for j in range(1, k + 1))
                assert total == 0

    def test_rational_entries(self):
        m = parse_matrix((FIXTURES / "m4_rational.txt").read_text())
        for i in range(1, 4):
            for n in range(1, 5 - i):
                assert cofactor_closed_form(m, i, n) == cofactor_oracle(m, i, i + n)


class TestChains:
    def test_small_enumeration(self):
        assert list(cofactor_chains(1)) == [(1, 0)]
        assert sorted(cofactor_chains(3)) == sorted([(3, 0), (3, 2, 0), (3, 1, 0), (3, 2, 1, 0)])

    @pytest.mark.parametrize("n", range(1, 13))
    def test_counts_are_binomial(self, n):
        counts = chain_term_counts(n)
        assert counts == {s: math.comb(n - 1, n - s) for s in range(1, n + 1)}
        assert sum(counts.values()) == 2 ** (n - 1)

    def test_chains_strictly_decrease(self):
        for chain in cofactor_chains(7):
            assert chain[0] == 7 and chain[-1] == 0
            assert all(a > c for a, c in zip(chain, chain[1:]))


class TestDenseDet:
    def test_needs_pivoting(self):
        assert dense_det([[0, 1], [1, 0]]) == -1
        assert dense_det([[0, 2, 1], [1, 0, 0], [3, 4, 5]]) == -6

    def test_singular(self):
        assert dense_det([[1, 2], [2, 4]]) == 0
        assert dense_det([[0, 0], [0, 0]]) == 0

    def test_empty(self):
        assert dense_det([]) == 1

    @given(st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)))
    def test_matches_permutation_expansion(self, rows):
        from gendawson.triangular import _permutation_det

        assert dense_det(rows) == _permutation_det(rows)


class TestBordered:
    def test_zero_alpha_gives_corner(self):
        sys_ = BorderedSystem(UniTriangular(((), (3,))), (0, 0), (4, 5), Fraction(9, 2))
        assert bordered_det(sys_) == Fraction(9, 2)

    def test_empty_core(self):
        assert bordered_det(BorderedSystem(None, (), (), -7)) == -7

    def test_p2_classical(self):
        sys_ = bordered_system_for(b(0, 2), 2)
        assert sys_.core.order == 1 and sys_.alpha == (0,) and sys_.beta == (0,)
        assert sys_.corner == -4
        assert bordered_det(sys_) == -4

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            BorderedSystem(UniTriangular.identity(2), (1,), (1, 2), 0)

    def test_random_against_dense(self):
        rng = random.Random(11)
        for _ in range(40):
            n = rng.randint(1, 6)
            core = UniTriangular(tuple(tuple(random_rational(rng) for _ in range(r))
                                       for r in range(n)))
            sys_ = BorderedSystem(core, [random_rational(rng) for _ in range(n)],
                                  [random_rational(rng) for _ in range(n)], random_rational(rng))
            assert bordered_det(sys_) == dense_det(sys_.dense())


class TestCramer:
    def test_classical(self):
        assert dawson_derivative_cramer(b(0, 2), 2) == -4

    def test_zero_b(self):
        assert all(dawson_derivative_cramer(b(*[0] * k), k) == 0 for k in range(1, 8))

    def test_constant_b(self):
        c = Fraction(-5, 3)
        assert dawson_derivative_cramer(b(c, 0), 2) == c * c

    def test_k1(self):
        assert dawson_derivative_cramer(b(4), 1) == -4

    @given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=6),
                    min_size=1, max_size=9))
    def test_paths_agree(self, vals):
        k = len(vals)
        seq = DerivativeSeq.exact(vals)
        rec = dawson_derivatives(seq, k + 1).values[k + 1]
        assert dawson_derivative_cramer(seq, k) == rec
        assert expanded_cramer_sum(seq, k) == rec
        assert dense_det(bordered_system_for(seq, k).dense()) == rec
