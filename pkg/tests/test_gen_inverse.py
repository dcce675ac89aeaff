from fractions import Fraction

import pytest
from hypothesis import given

from matgen import square_matrices
from oracles import drazin_candidate
from weakcomm.exact_linalg import RationalMatrix, ShapeError, rank
from weakcomm.subspace_lattice import (RedPair, Subspace, ascent, colspace,
                                       hyperkernel, hyperrange, is_red_pair,
                                       nullspace, restriction)
from weakcomm.gen_inverse import (NotReducingError, SingularRestrictionError,
                                  drazin, drazin_index, is_ired_pair,
                                  is_ired_pair_weak, is_pseudo_inverse,
                                  pair_of_pseudo_inverse, phi_map,
                                  product_commuting_basis)
from weakcomm.theorem_harness import pseudo_inverse_family

M = RationalMatrix.from_rows


def frac_rows(rows):
    return M([[Fraction(x) for x in r] for r in rows])


J3 = frac_rows([[0, 1, 0], [0, 0, 1], [0, 0, 0]])


class TestDrazin:
    def test_nilpotent(self):
        result = drazin(J3)
        assert result.inverse.is_zero
        assert result.index == 3
        assert result.core_range == Subspace.zero(3)

    def test_invertible(self):
        a = frac_rows([[1, 2], [3, 4]])
        assert drazin(a).inverse * a == RationalMatrix.identity(2)
        assert drazin(a).index == 0

    def test_idempotent_is_own_inverse(self):
        a = frac_rows([[1, 1], [0, 0]])
        assert drazin(a).inverse == a
        assert drazin(a).index == 1

    def test_diagonal(self):
        a = frac_rows([[2, 0], [0, 0]])
        assert drazin(a).inverse == frac_rows([[Fraction(1, 2), 0], [0, 0]])

    @given(square_matrices(max_dim=4))
    def test_axioms_exact(self, a):
        result = drazin(a)
        c = result.inverse
        k = result.index
        assert a * c == c * a
        assert c * a * c == c
        assert a ** (k + 1) * c == a ** k
        assert k == drazin_index(a) == ascent(a)

    @given(square_matrices(max_dim=4))
    def test_matches_polynomial_route(self, a):
        assert drazin(a).inverse == drazin_candidate(a)

    @given(square_matrices(max_dim=4))
    def test_core_pair_reduces(self, a):
        result = drazin(a)
        pair = result.red_pair
        assert is_red_pair(a, pair)
        assert pair.m_part == hyperrange(a)
        assert pair.n_part == hyperkernel(a)

    @given(square_matrices(max_dim=3, bound=2))
    def test_double_inverse_identity(self, a):
        # (a^D)^D equals a^2 a^D
        d = drazin(a).inverse
        assert drazin(d).inverse == a * a * d


class TestPseudoInverses:
    def test_frozen_memberships(self):
        d = frac_rows([[1, 0], [0, 0]])
        assert is_pseudo_inverse(d, d)
        assert is_pseudo_inverse(d, RationalMatrix.zeros(2, 2))
        assert is_pseudo_inverse(J3, drazin(J3).inverse)
        assert not is_pseudo_inverse(d, frac_rows([[0, 1], [0, 0]]))

    @given(square_matrices(max_dim=4))
    def test_family_members_are_pseudo_inverses(self, a):
        family = pseudo_inverse_family(a)
        assert drazin(a).inverse in family
        assert len(set(family)) == len(family)
        for c in family:
            assert is_pseudo_inverse(a, c)

    @given(square_matrices(max_dim=4))
    def test_round_trip(self, a):
        for c in pseudo_inverse_family(a):
            pair = pair_of_pseudo_inverse(a, c)
            assert is_ired_pair(a, pair)
            assert phi_map(a, pair) == c

    def test_pair_of_non_inverse_rejected(self):
        with pytest.raises(ValueError):
            pair_of_pseudo_inverse(J3, RationalMatrix.identity(3))


class TestPhiMap:
    def test_component_inverse(self):
        t = frac_rows([[2, 0], [0, 0]])
        pair = RedPair(colspace(t), nullspace(t))
        assert phi_map(t, pair) == frac_rows([[Fraction(1, 2), 0], [0, 0]])

    def test_invertible_full_pair(self):
        t = frac_rows([[1, 1], [0, 1]])
        pair = RedPair(Subspace.full(2), Subspace.zero(2))
        assert phi_map(t, pair) * t == RationalMatrix.identity(2)

    def test_not_reducing(self):
        pair = RedPair(
            Subspace.from_columns(frac_rows([[0], [1], [0]])),
            Subspace.from_columns(frac_rows([[1, 0], [0, 0], [0, 1]])))
        with pytest.raises(NotReducingError):
            phi_map(J3, pair)

    def test_singular_restriction(self):
        t = frac_rows([[0, 0], [0, 1]])
        pair = RedPair(Subspace.from_columns(frac_rows([[1], [0]])),
                       Subspace.from_columns(frac_rows([[0], [1]])))
        with pytest.raises(SingularRestrictionError):
            phi_map(t, pair)

    def test_wrong_ambient(self):
        with pytest.raises(ShapeError):
            phi_map(J3, RedPair(Subspace.full(2), Subspace.zero(2)))


class TestIRed:
    def test_core_pair_accepted(self):
        t = frac_rows([[2, 0, 0], [0, 0, 1], [0, 0, 0]])
        pair = drazin(t).red_pair
        assert is_ired_pair(t, pair)
        assert is_ired_pair_weak(t, pair)

    def test_eigen_split_rejected(self):
        # both diagonal entries invertible but the split pair fails the
        # universal quantifier over product-commuting operators
        t = RationalMatrix.identity(2)
        pair = RedPair(Subspace.from_columns(frac_rows([[1], [0]])),
                       Subspace.from_columns(frac_rows([[0], [1]])))
        assert not is_ired_pair(t, pair)
        assert not is_ired_pair_weak(t, pair)

    @given(square_matrices(max_dim=3, bound=2))
    def test_quantifier_forms_agree(self, t):
        pair = drazin(t).red_pair
        assert is_ired_pair(t, pair) == is_ired_pair_weak(t, pair)

    @given(square_matrices(max_dim=3, bound=2))
    def test_product_class_contains_t_and_identity(self, t):
        from weakcomm.commutant import vec
        basis = product_commuting_basis(t)
        if not basis:
            return
        from weakcomm.exact_linalg import hstack
        stacked = hstack(*[vec(u) for u in basis])
        span = Subspace.from_columns(stacked)
        assert span.contains_vector(vec(t))
        assert span.contains_vector(vec(RationalMatrix.identity(t.rows)))
