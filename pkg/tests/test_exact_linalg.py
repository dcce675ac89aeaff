from fractions import Fraction

import pytest
import sympy
from hypothesis import given

from matgen import matrix_pairs, nilpotent_matrices, singular_matrices, \
    small_polys, square_matrices
from oracles import sympy_charpoly_coeffs, to_sympy
from weakcomm.exact_linalg import (ParseError, RationalMatrix, RationalPoly,
                                   ShapeError, charpoly, column_basis,
                                   format_matrix, hstack, inverse,
                                   is_nilpotent, kernel_basis, parse_matrix,
                                   poly_content_split, poly_divmod, poly_gcd,
                                   poly_squarefree, rank, rational_roots,
                                   root_multiplicity, rref, vstack)

M = RationalMatrix.from_rows


def frac_rows(rows):
    return M([[Fraction(x) for x in r] for r in rows])


class TestParseFormat:
    def test_round_trip_integers(self):
        m = frac_rows([[1, -2], [0, 4]])
        assert parse_matrix(format_matrix(m)) == m

    def test_round_trip_fractions(self):
        m = frac_rows([[Fraction(1, 3), Fraction(-5, 7)],
                       [Fraction(0), Fraction(2)]])
        assert parse_matrix(format_matrix(m)) == m

    def test_missing_header(self):
        with pytest.raises(ParseError):
            parse_matrix("1 2\n")

    def test_wrong_entry_count(self):
        with pytest.raises(ParseError):
            parse_matrix("2 2\n1 2\n3\n")

    def test_bad_token(self):
        with pytest.raises(ParseError):
            parse_matrix("1 1\nx\n")

    @given(square_matrices())
    def test_round_trip_any(self, m):
        assert parse_matrix(format_matrix(m)) == m


class TestRref:
    @given(square_matrices())
    def test_idempotent(self, m):
        reduced, pivots, rk = rref(m)
        again, pivots2, rk2 = rref(reduced)
        assert again == reduced and pivots2 == pivots and rk2 == rk

    @given(square_matrices())
    def test_matches_sympy(self, m):
        reduced, pivots, rk = rref(m)
        sym_reduced, sym_pivots = to_sympy(m).rref()
        assert tuple(sym_pivots) == pivots
        assert rk == len(pivots)
        for i in range(m.rows):
            for j in range(m.cols):
                assert sympy.Rational(reduced.at(i, j)) == sym_reduced[i, j]

    @given(square_matrices())
    def test_rank_nullity(self, m):
        assert rank(m) + kernel_basis(m).cols == m.cols

    @given(square_matrices())
    def test_kernel_annihilated(self, m):
        k = kernel_basis(m)
        assert (m * k).is_zero if k.cols else True


class TestColumnBasis:
    @given(square_matrices())
    def test_canonical_and_spanning(self, m):
        basis = column_basis(m)
        assert basis.cols == rank(m)
        assert column_basis(basis) == basis
        # every original column must lie in the span
        if basis.cols:
            stacked = hstack(basis, m)
            assert rank(stacked) == basis.cols


class TestInverse:
    def test_two_by_two(self):
        m = frac_rows([[1, 2], [3, 4]])
        assert m * inverse(m) == RationalMatrix.identity(2)

    @pytest.mark.parametrize("rows", [
        [[0]],
        [[1, 2], [2, 4]],
        [[0, 1], [0, 0]],
    ])
    def test_singular_rejected(self, rows):
        with pytest.raises(ValueError):
            inverse(frac_rows(rows))

    @given(singular_matrices())
    def test_low_rank_rejected(self, m):
        with pytest.raises(ValueError):
            inverse(m)

    @given(square_matrices(bound=2))
    def test_matches_sympy_when_invertible(self, m):
        if rank(m) < m.rows:
            with pytest.raises(ValueError):
                inverse(m)
            return
        inv = inverse(m)
        sym_inv = to_sympy(m).inv()
        for i in range(m.rows):
            for j in range(m.cols):
                assert sympy.Rational(inv.at(i, j)) == sym_inv[i, j]


class TestCharpoly:
    def test_companion(self):
        # companion of x^3 - 2x + 5
        c = frac_rows([[0, 0, -5], [1, 0, 2], [0, 1, 0]])
        assert charpoly(c).coeffs == (Fraction(5), Fraction(-2),
                                      Fraction(0), Fraction(1))

    @given(square_matrices())
    def test_matches_sympy(self, m):
        assert charpoly(m).coeffs == sympy_charpoly_coeffs(m)

    @given(square_matrices())
    def test_cayley_hamilton(self, m):
        assert charpoly(m).eval_matrix(m).is_zero

    @given(square_matrices(min_dim=2, max_dim=3, bound=2))
    def test_similarity_invariant(self, m):
        n = m.rows
        shear = [[Fraction(1) if i == j else Fraction(0) for j in range(n)]
                 for i in range(n)]
        shear[0][n - 1] = Fraction(2)
        p = M(shear)
        assert charpoly(p * m * inverse(p)).coeffs == charpoly(m).coeffs


class TestPolyArithmetic:
    @given(small_polys(), small_polys())
    def test_divmod_identity(self, p, d):
        if d.is_zero:
            with pytest.raises(ZeroDivisionError):
                poly_divmod(p, d)
            return
        q, r = poly_divmod(p, d)
        assert (q * d + r).coeffs == p.coeffs
        assert r.is_zero or r.degree < d.degree

    @given(small_polys(), small_polys())
    def test_gcd_divides(self, p, q):
        g = poly_gcd(p, q)
        if g.is_zero:
            assert p.is_zero and q.is_zero
            return
        for target in (p, q):
            _, rem = poly_divmod(target, g)
            assert rem.is_zero
        assert g.leading == 1

    @given(small_polys())
    def test_squarefree_has_simple_roots(self, p):
        if p.is_zero:
            return
        sqf = poly_squarefree(p)
        assert poly_gcd(sqf, sqf.derivative()).degree <= 0
        _, rem = poly_divmod(p, sqf)
        assert rem.is_zero

    def test_content_split(self):
        p = RationalPoly((Fraction(2, 3), Fraction(4, 3)))
        content, ints = poly_content_split(p)
        assert content == Fraction(2, 3)
        assert ints == (1, 2)


class TestRoots:
    def test_known_roots(self):
        # (x-1)(x-2)(x+3)
        p = RationalPoly((Fraction(6), Fraction(-7), Fraction(0), Fraction(1)))
        assert rational_roots(p) == (Fraction(-3), Fraction(1), Fraction(2))

    def test_no_rational_roots(self):
        p = RationalPoly((Fraction(1), Fraction(0), Fraction(1)))
        assert rational_roots(p) == ()

    @given(small_polys())
    def test_roots_really_vanish(self, p):
        if p.is_zero:
            return
        for r in rational_roots(p):
            assert p(r) == 0

    @given(small_polys())
    def test_complete_against_sympy(self, p):
        if p.is_zero:
            return
        sym = sympy.Poly([sympy.Rational(c) for c in reversed(p.coeffs)],
                         sympy.Symbol("x"))
        expected = sorted({Fraction(int(r.p), int(r.q))
                           for r in sym.all_roots()
                           if r.is_rational})
        assert list(rational_roots(p)) == expected

    def test_multiplicity(self):
        # x^2 (x-1)
        p = RationalPoly((Fraction(0), Fraction(0), Fraction(-1), Fraction(1)))
        assert root_multiplicity(p, Fraction(0)) == 2
        assert root_multiplicity(p, Fraction(1)) == 1
        assert root_multiplicity(p, Fraction(7)) == 0


class TestPredicatesAndStacking:
    @given(nilpotent_matrices())
    def test_strict_upper_nilpotent(self, m):
        assert is_nilpotent(m)

    def test_identity_not_nilpotent(self):
        assert not is_nilpotent(RationalMatrix.identity(3))

    def test_stack_shapes(self):
        a = frac_rows([[1, 2]])
        b = frac_rows([[3, 4]])
        assert hstack(a, b).cols == 4
        assert vstack(a, b).rows == 2
        with pytest.raises(ShapeError):
            hstack(a, frac_rows([[1], [2]]))

    def test_scalar_multiplication_matches(self):
        a = frac_rows([[1, 2], [3, 4]])
        assert a.scale(Fraction(1, 2)) * a.scale(Fraction(2)) == a * a
