from fractions import Fraction

import pytest
from hypothesis import given

from matgen import nilpotent_matrices, square_matrices
from weakcomm.exact_linalg import (RationalMatrix, RationalPoly, inverse,
                                   rank)
from weakcomm.spectra import (EMPTY_SPECTRA, SPECTRUM_VALUED, LocalData,
                              RootSet, degenerate_spectra_report,
                              factor_stabilized_rank, is_semiregular,
                              local_data, parse_rootset, spectra_equal,
                              spectrum)

M = RationalMatrix.from_rows


def frac_rows(rows):
    return M([[Fraction(x) for x in r] for r in rows])


class TestRootSet:
    def test_diagonal_spectrum(self):
        t = frac_rows([[1, 0, 0], [0, 1, 0], [0, 0, 2]])
        s = spectrum(t)
        assert s.poly.coeffs == (Fraction(2), Fraction(-3), Fraction(1))
        assert s.count == 2
        assert s.rational_members() == (Fraction(1), Fraction(2))

    def test_nilpotent_spectrum(self):
        s = spectrum(frac_rows([[0, 1], [0, 0]]))
        assert s.poly.coeffs == (Fraction(0), Fraction(1))
        assert s.contains_zero()

    def test_irrational_pair_counted(self):
        rot = frac_rows([[0, -1], [1, 0]])
        s = spectrum(rot)
        assert s.count == 2
        assert s.rational_members() == ()
        assert not s.contains_zero()

    def test_nonmonic_rejected(self):
        with pytest.raises(ValueError):
            RootSet(RationalPoly((Fraction(0), Fraction(2))))

    def test_repeated_roots_rejected(self):
        # x^2 is not squarefree
        with pytest.raises(ValueError):
            RootSet(RationalPoly((Fraction(0), Fraction(0), Fraction(1))))

    def test_text_round_trip(self):
        s = spectrum(frac_rows([[1, 0], [0, 2]]))
        assert parse_rootset(s.to_text()) == s


class TestSpectraEqual:
    def test_same_matrix(self):
        t = frac_rows([[1, 2], [3, 4]])
        assert spectra_equal(t, t)

    def test_nilpotents_of_different_size(self):
        a = frac_rows([[0, 1], [0, 0]])
        b = RationalMatrix.zeros(3, 3)
        assert spectra_equal(a, b)

    def test_near_miss_pair(self):
        t = frac_rows([[0, 1], [0, 0]])
        q = frac_rows([[0, 0], [1, 0]])
        assert not spectra_equal(t, t + q)

    @given(square_matrices(max_dim=3, bound=2))
    def test_similarity_invariant(self, t):
        n = t.rows
        shear = [[Fraction(1) if i == j else Fraction(0) for j in range(n)]
                 for i in range(n)]
        shear[0][n - 1] += Fraction(3)
        p = M(shear)
        assert spectra_equal(t, p * t * inverse(p))


class TestLocalData:
    def test_jordan_plus_scalar(self):
        t = frac_rows([[0, 1, 0, 0], [0, 0, 1, 0],
                       [0, 0, 0, 0], [0, 0, 0, 5]])
        at_zero = local_data(t, 0)
        assert at_zero == LocalData(multiplicity=3, ascent=3, descent=3)
        at_five = local_data(t, 5)
        assert at_five == LocalData(multiplicity=1, ascent=1, descent=1)
        outside = local_data(t, 7)
        assert outside == LocalData(multiplicity=0, ascent=0, descent=0)

    def test_fractional_point(self):
        t = frac_rows([[Fraction(1, 2), 0], [0, 3]])
        assert local_data(t, Fraction(1, 2)).multiplicity == 1


class TestSemiregular:
    def test_invertible(self):
        assert is_semiregular(frac_rows([[1, 2], [3, 4]]))

    def test_jordan_not(self):
        assert not is_semiregular(frac_rows([[0, 1], [0, 0]]))

    def test_zero_not(self):
        assert not is_semiregular(RationalMatrix.zeros(2, 2))

    @given(square_matrices(max_dim=4))
    def test_equivalent_to_invertibility(self, t):
        assert is_semiregular(t) == (rank(t) == t.rows)


class TestDegenerateReport:
    def test_jordan_plus_scalar(self):
        t = frac_rows([[0, 1, 0, 0], [0, 0, 1, 0],
                       [0, 0, 0, 0], [0, 0, 0, 5]])
        rep = degenerate_spectra_report(t)
        assert rep.restriction_kernel_dims == (1, 1, 1, 0, 0)
        assert rep.restriction_kernel_dims == rep.restriction_cokernel_dims
        assert (rep.essential_ascent, rep.essential_descent,
                rep.essential_degree) == (0, 0, 0)
        assert rep.squarefree_factor_rank == 0
        assert len(rep.empty_spectra) == 20
        assert rep.drazin_bf_identity and rep.browder_essential_identity

    def test_zero_matrix(self):
        rep = degenerate_spectra_report(RationalMatrix.zeros(2, 2))
        assert rep.essential_degree == 0
        assert rep.acc_spectrum_empty

    @given(square_matrices(max_dim=4))
    def test_always_degenerate(self, t):
        rep = degenerate_spectra_report(t)
        assert (rep.essential_ascent, rep.essential_descent,
                rep.essential_degree) == (0, 0, 0)
        assert rep.empty_spectra == EMPTY_SPECTRA
        assert rep.spectrum_valued == SPECTRUM_VALUED
        assert rep.squarefree_factor_rank == 0

    @given(nilpotent_matrices(max_dim=4))
    def test_nilpotent_kernel_dims_decrease(self, t):
        rep = degenerate_spectra_report(t)
        assert rep.restriction_kernel_dims[-1] == 0


class TestFactorRank:
    def test_companion_of_irreducible(self):
        # x^2 - 2 acts invertibly until its own factor kills everything
        c = frac_rows([[0, 2], [1, 0]])
        p = RationalPoly((Fraction(-2), Fraction(0), Fraction(1)))
        assert factor_stabilized_rank(c, p) == 0

    def test_unrelated_factor_stays_full(self):
        c = frac_rows([[1, 0], [0, 1]])
        p = RationalPoly((Fraction(-2), Fraction(1)))
        assert factor_stabilized_rank(c, p) == 2
