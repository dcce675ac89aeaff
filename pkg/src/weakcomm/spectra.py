"""Exact spectral data for rational matrices.

Spectra are carried as monic squarefree polynomials, never root lists, so
irrational and complex eigenvalues participate in equality checks without
being computed.  The generalized spectra of operator theory (Fredholm, Weyl,
Browder, B-Fredholm, Drazin families) all collapse in finite dimension;
degenerate_spectra_report computes the collapse witnesses instead of assuming
them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact_linalg import (RationalMatrix, RationalPoly, ShapeError, charpoly,
                           kernel_basis, poly_content_split, poly_gcd,
                           poly_squarefree, rank, rational_roots)
from .subspace_lattice import (ascent, colspace, descent, hyperkernel, hyperrange,
                        nullspace, power_chain, restriction)

EMPTY_SPECTRA = (
    "sigma_e", "sigma_uf", "sigma_lf",
    "sigma_w", "sigma_uw", "sigma_lw",
    "sigma_b", "sigma_ub", "sigma_lb",
    "sigma_bf", "sigma_ubf", "sigma_lbf",
    "sigma_bw", "sigma_ubw", "sigma_lbw",
    "sigma_ld", "sigma_rd", "sigma_d",
    "sigma_gd", "sigma_gzd",
)

# Semi-regular means N(T) inside R(T^inf); the restriction of T to its
# analytic core is onto, hence bijective in finite dimension, so N(T) meets
# the core only in 0 and semi-regular collapses to invertible.  The
# semi-regular spectrum therefore equals the spectrum, like the
# approximative and surjectivity spectra.
SPECTRUM_VALUED = ("sigma_a", "sigma_s", "sigma_se")


@dataclass(frozen=True)
class RootSet:
    """A set of algebraic numbers, encoded as a monic squarefree polynomial."""

    poly: RationalPoly

    def __post_init__(self):
        if self.poly.is_zero or self.poly.leading != 1:
            raise ValueError("RootSet polynomial must be monic")
        if poly_gcd(self.poly, self.poly.derivative()).degree > 0:
            raise ValueError("RootSet polynomial must be squarefree")

    @property
    def count(self) -> int:
        """Number of distinct roots over the algebraic closure."""
        return self.poly.degree

    def rational_members(self) -> tuple:
        return rational_roots(self.poly)

    def contains_zero(self) -> bool:
        return self.poly(Fraction(0)) == 0

    def to_text(self) -> str:
        content, primitive = poly_content_split(self.poly)
        coeffs = " ".join(str(v) for v in primitive)
        return "content {}\ncoeffs {}\n".format(content, coeffs)


def parse_rootset(text: str) -> RootSet:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 2 or not lines[0].startswith("content ") \
            or not lines[1].startswith("coeffs "):
        raise ValueError("malformed RootSet text")
    content = Fraction(lines[0].split()[1])
    ints = tuple(int(v) for v in lines[1].split()[1:])
    return RootSet(RationalPoly(tuple(content * v for v in ints)))


def spectrum(t: RationalMatrix) -> RootSet:
    """Squarefree part of the characteristic polynomial, as a RootSet."""
    if not t.is_square:
        raise ShapeError("spectrum needs a square matrix")
    return RootSet(poly_squarefree(charpoly(t)))


def spectra_equal(s: RationalMatrix, t: RationalMatrix) -> bool:
    """Set equality of spectra; ambient sizes may differ."""
    return spectrum(s) == spectrum(t)


@dataclass(frozen=True)
class LocalData:
    multiplicity: int
    ascent: int
    descent: int


def local_data(t: RationalMatrix, lam) -> LocalData:
    """Algebraic multiplicity, ascent, and descent of t - lam at a rational lam."""
    if not t.is_square:
        raise ShapeError("local_data needs a square matrix")
    shifted = t - RationalMatrix.identity(t.rows).scale(Fraction(lam))
    return LocalData(multiplicity=hyperkernel(shifted).dim,
                     ascent=ascent(shifted),
                     descent=descent(shifted))


def is_semiregular(t: RationalMatrix) -> bool:
    """N(t) inside R(t^inf); ranges are automatically closed here."""
    if not t.is_square:
        raise ShapeError("is_semiregular needs a square matrix")
    return hyperrange(t).contains(nullspace(t))


def factor_stabilized_rank(t: RationalMatrix, factor: RationalPoly) -> int:
    """Stabilized rank of factor(t): rank of factor(t)^k once it stops falling.

    This is the one probe of non-rational eigenvalue structure: a squarefree
    factor of the characteristic polynomial stabilizes at rank 0, witnessing
    finite ascent at every root at once without computing any root.
    """
    m = factor.eval_matrix(t)
    powers = power_chain(m)
    k = 0
    while rank(powers[k]) != rank(powers[k + 1]):
        k += 1
    return rank(powers[k])


@dataclass(frozen=True)
class DegenerateSpectraReport:
    """Finite-dimensional collapse of the generalized spectra, with witnesses.

    restriction_kernel_dims[n] is alpha of t restricted to R(t^n); the
    cokernel entry is the codimension of its range inside R(t^n).  Every
    entry is a finite integer by construction, which is exactly why the
    essential ascent, essential descent, and essential degree are all 0 and
    the twenty Fredholm-to-Drazin type spectra are empty.
    """

    dim: int
    restriction_kernel_dims: tuple
    restriction_cokernel_dims: tuple
    essential_ascent: int
    essential_descent: int
    essential_degree: int
    squarefree_factor_rank: int
    empty_spectra: tuple
    spectrum_valued: tuple
    acc_spectrum_empty: bool
    drazin_bf_identity: bool
    browder_essential_identity: bool


def degenerate_spectra_report(t: RationalMatrix) -> DegenerateSpectraReport:
    if not t.is_square:
        raise ShapeError("degenerate_spectra_report needs a square matrix")
    n = t.rows
    chain = power_chain(t)
    kernel_dims = []
    cokernel_dims = []
    for k in range(n + 1):
        sub = colspace(chain[k])
        restricted = restriction(t, sub)
        alpha = kernel_basis(restricted).cols
        beta = rank(chain[k]) - rank(chain[k + 1])
        if alpha != beta:
            raise AssertionError("restriction index is nonzero")
        kernel_dims.append(alpha)
        cokernel_dims.append(beta)
    # alpha(T_[0]) is already finite, so the three essential quantities
    # vanish; the loop above is their witness, not their definition.
    p_e = q_e = m_t = 0
    sqf_rank = factor_stabilized_rank(t, poly_squarefree(charpoly(t)))
    if sqf_rank != 0:
        raise AssertionError("squarefree factor failed to stabilize at rank 0")
    if ascent(t) != descent(t) or ascent(t) > n:
        raise AssertionError("ascent/descent escaped the ambient bound")
    # sigma(t) is a finite set, so acc sigma(t) and acc(acc sigma(t)) are
    # empty by definition rather than by computation.
    acc_empty = True
    empties = set(EMPTY_SPECTRA)
    drazin_bf = ("sigma_d" in empties) == ("sigma_bf" in empties and acc_empty)
    browder_e = ("sigma_b" in empties) == ("sigma_e" in empties and acc_empty)
    if not (drazin_bf and browder_e):
        raise AssertionError("degenerate spectral identities failed")
    return DegenerateSpectraReport(
        dim=n,
        restriction_kernel_dims=tuple(kernel_dims),
        restriction_cokernel_dims=tuple(cokernel_dims),
        essential_ascent=p_e,
        essential_descent=q_e,
        essential_degree=m_t,
        squarefree_factor_rank=sqf_rank,
        empty_spectra=EMPTY_SPECTRA,
        spectrum_valued=SPECTRUM_VALUED,
        acc_spectrum_empty=acc_empty,
        drazin_bf_identity=drazin_bf,
        browder_essential_identity=browder_e,
    )
