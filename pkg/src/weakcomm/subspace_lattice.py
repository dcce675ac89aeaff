"""Invariant-structure calculus: power ranges and kernels, analytic core,
quasi-nilpotent part, ascent/descent, reducing pairs, restrictions.

Subspaces are stored by a canonical reduced basis (reduced echelon form of
the transposed spanning set, transposed back), so two equal subspaces are
structurally equal objects and equality is a plain tuple comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact_linalg import (
    RationalMatrix,
    ShapeError,
    column_basis,
    hstack,
    kernel_basis,
    rank,
    rref,
)


class ContainmentError(ValueError):
    """quotient_dim called on a non-nested pair of subspaces."""


class NotInvariantError(ValueError):
    """restriction called with a subspace the operator does not preserve."""


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim held by its canonical basis columns."""

    ambient_dim: int
    basis: RationalMatrix

    def __post_init__(self):
        if self.basis.rows != self.ambient_dim:
            raise ShapeError("basis rows must equal the ambient dimension")
        canon = column_basis(self.basis)
        if canon != self.basis:
            raise ValueError("basis is not in canonical reduced form; "
                             "use Subspace.from_columns")

    @classmethod
    def from_columns(cls, m: RationalMatrix) -> "Subspace":
        """Subspace spanned by the columns of m (any spanning set)."""
        return cls(m.rows, column_basis(m))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, RationalMatrix.zeros(ambient_dim, 0))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, RationalMatrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.cols

    def contains_vector(self, v: RationalMatrix) -> bool:
        if v.rows != self.ambient_dim or v.cols != 1:
            raise ShapeError("expected an ambient-dimension column vector")
        if not any(v.entries):
            return True
        return rank(hstack(self.basis, v)) == self.dim

    def contains(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise ShapeError("ambient dimension mismatch")
        if other.dim == 0:
            return True
        return rank(hstack(self.basis, other.basis)) == self.dim

    def to_text(self) -> str:
        from .exact_linalg import format_matrix
        return format_matrix(self.basis)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise ShapeError("ambient dimension mismatch")
    return Subspace.from_columns(hstack(a.basis, b.basis))


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Canonical basis of a cap b.

    x lies in both iff x = A u = B w; solutions (u, w) form the kernel of
    [A | -B], and the A-part of that kernel parametrizes the intersection.
    """
    if a.ambient_dim != b.ambient_dim:
        raise ShapeError("ambient dimension mismatch")
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    paired = hstack(a.basis, -b.basis)
    ker = kernel_basis(paired)  # (dim a + dim b) x k
    ucoords = RationalMatrix(
        a.dim, ker.cols,
        tuple(ker.at(i, j) for i in range(a.dim) for j in range(ker.cols)))
    return Subspace.from_columns(a.basis * ucoords)


def quotient_dim(outer: Subspace, inner: Subspace) -> int:
    """dim(outer / inner); refuses non-nested arguments."""
    if not outer.contains(inner):
        raise ContainmentError("inner subspace is not contained in outer")
    return outer.dim - inner.dim


def nullspace(m: RationalMatrix) -> Subspace:
    """{x : m x = 0} with its canonical basis."""
    return Subspace(m.cols, column_basis(kernel_basis(m)))


def colspace(m: RationalMatrix) -> Subspace:
    """Column space of m with its canonical basis."""
    return Subspace(m.rows, column_basis(m))


@lru_cache(maxsize=256)
def power_chain(t: RationalMatrix) -> tuple:
    """(t^0, t^1, ..., t^(n+1)) for ambient dimension n."""
    if not t.is_square:
        raise ShapeError("power chain needs a square matrix")
    chain = [RationalMatrix.identity(t.rows)]
    for _ in range(t.rows + 1):
        chain.append(chain[-1] * t)
    return tuple(chain)


def hyperrange(t: RationalMatrix) -> Subspace:
    """R(t^infinity) = colspace(t^n), n = ambient dimension.

    The descending range chain stabilizes by exponent n; stabilization is
    verified rather than assumed.
    """
    chain = power_chain(t)
    n = t.rows
    stable = colspace(chain[n])
    assert rank(chain[n]) == rank(chain[n + 1]), "range chain failed to stabilize"
    return stable


def hyperkernel(t: RationalMatrix) -> Subspace:
    """N(t^infinity) = nullspace(t^n), n = ambient dimension; verified stable."""
    chain = power_chain(t)
    n = t.rows
    stable = nullspace(chain[n])
    assert rank(chain[n]) == rank(chain[n + 1]), "kernel chain failed to stabilize"
    return stable


def analytic_core(t: RationalMatrix) -> Subspace:
    """K(t), the analytic core.

    In finite dimension the backward-orbit recursion stabilizes on the range
    of the invertible core, so K(t) = R(t^infinity) exactly; the bounded-norm
    clause of the definition is automatic for the finitely many generalized
    eigenvector chains involved.
    """
    return hyperrange(t)


def quasinilpotent_part(t: RationalMatrix) -> Subspace:
    """H0(t), the quasi-nilpotent part.

    ||t^k x||^(1/k) -> 0 picks out exactly the generalized eigenspace at 0 in
    finite dimension, so H0(t) = N(t^infinity) exactly.
    """
    return hyperkernel(t)


def ascent(t: RationalMatrix) -> int:
    """Least k with N(t^k) = N(t^(k+1)); at most the ambient dimension."""
    chain = power_chain(t)
    prev = nullspace(chain[0])
    for k in range(t.rows + 1):
        nxt = nullspace(chain[k + 1])
        if nxt == prev:
            return k
        prev = nxt
    raise AssertionError("kernel chain failed to stabilize within ambient dim")


def descent(t: RationalMatrix) -> int:
    """Least k with R(t^k) = R(t^(k+1)); equals ascent(t) in finite dimension."""
    chain = power_chain(t)
    prev = colspace(chain[0])
    for k in range(t.rows + 1):
        nxt = colspace(chain[k + 1])
        if nxt == prev:
            return k
        prev = nxt
    raise AssertionError("range chain failed to stabilize within ambient dim")


def is_invariant(t: RationalMatrix, v: Subspace) -> bool:
    """True iff t maps v into v."""
    if t.cols != v.ambient_dim:
        raise ShapeError("operator/subspace dimension mismatch")
    if v.dim == 0:
        return True
    mapped = t * v.basis
    return rank(hstack(v.basis, mapped)) == v.dim


@dataclass(frozen=True)
class RedPair:
    """An (M, N) candidate for Red(t).

    Construction only pins the common ambient dimension; whether the parts
    are complementary and invariant is the job of is_red_pair, so tests can
    build degenerate pairs on purpose.
    """

    m_part: Subspace
    n_part: Subspace

    def __post_init__(self):
        if self.m_part.ambient_dim != self.n_part.ambient_dim:
            raise ShapeError("RedPair parts live in different ambient spaces")

    @property
    def ambient_dim(self) -> int:
        return self.m_part.ambient_dim


def is_direct_sum(p: RedPair) -> bool:
    """True iff m_part + n_part = whole space and the parts meet only in 0."""
    if p.m_part.dim + p.n_part.dim != p.ambient_dim:
        return False
    return rank(hstack(p.m_part.basis, p.n_part.basis)) == p.ambient_dim


def is_red_pair(t: RationalMatrix, p: RedPair) -> bool:
    """(M, N) in Red(t): both parts t-invariant and X = M (+) N."""
    if t.rows != p.ambient_dim:
        raise ShapeError("operator/pair dimension mismatch")
    return (is_direct_sum(p)
            and is_invariant(t, p.m_part)
            and is_invariant(t, p.n_part))


def solve_in_basis(basis: RationalMatrix, image: RationalMatrix):
    """Solve basis * X = image for X, or return None if unsolvable.

    basis must have independent columns; used for coordinates of vectors
    known (or suspected) to lie in its span.
    """
    d = basis.cols
    reduced, _, _ = rref(hstack(basis, image))
    coeffs = RationalMatrix(
        d, image.cols,
        tuple(reduced.at(i, d + j) for i in range(d) for j in range(image.cols)))
    if basis * coeffs != image:
        return None
    return coeffs


def restriction(t: RationalMatrix, v: Subspace) -> RationalMatrix:
    """Matrix of t|_v in v's canonical basis; basis * result = t * basis."""
    if t.rows != v.ambient_dim:
        raise ShapeError("operator/subspace dimension mismatch")
    mapped = t * v.basis
    coeffs = solve_in_basis(v.basis, mapped)
    if coeffs is None:
        raise NotInvariantError("subspace is not invariant under the operator")
    return coeffs


def parse_subspace(text: str) -> Subspace:
    from .exact_linalg import parse_matrix
    return Subspace.from_columns(parse_matrix(text))
