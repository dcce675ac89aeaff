"""Drazin and pseudo inverses with their reducing-pair geometry.

The Drazin inverse is assembled from the core-nilpotent splitting
(R(a^k), N(a^k)) at the index k, acting as (a|_M)^{-1} on the core and 0 on
the nilpotent part.  Pseudo inverses are the wider class c in comm^2(a) with
c = c^2 a; phi_map produces one from any reducing pair whose restriction is
invertible, and pair_of_pseudo_inverse inverts that construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import random

from .exact_linalg import RationalMatrix, ShapeError, hstack, inverse, rank
from .subspace_lattice import (RedPair, Subspace, ascent, colspace, is_direct_sum,
                        is_invariant, is_red_pair, nullspace, power_chain,
                        restriction)
from .commutant import comm_basis, in_comm2, linear_class_basis


class NotReducingError(ValueError):
    pass


class SingularRestrictionError(ValueError):
    pass


@dataclass(frozen=True)
class DrazinResult:
    inverse: RationalMatrix
    index: int
    core_range: Subspace
    core_kernel: Subspace

    @property
    def red_pair(self) -> RedPair:
        return RedPair(self.core_range, self.core_kernel)


def drazin_index(a: RationalMatrix) -> int:
    """Smallest k with rank(a^k) = rank(a^{k+1}); cross-checked against ascent."""
    if not a.is_square:
        raise ShapeError("drazin_index needs a square matrix")
    chain = power_chain(a)
    k = 0
    while rank(chain[k]) != rank(chain[k + 1]):
        k += 1
    assert k == ascent(a), "rank stabilization disagrees with ascent"
    return k


def _block_diag(top: RationalMatrix, zero_dim: int) -> RationalMatrix:
    d = top.rows
    n = d + zero_dim
    zero = Fraction(0)
    return RationalMatrix(
        n, n, tuple(top.at(i, j) if i < d and j < d else zero
                    for i in range(n) for j in range(n)))


def _assemble(t: RationalMatrix, pair: RedPair) -> RationalMatrix:
    """(t|_M)^{-1} on M, 0 on N, in standard coordinates."""
    r = restriction(t, pair.m_part)
    try:
        r_inv = inverse(r)
    except ValueError:
        raise SingularRestrictionError(
            "restriction to the first summand is singular") from None
    basis_change = hstack(pair.m_part.basis, pair.n_part.basis)
    block = _block_diag(r_inv, pair.n_part.dim)
    return basis_change * block * inverse(basis_change)


def drazin(a: RationalMatrix) -> DrazinResult:
    if not a.is_square:
        raise ShapeError("drazin needs a square matrix")
    k = drazin_index(a)
    power = power_chain(a)[k]
    core_range = colspace(power)
    core_kernel = nullspace(power)
    c = _assemble(a, RedPair(core_range, core_kernel))
    if a * c != c * a or c * a * c != c or power * a * c != power:
        raise AssertionError("constructed Drazin inverse fails an axiom")
    return DrazinResult(inverse=c, index=k,
                        core_range=core_range, core_kernel=core_kernel)


def is_pseudo_inverse(a: RationalMatrix, c: RationalMatrix) -> bool:
    """c = c^2 a with c in comm^2(a).  Not unique: c = 0 always qualifies."""
    if not a.is_square or a.rows != c.rows or not c.is_square:
        raise ShapeError("is_pseudo_inverse needs equal square sizes")
    return c == c * c * a and in_comm2(a, c)


def phi_map(t: RationalMatrix, p: RedPair) -> RationalMatrix:
    """(t|_M)^{-1} directsum 0_N for a reducing pair with invertible restriction."""
    if not t.is_square or t.rows != p.ambient_dim:
        raise ShapeError("phi_map needs a square matrix matching the pair")
    if not is_red_pair(t, p):
        raise NotReducingError("pair does not reduce the matrix")
    return _assemble(t, p)


def pair_of_pseudo_inverse(t: RationalMatrix, c: RationalMatrix) -> RedPair:
    """The reducing pair (R(tc), N(tc)) recovered from a pseudo inverse.

    tc is idempotent (c = c^2 t and tc = ct give (tc)^2 = t(ctc) = tc), so
    range and kernel are complementary; phi_map on this pair returns c.
    """
    if not is_pseudo_inverse(t, c):
        raise ValueError("pair_of_pseudo_inverse needs a pseudo inverse of t")
    product = t * c
    return RedPair(colspace(product), nullspace(product))


def product_commuting_basis(t: RationalMatrix) -> tuple:
    """Basis of {u : t in comm(tu) and t in comm(ut)}.

    Both conditions read t^2 u = tut = u t^2, so the set is a linear subspace
    containing comm(t); a basis check over it is complete.
    """
    if not t.is_square:
        raise ShapeError("product_commuting_basis needs a square matrix")
    t2 = t * t
    return linear_class_basis(t.rows,
                              lambda x: t2 * x - t * x * t,
                              lambda x: t * x * t - x * t2)


def _reduces(u: RationalMatrix, p: RedPair) -> bool:
    return is_invariant(u, p.m_part) and is_invariant(u, p.n_part)


def _restriction_invertible(t: RationalMatrix, p: RedPair) -> bool:
    if not is_direct_sum(p) or not _reduces(t, p):
        return False
    return rank(restriction(t, p.m_part)) == p.m_part.dim


def is_ired_pair(t: RationalMatrix, p: RedPair) -> bool:
    """Reducing pair with invertible restriction that reduces all of comm(t).

    comm(t) is a linear space, so checking its basis is a complete check.
    """
    if not t.is_square or t.rows != p.ambient_dim:
        raise ShapeError("is_ired_pair needs a square matrix matching the pair")
    if not _restriction_invertible(t, p):
        return False
    return all(_reduces(u, p) for u in comm_basis(t))


def is_ired_pair_weak(t: RationalMatrix, p: RedPair, seed: int = 0,
                      attempts: int = 20) -> bool:
    """The same set characterized through {u : t^2 u = tut = u t^2}.

    That class is linear, so the basis check is complete; sampled integer
    combinations are verified on top of it as a belt-and-braces probe of the
    same quantifier.  Agreement with is_ired_pair on every pair is the
    content of the corollary this predicate exists to test.
    """
    if not t.is_square or t.rows != p.ambient_dim:
        raise ShapeError("is_ired_pair_weak needs a square matrix matching the pair")
    if not _restriction_invertible(t, p):
        return False
    basis = product_commuting_basis(t)
    if not all(_reduces(u, p) for u in basis):
        return False
    t2 = t * t
    rng = random.Random(seed)
    for _ in range(attempts):
        u = RationalMatrix.zeros(t.rows, t.rows)
        for b in basis:
            coeff = rng.randint(-2, 2)
            if coeff:
                u = u + b.scale(coeff)
        assert t2 * u == t * u * t == u * t2, "combination left the class"
        if not _reduces(u, p):
            return False
    return True
