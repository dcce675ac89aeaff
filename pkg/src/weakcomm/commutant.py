"""Membership predicates and constructive solvers for comm(a), comm_l(a),
comm_r(a), comm_w(a), and comm^2(a).

The one-sided sets are defined by
    b in comm_l(a)  iff  ab in comm(a) and ba in comm(b)
    b in comm_r(a)  iff  ab in comm(b) and ba in comm(a)
which unfold to the exact identities
    comm_l:  a^2 b = aba  and  b^2 a = bab
    comm_r:  a b^2 = bab  and  b a^2 = aba
used verbatim below.  Each relation is symmetric in (a, b).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .exact_linalg import RationalMatrix, ShapeError, kernel_basis


@dataclass(frozen=True)
class CommutationProfile:
    """Flags and residual matrices for one ordered pair (a, b).

    Residuals are (ab)a - a(ab), (ba)b - b(ba), (ab)b - b(ab), (ba)a - a(ba);
    the first two vanish iff b in comm_l(a), the last two iff b in comm_r(a).
    """

    in_comm: bool
    in_comm_l: bool
    in_comm_r: bool
    in_comm_w: bool
    residual_aba: RationalMatrix
    residual_bab: RationalMatrix
    residual_abb: RationalMatrix
    residual_baa: RationalMatrix


def profile(a: RationalMatrix, b: RationalMatrix) -> CommutationProfile:
    if not a.is_square or a.rows != b.rows or not b.is_square:
        raise ShapeError("profile needs two square matrices of equal size")
    ab = a * b
    ba = b * a
    r_aba = ab * a - a * ab
    r_bab = ba * b - b * ba
    r_abb = ab * b - b * ab
    r_baa = ba * a - a * ba
    l_flag = r_aba.is_zero and r_bab.is_zero
    r_flag = r_abb.is_zero and r_baa.is_zero
    return CommutationProfile(
        in_comm=(ab == ba),
        in_comm_l=l_flag,
        in_comm_r=r_flag,
        in_comm_w=l_flag and r_flag,
        residual_aba=r_aba,
        residual_bab=r_bab,
        residual_abb=r_abb,
        residual_baa=r_baa,
    )


def in_comm_l(a: RationalMatrix, b: RationalMatrix) -> bool:
    return profile(a, b).in_comm_l


def in_comm_r(a: RationalMatrix, b: RationalMatrix) -> bool:
    return profile(a, b).in_comm_r


def in_comm_w(a: RationalMatrix, b: RationalMatrix) -> bool:
    return profile(a, b).in_comm_w


def vec(m: RationalMatrix) -> RationalMatrix:
    """Row-major flattening as a column vector."""
    return RationalMatrix(m.rows * m.cols, 1, m.entries)


def unvec(v: RationalMatrix, rows: int, cols: int) -> RationalMatrix:
    return RationalMatrix(rows, cols, v.entries)


def matrix_of_linear_map(fn, n: int) -> RationalMatrix:
    """n^2 x n^2 matrix of a linear map on n x n matrix space.

    Column (i*n + j) is vec(fn(E_ij)), matching the row-major vec convention.
    """
    cols = []
    for i in range(n):
        for j in range(n):
            unit = RationalMatrix(
                n, n, tuple(1 if (r, c) == (i, j) else 0
                            for r in range(n) for c in range(n)))
            cols.append(fn(unit).entries)
    n2 = n * n
    return RationalMatrix(
        n2, n2, tuple(cols[j][i] for i in range(n2) for j in range(n2)))


def linear_class_basis(n: int, *maps) -> tuple:
    """Basis (as matrices) of the joint kernel of the given linear maps."""
    from .exact_linalg import vstack
    stacked = vstack(*(matrix_of_linear_map(fn, n) for fn in maps))
    ker = kernel_basis(stacked)
    return tuple(unvec(RationalMatrix(n * n, 1, ker.col(j)), n, n)
                 for j in range(ker.cols))


@lru_cache(maxsize=256)
def comm_basis(a: RationalMatrix) -> tuple:
    """Basis of the commutant {x : ax = xa}; dimension is always >= n."""
    if not a.is_square:
        raise ShapeError("comm_basis needs a square matrix")
    return linear_class_basis(a.rows, lambda x: a * x - x * a)


def in_comm2(a: RationalMatrix, c: RationalMatrix) -> bool:
    """c in comm(comm(a)): c commutes with every comm_basis element."""
    if not a.is_square or a.rows != c.rows or not c.is_square:
        raise ShapeError("in_comm2 needs two square matrices of equal size")
    return all(c * u == u * c for u in comm_basis(a))


@dataclass(frozen=True)
class CommWitness:
    """A sampled member b of a weak commutant set, tagged with ab = ba."""

    matrix: RationalMatrix
    commutes: bool


def _rank_one_seeds(a: RationalMatrix) -> list:
    """Structured non-commuting candidates b = x y^T.

    With x in N(a), y in N((a^2)^T) and y^T x = 0, all eight weak identities
    collapse to 0 = 0 while ba = x (y^T a) can be nonzero; the mirror swaps
    the roles.  These land in comm_w(a), hence in both one-sided sets.
    """
    n = a.rows
    a2 = a * a
    seeds = []
    for xs, ys in ((kernel_basis(a), kernel_basis(a2.transpose())),
                   (kernel_basis(a2), kernel_basis(a.transpose()))):
        for i in range(xs.cols):
            x = RationalMatrix(n, 1, xs.col(i))
            for j in range(ys.cols):
                y = RationalMatrix(n, 1, ys.col(j))
                if sum(p * q for p, q in zip(x.entries, y.entries)) == 0:
                    seeds.append(x * y.transpose())
    return seeds


def _poly_seeds(a: RationalMatrix) -> list:
    ident = RationalMatrix.identity(a.rows)
    a2 = a * a
    return [ident, a, a2, a + ident, a2 + a, a2 - ident]


def _combo_stream(basis, rng, attempts):
    """Deterministic stream of small integer combinations of a basis."""
    for b in basis:
        yield b
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            yield basis[i] + basis[j]
            yield basis[i] - basis[j]
    for _ in range(attempts):
        picks = rng.sample(range(len(basis)), k=min(len(basis), rng.randint(1, 4)))
        out = None
        for idx in picks:
            c = rng.randint(-2, 2)
            if c == 0:
                continue
            term = basis[idx].scale(c)
            out = term if out is None else out + term
        if out is not None:
            yield out


def _sample(a, seed, attempts, layer_maps, quadratic_ok, flag):
    n = a.rows
    rng = random.Random(seed)
    found, seen = [], set()

    def consider(b):
        if b.entries in seen:
            return
        seen.add(b.entries)
        if not quadratic_ok(b):
            return
        prof = profile(a, b)
        assert getattr(prof, flag), "sampler produced a non-member"
        found.append(CommWitness(b, prof.in_comm))

    for b in _poly_seeds(a) + _rank_one_seeds(a):
        consider(b)
    basis = linear_class_basis(n, *layer_maps)
    for b in _combo_stream(list(basis), rng, attempts):
        consider(b)
    return tuple(found)


def sample_comm_l(a: RationalMatrix, seed: int = 0, attempts: int = 60) -> tuple:
    """Members of comm_l(a), each re-verified, tagged with whether ab = ba.

    Linear layer a^2 b = aba is solved exactly; the quadratic layer
    b^2 a = bab is an exact filter over structured seeds, basis elements,
    and seeded small integer combinations.  Deterministic per (a, seed).
    """
    if not a.is_square:
        raise ShapeError("sample_comm_l needs a square matrix")
    a2 = a * a
    return _sample(
        a, seed, attempts,
        layer_maps=(lambda x: a2 * x - a * x * a,),
        quadratic_ok=lambda b: b * b * a == b * a * b,
        flag="in_comm_l",
    )


def sample_comm_r(a: RationalMatrix, seed: int = 0, attempts: int = 60) -> tuple:
    """Members of comm_r(a); mirror of sample_comm_l."""
    if not a.is_square:
        raise ShapeError("sample_comm_r needs a square matrix")
    a2 = a * a
    return _sample(
        a, seed, attempts,
        layer_maps=(lambda x: x * a2 - a * x * a,),
        quadratic_ok=lambda b: a * b * b == b * a * b,
        flag="in_comm_r",
    )


def sample_comm_w(a: RationalMatrix, seed: int = 0, attempts: int = 60) -> tuple:
    """Members of comm_w(a): both linear layers solved, both quadratics filtered."""
    if not a.is_square:
        raise ShapeError("sample_comm_w needs a square matrix")
    a2 = a * a
    return _sample(
        a, seed, attempts,
        layer_maps=(lambda x: a2 * x - a * x * a,
                    lambda x: x * a2 - a * x * a),
        quadratic_ok=lambda b: (b * b * a == b * a * b
                                and a * b * b == b * a * b),
        flag="in_comm_w",
    )


def sample_linear_class(dim: int, maps, seed: int = 0,
                        attempts: int = 40) -> tuple:
    """Deterministic members of the joint kernel of the given linear maps.

    Unlike the comm_* samplers there is no quadratic filter; this serves the
    purely linear hypothesis classes such as {x : xa in comm(a)}.
    """
    basis = linear_class_basis(dim, *maps)
    rng = random.Random(seed)
    out, seen = [], set()
    for b in _combo_stream(list(basis), rng, attempts):
        if b.entries not in seen:
            seen.add(b.entries)
            out.append(b)
    return tuple(out)
