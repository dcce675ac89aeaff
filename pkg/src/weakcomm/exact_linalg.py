"""Exact dense linear algebra over the rationals.

Everything in this module is exact: entries are `fractions.Fraction`,
pivots are chosen symbolically (first nonzero), and no floating point is
ever produced, so no rounding ever decides a rank, a kernel, or a
spectrum.  Matrices and polynomials are immutable and hashable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt


class ShapeError(ValueError):
    """Incompatible matrix shapes or a non-square argument."""


class ParseError(ValueError):
    """Malformed matrix text."""


def _to_fraction(x) -> Fraction:
    if type(x) is Fraction:
        return x
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"rational entry expected, got {type(x).__name__}")


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable rows x cols matrix with exact rational entries, row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeError("negative matrix dimensions")
        ents = tuple(_to_fraction(x) for x in self.entries)
        if len(ents) != self.rows * self.cols:
            raise ShapeError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(ents)}"
            )
        object.__setattr__(self, "entries", ents)

    @classmethod
    def from_rows(cls, rows) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise ShapeError("ragged rows")
        return cls(n, m, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls(n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols]

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_integer(self) -> bool:
        return all(e.denominator == 1 for e in self.entries)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols, self.rows,
            tuple(self.entries[i * self.cols + j]
                  for j in range(self.cols) for i in range(self.rows)))

    def trace(self) -> Fraction:
        if not self.is_square:
            raise ShapeError("trace needs a square matrix")
        return sum(self.at(i, i) for i in range(self.rows))

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("addition shape mismatch")
        return RationalMatrix(
            self.rows, self.cols,
            tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("subtraction shape mismatch")
        return RationalMatrix(
            self.rows, self.cols,
            tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> "RationalMatrix":
        c = _to_fraction(c)
        return RationalMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        n, k, m = self.rows, self.cols, other.cols
        # integer fast path: products of integer matrices dominate the
        # campaign workload and plain int arithmetic skips per-op gcd calls
        if self.is_integer() and other.is_integer():
            a = [e.numerator for e in self.entries]
            b = [e.numerator for e in other.entries]
            bcols = [b[j::m] for j in range(m)]
            out = []
            for i in range(n):
                ar = a[i * k:(i + 1) * k]
                for bc in bcols:
                    out.append(Fraction(sum(x * y for x, y in zip(ar, bc))))
            return RationalMatrix(n, m, tuple(out))
        bcols = [other.entries[j::m] for j in range(m)]
        out = []
        for i in range(n):
            ar = self.entries[i * k:(i + 1) * k]
            for bc in bcols:
                out.append(sum((x * y for x, y in zip(ar, bc)), Fraction(0)))
        return RationalMatrix(n, m, tuple(out))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "RationalMatrix":
        if not self.is_square:
            raise ShapeError("power needs a square matrix")
        if k < 0:
            raise ValueError("negative power; use inverse() explicitly")
        acc = RationalMatrix.identity(self.rows)
        for _ in range(k):
            acc = acc * self
        return acc


def hstack(*ms: RationalMatrix) -> RationalMatrix:
    """Concatenate matrices left-to-right (equal row counts)."""
    rows = ms[0].rows
    if any(m.rows != rows for m in ms):
        raise ShapeError("hstack row mismatch")
    out = []
    for i in range(rows):
        for m in ms:
            out.extend(m.row(i))
    return RationalMatrix(rows, sum(m.cols for m in ms), tuple(out))


def vstack(*ms: RationalMatrix) -> RationalMatrix:
    """Concatenate matrices top-to-bottom (equal column counts)."""
    cols = ms[0].cols
    if any(m.cols != cols for m in ms):
        raise ShapeError("vstack column mismatch")
    out = []
    for m in ms:
        out.extend(m.entries)
    return RationalMatrix(sum(m.rows for m in ms), cols, tuple(out))


def rref(m: RationalMatrix):
    """Reduced row-echelon form.

    Returns (reduced, pivot_columns, rank).  The reduced form is the unique
    canonical representative of the row space, so two matrices with equal
    row spaces produce identical outputs.
    """
    work = m.to_rows()
    nrows, ncols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if work[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        pv = work[r][c]
        if pv != 1:
            inv = Fraction(1) / pv
            work[r] = [x * inv for x in work[r]]
        prow = work[r]
        for i in range(nrows):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    flat = tuple(x for row in work for x in row)
    return RationalMatrix(nrows, ncols, flat), tuple(pivots), len(pivots)


def rank(m: RationalMatrix) -> int:
    return rref(m)[2]


def kernel_basis(m: RationalMatrix) -> RationalMatrix:
    """Canonical basis of {x : m x = 0} as the columns of a cols x k matrix.

    Built from the reduced echelon form by back-substituting one free
    column at a time, so the basis is deterministic.
    """
    reduced, pivots, rk = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    cols = []
    for fc in free:
        v = [Fraction(0)] * m.cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -reduced.at(r, fc)
        cols.append(v)
    flat = tuple(cols[j][i] for i in range(m.cols) for j in range(len(cols)))
    return RationalMatrix(m.cols, len(cols), flat)


def column_basis(m: RationalMatrix) -> RationalMatrix:
    """Canonical basis of the column space (columns of a rows x rank matrix).

    The column space equals the row space of the transpose; reducing that
    row space gives the unique canonical spanning set.
    """
    reduced, _, rk = rref(m.transpose())
    flat = tuple(reduced.at(j, i) for i in range(m.rows) for j in range(rk))
    return RationalMatrix(m.rows, rk, flat)


def inverse(m: RationalMatrix) -> RationalMatrix:
    """Exact inverse via elimination on [m | I]; raises on singular input."""
    if not m.is_square:
        raise ShapeError("inverse needs a square matrix")
    n = m.rows
    reduced, pivots, _ = rref(hstack(m, RationalMatrix.identity(n)))
    if pivots[:n] != tuple(range(n)):
        raise ValueError("matrix is singular")
    flat = tuple(reduced.at(i, n + j) for i in range(n) for j in range(n))
    return RationalMatrix(n, n, flat)


def is_nilpotent(m: RationalMatrix) -> bool:
    if not m.is_square:
        raise ShapeError("nilpotency needs a square matrix")
    return (m ** m.rows).is_zero


@dataclass(frozen=True)
class RationalPoly:
    """Univariate polynomial over the rationals, coefficients lowest-degree
    first, trailing zeros stripped.  The zero polynomial has no coefficients.
    """

    coeffs: tuple

    def __post_init__(self):
        cs = [_to_fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        # zero polynomial reports degree -1
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def monic(self) -> "RationalPoly":
        if self.is_zero:
            raise ValueError("cannot normalize the zero polynomial")
        lead = self.leading
        if lead == 1:
            return self
        return RationalPoly(tuple(c / lead for c in self.coeffs))

    def __call__(self, x) -> Fraction:
        x = _to_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_matrix(self, m: RationalMatrix) -> RationalMatrix:
        if not m.is_square:
            raise ShapeError("polynomial evaluation needs a square matrix")
        acc = RationalMatrix.zeros(m.rows, m.rows)
        ident = RationalMatrix.identity(m.rows)
        for c in reversed(self.coeffs):
            acc = acc * m + ident.scale(c)
        return acc

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPoly(tuple(out))

    def __neg__(self) -> "RationalPoly":
        return RationalPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "RationalPoly") -> "RationalPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, RationalPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return RationalPoly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(tuple(out))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def derivative(self) -> "RationalPoly":
        return RationalPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))


def poly_divmod(p: RationalPoly, d: RationalPoly):
    """Euclidean division over the rationals: p = q*d + r with deg r < deg d."""
    if d.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p.coeffs)
    dc = d.coeffs
    dd = d.degree
    lead = d.leading
    quo = [Fraction(0)] * max(len(rem) - dd, 0)
    for i in range(len(rem) - 1, dd - 1, -1):
        if rem[i]:
            f = rem[i] / lead
            quo[i - dd] = f
            for j, c in enumerate(dc):
                rem[i - dd + j] -= f * c
    return RationalPoly(tuple(quo)), RationalPoly(tuple(rem))


def poly_gcd(p: RationalPoly, q: RationalPoly) -> RationalPoly:
    """Monic gcd by the Euclidean algorithm (gcd with 0 is the other argument)."""
    a, b = p, q
    while not b.is_zero:
        a, b = b, poly_divmod(a, b)[1]
    if a.is_zero:
        return a
    return a.monic()


def charpoly(m: RationalMatrix) -> RationalPoly:
    """Monic characteristic polynomial det(xI - m) by Faddeev-LeVerrier.

    The recurrence only divides traces by 1..n, which is exact over the
    rationals; no elimination and no pivoting are involved.
    """
    if not m.is_square:
        raise ShapeError("charpoly needs a square matrix")
    n = m.rows
    ident = RationalMatrix.identity(n)
    aux = ident
    cs = [Fraction(1)]  # coefficient of x^n
    for k in range(1, n + 1):
        am = m * aux
        ck = -am.trace() / k
        cs.append(ck)
        aux = am + ident.scale(ck)
    return RationalPoly(tuple(reversed(cs)))


def poly_squarefree(p: RationalPoly) -> RationalPoly:
    """Monic squarefree part p / gcd(p, p'): same roots, every root simple."""
    if p.is_zero:
        raise ValueError("zero polynomial has no squarefree part")
    if p.degree == 0:
        return RationalPoly((Fraction(1),))
    g = poly_gcd(p, p.derivative())
    q, r = poly_divmod(p, g)
    assert r.is_zero
    return q.monic()


def poly_content_split(p: RationalPoly):
    """Write p = content * primitive where primitive has integer coefficients
    with gcd 1 and positive leading coefficient.  Returns (content, int tuple).
    """
    if p.is_zero:
        return Fraction(0), ()
    denom_lcm = 1
    for c in p.coeffs:
        denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
    ints = [c.numerator * (denom_lcm // c.denominator) for c in p.coeffs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if ints[-1] < 0:
        g = -g
    return Fraction(g, denom_lcm), tuple(v // g for v in ints)


def _positive_divisors(n: int) -> list:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(p: RationalPoly) -> tuple:
    """All rational roots of p, ascending, each verified by exact evaluation.

    Candidates come from divisor enumeration on the primitive integer form
    (numerators divide the constant term, denominators the leading one).
    """
    if p.is_zero:
        raise ValueError("zero polynomial has every rational as a root")
    coeffs = list(p.coeffs)
    # strip the root at 0 first so the constant term is nonzero
    shift = 0
    while coeffs[0] == 0:
        coeffs.pop(0)
        shift += 1
    roots = []
    if shift:
        roots.append(Fraction(0))
    deflated = RationalPoly(tuple(coeffs))
    if deflated.degree >= 1:
        _, ints = poly_content_split(deflated)
        const, lead = ints[0], ints[-1]
        seen = set()
        for num in _positive_divisors(const):
            for den in _positive_divisors(lead):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if cand not in seen:
                        seen.add(cand)
                        if deflated(cand) == 0:
                            roots.append(cand)
    return tuple(sorted(roots))


def root_multiplicity(p: RationalPoly, root) -> int:
    """Exact multiplicity of a rational root (0 if not a root)."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    root = _to_fraction(root)
    factor = RationalPoly((-root, Fraction(1)))
    mult = 0
    cur = p
    while not cur.is_zero and cur(root) == 0:
        cur, rem = poly_divmod(cur, factor)
        assert rem.is_zero
        mult += 1
    return mult


def _parse_entry(token: str) -> Fraction:
    if "/" in token:
        parts = token.split("/")
        if len(parts) != 2:
            raise ParseError(f"bad entry {token!r}")
        try:
            num, den = int(parts[0]), int(parts[1])
        except ValueError as e:
            raise ParseError(f"bad entry {token!r}") from e
        if den == 0:
            raise ParseError(f"zero denominator in {token!r}")
        return Fraction(num, den)
    try:
        return Fraction(int(token))
    except ValueError as e:
        raise ParseError(f"bad entry {token!r}") from e


def parse_matrix(text: str) -> RationalMatrix:
    """Parse the text format: first line ROWS COLS, then row-major entries.

    Entries are integers or p/q; unreduced input and negative denominators
    are normalized, a zero denominator is rejected.
    """
    tokens = text.split()
    if len(tokens) < 2:
        raise ParseError("missing ROWS COLS header")
    try:
        nrows, ncols = int(tokens[0]), int(tokens[1])
    except ValueError as e:
        raise ParseError("bad ROWS COLS header") from e
    if nrows < 0 or ncols < 0:
        raise ParseError("negative dimensions")
    body = tokens[2:]
    if len(body) != nrows * ncols:
        raise ParseError(
            f"expected {nrows * ncols} entries, got {len(body)}")
    return RationalMatrix(nrows, ncols, tuple(_parse_entry(t) for t in body))


def format_matrix(m: RationalMatrix) -> str:
    """Serialize in the text format; str(Fraction) emits reduced p/q, q > 0."""
    lines = [f"{m.rows} {m.cols}"]
    for i in range(m.rows):
        if m.cols:
            lines.append(" ".join(str(x) for x in m.row(i)))
    return "\n".join(lines) + "\n"
