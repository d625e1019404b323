"""Exact integer and rational linear algebra.

Vectors are tuples and matrices are tuples of row tuples.  Integer
routines (gcd normalisation, Hermite and Smith normal forms) stay in
``int`` arithmetic with unimodular transforms tracked explicitly;
everything else runs on ``fractions.Fraction``.  Nothing here ever
touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotFullRank, ZeroVector

IntVec = tuple[int, ...]
RatVec = tuple[Fraction, ...]


# ---------------------------------------------------------------------------
# vectors


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def vec_add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))

def vec_sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v: Sequence) -> tuple:
    return tuple(c * x for x in v)


def vec_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = math.gcd(g, abs(x))
    return g


def primitive(v: Sequence[int]) -> IntVec:
    """Divide an integer vector by the gcd of its coordinates.

    The result points in the same direction and has coordinate gcd 1.
    """
    g = vec_gcd(v)
    if g == 0:
        raise ZeroVector("the zero vector has no primitive generator")
    return tuple(int(x) // g for x in v)


def primitive_direction(v: Sequence) -> IntVec:
    """Primitive integer vector spanning the same ray as a rational vector."""
    fracs = [Fraction(x) for x in v]
    den = math.lcm(*[f.denominator for f in fracs]) if fracs else 1
    return primitive(tuple(int(f * den) for f in fracs))


# ---------------------------------------------------------------------------
# matrices


def identity(n: int) -> tuple[IntVec, ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(a) -> tuple:
    return tuple(zip(*a)) if a else ()


def mat_vec(a, x) -> tuple:
    return tuple(dot(row, x) for row in a)


def mat_mul(a, b) -> tuple:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def rank(a) -> int:
    """Rank over the rationals, by Gaussian elimination."""
    rows = [[Fraction(x) for x in row] for row in a]
    if not rows:
        return 0
    n = len(rows[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def det(a) -> Fraction:
    rows = [[Fraction(x) for x in row] for row in a]
    n = len(rows)
    sign = 1
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        result *= rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[c][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return sign * result


def mat_inverse(a) -> tuple[RatVec, ...]:
    """Exact inverse of a square nonsingular matrix."""
    n = len(a)
    rows = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(a)]
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            raise NotFullRank("matrix is singular")
        rows[c], rows[piv] = rows[piv], rows[c]
        inv_p = 1 / rows[c][c]
        rows[c] = [x * inv_p for x in rows[c]]
        for i in range(n):
            if i != c and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return tuple(tuple(row[n:]) for row in rows)


# ---------------------------------------------------------------------------
# linear systems


class _Inconsistent:
    __slots__ = ()

    def __repr__(self):
        return "Inconsistent"


class _Underdetermined:
    __slots__ = ()

    def __repr__(self):
        return "Underdetermined"


INCONSISTENT = _Inconsistent()
UNDERDETERMINED = _Underdetermined()


def solve_rational(a, b):
    """Solve the linear system row_i . x = b_i exactly.

    Returns the unique solution as a tuple of Fractions, or the
    INCONSISTENT / UNDERDETERMINED sentinel.  Inconsistency wins over
    underdetermination: a system with no solutions is reported as
    inconsistent even when its coefficient rank is deficient.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    aug = [[Fraction(x) for x in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    pivot_cols = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv_p = 1 / aug[r][c]
        aug[r] = [x * inv_p for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivot_cols.append(c)
        r += 1
    for i in range(r, m):
        if aug[i][n] != 0:
            return INCONSISTENT
    if r < n:
        return UNDERDETERMINED
    x = [Fraction(0)] * n
    for i, c in enumerate(pivot_cols):
        x[c] = aug[i][n]
    return tuple(x)


# ---------------------------------------------------------------------------
# Hermite and Smith normal forms


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hnf(a) -> tuple[tuple[IntVec, ...], tuple[IntVec, ...]]:
    """Row Hermite normal form.

    Returns (H, U) with H = U . a, U unimodular.  Convention: row style,
    pivots positive, entries above a pivot reduced into [0, pivot).
    """
    m = len(a)
    n = len(a[0]) if m else 0
    h = [list(map(int, row)) for row in a]
    u = [list(row) for row in identity(m)]
    r = 0
    for j in range(n):
        piv = next((i for i in range(r, m) if h[i][j] != 0), None)
        if piv is None:
            continue
        h[r], h[piv] = h[piv], h[r]
        u[r], u[piv] = u[piv], u[r]
        for i in range(r + 1, m):
            if h[i][j] == 0:
                continue
            g, x, y = xgcd(h[r][j], h[i][j])
            p, q = h[r][j] // g, h[i][j] // g
            h[r], h[i] = (
                [x * rr + y * ri for rr, ri in zip(h[r], h[i])],
                [-q * rr + p * ri for rr, ri in zip(h[r], h[i])],
            )
            u[r], u[i] = (
                [x * rr + y * ri for rr, ri in zip(u[r], u[i])],
                [-q * rr + p * ri for rr, ri in zip(u[r], u[i])],
            )
        if h[r][j] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][j] // h[r][j]
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return tuple(map(tuple, h)), tuple(map(tuple, u))


@dataclass(frozen=True)
class SNFResult:
    """Smith decomposition S = U . A . V with U, V unimodular.

    S is diagonal with nonnegative entries d1 | d2 | ... followed by
    zeros.  ``invariant_factors`` strips the trailing zeros; the rank is
    their count.
    """

    S: tuple[IntVec, ...]
    U: tuple[IntVec, ...]
    V: tuple[IntVec, ...]

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        k = min(len(self.S), len(self.S[0]) if self.S else 0)
        return tuple(self.S[i][i] for i in range(k) if self.S[i][i] != 0)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def _snf_clear_at(s, u, v, k):
    """Clear row k and column k (beyond the diagonal) by gcd transforms.

    When the pivot already divides the entry a plain subtraction is used,
    which leaves the pivot row/column untouched; this is what makes the
    row/column alternation terminate.
    """
    m, n = len(s), len(s[0])
    while True:
        for i in range(k + 1, m):
            if s[i][k] == 0:
                continue
            if s[i][k] % s[k][k] == 0:
                q = s[i][k] // s[k][k]
                s[i] = [b - q * a for a, b in zip(s[k], s[i])]
                u[i] = [b - q * a for a, b in zip(u[k], u[i])]
                continue
            g, x, y = xgcd(s[k][k], s[i][k])
            p, q = s[k][k] // g, s[i][k] // g
            s[k], s[i] = (
                [x * a + y * b for a, b in zip(s[k], s[i])],
                [-q * a + p * b for a, b in zip(s[k], s[i])],
            )
            u[k], u[i] = (
                [x * a + y * b for a, b in zip(u[k], u[i])],
                [-q * a + p * b for a, b in zip(u[k], u[i])],
            )
        if all(s[k][j] == 0 for j in range(k + 1, n)):
            return
        for j in range(k + 1, n):
            if s[k][j] == 0:
                continue
            if s[k][j] % s[k][k] == 0:
                q = s[k][j] // s[k][k]
                for row in s:
                    row[j] -= q * row[k]
                for row in v:
                    row[j] -= q * row[k]
                continue
            g, x, y = xgcd(s[k][k], s[k][j])
            p, q = s[k][k] // g, s[k][j] // g
            for row in s:
                row[k], row[j] = x * row[k] + y * row[j], -q * row[k] + p * row[j]
            for row in v:
                row[k], row[j] = x * row[k] + y * row[j], -q * row[k] + p * row[j]
        if all(s[i][k] == 0 for i in range(k + 1, m)):
            return


def snf(a) -> SNFResult:
    """Smith normal form with both unimodular transforms."""
    m = len(a)
    n = len(a[0]) if m else 0
    s = [list(map(int, row)) for row in a]
    u = [list(row) for row in identity(m)]
    v = [list(row) for row in identity(n)]
    t = min(m, n)
    for k in range(t):
        piv = next(
            ((i, j) for i in range(k, m) for j in range(k, n) if s[i][j] != 0),
            None,
        )
        if piv is None:
            break
        pi, pj = piv
        if pi != k:
            s[k], s[pi] = s[pi], s[k]
            u[k], u[pi] = u[pi], u[k]
        if pj != k:
            for row in s:
                row[k], row[pj] = row[pj], row[k]
            for row in v:
                row[k], row[pj] = row[pj], row[k]
        _snf_clear_at(s, u, v, k)
    # enforce the divisibility chain d1 | d2 | ...
    while True:
        dirty = False
        for k in range(t - 1):
            dk, dk1 = s[k][k], s[k + 1][k + 1]
            if dk != 0 and dk1 % dk != 0:
                for row in s:
                    row[k] += row[k + 1]
                for row in v:
                    row[k] += row[k + 1]
                _snf_clear_at(s, u, v, k)
                dirty = True
        if not dirty:
            break
    for k in range(t):
        if s[k][k] < 0:
            s[k] = [-x for x in s[k]]
            u[k] = [-x for x in u[k]]
    return SNFResult(tuple(map(tuple, s)), tuple(map(tuple, u)), tuple(map(tuple, v)))


def saturation_basis(rows, n: int) -> tuple[IntVec, ...]:
    """Basis of span_Q(rows) intersected with Z^n, HNF-canonicalised.

    If S = U.A.V is the Smith form of the row matrix A, the first
    rank-many rows of V^-1 span the saturation.
    """
    res = snf(rows)
    r = res.rank
    vinv = mat_inverse(res.V)
    basis = []
    for i in range(r):
        row = vinv[i]
        assert all(x.denominator == 1 for x in row)
        basis.append(tuple(int(x) for x in row))
    h, _ = hnf(basis)
    return tuple(h[i] for i in range(r))


# ---------------------------------------------------------------------------
# lattices


@dataclass(frozen=True)
class LatticeBasis:
    """Full-rank lattice in Q^dim, stored over one common denominator.

    ``num`` holds den * basis rows in Hermite normal form, so equal
    lattices always get identical representations.
    """

    dim: int
    num: tuple[IntVec, ...]
    den: int

    @classmethod
    def standard(cls, dim: int) -> "LatticeBasis":
        return cls(dim, identity(dim), 1)

    @property
    def rows(self) -> tuple[RatVec, ...]:
        return tuple(tuple(Fraction(x, self.den) for x in row) for row in self.num)

    @property
    def is_standard(self) -> bool:
        return self.den == 1 and self.num == identity(self.dim)

    def covolume(self) -> Fraction:
        """|det| of the basis; 1/covolume is the index over Z^dim when finite."""
        return abs(det(self.rows))


def lattice_from_generators(dim: int, gens: Sequence[Sequence]) -> LatticeBasis:
    """Lattice generated by Z^dim together with the given rational vectors."""
    fracs = [[Fraction(x) for x in g] for g in gens]
    for g in fracs:
        if len(g) != dim:
            raise NotFullRank(f"generator of length {len(g)} in dimension {dim}")
    dens = [f.denominator for g in fracs for f in g]
    d = math.lcm(*dens) if dens else 1
    rows = [tuple(int(f * d) for f in g) for g in fracs]
    rows += [tuple(d * x for x in e) for e in identity(dim)]
    h, _ = hnf(rows)
    basis = [row for row in h if any(row)]
    if len(basis) != dim:
        raise NotFullRank("generators plus the standard basis do not span")
    g = d
    for row in basis:
        for x in row:
            g = math.gcd(g, abs(x))
    num = tuple(tuple(x // g for x in row) for row in basis)
    return LatticeBasis(dim, num, d // g)


def coords_in_basis(basis: LatticeBasis, v: Sequence) -> RatVec:
    """Rational coordinates c with c . basis = v (basis is square, full rank)."""
    a = transpose(basis.rows)
    sol = solve_rational(a, tuple(Fraction(x) for x in v))
    assert isinstance(sol, tuple)
    return sol


def express_in_basis(basis: LatticeBasis, v: Sequence):
    """Integer coordinates of v in the lattice basis, or None if v is not
    a lattice point."""
    c = coords_in_basis(basis, v)
    if any(x.denominator != 1 for x in c):
        return None
    return tuple(int(x) for x in c)
