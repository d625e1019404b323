"""Strongly convex rational polyhedral cones.

A cone is stored by its primitive extremal rays together with an eagerly
computed facet description (primitive inward normals).  The dual
description is obtained by the double description method over exact
rationals, processing one inequality at a time.  Cones that do not span
the ambient space are handled by rebasing to a basis of span intersect
Z^n and recursing in lower dimension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import EmptyInput, NotFullRank, NotInCone, NotStronglyConvex
from .linalg import IntVec, dot, mat_inverse, mat_mul, primitive, primitive_direction, rank, transpose


class Membership(Enum):
    OUTSIDE = "Outside"
    BOUNDARY = "Boundary"
    RELATIVE_INTERIOR = "RelativeInterior"


@dataclass(frozen=True)
class Cone:
    """Strongly convex rational polyhedral cone.

    ``rays`` are the primitive extremal generators, sorted; ``facets``
    are primitive inward facet normals valid on span(cone).  ``span`` is
    a saturated lattice basis of span(cone) when the cone is not
    full-dimensional, else None.
    """

    n: int
    rays: tuple[IntVec, ...]
    facets: tuple[IntVec, ...]
    dim: int
    span: tuple[IntVec, ...] | None = field(default=None)

    def __repr__(self):
        return f"Cone(n={self.n}, rays={list(self.rays)})"


@dataclass(frozen=True)
class Face:
    """Face of a cone, recorded by the indices of the parent rays it contains."""

    parent: Cone
    ray_indices: tuple[int, ...]

    @property
    def rays(self) -> tuple[IntVec, ...]:
        return tuple(self.parent.rays[i] for i in self.ray_indices)

    @property
    def dim(self) -> int:
        return rank(self.rays) if self.ray_indices else 0

    def as_cone(self) -> Cone:
        if not self.ray_indices:
            raise EmptyInput("the zero face has no generating rays")
        return make_cone(self.parent.n, self.rays)


# ---------------------------------------------------------------------------
# exact simplex (feasibility and small LPs over the rationals)


def _lp_max(a_rows, b, c_obj):
    """Maximise c.x subject to a_rows . x = b, x >= 0, exactly.

    Returns (status, value, x) with status one of 'optimal',
    'infeasible', 'unbounded'.  Two-phase tableau simplex with Bland's
    rule.
    """
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    rows = []
    rhs = []
    for row, bi in zip(a_rows, b):
        r = [Fraction(x) for x in row]
        bi = Fraction(bi)
        if bi < 0:
            r = [-x for x in r]
            bi = -bi
        rows.append(r)
        rhs.append(bi)
    # phase 1: artificial variables n..n+m-1
    tab = [rows[i] + [Fraction(int(i == j)) for j in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    total = n + m

    def pivot(pr, pc):
        piv = tab[pr][pc]
        tab[pr] = [x / piv for x in tab[pr]]
        for i in range(m):
            if i != pr and tab[i][pc] != 0:
                f = tab[i][pc]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[pr])]
        basis[pr] = pc

    def optimise(cost, allowed):
        # maximise cost over columns in `allowed`; Bland's rule
        while True:
            z = [Fraction(0)] * (total + 1)
            for i, bi in enumerate(basis):
                ci = cost[bi]
                if ci != 0:
                    z = [zz + ci * x for zz, x in zip(z, tab[i])]
            entering = None
            for j in range(total):
                if j in allowed and j not in basis and cost[j] - z[j] > 0:
                    entering = j
                    break
            if entering is None:
                return "optimal", z[total]
            ratios = [
                (tab[i][total] / tab[i][entering], basis[i], i)
                for i in range(m)
                if tab[i][entering] > 0
            ]
            if not ratios:
                return "unbounded", None
            _, _, pr = min(ratios)
            pivot(pr, entering)

    cost1 = [Fraction(0)] * n + [Fraction(-1)] * m + [Fraction(0)]
    status, val = optimise(cost1, set(range(total)))
    assert status == "optimal"
    if val != 0:
        return "infeasible", None, None
    # drive artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n:
            pc = next((j for j in range(n) if tab[i][j] != 0), None)
            if pc is not None:
                pivot(i, pc)
    cost2 = [Fraction(x) for x in c_obj] + [Fraction(0)] * m + [Fraction(0)]
    status, val = optimise(cost2, set(range(n)))
    if status == "unbounded":
        return "unbounded", None, None
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = tab[i][total]
    return "optimal", val, tuple(x)


def in_cone(rays: Sequence[Sequence], v: Sequence) -> bool:
    """Exact feasibility: is v a nonnegative combination of the rays?"""
    if not rays:
        return all(x == 0 for x in v)
    a = transpose(rays)  # ambient coordinate equations, one unknown per ray
    status, _, _ = _lp_max(a, tuple(v), [0] * len(rays))
    return status != "infeasible"


def in_relint(rays: Sequence[Sequence], v: Sequence) -> bool:
    """Is v a strictly positive combination of all the rays?

    This characterises the relative interior of the cone the rays span.
    """
    k = len(rays)
    if k == 0:
        return all(x == 0 for x in v)
    n = len(v)
    # variables: lambda_1..k, t, s_1..k ; rows: ambient eqs, then lambda_i - t - s_i = 0
    a = []
    b = []
    for j in range(n):
        a.append([rays[i][j] for i in range(k)] + [0] + [0] * k)
        b.append(v[j])
    for i in range(k):
        row = [0] * (2 * k + 1)
        row[i] = 1
        row[k] = -1
        row[k + 1 + i] = -1
        a.append(row)
        b.append(0)
    c = [0] * (2 * k + 1)
    c[k] = 1
    status, val, _ = _lp_max(a, b, c)
    if status == "infeasible":
        return False
    if status == "unbounded":
        return True
    return val > 0


# ---------------------------------------------------------------------------
# double description


def _double_description(n: int, ineqs: Sequence[IntVec]):
    """Extreme rays and lineality basis of {y : a . y >= 0 for all a}.

    Incremental over the inequalities; rays carry the bitmask of the
    inequalities they satisfy with equality, which feeds the standard
    combinatorial adjacency test.
    """
    lineality = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    rays: list[tuple[IntVec, int]] = []
    for idx, a in enumerate(ineqs):
        hit = next((i for i, l in enumerate(lineality) if dot(a, l) != 0), None)
        if hit is not None:
            l0 = lineality.pop(hit)
            v0 = dot(a, l0)
            if v0 < 0:
                l0 = tuple(-x for x in l0)
                v0 = -v0
            lineality = [
                tuple(lx - Fraction(dot(a, l), v0) * l0x for lx, l0x in zip(l, l0))
                for l in lineality
            ]
            new_rays = []
            for r, z in rays:
                rv = dot(a, r)
                vec = tuple(Fraction(rx) - Fraction(rv, v0) * l0x for rx, l0x in zip(r, l0))
                new_rays.append((primitive_direction(vec), z | (1 << idx)))
            new_rays.append((primitive_direction(l0), (1 << idx) - 1))
            rays = new_rays
            continue
        pos = [(r, z) for r, z in rays if dot(a, r) > 0]
        zero = [(r, z | (1 << idx)) for r, z in rays if dot(a, r) == 0]
        neg = [(r, z) for r, z in rays if dot(a, r) < 0]
        if not neg:
            rays = pos + zero
            continue
        created = []
        for (p, zp), (q, zq) in itertools.product(pos, neg):
            zc = zp & zq
            adjacent = not any(
                (z & zc) == zc for r, z in rays if r is not p and r is not q
            )
            if not adjacent:
                continue
            ap, aq = dot(a, p), dot(a, q)
            vec = tuple(ap * qx - aq * px for px, qx in zip(p, q))
            created.append((primitive(vec), (zc | (1 << idx))))
        seen = set()
        merged = []
        for r, z in pos + zero + created:
            if r not in seen:
                seen.add(r)
                merged.append((r, z))
        rays = merged
    return [r for r, _ in rays], lineality


def _lift_normals(inner_facets, span_basis):
    """Pull facet normals computed in span coordinates back to the ambient
    space: h = h' . (B B^T)^-1 . B evaluates like h' on span points."""
    g = mat_mul(span_basis, transpose(span_basis))
    m = mat_mul(mat_inverse(g), span_basis)
    lifted = []
    for h in inner_facets:
        amb = tuple(sum(Fraction(h[i]) * m[i][j] for i in range(len(h))) for j in range(len(m[0])))
        lifted.append(primitive_direction(amb))
    return lifted


def make_cone(n: int, generators: Sequence[Sequence[int]]) -> Cone:
    """Build the cone spanned by the generators.

    Generators are normalised to primitive vectors, duplicates and
    non-extremal generators are dropped, and strong convexity is
    verified.  Raises EmptyInput, ZeroVector or NotStronglyConvex.
    """
    if not generators:
        raise EmptyInput("a cone needs at least one generator")
    prims = sorted({primitive(g) for g in generators})
    r = rank(prims)
    if r < n:
        sat = linalg.saturation_basis(prims, n)
        coords = []
        for p in prims:
            c = _span_coords(sat, p)
            if c is None:
                raise NotFullRank("generator outside the saturated span")
            coords.append(c)
        inner = make_cone(r, coords)
        out_rays = tuple(sorted(tuple(dot(c, col) for col in zip(*sat)) for c in inner.rays))
        out_facets = tuple(sorted(_lift_normals(inner.facets, sat)))
        return Cone(n, out_rays, out_facets, inner.dim, span=sat)
    dual_rays, lin = _double_description(n, prims)
    assert not lin
    if rank(dual_rays) < n:
        raise NotStronglyConvex("cone contains a line")
    extremal = []
    for i, p in enumerate(prims):
        others = prims[:i] + prims[i + 1:]
        if not in_cone(others, p):
            extremal.append(p)
    return Cone(n, tuple(sorted(extremal)), tuple(sorted(dual_rays)), n, span=None)


def _span_coords(sat_rows, v) -> IntVec | None:
    """Integer coordinates of v in the saturated span basis, if any."""
    a = transpose(sat_rows)
    sol = linalg.solve_rational(a, v)
    if not isinstance(sol, tuple):
        return None
    if any(x.denominator != 1 for x in sol):
        return None
    return tuple(int(x) for x in sol)


def dual_cone(c: Cone) -> Cone:
    """Cone of functionals nonnegative on c (c must be full-dimensional,
    otherwise the dual contains a line)."""
    if c.dim < c.n:
        raise NotStronglyConvex("dual of a non-full-dimensional cone contains a line")
    return make_cone(c.n, c.facets)


def membership(c: Cone, v: Sequence) -> Membership:
    v = tuple(Fraction(x) for x in v)
    if c.span is not None:
        if _rational_span_coords(c.span, v) is None:
            return Membership.OUTSIDE
    vals = [dot(f, v) for f in c.facets]
    if any(x < 0 for x in vals):
        return Membership.OUTSIDE
    if any(x == 0 for x in vals):
        return Membership.BOUNDARY
    return Membership.RELATIVE_INTERIOR


def _rational_span_coords(sat_rows, v):
    sol = linalg.solve_rational(transpose(sat_rows), v)
    return sol if isinstance(sol, tuple) else None


def is_simplicial(c: Cone) -> bool:
    return len(c.rays) == c.dim


def minimal_face_containing(c: Cone, v: Sequence) -> Face:
    """The unique face whose relative interior contains v."""
    v = tuple(Fraction(x) for x in v)
    if membership(c, v) is Membership.OUTSIDE:
        raise NotInCone(f"{v} is not in the cone")
    zero_facets = [f for f in c.facets if dot(f, v) == 0]
    idx = tuple(
        i
        for i, r in enumerate(c.rays)
        if all(dot(f, r) == 0 for f in zero_facets)
    )
    return Face(c, idx)
