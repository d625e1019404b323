"""Constructive decompositions of interior lattice points.

Three related constructions:

* enumerate the sub-cones spanned by proper subsets of the rays that
  keep a given interior point in their relative interior;
* the trichotomy: a full-dimensional cone is simplicial, or one of
  those sub-cones is full-dimensional, or two of them together span the
  ambient space (found by descending from the point along a ray to the
  boundary and recursing into the face hit there);
* a bounded decomposition k0 * m = v_1 + ... + v_n where each v_i is a
  nonnegative integer combination of the rays and the v_i are linearly
  independent, built by recursing through the trichotomy and merging
  the two sub-cone solutions along a spanning pair.

The decomposition accepts any interior lattice point, not only a
minimizer of the log discrepancy; nothing below uses minimality.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from . import invariants, linalg
from .cones import (
    Cone,
    Membership,
    in_relint,
    is_simplicial,
    make_cone,
    membership,
    minimal_face_containing,
)
from .errors import (
    DependentVectors,
    NotFullDimensional,
    NotInteriorPoint,
    TooManyRays,
)
from .invariants import ToricGerm, log_disc_functional, orbifold_lattice, pi1_reg
from .linalg import det, dot, express_in_basis, rank, saturation_basis, solve_rational, transpose

MAX_SUBSET_RAYS = 16


@dataclass(frozen=True)
class Simplicial:
    pass


@dataclass(frozen=True)
class FullDimSubcone:
    tau: Cone


@dataclass(frozen=True)
class SpanningPair:
    tau1: Cone
    tau2: Cone


TrichotomyResult = Union[Simplicial, FullDimSubcone, SpanningPair]


@dataclass(frozen=True)
class Decomposition:
    """k0 * m = sum of the vectors; vectors[i] = sum over rays of
    coefficients[i][ray] * ray with nonnegative integer coefficients."""

    k0: int
    vectors: tuple[tuple, ...]
    coefficients: tuple[tuple[int, ...], ...]
    total_weight: int


@dataclass(frozen=True)
class BlowupReport:
    """Data of the simplicial sub-cone spanned by a decomposition."""

    sigma0: Cone
    k_values: tuple[Fraction, ...]
    group_order: int
    coarse_order: int


# ---------------------------------------------------------------------------


def _subcone_index_sets(c: Cone, m) -> list[tuple[int, ...]]:
    """Index sets of proper ray subsets whose cone keeps m in its relative
    interior, in lexicographic order."""
    k = len(c.rays)
    if k > MAX_SUBSET_RAYS:
        raise TooManyRays(f"{k} rays; subset enumeration is capped at {MAX_SUBSET_RAYS}")
    hits = []
    for size in range(1, k):
        for idx in itertools.combinations(range(k), size):
            rays = [c.rays[i] for i in idx]
            if in_relint(rays, m):
                hits.append(idx)
    hits.sort()
    return hits


def subcones_containing(c: Cone, m: Sequence[int]) -> list[Cone]:
    """All cones spanned by proper ray subsets with m in their relative
    interior, each with its canonical ray set."""
    if membership(c, m) is not Membership.RELATIVE_INTERIOR:
        raise NotInteriorPoint(f"{tuple(m)} is not in the relative interior")
    return [
        make_cone(c.n, [c.rays[i] for i in idx])
        for idx in _subcone_index_sets(c, m)
    ]


def _tau_containing_ray(c: Cone, m, rho) -> Cone:
    """A proper-subset sub-cone containing rho with m in its relative
    interior: walk from m along -rho to the boundary and recurse into
    the face met there."""
    ratios = [Fraction(dot(f, m), dot(f, rho)) for f in c.facets if dot(f, rho) > 0]
    lam = min(ratios)
    m2 = tuple(Fraction(x) - lam * r for x, r in zip(m, rho))
    face = minimal_face_containing(c, m2)
    assert face.ray_indices, "descent from an interior point cannot reach the origin"
    face_cone = face.as_cone()
    if is_simplicial(face_cone):
        chosen = face_cone.rays
    else:
        idx = _subcone_index_sets(face_cone, m2)[0]
        chosen = tuple(face_cone.rays[i] for i in idx)
    return make_cone(c.n, (tuple(rho),) + chosen)


def trichotomy(c: Cone, m: Sequence) -> TrichotomyResult:
    """Classify (cone, interior point) into the three structural cases."""
    if c.dim < c.n:
        raise NotFullDimensional("trichotomy needs a full-dimensional cone")
    if membership(c, m) is not Membership.RELATIVE_INTERIOR:
        raise NotInteriorPoint(f"{tuple(m)} is not an interior point")
    if is_simplicial(c):
        return Simplicial()
    index_sets = _subcone_index_sets(c, m)
    assert index_sets, "a non-simplicial cone always admits such a sub-cone"
    for idx in index_sets:
        if rank([c.rays[i] for i in idx]) == c.n:
            return FullDimSubcone(make_cone(c.n, [c.rays[i] for i in idx]))
    tau1 = make_cone(c.n, [c.rays[i] for i in index_sets[0]])
    while True:
        rho = next(r for r in c.rays if rank(tau1.rays + (r,)) > rank(tau1.rays))
        tau2 = _tau_containing_ray(c, m, rho)
        assert tau2.dim < c.n
        if rank(tau1.rays + tau2.rays) == c.n:
            return SpanningPair(tau1, tau2)
        tau1 = make_cone(c.n, tau1.rays + tau2.rays)


# ---------------------------------------------------------------------------


def _simplicial_decomposition(cone: Cone, m):
    sol = solve_rational(transpose(cone.rays), m)
    assert isinstance(sol, tuple)
    assert all(x > 0 for x in sol)
    k0 = math.lcm(*[x.denominator for x in sol])
    vectors = []
    grids = []
    for coeff, ray in zip(sol, cone.rays):
        k = int(coeff * k0)
        vectors.append(tuple(k * x for x in ray))
        grids.append({ray: k})
    return k0, vectors, grids


def _rebase_to_span(rays, m, n):
    sat = saturation_basis(list(rays), n)
    cols = list(zip(*sat))

    def down(v):
        sol = solve_rational(transpose(sat), v)
        assert isinstance(sol, tuple) and all(x.denominator == 1 for x in sol)
        return tuple(int(x) for x in sol)

    def up(v):
        return tuple(dot(v, col) for col in cols)

    return [down(r) for r in rays], down(m), len(sat), up


def _decompose_rec(rays, m, n):
    """Decomposition for a cone that is full-dimensional in Q^n."""
    cone = make_cone(n, list(rays))
    tri = trichotomy(cone, m)
    if isinstance(tri, Simplicial):
        return _simplicial_decomposition(cone, m)
    if isinstance(tri, FullDimSubcone):
        return _decompose_rec(tri.tau.rays, m, n)
    parts = []
    for tau in (tri.tau1, tri.tau2):
        sub_rays, sub_m, d, up = _rebase_to_span(tau.rays, m, n)
        k0_t, vecs_t, grids_t = _decompose_rec(sub_rays, sub_m, d)
        vecs = [up(v) for v in vecs_t]
        grids = [{up(r): k for r, k in g.items()} for g in grids_t]
        parts.append((k0_t, vecs, grids))
    (k0a, vecs_a, grids_a), (k0b, vecs_b, grids_b) = parts
    basis = list(vecs_a)
    basis_grids = list(grids_a)
    unused_vecs, unused_grids = [], []
    for v, g in zip(vecs_b, grids_b):
        if len(basis) < n and rank(basis + [v]) > rank(basis):
            basis.append(v)
            basis_grids.append(g)
        else:
            unused_vecs.append(v)
            unused_grids.append(g)
    assert rank(basis) == n
    if unused_vecs:
        w = tuple(sum(col) for col in zip(*unused_vecs))
        gw = {}
        for g in unused_grids:
            for r, k in g.items():
                gw[r] = gw.get(r, 0) + k
        for i in range(n):
            cand = basis[:i] + [tuple(a + b for a, b in zip(basis[i], w))] + basis[i + 1:]
            if rank(cand) == n:
                basis = cand
                merged = dict(basis_grids[i])
                for r, k in gw.items():
                    merged[r] = merged.get(r, 0) + k
                basis_grids[i] = merged
                break
        else:  # pragma: no cover - impossible: k0*m would vanish
            raise AssertionError("no replacement keeps the family independent")
    return k0a + k0b, basis, basis_grids


def decompose(germ: ToricGerm, m: Sequence) -> Decomposition:
    """Decompose k0 * m into independent nonnegative ray combinations."""
    rb = invariants._rebased(germ)
    m_c = express_in_basis(germ.lattice, m)
    if m_c is None or membership(rb.cone, m_c) is not Membership.RELATIVE_INTERIOR:
        raise NotInteriorPoint(f"{tuple(m)} is not an interior lattice point")
    k0, vecs_c, grids = _decompose_rec(rb.cone.rays, m_c, germ.dim)
    amb_of = {r: rb.to_ambient(r) for r in rb.cone.rays}
    col = {amb: j for j, amb in enumerate(germ.cone.rays)}
    vectors = []
    coefficients = []
    for v, g in zip(vecs_c, grids):
        vectors.append(rb.to_ambient(v))
        row = [0] * len(germ.cone.rays)
        for r, k in g.items():
            row[col[amb_of[r]]] = k
        coefficients.append(tuple(row))
    total = k0 + sum(sum(row) for row in coefficients)
    result = Decomposition(k0, tuple(vectors), tuple(coefficients), total)
    _validate_decomposition(germ, m, result)
    return result


def _validate_decomposition(germ, m, d):
    rays = germ.cone.rays
    n = germ.dim
    assert rank(d.vectors) == n
    for v, row in zip(d.vectors, d.coefficients):
        assert all(k >= 0 for k in row)
        combo = tuple(sum(k * r[j] for k, r in zip(row, rays)) for j in range(n))
        assert tuple(v) == combo
    total = tuple(sum(Fraction(v[j]) for v in d.vectors) for j in range(n))
    assert total == tuple(d.k0 * Fraction(x) for x in m)


def blowup_report(germ: ToricGerm, d: Decomposition) -> BlowupReport:
    """Orbifold-primitive generators of the decomposition rays, their log
    discrepancies, and the two quotient orders.

    The order of the quotient by the raw vectors bounds the order of the
    regional fundamental group from above, because the vectors generate
    a subgroup of the group the rays generate; this is checked
    numerically.
    """
    n = germ.dim
    if det(d.vectors) == 0:
        raise DependentVectors("decomposition vectors are linearly dependent")
    ob = orbifold_lattice(germ)
    ldf = log_disc_functional(germ)
    raw_coords = []
    prim_coords = []
    k_values = []
    prim_ambient = []
    for v in d.vectors:
        c = express_in_basis(ob, v)
        assert c is not None, "ray combinations lie in the orbifold lattice"
        raw_coords.append(c)
        c0 = linalg.primitive(c)
        prim_coords.append(c0)
        amb = tuple(
            sum(Fraction(c0[i]) * ob.rows[i][j] for i in range(n)) for j in range(n)
        )
        prim_ambient.append(amb)
        k_values.append(ldf(amb))
    coarse = abs(int(det(raw_coords)))
    group = abs(int(det(prim_coords)))
    assert coarse >= pi1_reg(germ).order
    sigma0 = make_cone(n, [linalg.primitive_direction(v) for v in prim_ambient])
    return BlowupReport(sigma0, tuple(k_values), group, coarse)
