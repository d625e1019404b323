"""Shared corpus builders for the test suite.

All corpora are seeded and deterministic.  Random germs come from the
package sampler; non-simplicial coverage comes from cones over lattice
polytopes placed at height one, which are always Q-Cartier for an empty
boundary.
"""

from __future__ import annotations

import random
from fractions import Fraction

import toricmld as t
from toricmld.errors import ToricError


def height_cone_germ(dim: int, seed: int, spread: int = 2) -> t.ToricGerm:
    """Non-simplicial germ: cone over random lattice points at height one."""
    rng = random.Random(seed)
    while True:
        pts = {tuple(rng.randint(0, spread) for _ in range(dim - 1)) for _ in range(dim + 3)}
        rays = [p + (1,) for p in pts]
        try:
            cone = t.make_cone(dim, rays)
        except ToricError:
            continue
        if cone.dim == dim and len(cone.rays) > dim:
            return t.make_germ(cone)


def sampled_germs(n: int, max_rays: int, coord_bound: int, count: int, seed0: int,
                  box_cap: int | None = None) -> list[t.ToricGerm]:
    """Deterministic list of sampler germs; seeds advance until `count`
    valid germs are collected.  `box_cap` skips germs whose naive search
    box is too large for the brute-force oracle."""
    out = []
    seed = seed0
    while len(out) < count:
        try:
            germ = t.sample_random(n, max_rays, coord_bound, seed)
        except ToricError:
            seed += 1
            continue
        seed += 1
        if box_cap is not None and _box_volume(germ) > box_cap:
            continue
        out.append(germ)
    return out


def _box_volume(germ: t.ToricGerm) -> int:
    """Size of the naive bounding box the oracle would scan."""
    import math

    ldf = t.log_disc_functional(germ)
    rays = germ.cone.rays
    bound = sum(ldf(r) for r in rays)
    verts = [tuple(Fraction(0) for _ in range(germ.dim))]
    for r in rays:
        lv = ldf(r)
        verts.append(tuple(bound * Fraction(x) / lv for x in r))
    vol = 1
    for j in range(germ.dim):
        lo = math.floor(min(v[j] for v in verts))
        hi = math.ceil(max(v[j] for v in verts))
        vol *= hi - lo + 1
    return vol


def oracle_corpus() -> list[t.ToricGerm]:
    """The 200-germ corpus for oracle equivalence: dims 2-4, at most 8
    rays, boundary coefficients from {0, 1/2, 2/3, 3/4}, Q-Cartier."""
    germs = []
    germs += sampled_germs(2, 4, 6, 100, seed0=0)
    germs += sampled_germs(3, 6, 3, 55, seed0=10_000, box_cap=400_000)
    germs += sampled_germs(4, 6, 2, 25, seed0=20_000, box_cap=800_000)
    germs += [height_cone_germ(3, s) for s in range(12)]
    germs += [height_cone_germ(4, s, spread=1) for s in range(8)]
    assert len(germs) == 200
    return germs


def geometry_corpus() -> list[t.ToricGerm]:
    """50 small germs for equivariance and duality properties."""
    germs = []
    germs += sampled_germs(2, 4, 4, 25, seed0=40_000)
    germs += sampled_germs(3, 5, 2, 15, seed0=50_000, box_cap=200_000)
    germs += [height_cone_germ(3, s) for s in range(6)]
    germs += [t.family("ex1", 5), t.family("ex2", 4), t.family("ex3", 6), t.family("ex4", 3)]
    assert len(germs) == 50
    return germs


def nonsimplicial_corpus() -> list[t.ToricGerm]:
    germs = [g for g in geometry_corpus() if not t.is_simplicial(g.cone)]
    germs.append(t.make_germ(t.make_cone(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)])))
    germs.append(t.make_germ(t.make_cone(3, [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)])))
    germs += [height_cone_germ(4, s, spread=1) for s in range(3)]
    return germs


def random_unimodular(n: int, rng: random.Random, steps: int = 4):
    """Product of elementary integer matrices with determinant +-1."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]

    def shear(i, j, k):
        for c in range(n):
            m[i][c] += k * m[j][c]

    for _ in range(steps):
        op = rng.randrange(3)
        i, j = rng.sample(range(n), 2)
        if op == 0:
            shear(i, j, rng.choice([-2, -1, 1, 2]))
        elif op == 1:
            m[i], m[j] = m[j], m[i]
        else:
            m[i] = [-x for x in m[i]]
    return tuple(tuple(row) for row in m)


def transform_germ(germ: t.ToricGerm, mat) -> t.ToricGerm:
    """Apply the lattice automorphism v -> v . mat to a germ."""
    from toricmld.linalg import mat_vec, transpose

    cols = transpose(mat)

    def apply(v):
        return tuple(sum(x * c for x, c in zip(v, col)) for col in cols)

    new_rays = [apply(r) for r in germ.cone.rays]
    coeff_of = {t.primitive(nr): b for nr, b in zip(new_rays, germ.boundary)}
    cone = t.make_cone(germ.dim, new_rays)
    boundary = [coeff_of[r] for r in cone.rays]
    lattice = None
    if not germ.lattice.is_standard:
        gens = [apply(row) for row in germ.lattice.rows]
        lattice = t.lattice_from_generators(germ.dim, gens)
    return t.make_germ(cone, boundary, lattice)
