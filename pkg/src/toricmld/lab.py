"""Instance checking and scanning for the boundedness hypotheses.

An instance is a germ together with thresholds (epsilon, delta).  The
checker computes the minimal log discrepancy, the number of divisorial
valuations with log discrepancy in [mld, mld + delta), and the order of
the regional fundamental group, then classifies the instance.  A scan
folds many instances into per-cell maxima of the group order, where a
cell is (dimension, realized window count, epsilon, delta).

The window counts cover toric divisorial valuations only; this caveat
is recorded in every scan report.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable

from .cones import make_cone
from .errors import (
    BadParam,
    EmptyInput,
    NotFullDimensional,
    NotQCartier,
    NotStronglyConvex,
    SamplingExhausted,
    ValidationError,
    ZeroVector,
)
from .germio import format_q, germ_doc
from .invariants import (
    ToricGerm,
    count_window,
    log_disc_functional,
    make_germ,
    mld,
    pi1_reg,
)
from .linalg import lattice_from_generators

SCOPE_NOTE = "window counts cover toric divisorial valuations only"

_COEFF_CHOICES = (Fraction(0), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4))


@dataclass(frozen=True)
class ConjectureInstance:
    germ: ToricGerm
    epsilon: Fraction
    delta: Fraction

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValidationError("epsilon must be positive")
        if not (0 < self.delta < 1):
            raise ValidationError("delta must lie in (0, 1)")


class Classification(Enum):
    SATISFIES = "Satisfies"
    VIOLATES_MLD = "ViolatesMld"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class InstanceResult:
    mld_value: Fraction | None
    hypothesis_mld_ok: bool
    window_count: int | None
    pi1_order: int | None
    classification: Classification
    diagnostic: str = ""


def check_instance(inst: ConjectureInstance) -> InstanceResult:
    """Compute mld, window count and group order, and classify."""
    germ = inst.germ
    try:
        m = mld(germ)
    except (NotQCartier, NotFullDimensional) as exc:
        return InstanceResult(
            None, False, None, None, Classification.DEGENERATE, str(exc)
        )
    wc = count_window(germ, m.value, m.value + inst.delta)
    pi = pi1_reg(germ)
    ok = m.value > inst.epsilon
    cls = Classification.SATISFIES if ok else Classification.VIOLATES_MLD
    return InstanceResult(m.value, ok, wc.count, pi.order, cls)


# ---------------------------------------------------------------------------
# instance sources


def family(name: str, param: int) -> ToricGerm:
    """The four boundary-free example families.

    ex1: 2-dim cone over (0,1), (n,1); ex2: 2-dim cone over (-1,n),
    (1,n); ex3: 3-dim cone over (1,0,0), (0,1,0), (1,1,r); ex4: the
    n-dim orthant with the ambient lattice extended by (1/n, ..., 1/n).
    """
    if name in ("ex1", "ex2", "ex3"):
        if param < 2:
            raise BadParam(f"{name} needs param >= 2, got {param}")
    if name == "ex1":
        return make_germ(make_cone(2, [(0, 1), (param, 1)]))
    if name == "ex2":
        return make_germ(make_cone(2, [(-1, param), (1, param)]))
    if name == "ex3":
        return make_germ(make_cone(3, [(1, 0, 0), (0, 1, 0), (1, 1, param)]))
    if name == "ex4":
        if not (2 <= param <= 8):
            raise BadParam(f"ex4 needs 2 <= param <= 8, got {param}")
        n = param
        orthant = make_cone(n, [tuple(int(i == j) for j in range(n)) for i in range(n)])
        lattice = lattice_from_generators(n, [tuple(Fraction(1, n) for _ in range(n))])
        return make_germ(orthant, None, lattice)
    raise BadParam(f"unknown family {name!r}")


def sample_random(n: int, max_rays: int, coord_bound: int, seed: int) -> ToricGerm:
    """Deterministic pseudo-random germ.

    Draws up to max_rays integer vectors in the coordinate box, retries
    until the cone is strongly convex and full-dimensional, then draws a
    boundary (zero, or coefficients from the standard set) and retries
    the whole draw until the germ passes the Q-Cartier check.
    """
    if not (2 <= n <= 5):
        raise BadParam(f"dimension {n} outside 2..5")
    if max_rays < n:
        raise BadParam("max_rays must be at least the dimension")
    if coord_bound < 1:
        raise BadParam("coord_bound must be positive")
    rng = random.Random(seed)
    for _ in range(500):
        k = rng.randint(n, max_rays)
        vecs = [
            tuple(rng.randint(-coord_bound, coord_bound) for _ in range(n))
            for _ in range(k)
        ]
        try:
            cone = make_cone(n, vecs)
        except (ZeroVector, NotStronglyConvex, EmptyInput):
            continue
        if cone.dim < n:
            continue
        if rng.random() < 0.5:
            boundary = None
        else:
            boundary = [rng.choice(_COEFF_CHOICES) for _ in cone.rays]
        germ = make_germ(cone, boundary)
        try:
            log_disc_functional(germ)
        except NotQCartier:
            continue
        return germ
    raise SamplingExhausted(
        f"no valid germ after 500 draws (n={n}, max_rays={max_rays}, "
        f"coord_bound={coord_bound}, seed={seed})"
    )


# ---------------------------------------------------------------------------
# scanning


@dataclass
class _Cell:
    instances: int
    max_pi1: int
    witness: dict
    witness_key: str


@dataclass
class ScanReport:
    """Per-cell maxima of the group order over satisfying instances."""

    cells: dict
    degenerate: int = 0
    violates_mld: int = 0

    def to_doc(self) -> dict:
        rows = []
        for (n, bucket, eps, delta) in sorted(self.cells):
            cell = self.cells[(n, bucket, eps, delta)]
            rows.append(
                {
                    "n": n,
                    "N": bucket,
                    "epsilon": format_q(eps),
                    "delta": format_q(delta),
                    "instances": cell.instances,
                    "max_pi1": cell.max_pi1,
                    "witness": cell.witness,
                }
            )
        return {
            "cells": rows,
            "degenerate": self.degenerate,
            "violates_mld": self.violates_mld,
            "note": SCOPE_NOTE,
        }


def _fold(report: ScanReport, inst: ConjectureInstance, result: InstanceResult):
    if result.classification is Classification.DEGENERATE:
        report.degenerate += 1
        return
    if result.classification is Classification.VIOLATES_MLD:
        report.violates_mld += 1
        return
    key = (inst.germ.dim, result.window_count, inst.epsilon, inst.delta)
    doc = germ_doc(inst.germ)
    doc_key = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    cell = report.cells.get(key)
    if cell is None:
        report.cells[key] = _Cell(1, result.pi1_order, doc, doc_key)
        return
    cell.instances += 1
    # ties broken by the canonical serialisation, so the witness does not
    # depend on the instance order
    if result.pi1_order > cell.max_pi1 or (
        result.pi1_order == cell.max_pi1 and doc_key < cell.witness_key
    ):
        cell.max_pi1 = result.pi1_order
        cell.witness = doc
        cell.witness_key = doc_key


def scan(instances: Iterable[ConjectureInstance], jobs: int = 1) -> ScanReport:
    """Fold instances into a report; the fold is a commutative merge, so
    the result is independent of ordering and of the parallelism level."""
    instances = list(instances)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(check_instance, instances))
    else:
        results = [check_instance(inst) for inst in instances]
    report = ScanReport(cells={})
    for inst, result in zip(instances, results):
        _fold(report, inst, result)
    return report


def instances_from_spec(spec: dict) -> list[ConjectureInstance]:
    """Expand a scan specification into a deterministic instance list.

    Shape: {"families": [{"name": .., "param_range": [lo, hi]}],
    "sampler": {"n", "max_rays", "coord_bound", "count", "seed"},
    "grid": [{"epsilon": "p/q", "delta": "p/q"}]}.
    """
    germs: list[ToricGerm] = []
    for fam in spec.get("families", []):
        lo, hi = fam["param_range"]
        for p in range(lo, hi + 1):
            germs.append(family(fam["name"], p))
    sampler = spec.get("sampler")
    if sampler:
        for i in range(sampler["count"]):
            germs.append(
                sample_random(
                    sampler["n"],
                    sampler["max_rays"],
                    sampler["coord_bound"],
                    sampler["seed"] + i,
                )
            )
    grid = [(Fraction(g["epsilon"]), Fraction(g["delta"])) for g in spec["grid"]]
    return [
        ConjectureInstance(germ, eps, delta) for germ in germs for eps, delta in grid
    ]
