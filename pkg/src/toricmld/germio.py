"""Germ documents: the JSON exchange format for toric germs.

All rationals travel as strings "p/q" (or "p" for integers); nothing in
a document is ever a binary float.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .cones import make_cone
from .errors import ParseError
from .invariants import ToricGerm, make_germ
from .linalg import lattice_from_generators, primitive


def format_q(x) -> str:
    return str(Fraction(x))


def coord_out(x):
    """Coordinate for JSON output: int when integral, else 'p/q'."""
    f = Fraction(x)
    return int(f) if f.denominator == 1 else str(f)


def parse_q(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{where}: {value!r} is not a rational 'p/q'") from exc
    raise ParseError(f"{where}: expected a rational string, got {type(value).__name__}")


def germ_doc(germ: ToricGerm) -> dict:
    """Serialisable document; fields with default values are omitted."""
    doc = {"dim": germ.dim, "rays": [list(r) for r in germ.cone.rays]}
    if any(b != 0 for b in germ.boundary):
        doc["boundary"] = [format_q(b) for b in germ.boundary]
    if not germ.lattice.is_standard:
        doc["lattice_extra"] = [[format_q(x) for x in row] for row in germ.lattice.rows]
    return doc


def parse_germ_doc(doc) -> ToricGerm:
    if not isinstance(doc, dict):
        raise ParseError("germ document must be a JSON object")
    if "dim" not in doc or "rays" not in doc:
        raise ParseError("germ document needs 'dim' and 'rays' fields")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ParseError("'dim' must be a positive integer")
    rays_field = doc["rays"]
    if not isinstance(rays_field, list) or not rays_field:
        raise ParseError("'rays' must be a nonempty list of integer rows")
    rays = []
    for i, row in enumerate(rays_field):
        if not isinstance(row, list) or len(row) != dim:
            raise ParseError(f"rays[{i}] must be a list of {dim} integers")
        for j, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool):
                raise ParseError(f"rays[{i}][{j}] must be an integer")
        rays.append(tuple(row))
    boundary = None
    if "boundary" in doc:
        field = doc["boundary"]
        if not isinstance(field, list):
            raise ParseError("'boundary' must be a list of rational strings")
        boundary = [parse_q(x, f"boundary[{i}]") for i, x in enumerate(field)]
    lattice = None
    if "lattice_extra" in doc:
        field = doc["lattice_extra"]
        if not isinstance(field, list):
            raise ParseError("'lattice_extra' must be a list of rational rows")
        gens = []
        for i, row in enumerate(field):
            if not isinstance(row, list) or len(row) != dim:
                raise ParseError(f"lattice_extra[{i}] must be a list of {dim} rationals")
            gens.append([parse_q(x, f"lattice_extra[{i}][{j}]") for j, x in enumerate(row)])
        lattice = lattice_from_generators(dim, gens)
    cone = make_cone(dim, rays)
    if boundary is not None and len(boundary) != len(rays_field):
        # coefficients are given per input ray; after normalisation the ray
        # set may shrink, which would silently misalign them
        raise ParseError(
            f"{len(boundary)} boundary coefficients for {len(rays_field)} input rays"
        )
    if boundary is not None and len(cone.rays) != len(rays_field):
        raise ParseError(
            "boundary coefficients cannot be matched: input rays are not "
            "the extremal ray set of the cone"
        )
    if boundary is not None:
        # reorder per the canonical ray order
        order = {primitive(r): b for r, b in zip(rays, boundary)}
        boundary = [order[r] for r in cone.rays]
    return make_germ(cone, boundary, lattice)


def parse_germ(text: str) -> ToricGerm:
    """Parse a UTF-8 JSON germ document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return parse_germ_doc(doc)
