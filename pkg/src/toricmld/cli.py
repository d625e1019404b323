"""Command-line interface.

Machine output is one compact JSON document on stdout; --pretty renders
an aligned table instead; --out writes the JSON document to a file as
well.  Exit codes: 0 success, 1 domain or validation error, 2 usage
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import lab, oracle, structure
from .errors import ParseError, ToricError
from .germio import coord_out, format_q, germ_doc, parse_germ
from .invariants import count_window, mld, pi1_reg


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_germ(path: str):
    return parse_germ(_read_text(path))


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{text!r} is not a rational 'p/q'") from exc


def _parse_point(text: str):
    return tuple(_parse_fraction(part.strip()) for part in text.split(","))


def _point_out(p):
    return [coord_out(x) for x in p]


def _pretty(doc, indent=0, key_width=None) -> list[str]:
    lines = []
    if isinstance(doc, dict):
        width = max((len(k) for k in doc), default=0)
        for k, v in doc.items():
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                lines.append(" " * indent + f"{k}:")
                lines.extend(_pretty(v, indent + 2))
            else:
                rendered = json.dumps(v, separators=(",", ":")) if isinstance(v, (dict, list)) else str(v)
                lines.append(" " * indent + f"{k.ljust(width)}  {rendered}")
    elif isinstance(doc, list):
        for item in doc:
            if isinstance(item, (dict, list)) and item and not _is_flat(item):
                lines.extend(_pretty(item, indent + 2))
                lines.append(" " * indent + "-")
            else:
                rendered = json.dumps(item, separators=(",", ":")) if isinstance(item, (dict, list)) else str(item)
                lines.append(" " * indent + rendered)
    else:
        lines.append(" " * indent + str(doc))
    return lines


def _is_flat(v) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, dict) for x in v)
    return False


def _emit(doc: dict, args) -> None:
    text = json.dumps(doc, separators=(",", ":"))
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if getattr(args, "pretty", False):
        print("\n".join(_pretty(doc)))
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_mld(args) -> dict:
    germ = _load_germ(args.germ)
    bound = _parse_fraction(args.bound) if args.bound else None
    r = mld(germ, bound=bound)
    return {"mld": format_q(r.value), "minimizers": [_point_out(p) for p in r.minimizers]}


def _cmd_oracle_mld(args) -> dict:
    germ = _load_germ(args.germ)
    if args.low is not None or args.high is not None:
        if args.low is None or args.high is None:
            raise ParseError("oracle window mode needs both --low and --high")
        pts = oracle.oracle_window(germ, _parse_fraction(args.low), _parse_fraction(args.high))
        return {
            "low": args.low,
            "high": args.high,
            "count": len(pts),
            "points": [[_point_out(p), format_q(v)] for p, v in pts],
        }
    bound = _parse_fraction(args.bound) if args.bound else None
    value, mins = oracle.oracle_mld(germ, bound=bound)
    return {"mld": format_q(value), "minimizers": [_point_out(p) for p in mins]}


def _cmd_pi1(args) -> dict:
    germ = _load_germ(args.germ)
    g = pi1_reg(germ)
    doc = {"invariant_factors": list(g.invariant_factors), "order": str(g.order)}
    if g.free_rank:
        doc["free_rank"] = g.free_rank
    return doc


def _cmd_window(args) -> dict:
    germ = _load_germ(args.germ)
    try:
        wc = count_window(germ, _parse_fraction(args.low), _parse_fraction(args.high))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return {
        "low": format_q(wc.low),
        "high": format_q(wc.high),
        "count": wc.count,
        "points": [[_point_out(p), format_q(v)] for p, v in wc.points],
    }


def _cmd_check(args) -> dict:
    germ = _load_germ(args.germ)
    inst = lab.ConjectureInstance(
        germ, _parse_fraction(args.epsilon), _parse_fraction(args.delta)
    )
    r = lab.check_instance(inst)
    doc = {"classification": r.classification.value}
    if r.classification is lab.Classification.DEGENERATE:
        doc["diagnostic"] = r.diagnostic
        return doc
    doc.update(
        {
            "mld": format_q(r.mld_value),
            "hypothesis_mld_ok": r.hypothesis_mld_ok,
            "window_count": r.window_count,
            "pi1_order": str(r.pi1_order),
            "epsilon": format_q(inst.epsilon),
            "delta": format_q(inst.delta),
        }
    )
    return doc


def _cmd_trichotomy(args) -> dict:
    germ = _load_germ(args.germ)
    m = _parse_point(args.point)
    if any(x.denominator != 1 for x in m):
        raise ParseError("trichotomy points must have integer coordinates")
    res = structure.trichotomy(germ.cone, tuple(int(x) for x in m))
    if isinstance(res, structure.Simplicial):
        return {"variant": "Simplicial"}
    if isinstance(res, structure.FullDimSubcone):
        return {"variant": "FullDimSubcone", "tau": [list(r) for r in res.tau.rays]}
    return {
        "variant": "SpanningPair",
        "tau1": [list(r) for r in res.tau1.rays],
        "tau2": [list(r) for r in res.tau2.rays],
    }


def _cmd_decompose(args) -> dict:
    germ = _load_germ(args.germ)
    m = _parse_point(args.point)
    d = structure.decompose(germ, m)
    return {
        "k0": d.k0,
        "vectors": [_point_out(v) for v in d.vectors],
        "rays": [list(r) for r in germ.cone.rays],
        "coefficients": [list(row) for row in d.coefficients],
        "total_weight": d.total_weight,
    }


def _cmd_blowup(args) -> dict:
    germ = _load_germ(args.germ)
    r = mld(germ)
    m = r.minimizers[0]
    d = structure.decompose(germ, m)
    rep = structure.blowup_report(germ, d)
    return {
        "m": _point_out(m),
        "k0": d.k0,
        "sigma0": [list(r) for r in rep.sigma0.rays],
        "k_values": [format_q(k) for k in rep.k_values],
        "group_order": str(rep.group_order),
        "coarse_order": str(rep.coarse_order),
        "pi1_order": str(pi1_reg(germ).order),
    }


def _cmd_family(args) -> dict:
    germ = lab.family(args.name, args.param)
    return germ_doc(germ)


def _cmd_scan(args) -> dict:
    try:
        spec = json.loads(_read_text(args.spec))
    except json.JSONDecodeError as exc:
        raise ParseError(f"scan spec: line {exc.lineno}: {exc.msg}") from exc
    try:
        instances = lab.instances_from_spec(spec)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"scan spec is malformed: {exc}") from exc
    report = lab.scan(instances, jobs=args.jobs)
    return report.to_doc()


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricmld",
        description="Exact invariants of toric klt singularities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, germ_arg=True):
        p = sub.add_parser(name, help=help_text)
        if germ_arg:
            p.add_argument("germ", help="germ JSON document ('-' for stdin)")
        p.add_argument("--pretty", action="store_true", help="human-readable table")
        p.add_argument("--out", metavar="FILE", help="also write the JSON document here")
        p.set_defaults(func=func)
        return p

    p = add("mld", _cmd_mld, "minimal log discrepancy and all minimizers")
    p.add_argument("--bound", help="override the enumeration bound (rational)")

    p = add("oracle-mld", _cmd_oracle_mld, "brute-force oracle (mld, or window with --low/--high)")
    p.add_argument("--bound", help="override the enumeration bound (rational)")
    p.add_argument("--low", help="window lower end (rational)")
    p.add_argument("--high", help="window upper end (rational)")

    add("pi1", _cmd_pi1, "regional fundamental group invariant factors")

    p = add("window", _cmd_window, "lattice points with log discrepancy in [low, high)")
    p.add_argument("--low", required=True)
    p.add_argument("--high", required=True)

    p = add("check", _cmd_check, "classify a (germ, epsilon, delta) instance")
    p.add_argument("--epsilon", required=True)
    p.add_argument("--delta", required=True)

    p = add("trichotomy", _cmd_trichotomy, "structural trichotomy at an interior point")
    p.add_argument("--point", required=True, help="comma-separated coordinates")

    p = add("decompose", _cmd_decompose, "bounded decomposition of an interior point")
    p.add_argument("--point", required=True, help="comma-separated coordinates")

    add("blowup", _cmd_blowup, "blow-up report at a minimizer of the mld")

    p = add("family", _cmd_family, "emit a germ document of a named family", germ_arg=False)
    p.add_argument("--name", required=True, choices=["ex1", "ex2", "ex3", "ex4"])
    p.add_argument("--param", required=True, type=int)

    p = add("scan", _cmd_scan, "aggregate a scan specification", germ_arg=False)
    p.add_argument("--spec", required=True, help="scan spec JSON file")
    p.add_argument("--jobs", type=int, default=1, help="internal parallelism")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        doc = args.func(args)
    except ToricError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(doc, args)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
