"""Command line reports: exact Betti numbers, stratum tables, obstruction
certificates, invariant ideal classifications and Frobenius algebra checks.

Output is deterministic byte-for-byte for fixed arguments: JSON with sorted
keys (--json) or a flat key: value listing (--table, default).  Rationals
are serialized as "p/q" strings.  Exit status is 0 iff every reported check
passed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import fields, is_dataclass
from fractions import Fraction

from . import bb_lattice, cohomology, frobenius, invariant_ideals, partitions

SCHEMA = "hilbk3.report/1"


def _plain(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, partitions.YoungDiagram):
        return list(obj.parts)
    if is_dataclass(obj):
        return {f.name: _plain(getattr(obj, f.name)) for f in fields(obj)}
    if isinstance(obj, (list, tuple, frozenset, set)):
        items = list(obj)
        if isinstance(obj, (frozenset, set)):
            items = sorted(items, key=repr)
        return [_plain(x) for x in items]
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _flatten(prefix: str, obj, lines: list[str]) -> None:
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, lines)
    elif isinstance(obj, list):
        if all(not isinstance(x, (dict, list)) for x in obj):
            lines.append(f"{prefix}: {' '.join(str(x) for x in obj)}")
        else:
            for i, x in enumerate(obj):
                _flatten(f"{prefix}[{i}]", x, lines)
    else:
        lines.append(f"{prefix}: {obj}")


def _emit(payload: dict, as_json: bool) -> None:
    if as_json:
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        lines: list[str] = []
        _flatten("", payload, lines)
        sys.stdout.write("\n".join(lines) + "\n")


def _parse_surface(text: str | None) -> cohomology.SurfaceBetti:
    if text is None:
        return cohomology.SurfaceBetti.k3()
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError("--surface expects b0,b2,b4")
    b0, b2, b4 = (int(p) for p in parts)
    return cohomology.SurfaceBetti.from_vector((b0, 0, b2, 0, b4))


def _load_gram(path: str | None):
    if path is None:
        return None
    with open(path) as fh:
        data = json.load(fh)
    dim = data["dim"]
    rows = [[Fraction(str(x)) for x in row] for row in data["rows"]]
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise ValueError("gram file dimensions are inconsistent")
    return rows


def cmd_betti(args) -> tuple[dict, list[dict]]:
    surface = _parse_surface(args.surface)
    ledger = cohomology.hilbert_stratum_ledger(surface, args.n)
    poly = ledger.total()
    betti = list(poly.betti)
    if args.max_degree is not None:
        betti = betti[: args.max_degree + 1]
    degree2 = [
        {"diagram": _plain(d), "contribution": b} for d, b in ledger.entries_in_degree(2)
    ]
    checks = [
        {"name": "b0-is-1", "ok": poly.coefficient(0) == 1},
        {"name": "odd-degrees-vanish", "ok": poly.has_only_even_degrees},
        {"name": "poincare-duality", "ok": poly.is_palindromic},
    ]
    if args.n >= 2:
        checks.append({"name": "degree-2-ledger-has-two-strata", "ok": len(degree2) == 2})
        checks.append({"name": "b2-is-surface-b2-plus-1",
                       "ok": poly.coefficient(2) == surface.b2 + 1})
    result = {
        "n": args.n,
        "surface": _plain(surface),
        "betti": betti,
        "top_degree": poly.top_degree,
        "euler_characteristic": poly.euler_characteristic,
        "degree_2_entries": degree2,
    }
    return result, checks


def cmd_strata(args) -> tuple[dict, list[dict]]:
    surface = _parse_surface(args.surface)
    rows = []
    all_semismall = True
    for d in partitions.diagrams_of(args.n):
        ok = partitions.verify_semismall(d)
        all_semismall = all_semismall and ok
        rows.append({
            "diagram": _plain(d),
            "codim": partitions.codim_diagonal(d),
            "fiber_dimension": partitions.fiber_dimension(d),
            "semismall": ok,
            "poincare": list(cohomology.diagonal_poincare(surface, d).betti),
        })
    checks = [{"name": "semismall-equality-all-strata", "ok": all_semismall}]
    return {"n": args.n, "surface": _plain(surface), "strata": rows}, checks


def cmd_certify(args) -> tuple[dict, list[dict]]:
    gram = _load_gram(args.gram)
    report = bb_lattice.certify_no_trianalytic(args.n, gram=gram, seed=args.seed)
    checks = [{"name": "verdict-certified", "ok": report.verdict == "certified"}]
    return _plain(report), checks


def cmd_ideals(args) -> tuple[dict, list[dict]]:
    found = invariant_ideals.classify_invariant_ideals(args.N)
    rows = []
    all_powers = True
    for ideal in found:
        power = ideal.maximal_ideal_power()
        all_powers = all_powers and power is not None
        rows.append({"degrees": list(ideal.degrees), "maximal_ideal_power": power})
    checks = [
        {"name": "every-invariant-ideal-is-a-power-of-m", "ok": all_powers},
        {"name": "count-is-N-minus-1", "ok": len(found) == args.N - 1},
    ]
    return {"truncation": args.N, "ideals": rows}, checks


def cmd_punctual(args) -> tuple[dict, list[dict]]:
    fixed = invariant_ideals.punctual_fixed_points(args.i)
    triangular, root = partitions.is_triangular(args.i)
    rows = [{
        "staircase": _plain(ideal.staircase),
        "generators": [list(g) for g in ideal.generators()],
    } for ideal in fixed]
    checks = [{
        "name": "unique-fixed-point-iff-triangular",
        "ok": (len(fixed) == 1) == triangular,
    }]
    result = {
        "colength": args.i,
        "triangular": triangular,
        "triangular_root": root,
        "fixed_points": rows,
    }
    return result, checks


def cmd_frobenius(args) -> tuple[dict, list[dict]]:
    gram = _load_gram(args.gram)
    if gram is not None and len(gram) != args.dimv:
        raise ValueError("--dimv disagrees with the gram file")
    pattern = frobenius.algebra_dimension_pattern(args.dimv, args.n)
    checks = [{"name": "dimension-pattern-palindromic", "ok": pattern == pattern[::-1]}]
    result = {
        "dim_v": args.dimv,
        "n": args.n,
        "dimensions": list(pattern),
        "total_dimension": sum(pattern),
    }
    if args.dimv <= frobenius.MAX_DIM_V and args.n <= frobenius.MAX_N:
        if gram is None:
            gram = [[Fraction(int(i == j)) for j in range(args.dimv)] for i in range(args.dimv)]
        algebra = frobenius.build_algebra(gram, args.n)
        result["mode"] = "full"
        checks.append({"name": "pairing-nondegenerate",
                       "ok": algebra.check_pairing_nondegenerate()})
        checks.append({"name": "associative", "ok": algebra.check_associative()})
    else:
        result["mode"] = "dimensions-only"
    return result, checks


_COMMANDS = {
    "betti": cmd_betti,
    "strata": cmd_strata,
    "certify": cmd_certify,
    "ideals": cmd_ideals,
    "punctual": cmd_punctual,
    "frobenius": cmd_frobenius,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hilbk3", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true", help="machine readable output")
        fmt.add_argument("--table", action="store_true", help="flat text output (default)")
        return p

    p = add("betti", "Betti numbers of the Hilbert scheme of n points")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--surface", type=str, default=None, metavar="b0,b2,b4")
    p.add_argument("--max-degree", type=int, default=None, dest="max_degree")

    p = add("strata", "diagonal strata with codimensions and semismallness")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--surface", type=str, default=None, metavar="b0,b2,b4")

    p = add("certify", "obstruct the trianalytic candidates on n points")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gram", type=str, default=None, metavar="PATH")
    p.add_argument("--seed", type=int, default=0)

    p = add("ideals", "invariant ideals of the truncated two-variable ring")
    p.add_argument("--N", type=int, required=True)

    p = add("punctual", "torus-fixed punctual ideals of a given colength")
    p.add_argument("--i", type=int, required=True)

    p = add("frobenius", "model Frobenius algebra dimensions and checks")
    p.add_argument("--dimv", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gram", type=str, default=None, metavar="PATH")

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    as_json = bool(args.json)
    parameters = {
        k: v for k, v in vars(args).items()
        if k not in ("command", "json", "table") and v is not None
    }
    try:
        result, checks = _COMMANDS[args.command](args)
    except (ValueError, OSError, KeyError) as exc:
        payload = {
            "schema": SCHEMA,
            "command": args.command,
            "parameters": parameters,
            "status": "error",
            "error": {"type": type(exc).__name__, "message": str(exc)},
        }
        _emit(payload, as_json)
        return 1
    ok = all(c["ok"] for c in checks)
    payload = {
        "schema": SCHEMA,
        "command": args.command,
        "parameters": parameters,
        "result": result,
        "checks": checks,
        "status": "ok" if ok else "failed",
    }
    _emit(payload, as_json)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
