"""Command-line verifier: verify instances, run sweeps, reproduce the
classification table for groups generated by at most two elements.

Exit codes: 0 verified (either direction, certified); 1 verification
failed; 2 input error; 3 budget or feasibility cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Tuple

from . import sweep as sweeplib
from .automorphisms import is_omsr
from .constructions import (KIND_ABELIAN, KIND_CYCLIC, KIND_NONABELIAN,
                            abelian_connection_table, construct_omsr,
                            cyclic_connection_table, nonabelian_connection_table,
                            report_from_exception)
from .digraphs import build_mcayley
from .errors import (InfeasibleSweep, NotGenerating, OmsrError, ParseError,
                     SearchBudgetExceeded, TooLarge, UnknownFamily)
from .groups import (ALL_INVOLUTIONS, GeneratingPair, Group, GroupElement,
                     catalog_group, element_order, find_generating_pair,
                     normalize_generating_pair, parse_group_spec)
from .reports import ExceptionVerdict, VerificationReport

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def load_group(spec: str) -> Tuple[Group, Optional[GeneratingPair]]:
    """Resolve 'catalog:name:params...' or a group-spec file path."""
    if spec.startswith("catalog:"):
        parts = spec.split(":")[1:]
        if not parts or not parts[0]:
            raise UnknownFamily("catalog spec needs a family name")
        try:
            params = [int(p) for p in parts[1:]]
        except ValueError:
            raise UnknownFamily(f"catalog parameters must be integers: {spec!r}")
        return catalog_group(parts[0], params or [1])
    try:
        with open(spec) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read group spec {spec!r}: {exc}", 1)
    return parse_group_spec(text)


def verify_instance(G: Group, pair: Optional[GeneratingPair], m: int,
                    recipe: str = "auto", regen: bool = False) -> VerificationReport:
    """Full report for one (group, m); recipe override bypasses dispatch."""
    if recipe == "auto":
        result = construct_omsr(G, pair, m, regen=regen)
        if isinstance(result, ExceptionVerdict):
            return report_from_exception(G, m, result)
        return result[1]

    if pair is None:
        pair = find_generating_pair(G)
    if recipe == "cyclic":
        a = pair.a if element_order(G, pair.a) == G.order else next(
            (GroupElement(g) for g in G.elements()
             if element_order(G, g) == G.order), pair.a)
        table = cyclic_connection_table(G, a, m)
        kind = KIND_CYCLIC
    elif recipe in ("abelian", "nonabelian"):
        if pair.b is None:
            raise NotGenerating("this recipe needs a two-element generating pair")
        norm = normalize_generating_pair(G, pair.a, pair.b)
        if norm is ALL_INVOLUTIONS:
            raise NotGenerating("no generator of order >= 3 exists for this group")
        a, b = norm
        if recipe == "abelian":
            table = abelian_connection_table(G, a, b, m)
            kind = KIND_ABELIAN
        else:
            table = nonabelian_connection_table(G, a, b, m)
            kind = KIND_NONABELIAN
    else:
        raise UnknownFamily(f"unknown recipe {recipe!r}")
    gamma = build_mcayley(G, table)
    return is_omsr(gamma, G, m, construction_kind=kind)


def group_roster(max_order: int) -> List[Tuple[Group, GeneratingPair]]:
    """Catalog groups generated by at most two elements.

    Complete up to isomorphism for orders <= 12; larger orders include the
    catalog families only (cyclic, two-factor abelian, dihedral, dicyclic,
    A4/S4/A5).
    """
    out = []
    for k in range(1, max_order + 1):
        out.append(catalog_group("cyclic", [k]))
    for d1 in range(2, max_order + 1):
        t = 1
        while d1 * (d1 * t) <= max_order:
            out.append(catalog_group("cyclic_product", [d1, d1 * t]))
            t += 1
    for k in range(3, max_order // 2 + 1):
        out.append(catalog_group("dihedral", [k]))
    for k in range(2, max_order // 4 + 1):
        out.append(catalog_group("dicyclic", [k]))
    if max_order >= 12:
        out.append(catalog_group("alternating", [4]))
    if max_order >= 24:
        out.append(catalog_group("symmetric", [4]))
    if max_order >= 60:
        out.append(catalog_group("alternating", [5]))
    out.sort(key=lambda item: (item[0].order, item[0].label))
    return out


def reproduce_theorem(max_group_order: int, max_m: int) -> List[dict]:
    """One verdict row per (group, m) over the roster and 2 <= m <= max_m."""
    rows = []
    for G, pair in group_roster(max_group_order):
        for m in range(2, max_m + 1):
            result = construct_omsr(G, pair, m)
            if isinstance(result, ExceptionVerdict):
                rows.append({
                    "group": G.label, "order": G.order, "m": m,
                    "verdict": "NOT_EXISTS",
                    "certificate": result.to_dict(),
                })
            else:
                _, report = result
                rows.append({
                    "group": G.label, "order": G.order, "m": m,
                    "verdict": "EXISTS" if report.omsr else "FAILED",
                    "construction": report.construction_kind,
                    "aut_order": report.aut_order,
                })
    return rows


_SIMPLE_NAMES = {
    "Z2": ("cyclic", [2]),
    "Z3": ("cyclic", [3]),
    "Z5": ("cyclic", [5]),
    "Z7": ("cyclic", [7]),
    "A5": ("alternating", [5]),
}


def simple_group_check(name: str, m: int) -> VerificationReport:
    """Check a small simple group; only (Z2, m=2) is a certified exception."""
    if name not in _SIMPLE_NAMES:
        raise UnknownFamily(f"unknown simple group {name!r}; known: {sorted(_SIMPLE_NAMES)}")
    if name == "A5" and m > 3:
        raise TooLarge("A5 is limited to m <= 3 by the vertex cap")
    family, params = _SIMPLE_NAMES[name]
    G, pair = catalog_group(family, params)
    return verify_instance(G, pair, m)


# --- command implementations -------------------------------------------------

def _emit_json(path: Optional[str], payload) -> None:
    if path:
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _cmd_verify(args) -> int:
    G, pair = load_group(args.group)
    report = verify_instance(G, pair, args.m, recipe=args.recipe, regen=args.regen)
    print(report.summary())
    _emit_json(args.json, report.to_dict())
    if report.certificate is not None or report.omsr:
        return EXIT_OK
    return EXIT_FAILED


def _cmd_sweep(args) -> int:
    G, _ = load_group(args.group)
    result = sweeplib.exhaustive_sweep(G, args.m, valency=args.valency,
                                       all_witnesses=args.all_witnesses)
    print(f"{result.group_label} m={result.m} valency={result.valency}: "
          f"{result.verdict} ({result.tables_enumerated} tables, "
          f"{result.oriented_count} oriented, {len(result.witnesses)} witnesses, "
          f"max |Aut| {result.max_aut_order_seen})")
    for w in result.witnesses:
        print(w.to_text().rstrip())
        print("--")
    _emit_json(args.json, result.to_dict())
    return EXIT_OK


def _cmd_reproduce(args) -> int:
    rows = reproduce_theorem(args.max_order, args.max_m)
    width = max(len(r["group"]) for r in rows)
    for r in rows:
        print(f"{r['group']:<{width}}  m={r['m']}  {r['verdict']}")
    exceptions = sorted((r["m"], r["group"]) for r in rows if r["verdict"] == "NOT_EXISTS")
    print(f"exception rows: {exceptions}")
    _emit_json(args.json, rows)
    if any(r["verdict"] == "FAILED" for r in rows):
        return EXIT_FAILED
    return EXIT_OK


def _cmd_simple(args) -> int:
    report = simple_group_check(args.name, args.m)
    print(report.summary())
    _emit_json(args.json, report.to_dict())
    if report.certificate is not None or report.omsr:
        return EXIT_OK
    return EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omsr",
        description="Certify oriented m-semiregular representations of valency two.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify one (group, m) instance")
    p.add_argument("--group", required=True, help="group-spec file or catalog:<family>:<params>")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--recipe", choices=["auto", "cyclic", "abelian", "nonabelian"],
                   default="auto")
    p.add_argument("--regen", action="store_true",
                   help="ignore cached witness files and search afresh")
    p.add_argument("--json", help="write the report as JSON to this path")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sweep", help="exhaustively enumerate connection tables")
    p.add_argument("--group", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--valency", type=int, default=2)
    p.add_argument("--all-witnesses", action="store_true")
    p.add_argument("--json")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("reproduce", help="verdict table over the small-group roster")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--max-m", type=int, required=True)
    p.add_argument("--json")
    p.set_defaults(func=_cmd_reproduce)

    p = sub.add_parser("simple", help="spot-check a small simple group")
    p.add_argument("--name", required=True, help="one of Z2, Z3, Z5, Z7, A5")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--json")
    p.set_defaults(func=_cmd_simple)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UnknownFamily, NotGenerating, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (TooLarge, InfeasibleSweep, SearchBudgetExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OmsrError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
