"""Command-line front end.

Commands::

    mixedsurf group <file>
    mixedsurf genvec search <groupfile> --type "[0;2,3,8]" [--limit N]
    mixedsurf surface <spec>
    mixedsurf divisors <spec> [--format table|record] [--g0-only]
    mixedsurf cone <spec> [--format table|record]
    mixedsurf reproduce <1|2|3|4|5> [--expect-divisors N]

Global flags: --parallel N, --budget-closure N, --budget-cosets N.

Exit codes: 0 success; 2 parse error; 3 validation error; 4 internal
exactness assertion; 5 mismatch (fingerprint or reproduction diff).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .cone import cone_report
from .coset import DEFAULT_COSET_BUDGET
from .covering import parse_cover_type, search_generating_vectors
from .divisors import graph_orbits, intersection_table
from .errors import (InputParseError, IntegrityError, MismatchError,
                     MixedSurfError, ValidationError)
from .expected import FAMILY_EXPECTATIONS, FAMILY_FILES, compare_family
from .files import load_group, load_group_record, realize_group, build_surface
from .perm import DEFAULT_CLOSURE_BUDGET, fingerprint
from .surface import check_free_action

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_ASSERTION = 4
EXIT_MISMATCH = 5


@dataclass(frozen=True)
class RunConfig:
    command: str
    paths: tuple[str, ...]
    output_format: str
    parallel: int
    closure_budget: int
    coset_budget: int

    def __post_init__(self):
        if self.parallel < 1 or self.closure_budget < 1 or self.coset_budget < 1:
            raise ValidationError("budgets and parallelism width must be positive")
        if self.output_format not in ("table", "record"):
            raise ValidationError(f"unknown output format {self.output_format!r}")


def _record_dump(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def _word_of(group, index: int) -> str:
    word = group.word_for(index)
    if not word:
        return "1"
    return "*".join(f"g{c + 1}" for c in word)


def cmd_group(cfg: RunConfig, out) -> int:
    record = load_group_record(cfg.paths[0])
    group = realize_group(record, budget=cfg.closure_budget)
    computed = fingerprint(group)
    out.write(f"name: {record.name}\nclaimed_id: {record.claimed_id}\n")
    out.write(f"degree: {record.degree}\norder: {group.order}\n")
    mismatches = []
    for field in ("order", "element_orders", "abelianization", "derived_series",
                  "center_order", "class_count"):
        got = getattr(computed, field)
        want = getattr(record.fingerprint, field)
        status = "ok" if got == want else "MISMATCH"
        if got != want:
            mismatches.append(field)
        out.write(f"fingerprint.{field}: computed={got} expected={want} [{status}]\n")
    if mismatches:
        raise MismatchError(f"fingerprint mismatch in fields: {', '.join(mismatches)}")
    out.write("fingerprint: match\n")
    return EXIT_OK


def cmd_genvec_search(cfg: RunConfig, type_text: str, limit: int | None, out) -> int:
    group, _ = load_group(cfg.paths[0], budget=cfg.closure_budget)
    ctype = parse_cover_type(type_text)
    found = search_generating_vectors(group, ctype, limit=limit)
    for k, vec in enumerate(found, start=1):
        words = ", ".join(_word_of(group, e) for e in vec.entries)
        out.write(f"{k}: {words}\n")
    out.write(f"found {len(found)} generating vector(s) of type {ctype}"
              f" up to simultaneous conjugation\n")
    return EXIT_OK


def _load_pipeline(cfg: RunConfig, use_extra: bool = True):
    surface = build_surface(cfg.paths[0], closure_budget=cfg.closure_budget,
                            parallel=cfg.parallel, use_extra=use_extra)
    freeness = check_free_action(surface)
    return surface, freeness


def cmd_surface(cfg: RunConfig, out) -> int:
    surface, freeness = _load_pipeline(cfg)
    out.write(f"g(C) = {surface.covering.genus}\n")
    out.write(f"chi = {surface.chi}\nK^2 = {surface.k2}\ne = {surface.euler}\n")
    out.write(f"q = {surface.q}\np_g = {surface.pg}\n")
    out.write(f"free action: no isolated fixed points = {freeness.no_isolated_fixed_points}, "
              f"no fixed curves = {freeness.no_fixed_curves}\n")
    if freeness.isolated_witness is not None:
        out.write(f"  witness (isolated fixed point): element "
                  f"{_word_of(surface.action.G, freeness.isolated_witness)}\n")
    if freeness.curve_witness is not None:
        out.write(f"  witness (fixed curve): element "
                  f"{_word_of(surface.action.G, freeness.curve_witness)}\n")
    if not freeness.ok:
        raise ValidationError("the action is not free")
    return EXIT_OK


def _compute_table(cfg: RunConfig, use_extra: bool = True):
    surface, freeness = _load_pipeline(cfg, use_extra=use_extra)
    if not freeness.ok:
        raise ValidationError("the action is not free; no smooth quotient surface")
    orbits = graph_orbits(surface.h_group, surface)
    table = intersection_table(orbits, surface, surface.h_covering, parallel=cfg.parallel)
    return surface, freeness, table


def _table_payload(table) -> dict:
    return {
        "divisors": [
            {"label": d.label, "size": d.n, "kdot": table.kdot[i],
             "row": list(table.pairing[i])}
            for i, d in enumerate(table.divisors)
        ],
        "genus_minus_1": table.genus_minus_1,
        "order_g": table.order_g,
    }


def _print_table(table, out):
    labels = table.labels
    width = max(2, *(len(str(x)) for row in table.pairing for x in row),
                *(len(str(k)) for k in table.kdot),
                *(len(f"D{l}") for l in labels))
    head = " " * (width + 7) + " ".join(f"D{l}".rjust(width) for l in labels)
    out.write(head + "\n")
    for i, d in enumerate(table.divisors):
        row = " ".join(str(x).rjust(width) for x in table.pairing[i])
        out.write(f"D{d.label}".rjust(width) + f" n={d.n}".ljust(7)[:7] + row + "\n")
    out.write("K.D: " + " ".join(str(k).rjust(width) for k in table.kdot) + "\n")


def cmd_divisors(cfg: RunConfig, out, use_extra: bool = True) -> int:
    surface, _, table = _compute_table(cfg, use_extra=use_extra)
    if cfg.output_format == "record":
        out.write(_record_dump(_table_payload(table)))
        return EXIT_OK
    out.write(f"{len(table.divisors)} orbit divisors; orbit sizes "
              f"{[d.n for d in table.divisors]}\n")
    _print_table(table, out)
    return EXIT_OK


def cmd_cone(cfg: RunConfig, out) -> int:
    surface, _, table = _compute_table(cfg)
    report = cone_report(table)
    if cfg.output_format == "record":
        payload = {
            "verdict": report.verdict,
            "basis": list(report.basis) if report.basis else None,
            "generators": list(report.generators) if report.generators else None,
            "witness": list(report.witness) if report.witness else None,
            "classes": [
                {"coordinates": [str(c.coordinates[0]), str(c.coordinates[1])],
                 "members": list(c.members)}
                for c in report.classes
            ],
            "notes": list(report.notes),
        }
        out.write(_record_dump(payload))
        return EXIT_OK
    out.write(f"verdict: {report.verdict}\n")
    if report.basis:
        out.write(f"basis: D{report.basis[0]}, D{report.basis[1]}\n")
    if report.generators:
        out.write(f"cone generators: D{report.generators[0]}, D{report.generators[1]}\n")
    if report.witness:
        a, a2, b, b2 = report.witness
        out.write(f"witness quadruple: D{a} ~ D{a2}, D{b} ~ D{b2}\n")
    for c in report.classes:
        x, y = c.coordinates
        members = ", ".join(f"D{m}" for m in c.members)
        out.write(f"class ({x}, {y}): {members}\n")
    for note in report.notes:
        out.write(f"note: {note}\n")
    return EXIT_OK


def bundled_spec_path(family: int) -> Path:
    data = resources.files("mixedsurf").joinpath("data")
    return Path(str(data.joinpath(FAMILY_FILES[family])))


def cmd_reproduce(cfg: RunConfig, family: int, expect_divisors: int | None, out) -> int:
    spec_path = bundled_spec_path(family)
    sub_cfg = RunConfig(cfg.command, (str(spec_path),), cfg.output_format,
                        cfg.parallel, cfg.closure_budget, cfg.coset_budget)
    surface, freeness, table = _compute_table(sub_cfg)
    report = cone_report(table)
    items = compare_family(FAMILY_EXPECTATIONS[family], surface, freeness, table,
                           report, orbit_count_override=expect_divisors)
    failed = [name for name, ok, _ in items if not ok]
    for name, ok, detail in items:
        out.write(f"[{'PASS' if ok else 'FAIL'}] family {family} {name}: {detail}\n")
    if failed:
        raise MismatchError(f"family {family} reproduction failed: {', '.join(failed)}")
    out.write(f"family {family}: all checks passed\n")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mixedsurf",
        description="Orbit divisors and cone verdicts for mixed product-quotient surfaces")
    parser.add_argument("--parallel", type=int, default=1, metavar="N",
                        help="parallelism width hint (results are identical for any N)")
    parser.add_argument("--budget-closure", type=int, default=DEFAULT_CLOSURE_BUDGET,
                        metavar="N", help="element budget for group closures")
    parser.add_argument("--budget-cosets", type=int, default=DEFAULT_COSET_BUDGET,
                        metavar="N", help="coset budget for presentation enumeration")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", help="validate a group data file against its fingerprint")
    p.add_argument("file")

    p = sub.add_parser("genvec", help="generating-vector tools")
    gsub = p.add_subparsers(dest="genvec_command", required=True)
    ps = gsub.add_parser("search", help="search generating vectors of a given type")
    ps.add_argument("file")
    ps.add_argument("--type", required=True, dest="type_text", metavar="TYPE",
                    help='cover type, e.g. "[0;2,3,8]" or "[0;2^5]"')
    ps.add_argument("--limit", type=int, default=None)

    p = sub.add_parser("surface", help="invariants and freeness report for a surface file")
    p.add_argument("spec")

    p = sub.add_parser("divisors", help="orbit divisors and intersection table")
    p.add_argument("spec")
    p.add_argument("--format", choices=("table", "record"), default="table")
    p.add_argument("--g0-only", action="store_true",
                   help="ignore the extra-automorphism block (covering group = G0)")

    p = sub.add_parser("cone", help="numerical classes and Mori-dream verdict")
    p.add_argument("spec")
    p.add_argument("--format", choices=("table", "record"), default="table")

    p = sub.add_parser("reproduce", help="run a bundled family and diff against "
                                         "its expected results")
    p.add_argument("family", type=int, choices=(1, 2, 3, 4, 5))
    p.add_argument("--expect-divisors", type=int, default=None,
                   help="override the expected orbit-divisor count (harness testing)")

    return parser


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = make_parser()
    args = parser.parse_args(argv)
    paths = tuple(getattr(args, name) for name in ("file", "spec") if hasattr(args, name))
    try:
        cfg = RunConfig(args.command, paths, getattr(args, "format", "table"),
                        args.parallel, args.budget_closure, args.budget_cosets)
        if args.command == "group":
            return cmd_group(cfg, out)
        if args.command == "genvec":
            return cmd_genvec_search(cfg, args.type_text, args.limit, out)
        if args.command == "surface":
            return cmd_surface(cfg, out)
        if args.command == "divisors":
            return cmd_divisors(cfg, out, use_extra=not args.g0_only)
        if args.command == "cone":
            return cmd_cone(cfg, out)
        if args.command == "reproduce":
            return cmd_reproduce(cfg, args.family, args.expect_divisors, out)
        raise ValidationError(f"unknown command {args.command!r}")
    except InputParseError as exc:
        out.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except ValidationError as exc:
        out.write(f"validation error: {exc}\n")
        return EXIT_VALIDATION
    except IntegrityError as exc:
        out.write(f"integrity assertion failed: {exc}\n")
        return EXIT_ASSERTION
    except MismatchError as exc:
        out.write(f"mismatch: {exc}\n")
        return EXIT_MISMATCH


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
