#!/usr/bin/env python3
"""Print the full orbit-divisor analysis for every bundled family.

For each family: surface invariants, freeness, the intersection table,
the numerical-class partition and the cone verdict.  A compact way to see
everything the pipeline produces in one run.

Usage:  python scripts/show_tables.py [families...]
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from mixedsurf.cli import bundled_spec_path, _print_table
from mixedsurf.cone import cone_report
from mixedsurf.divisors import graph_orbits, intersection_table
from mixedsurf.files import build_surface
from mixedsurf.surface import check_free_action


def show(family: int):
    t0 = time.time()
    surface = build_surface(bundled_spec_path(family))
    freeness = check_free_action(surface)
    orbits = graph_orbits(surface.h_group, surface)
    table = intersection_table(orbits, surface, surface.h_covering)
    report = cone_report(table)
    print(f"=== family {family} "
          f"(|G| = {surface.action.G.order}, |H| = {surface.h_group.order}) ===")
    print(f"g(C) = {surface.covering.genus}; chi = {surface.chi}, "
          f"K^2 = {surface.k2}, e = {surface.euler}, q = {surface.q}, "
          f"p_g = {surface.pg}")
    print(f"free action: {freeness.ok}")
    _print_table(table, sys.stdout)
    for c in report.classes:
        members = ", ".join(f"D{m}" for m in c.members)
        print(f"class ({c.coordinates[0]}, {c.coordinates[1]}): {members}")
    if report.witness:
        a, a2, b, b2 = report.witness
        print(f"witness quadruple: D{a} ~ D{a2}, D{b} ~ D{b2}")
    print(f"verdict: {report.verdict}   ({time.time() - t0:.1f}s)")
    print()


def main():
    families = [int(a) for a in sys.argv[1:]] or [1, 2, 3, 4, 5]
    for fam in families:
        show(fam)


if __name__ == "__main__":
    main()
