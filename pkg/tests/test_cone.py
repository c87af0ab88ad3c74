from __future__ import annotations

from fractions import Fraction

import pytest

from mixedsurf.cone import (VERDICT_INCONCLUSIVE, VERDICT_MORI_DREAM,
                            choose_basis, cone_report, divfq_conditions_hold,
                            find_divfq_quadruple, numerical_classes)
from mixedsurf.divisors import IntersectionTable, OrbitDivisor
from mixedsurf.errors import ValidationError


def _synthetic_table(pairing, kdot=None):
    n = len(pairing)
    divisors = tuple(OrbitDivisor(i + 1, (i,)) for i in range(n))
    kdot = tuple(kdot if kdot is not None else [0] * n)
    return IntersectionTable(divisors, tuple(tuple(r) for r in pairing), kdot, 1, 1)


def test_choose_basis_family1(family1):
    i, j = family1.report.basis
    t = family1.table
    assert t.entry(i, i) == 0 and t.entry(j, j) == 0 and t.entry(i, j) == 4


def test_choose_basis_family2(family2):
    i, j = family2.report.basis
    t = family2.table
    assert t.entry(i, i) == 0 and t.entry(j, j) == 0 and t.entry(i, j) == 16


def test_choose_basis_rejects_rank_one():
    t = _synthetic_table([[2, 2], [2, 2]])
    with pytest.raises(ValidationError):
        choose_basis(t)


def test_numerical_classes_family1(family1):
    classes = family1.report.classes
    shapes = sorted((c.coordinates, len(c.members)) for c in classes)
    assert shapes == [((Fraction(0), Fraction(1)), 2), ((Fraction(1), Fraction(0)), 2)]


def test_numerical_classes_family2(family2):
    classes = family2.report.classes
    shapes = sorted((c.coordinates, len(c.members)) for c in classes)
    assert shapes == [
        ((Fraction(0), Fraction(1)), 3),
        ((Fraction(1, 2), Fraction(1, 2)), 4),
        ((Fraction(1), Fraction(0)), 3),
        ((Fraction(1), Fraction(1)), 3),
        ((Fraction(2), Fraction(2)), 2),
    ]


def test_basis_members_have_unit_coordinates(family1, family2):
    for bundle in (family1, family2):
        i, j = bundle.report.basis
        coords = {}
        for c in bundle.report.classes:
            for m in c.members:
                coords[m] = c.coordinates
        assert coords[i] == (Fraction(1), Fraction(0))
        assert coords[j] == (Fraction(0), Fraction(1))


def test_classes_partition_labels(family2):
    labels = sorted(m for c in bundle_classes(family2) for m in c.members)
    assert labels == list(family2.table.labels)


def bundle_classes(bundle):
    return bundle.report.classes


def test_find_divfq_family1(family1):
    quad = find_divfq_quadruple(family1.table)
    assert quad is not None
    assert divfq_conditions_hold(family1.table, quad)


def test_find_divfq_family2(family2):
    quad = find_divfq_quadruple(family2.table)
    assert quad is not None
    assert divfq_conditions_hold(family2.table, quad)
    d1, d2, d3, d4 = quad
    t = family2.table
    assert t.entry(d1, d2) == 16


def test_find_divfq_none_when_all_self_positive():
    t = _synthetic_table([[2, 1], [1, 2]])
    assert find_divfq_quadruple(t) is None


def test_cone_report_families(family1, family2):
    for bundle in (family1, family2):
        rep = bundle.report
        assert rep.verdict == VERDICT_MORI_DREAM
        assert rep.generators is not None
        a, a2, b, b2 = rep.witness
        assert rep.generators == (a, b)
        # partners are numerically equivalent
        coords = {m: c.coordinates for c in rep.classes for m in c.members}
        assert coords[a] == coords[a2]
        assert coords[b] == coords[b2]


def test_cone_report_negative_entry_noted():
    pairing = [[-2, 1, 0, 0],
               [1, 0, 0, 0],
               [0, 0, 0, 1],
               [0, 0, 1, 0]]
    rep = cone_report(_synthetic_table(pairing))
    assert rep.verdict == VERDICT_INCONCLUSIVE
    assert any("negative self-intersection" in n for n in rep.notes)


def test_cone_report_empty_table():
    rep = cone_report(_synthetic_table([]))
    assert rep.verdict == VERDICT_INCONCLUSIVE


def test_witness_reverifies_standalone(family2):
    rep = family2.report
    a, a2, b, b2 = rep.witness
    assert divfq_conditions_hold(family2.table, (a, b, b2, a2))


def test_verdict_monotone_under_added_divisors(family1):
    # appending a copy of an existing null divisor's row keeps the verdict
    t = family1.table
    n = len(t.labels)
    first_row = list(t.pairing[0])
    pairing = [list(row) + [row[0]] for row in t.pairing]
    pairing.append(first_row + [t.pairing[0][0]])
    bigger = _synthetic_table(pairing, kdot=list(t.kdot) + [t.kdot[0]])
    assert cone_report(bigger).verdict == VERDICT_MORI_DREAM
