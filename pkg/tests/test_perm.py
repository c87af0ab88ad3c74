from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixedsurf.errors import BudgetExceeded, ValidationError
from mixedsurf.perm import (Permutation, closure, conjugacy_class,
                            conjugacy_classes, derived_subgroup, fingerprint,
                            subgroup_as_group, subgroup_generated)


def test_permutation_validation():
    with pytest.raises(ValidationError):
        Permutation((1, 1, 3))
    p = Permutation.from_cycles(4, [(1, 2, 3)])
    assert p(1) == 2 and p(3) == 1 and p(4) == 4
    assert p.order() == 3
    assert (p * p.inverse()).is_identity()


def test_product_is_right_action():
    # (p * q)(i) = q(p(i)): apply p first.
    p = Permutation.from_cycles(3, [(1, 2)])
    q = Permutation.from_cycles(3, [(2, 3)])
    assert (p * q)(1) == 3


def test_closure_dihedral_and_cyclic(d4):
    assert d4.order == 8
    c5 = closure([Permutation.from_cycles(5, [(1, 2, 3, 4, 5)])])
    assert c5.order == 5


def test_closure_degree_mismatch():
    with pytest.raises(ValidationError):
        closure([Permutation.identity(3), Permutation.identity(4)])


def test_closure_budget():
    big = [Permutation.from_cycles(6, [(1, 2)]),
           Permutation.from_cycles(6, [(1, 2, 3, 4, 5, 6)])]
    with pytest.raises(BudgetExceeded):
        closure(big, budget=10)


def test_closure_idempotent(d4):
    again = closure(tuple(d4.elements), budget=d4.order + 1)
    assert {p.images for p in again.elements} == {p.images for p in d4.elements}
    assert again.order == d4.order


def test_index_round_trip(d4):
    for i in range(d4.order):
        assert d4.index_of(d4.element(i)) == i
    assert d4.element(0).is_identity()


def test_mul_matches_permutation_arithmetic(d4):
    for i in range(d4.order):
        for j in range(d4.order):
            assert d4.element(d4.mul(i, j)).images == (d4.element(i) * d4.element(j)).images
        assert (d4.element(i) * d4.element(d4.inv(i))).is_identity()


def test_order_of_matches_cycle_orders(d4):
    for i in range(d4.order):
        assert d4.order_of(i) == d4.element(i).order()


def test_word_for_reconstructs_elements(d4):
    for i in range(d4.order):
        acc = 0
        for c in d4.word_for(i):
            acc = d4.mul(acc, d4.index_of(d4.generators[c]))
        assert acc == i


def test_trivial_subgroup(d4):
    sub = subgroup_generated(d4, [0])
    assert sub.order == 1 and sub.members == (0,)


def test_subgroup_lagrange(s4):
    for seed in range(s4.order):
        assert s4.order % subgroup_generated(s4, [seed]).order == 0


def test_cyclic_subgroup_from_order_scan(d4):
    order4 = [i for i in range(d4.order) if d4.order_of(i) == 4]
    sub = subgroup_generated(d4, [order4[0]])
    assert sub.order == 4


def test_derived_subgroup_abelian_is_trivial():
    z6 = closure([Permutation.from_cycles(6, [(1, 2, 3, 4, 5, 6)])])
    assert derived_subgroup(z6).order == 1


def test_derived_subgroup_d4_is_center(d4):
    der = derived_subgroup(d4)
    assert der.order == 2
    z = [m for m in der.members if m != 0][0]
    assert all(d4.mul(z, i) == d4.mul(i, z) for i in range(d4.order))


def test_conjugacy_classes(d4):
    assert conjugacy_class(d4, 0) == frozenset({0})
    central = [i for i in range(1, d4.order)
               if all(d4.mul(i, j) == d4.mul(j, i) for j in range(d4.order))]
    assert conjugacy_class(d4, central[0]) == frozenset({central[0]})
    noncentral_invol = [i for i in range(d4.order)
                        if d4.order_of(i) == 2 and i not in central]
    assert len(conjugacy_class(d4, noncentral_invol[0])) == 2
    assert sum(len(c) for c in conjugacy_classes(d4)) == d4.order


def test_fingerprint_trivial_group():
    triv = closure([Permutation.identity(1)])
    fp = fingerprint(triv)
    assert fp.order == 1
    assert fp.element_orders == ((1, 1),)
    assert fp.abelianization == ()
    assert fp.derived_series == (1,)


def test_fingerprint_d4(d4):
    fp = fingerprint(d4)
    assert fp.order == 8
    assert fp.element_orders == ((1, 1), (2, 5), (4, 2))
    assert fp.abelianization == (2, 2)
    assert fp.derived_series == (8, 2, 1)
    assert fp.center_order == 2
    assert fp.class_count == 5


def test_fingerprint_round_trip(d4):
    fp = fingerprint(d4)
    from mixedsurf.perm import GroupFingerprint
    assert GroupFingerprint.from_dict(fp.as_dict()) == fp


def test_subgroup_as_group(s4):
    sub = subgroup_generated(s4, [s4.index_of(Permutation.from_cycles(4, [(1, 2, 3)]))])
    grp = subgroup_as_group(sub)
    assert grp.order == sub.order == 3


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=23), min_size=1, max_size=3))
def test_random_subgroups_satisfy_lagrange(seeds):
    s4 = closure([Permutation.from_cycles(4, [(1, 2)]),
                  Permutation.from_cycles(4, [(1, 2, 3, 4)])])
    sub = subgroup_generated(s4, seeds)
    assert s4.order % sub.order == 0
    # closed under multiplication and inversion
    for a in sub.members[:6]:
        assert s4.inv(a) in sub.member_set
        for b in sub.members[:6]:
            assert s4.mul(a, b) in sub.member_set


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=23), st.integers(min_value=0, max_value=23))
def test_conjugacy_is_equivalence(i, j):
    s4 = closure([Permutation.from_cycles(4, [(1, 2)]),
                  Permutation.from_cycles(4, [(1, 2, 3, 4)])])
    ci = conjugacy_class(s4, i)
    assert i in ci
    cj = conjugacy_class(s4, j)
    assert (ci == cj) or not (ci & cj)
