"""Branched Galois covers of the line: generating vectors and fixed points.

A finite group H acting on a curve C with quotient C/H of genus g' and r
branch points of indices m_1..m_r is encoded by a generating vector: a
tuple of elements (h_1, ..., h_r) of orders m_i with product 1 generating
H (only g' = 0 is supported end to end).  From the vector we derive the
genus of C (Riemann-Hurwitz), the stabilizer set (the elements acting with
fixed points), and exact fixed-point counts

    |Fix(f)| = sum_j (1/m_j) * #{ g in H : f in g <h_j> g^-1 },

accumulated in exact rationals with integrality asserted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import IntegrityError, ValidationError
from .perm import FiniteGroup, conjugacy_class, subgroup_generated
from .util import pmap


@dataclass(frozen=True)
class CoverType:
    """Cover signature [g'; m_1, ..., m_r]."""

    g_prime: int
    m: tuple[int, ...]

    def __post_init__(self):
        if self.g_prime < 0:
            raise ValidationError("quotient genus must be nonnegative")
        if any(mi < 2 for mi in self.m):
            raise ValidationError("branching indices must be at least 2")

    @property
    def r(self) -> int:
        return len(self.m)

    def __str__(self):
        return f"[{self.g_prime};{','.join(map(str, self.m))}]"


_TYPE_RE = re.compile(r"^\[\s*(\d+)\s*;(.*)\]$")
_ENTRY_RE = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_cover_type(text: str) -> CoverType:
    """Parse "[0;2,3,8]" or the power shorthand "[0;2^5]"."""
    m = _TYPE_RE.match(text.strip())
    if not m:
        raise ValidationError(f"malformed cover type {text!r}")
    indices: list[int] = []
    for part in m.group(2).split(","):
        em = _ENTRY_RE.match(part.strip())
        if not em:
            raise ValidationError(f"malformed branching index {part.strip()!r}")
        indices.extend([int(em.group(1))] * int(em.group(2) or 1))
    return CoverType(int(m.group(1)), tuple(indices))


@dataclass(frozen=True)
class GeneratingVector:
    """An ordered tuple of element indices of the covering group."""

    group: FiniteGroup
    cover_type: CoverType
    entries: tuple[int, ...]


def hurwitz_genus(order: int, cover_type: CoverType) -> int:
    """Genus of C from 2g - 2 = |H| (2g' - 2 + sum (m_i - 1)/m_i)."""
    if order < 1:
        raise ValidationError("group order must be positive")
    rhs = Fraction(2 * cover_type.g_prime - 2)
    for mi in cover_type.m:
        rhs += Fraction(mi - 1, mi)
    g = 1 + Fraction(order) * rhs / 2
    if g.denominator != 1:
        raise ValidationError(
            f"type {cover_type} with group order {order} gives non-integral genus {g}")
    return int(g)


@dataclass(frozen=True)
class VectorReport:
    orders_ok: bool
    product_ok: bool
    generates_ok: bool
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.orders_ok and self.product_ok and self.generates_ok


def _require_genus_zero_quotient(cover_type: CoverType):
    if cover_type.g_prime != 0:
        raise ValidationError(
            f"cover type {cover_type}: only genus-0 quotients are supported (g' > 0 unsupported)")


def validate_generating_vector(v: GeneratingVector) -> VectorReport:
    """Check the three defining conditions, reporting each separately."""
    _require_genus_zero_quotient(v.cover_type)
    G = v.group
    failures = []
    if len(v.entries) != v.cover_type.r:
        raise ValidationError(
            f"vector has {len(v.entries)} entries but type {v.cover_type} needs {v.cover_type.r}")
    orders_ok = True
    for i, (h, mi) in enumerate(zip(v.entries, v.cover_type.m)):
        o = G.order_of(h)
        if o != mi:
            orders_ok = False
            failures.append(f"orders: entry {i + 1} has order {o}, expected {mi}")
    acc = 0
    for h in v.entries:
        acc = G.mul(acc, h)
    product_ok = acc == 0
    if not product_ok:
        failures.append("product: entries do not multiply to the identity")
    generates_ok = subgroup_generated(G, v.entries).order == G.order
    if not generates_ok:
        failures.append("generates: entries generate a proper subgroup")
    return VectorReport(orders_ok, product_ok, generates_ok, tuple(failures))


def stabilizer_set(v: GeneratingVector) -> frozenset[int]:
    """All conjugates of all powers of the branch generators (identity included)."""
    G = v.group
    out = {0}
    for h in v.entries:
        k = h
        while k != 0:
            out |= conjugacy_class(G, k)
            k = G.mul(k, h)
    return frozenset(out)


def branch_stabilizers(v: GeneratingVector) -> tuple[tuple[int, ...], ...]:
    """The cyclic subgroups <h_j>, each listed as (h_j, h_j^2, ..., 1)."""
    G = v.group
    subs = []
    for h in v.entries:
        powers = []
        k = h
        while k != 0:
            powers.append(k)
            k = G.mul(k, h)
        powers.append(0)
        subs.append(tuple(powers))
    return tuple(subs)


def _membership_counter(G: FiniteGroup, powers: tuple[int, ...]) -> dict[int, int]:
    """counter[x] = #{ g in H : x in g K g^-1 } for K the cyclic subgroup.

    Every coset has |K| distinct conjugates g k g^-1 over k in K, so counting
    conjugates of each nontrivial power with multiplicity equals membership
    counting (the identity is skipped; it lies in every conjugate).
    """
    counter: dict[int, int] = {}
    for g in range(G.order):
        for p in powers:
            if p == 0:
                continue
            x = G.conj(g, p)
            counter[x] = counter.get(x, 0) + 1
    return counter


def fixed_point_count(f: int, v: GeneratingVector) -> int:
    """Exact number of fixed points of the non-trivial automorphism f on C."""
    if f == 0:
        raise ValidationError("fixed-point counts are defined for non-identity elements only")
    G = v.group
    total = Fraction(0)
    for h, mj in zip(v.entries, v.cover_type.m):
        cyclic = {0}
        k = h
        while k != 0:
            cyclic.add(k)
            k = G.mul(k, h)
        # f in gKg^-1 for as many g as g f g^-1 in K (g <-> g^-1 is a bijection)
        member = sum(1 for g in range(G.order) if G.conj(g, f) in cyclic)
        total += Fraction(member, mj)
    if total.denominator != 1:
        raise IntegrityError(f"fixed-point count for element {f} is non-integral: {total}")
    return int(total)


def fixed_point_table(v: GeneratingVector, parallel: int = 1) -> dict[int, int]:
    """Fixed-point counts for every non-identity element, in one pass."""
    _require_genus_zero_quotient(v.cover_type)
    G = v.group
    stabs = branch_stabilizers(v)
    counters = pmap(lambda powers: _membership_counter(G, powers), stabs, parallel)
    table: dict[int, int] = {}
    for f in range(1, G.order):
        total = Fraction(0)
        for counter, mj in zip(counters, v.cover_type.m):
            total += Fraction(counter.get(f, 0), mj)
        if total.denominator != 1:
            raise IntegrityError(f"fixed-point count for element {f} is non-integral: {total}")
        table[f] = int(total)
    return table


@dataclass(frozen=True)
class CoveringData:
    """Everything the rest of the pipeline needs about one branched cover."""

    vector: GeneratingVector
    genus: int
    branch_stabilizers: tuple[tuple[int, ...], ...]
    sigma_v: frozenset[int]
    fix_table: dict[int, int] | None

    def fixed_points(self, f: int) -> int:
        if f == 0:
            raise ValidationError("the identity has no fixed-point count")
        if self.fix_table is None:
            return fixed_point_count(f, self.vector)
        return self.fix_table[f]


def covering_data(v: GeneratingVector, with_fix_table: bool = True,
                  parallel: int = 1) -> CoveringData:
    report = validate_generating_vector(v)
    if not report.ok:
        raise ValidationError("invalid generating vector: " + "; ".join(report.failures))
    genus = hurwitz_genus(v.group.order, v.cover_type)
    sigma = stabilizer_set(v)
    table = fixed_point_table(v, parallel) if with_fix_table else None
    if table is not None:
        ram = sum(table.values())
        expected = sum((v.group.order // mj) * (mj - 1) for mj in v.cover_type.m)
        if ram != expected:
            raise IntegrityError(
                f"ramification sum {ram} != {expected} for type {v.cover_type}")
        for f, count in table.items():
            if (count > 0) != (f in sigma):
                raise IntegrityError(
                    f"element {f}: fixed-point count {count} inconsistent with stabilizer set")
    return CoveringData(v, genus, branch_stabilizers(v), sigma, table)


def search_generating_vectors(group: FiniteGroup, cover_type: CoverType,
                              limit: int | None = None) -> list[GeneratingVector]:
    """Deterministic scan for generating vectors of the given genus-0 type.

    The first entry runs over conjugacy-class representatives of its order,
    later entries over all elements of the right order; the final entry is
    forced as the inverse of the leading product.  Results are reported in
    scan order, deduplicated up to simultaneous conjugation, and truncated
    at ``limit`` (``None`` = no bound).
    """
    _require_genus_zero_quotient(cover_type)
    if cover_type.r < 2:
        raise ValidationError("a genus-0 vector needs at least two branch points")
    G = group
    by_order: dict[int, list[int]] = {}
    for mi in set(cover_type.m):
        by_order[mi] = [i for i in range(G.order) if G.order_of(i) == mi]

    first_reps = []
    seen: set[int] = set()
    for i in by_order[cover_type.m[0]]:
        if i in seen:
            continue
        cls = conjugacy_class(G, i)
        seen |= cls
        first_reps.append(i)

    def canonical(entries: tuple[int, ...]) -> tuple[int, ...]:
        best = entries
        for g in range(G.order):
            cand = tuple(G.conj(g, h) for h in entries)
            if cand < best:
                best = cand
        return best

    found: list[GeneratingVector] = []
    found_keys: set[tuple[int, ...]] = set()
    r = cover_type.r

    def descend(position: int, prefix: tuple[int, ...], product: int, span: frozenset[int]):
        if limit is not None and len(found) >= limit:
            return
        if position == r - 1:
            last = G.inv(product)
            if G.order_of(last) != cover_type.m[-1]:
                return
            if span != frozenset(range(G.order)):
                if subgroup_generated(G, prefix + (last,)).order != G.order:
                    return
            entries = prefix + (last,)
            key = canonical(entries)
            if key in found_keys:
                return
            found_keys.add(key)
            found.append(GeneratingVector(G, cover_type, entries))
            return
        pool = first_reps if position == 0 else by_order[cover_type.m[position]]
        for h in pool:
            if limit is not None and len(found) >= limit:
                return
            new_span = span
            if h not in span:
                new_span = subgroup_generated(G, prefix + (h,)).member_set
            descend(position + 1, prefix + (h,), G.mul(product, h), new_span)

    descend(0, (), 0, frozenset({0}))
    return found
