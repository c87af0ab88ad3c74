"""Exact permutation groups with full element enumeration.

Conventions used throughout the package:

* points are labeled ``1..n``; ``images[i]`` is the image of point ``i+1``;
* products compose left to right, ``(p * q)(i) == q(p(i))``, i.e.
  permutations act on the right (the usual computational convention);
* every :class:`FiniteGroup` stores its complete element list in a
  deterministic order: breadth-first over words in the generators, ties
  within a BFS layer broken by lexicographic image sequence.  The identity
  always has index 0.

Groups of order up to a few thousand are the target; multiplication is
backed by an index-level Cayley table built in O(|G|^2) from the BFS
parent structure, so downstream code works with integer element indices
and never composes image arrays in inner loops.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field
from math import lcm
from typing import Iterable, Sequence

from .errors import BudgetExceeded, IntegrityError, ValidationError

DEFAULT_CLOSURE_BUDGET = 10**6


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n} stored as its image sequence."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValidationError(f"image sequence {self.images!r} is not a bijection of 1..{n}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(tuple(range(1, degree + 1)))

    @staticmethod
    def from_cycles(degree: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        images = list(range(1, degree + 1))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + type(cycle)([cycle[0]])):
                images[a - 1] = b
        return Permutation(tuple(images))

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise ValidationError("degree mismatch in permutation product")
        o = other.images
        return Permutation(tuple(o[i - 1] for i in self.images))

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, img in enumerate(self.images):
            inv[img - 1] = i + 1
        return Permutation(tuple(inv))

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def is_identity(self) -> bool:
        return all(img == i + 1 for i, img in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its minimal point."""
        seen = [False] * self.degree
        out = []
        for start in range(1, self.degree + 1):
            if seen[start - 1]:
                continue
            cyc = [start]
            seen[start - 1] = True
            nxt = self(start)
            while nxt != start:
                cyc.append(nxt)
                seen[nxt - 1] = True
                nxt = self(nxt)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __repr__(self):
        cyc = self.cycles()
        if not cyc:
            return f"Permutation.identity({self.degree})"
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)
        return f"Perm[{self.degree}]{body}"


class FiniteGroup:
    """A finite permutation group with its full, canonically ordered element list.

    Use :func:`closure` to construct one.  Elements are addressed by index;
    ``mul``/``inv``/``conj`` work on indices through a lazily built Cayley
    table, making all inner-loop arithmetic O(1).
    """

    def __init__(self, degree: int, generators: tuple[Permutation, ...],
                 elements: tuple[Permutation, ...], parents: tuple[tuple[int, int], ...],
                 gen_step: list[array]):
        self.degree = degree
        self.generators = generators
        self.elements = elements
        self.index = {e.images: i for i, e in enumerate(elements)}
        # parents[i] = (j, c) with elements[i] == elements[j] * generators[c];
        # parents[0] is (-1, -1) for the identity.
        self._parents = parents
        self._gen_step = gen_step  # gen_step[c][k] = index(elements[k] * generators[c])
        self._mul_rows: list[array] | None = None
        self._inv: array | None = None
        self._orders: list[int] | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def element(self, i: int) -> Permutation:
        return self.elements[i]

    def index_of(self, p: Permutation) -> int:
        try:
            return self.index[p.images]
        except KeyError:
            raise ValidationError("permutation is not an element of this group") from None

    def __contains__(self, p: Permutation) -> bool:
        return p.images in self.index

    def _ensure_tables(self):
        if self._mul_rows is not None:
            return
        n = self.order
        rows = []
        parents = self._parents
        steps = self._gen_step
        for i in range(n):
            row = array("i", bytes(4 * n))
            row[0] = i
            for j in range(1, n):
                pj, cj = parents[j]
                row[j] = steps[cj][row[pj]]
            rows.append(row)
        self._mul_rows = rows
        inv = array("i", bytes(4 * n))
        for i in range(n):
            inv[i] = rows[i].index(0)
        self._inv = inv

    def mul(self, i: int, j: int) -> int:
        self._ensure_tables()
        return self._mul_rows[i][j]

    def inv(self, i: int) -> int:
        self._ensure_tables()
        return self._inv[i]

    def conj(self, g: int, x: int) -> int:
        """Index of g * x * g^-1."""
        self._ensure_tables()
        rows = self._mul_rows
        return rows[rows[g][x]][self._inv[g]]

    def power(self, i: int, k: int) -> int:
        self._ensure_tables()
        if k < 0:
            i, k = self._inv[i], -k
        acc = 0
        for _ in range(k):
            acc = self._mul_rows[acc][i]
        return acc

    def order_of(self, i: int) -> int:
        if self._orders is None:
            self._ensure_tables()
            orders = []
            for j in range(self.order):
                k, acc = 1, j
                while acc != 0:
                    acc = self._mul_rows[acc][j]
                    k += 1
                orders.append(k)
            self._orders = orders
        return self._orders[i]

    def word_for(self, i: int) -> list[int]:
        """Generator indices whose left-to-right product is element i."""
        word: list[int] = []
        while i != 0:
            j, c = self._parents[i]
            word.append(c)
            i = j
        word.reverse()
        return word

    def __repr__(self):
        return f"FiniteGroup(order={self.order}, degree={self.degree}, ngens={len(self.generators)})"


def closure(generators: Sequence[Permutation], budget: int = DEFAULT_CLOSURE_BUDGET) -> FiniteGroup:
    """Generate the group closure of ``generators``.

    Element ordering is breadth-first over words in the generators with ties
    inside each layer broken by lexicographic image sequence; the identity is
    element 0.  Raises :class:`BudgetExceeded` if the closure grows past
    ``budget`` elements.
    """
    gens = tuple(generators)
    if not gens:
        raise ValidationError("at least one generator is required")
    degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise ValidationError("generators have mismatched degrees")

    ident = Permutation.identity(degree)
    elements: list[Permutation] = [ident]
    index: dict[tuple[int, ...], int] = {ident.images: 0}
    parents: list[tuple[int, int]] = [(-1, -1)]
    gen_step: list[list[int]] = [[] for _ in gens]

    frontier = [0]
    while frontier:
        discovered: dict[tuple[int, ...], tuple[int, int]] = {}
        for i in frontier:
            e = elements[i]
            for c, g in enumerate(gens):
                prod = e * g
                if prod.images not in index and prod.images not in discovered:
                    discovered[prod.images] = (i, c)
        new_images = sorted(discovered)
        if len(elements) + len(new_images) > budget:
            raise BudgetExceeded(f"group closure exceeded the element budget of {budget}")
        next_frontier = []
        for images in new_images:
            idx = len(elements)
            elements.append(Permutation(images))
            index[images] = idx
            parents.append(discovered[images])
            next_frontier.append(idx)
        frontier = next_frontier

    # Generator step tables, recorded once the element list is final.
    for c, g in enumerate(gens):
        step = array("i", bytes(4 * len(elements)))
        for i, e in enumerate(elements):
            step[i] = index[(e * g).images]
        gen_step[c] = step

    return FiniteGroup(degree, gens, tuple(elements), tuple(parents), gen_step)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by sorted member indices of its parent group."""

    parent: FiniteGroup
    members: tuple[int, ...]
    generators: tuple[int, ...]
    member_set: frozenset[int] = field(repr=False, default=frozenset())

    def __post_init__(self):
        object.__setattr__(self, "member_set", frozenset(self.members))
        if self.parent.order % len(self.members) != 0:
            raise IntegrityError(
                f"subgroup order {len(self.members)} does not divide group order {self.parent.order}")

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, i: int) -> bool:
        return i in self.member_set


def subgroup_generated(G: FiniteGroup, seeds: Iterable[int]) -> Subgroup:
    """Smallest subgroup of G containing the seed element indices."""
    seeds = tuple(seeds)
    for s in seeds:
        if not 0 <= s < G.order:
            raise ValidationError(f"seed index {s} out of range")
    G._ensure_tables()
    members = {0}
    frontier = [0]
    gens = tuple(dict.fromkeys(s for s in seeds if s != 0))
    rows = G._mul_rows
    while frontier:
        nxt = []
        for i in frontier:
            row = rows[i]
            for s in gens:
                j = row[s]
                if j not in members:
                    members.add(j)
                    nxt.append(j)
        frontier = nxt
    return Subgroup(G, tuple(sorted(members)), gens if gens else (0,))


def subgroup_as_group(sub: Subgroup) -> FiniteGroup:
    """Realize a subgroup as a standalone FiniteGroup (same degree, own indexing)."""
    gens = tuple(sub.parent.element(i) for i in sub.generators)
    grp = closure(gens, budget=sub.order + 1)
    if grp.order != sub.order:
        raise IntegrityError("subgroup realization does not match member count")
    return grp


def derived_subgroup(G: FiniteGroup | Subgroup) -> Subgroup:
    """Commutator subgroup [G,G], as a Subgroup of G (or of a subgroup's parent)."""
    if isinstance(G, Subgroup):
        parent, members = G.parent, G.members
    else:
        parent, members = G, range(G.order)
    parent._ensure_tables()
    rows = parent._mul_rows
    inv = parent._inv
    comms = set()
    for a in members:
        ra = rows[a]
        ia = inv[a]
        for b in members:
            # [a,b] = a b a^-1 b^-1
            comms.add(rows[rows[ra[b]][ia]][inv[b]])
    sub = subgroup_generated(parent, sorted(comms))
    # Normality in the ambient scope: conjugation by every generating element
    # of the ambient (sub)group must preserve the member set.
    conj_gens = (G.generators if isinstance(G, Subgroup)
                 else tuple(parent.index_of(g) for g in parent.generators))
    for g in conj_gens:
        for m in sub.members:
            if parent.conj(g, m) not in sub.member_set:
                raise IntegrityError("derived subgroup failed its normality check")
    return sub


def conjugacy_class(G: FiniteGroup, f: int) -> frozenset[int]:
    """The conjugacy class {g f g^-1 : g in G} as a set of element indices."""
    G._ensure_tables()
    gens = [G.index_of(g) for g in G.generators]
    cls = {f}
    frontier = [f]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.conj(g, x)
                if y not in cls:
                    cls.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(cls)


def conjugacy_classes(G: FiniteGroup) -> list[frozenset[int]]:
    """All conjugacy classes, ordered by minimal member index."""
    seen = [False] * G.order
    classes = []
    for i in range(G.order):
        if seen[i]:
            continue
        cls = conjugacy_class(G, i)
        for x in cls:
            seen[x] = True
        classes.append(cls)
    return classes


def center_order(G: FiniteGroup) -> int:
    G._ensure_tables()
    gens = [G.index_of(g) for g in G.generators]
    rows = G._mul_rows
    return sum(1 for x in range(G.order) if all(rows[x][g] == rows[g][x] for g in gens))


@dataclass(frozen=True)
class GroupFingerprint:
    """Cheap isomorphism invariants used to gate bundled data files."""

    order: int
    element_orders: tuple[tuple[int, int], ...]   # (order, multiplicity), sorted
    abelianization: tuple[int, ...]               # elementary divisors, ascending
    derived_series: tuple[int, ...]               # orders, starting at |G|
    center_order: int
    class_count: int

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "element_orders": [list(p) for p in self.element_orders],
            "abelianization": list(self.abelianization),
            "derived_series": list(self.derived_series),
            "center_order": self.center_order,
            "class_count": self.class_count,
        }

    @staticmethod
    def from_dict(d: dict) -> "GroupFingerprint":
        return GroupFingerprint(
            order=int(d["order"]),
            element_orders=tuple((int(a), int(b)) for a, b in d["element_orders"]),
            abelianization=tuple(int(x) for x in d["abelianization"]),
            derived_series=tuple(int(x) for x in d["derived_series"]),
            center_order=int(d["center_order"]),
            class_count=int(d["class_count"]),
        )


def _abelian_invariant_factors(mul_table: list[list[int]]) -> list[int]:
    """Invariant factors of a finite abelian group given by a multiplication table."""
    n = len(mul_table)
    factors = []
    while n > 1:
        orders = []
        for i in range(n):
            k, acc = 1, i
            while acc != 0:
                acc = mul_table[acc][i]
                k += 1
            orders.append(k)
        m = max(orders)
        factors.append(m)
        gen = orders.index(m)
        # Quotient by <gen>: merge cosets and rebuild the table.
        cyc = set()
        acc = 0
        while True:
            cyc.add(acc)
            acc = mul_table[acc][gen]
            if acc == 0:
                break
        coset_of = [-1] * n
        reps = []
        for i in range(n):
            if coset_of[i] >= 0:
                continue
            rep_id = len(reps)
            reps.append(i)
            for c in cyc:
                coset_of[mul_table[i][c]] = rep_id
        mul_table = [[coset_of[mul_table[reps[a]][reps[b]]] for b in range(len(reps))]
                     for a in range(len(reps))]
        n = len(reps)
    return factors


def _elementary_divisors(invariant_factors: Sequence[int]) -> tuple[int, ...]:
    out = []
    for f in invariant_factors:
        m = f
        d = 2
        while d * d <= m:
            if m % d == 0:
                q = 1
                while m % d == 0:
                    q *= d
                    m //= d
                out.append(q)
            d += 1
        if m > 1:
            out.append(m)
    return tuple(sorted(out))


def fingerprint(G: FiniteGroup) -> GroupFingerprint:
    """Deterministic invariant bundle (order histogram, abelianization, ...)."""
    hist: dict[int, int] = {}
    for i in range(G.order):
        o = G.order_of(i)
        hist[o] = hist.get(o, 0) + 1

    series = [G.order]
    current: FiniteGroup | Subgroup = G
    while True:
        nxt = derived_subgroup(current)
        if nxt.order == series[-1]:
            break
        series.append(nxt.order)
        if nxt.order == 1:
            break
        current = nxt

    first_derived = derived_subgroup(G)
    ab = _abelianization_table(G, first_derived)
    invf = _abelian_invariant_factors(ab)

    return GroupFingerprint(
        order=G.order,
        element_orders=tuple(sorted(hist.items())),
        abelianization=_elementary_divisors(invf),
        derived_series=tuple(series),
        center_order=center_order(G),
        class_count=len(conjugacy_classes(G)),
    )


def _abelianization_table(G: FiniteGroup, derived: Subgroup) -> list[list[int]]:
    """Multiplication table of G/[G,G] with cosets numbered by minimal representative."""
    G._ensure_tables()
    n = G.order
    coset_of = [-1] * n
    reps = []
    for i in range(n):
        if coset_of[i] >= 0:
            continue
        rep_id = len(reps)
        reps.append(i)
        for d in derived.members:
            coset_of[G.mul(i, d)] = rep_id
    return [[coset_of[G.mul(reps[a], reps[b])] for b in range(len(reps))]
            for a in range(len(reps))]
