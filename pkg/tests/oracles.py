"""Independent oracles used by the test suite.

These deliberately avoid the code paths they check: fixed points are
counted fiber by fiber over explicit coset partitions (no 1/m weighting),
and the D_{2,8,5} comparison group is built directly as a semidirect
product rather than by coset enumeration.
"""

from __future__ import annotations

from mixedsurf.perm import FiniteGroup, Permutation, closure


class CosetFiberOracle:
    """Count fixed points of f on C by walking the fibers of C -> C/H.

    The fiber over the j-th branch point is in bijection with the left
    cosets of K_j = <h_j>; f fixes the point gK_j exactly when f g lies in
    g K_j.  Counting cosets directly is independent of the weighted
    membership formula used by the library.
    """

    def __init__(self, group: FiniteGroup, entries):
        self.group = group
        self.fibers = []
        for h in entries:
            powers = [0]
            k = h
            while k != 0:
                powers.append(k)
                k = group.mul(k, h)
            cid = [-1] * group.order
            reps = []
            for g in range(group.order):
                if cid[g] >= 0:
                    continue
                c = len(reps)
                reps.append(g)
                for p in powers:
                    cid[group.mul(g, p)] = c
            self.fibers.append((cid, reps))

    def count(self, f: int) -> int:
        assert f != 0, "identity has no fixed-point count"
        mul = self.group.mul
        total = 0
        for cid, reps in self.fibers:
            for c, g in enumerate(reps):
                if cid[mul(f, g)] == c:
                    total += 1
        return total


def semidirect_z8_z2_r5() -> FiniteGroup:
    """Z8 x| Z2 with the generator of Z2 acting by y -> y^5, built directly.

    Elements are pairs (a, e); (a, e) * (b, f) = (a + 5^e b mod 8, e xor f).
    Returned as the right regular permutation representation.
    """
    elements = [(a, e) for e in range(2) for a in range(8)]
    pos = {ae: i for i, ae in enumerate(elements)}

    def mul(p, q):
        (a, e), (b, f) = p, q
        return ((a + pow(5, e) * b) % 8, e ^ f)

    def right_perm(q):
        return Permutation(tuple(pos[mul(p, q)] + 1 for p in elements))

    x = right_perm((0, 1))
    y = right_perm((1, 0))
    group = closure([x, y])
    assert group.order == 16
    return group
