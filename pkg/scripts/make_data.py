#!/usr/bin/env python3
"""Regenerate the bundled group and surface data files from scratch.

Everything here is deterministic (fixed presentations, fixed scan orders,
first-found selection rules), so rerunning the script reproduces the
bundled files byte for byte.  The script is also self-checking: it runs
the full library pipeline on every fixture it writes and compares the
output against the expected tables before declaring success.

Construction outline:

* The order-768 covering group is enumerated from the presentation
  < x, y | x^2, y^3, (xy)^8, ((xyxyxy^2)^2)^2 > by coset enumeration; its
  derived series (768, 384, 128, ...) and the induced generating-vector
  tower of types [0;2,3,8] -> [0;3,3,4] -> [0;4^3] are verified on the fly.
* The order-256 mixed groups arise as index-2 extensions of the second
  derived subgroup by pairs (phi, tau), phi an automorphism with
  phi^2 = conj_tau and phi(tau) = tau, filtered by the two freeness
  conditions and deduplicated; a backtracking isomorphism test splits the
  survivors into their two isomorphism types.
* The order-64 group is the analogous extension of Z2^2 x D4 found by
  exhaustive search over automorphisms and [0;2^5] generating vectors.

Usage:  python scripts/make_data.py [--out DIR]
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from mixedsurf.cone import cone_report
from mixedsurf.divisors import graph_orbits, intersection_table
from mixedsurf.expected import FAMILY_EXPECTATIONS, compare_family
from mixedsurf.files import build_surface, save_group_file, save_surface_file
from mixedsurf.perm import (FiniteGroup, Permutation, closure, conjugacy_class,
                            derived_subgroup, subgroup_generated)
from mixedsurf.surface import check_free_action
from mixedsurf.coset import todd_coxeter
from mixedsurf.words import Presentation, normalize_word, word_power

PROVENANCE = ("constructed in-repo by scripts/make_data.py "
              "(coset enumeration + exhaustive extension search); 2026-08-09")


def log(msg: str):
    print(msg, flush=True)


# ----------------------------------------------------------------------
# The order-768 covering group and its vector tower.

def build_h() -> FiniteGroup:
    relators = [
        normalize_word([("x", 2)]),
        normalize_word([("y", 3)]),
        word_power(normalize_word([("x", 1), ("y", 1)]), 8),
        word_power(normalize_word([("x", 1), ("y", 1)] * 2 + [("x", 1), ("y", 2)]), 4),
    ]
    pres = Presentation(("x", "y"), tuple(relators))
    H = todd_coxeter(pres, max_cosets=60000)
    assert H.order == 768, H.order
    return H


def involution_class_reps(G: FiniteGroup) -> list[int]:
    reps, seen = [], set()
    for i in range(G.order):
        if G.order_of(i) == 2 and i not in seen:
            seen |= conjugacy_class(G, i)
            reps.append(i)
    return reps


def vector_classes_238(H: FiniteGroup) -> list[tuple[int, int, int]]:
    """All [0;2,3,8] generating vectors up to simultaneous conjugation."""
    ord3 = [i for i in range(H.order) if H.order_of(i) == 3]

    def canon(a, b):
        best = None
        for g in range(H.order):
            t = (H.conj(g, a), H.conj(g, b))
            if best is None or t < best:
                best = t
        return best

    classes = {}
    for a in involution_class_reps(H):
        for b in ord3:
            c = H.inv(H.mul(a, b))
            if H.order_of(c) != 8:
                continue
            if subgroup_generated(H, (a, b)).order != H.order:
                continue
            key = canon(a, b)
            if key not in classes:
                classes[key] = (a, b, c)
    return [classes[k] for k in sorted(classes)]


def induced_vector(H: FiniteGroup, abc) -> tuple[int, int, int]:
    a, b, c = abc
    e, f = b, H.mul(c, c)
    e2 = H.mul(e, e)
    return (H.conj(e, f), H.mul(H.mul(e2, f), H.inv(e2)), f)


# ----------------------------------------------------------------------
# Automorphisms, free extension pairs, and the extension groups.

def extend_hom(G: FiniteGroup, members, srcs, dsts):
    """Multiplicative extension of srcs[i] -> dsts[i] over the span of srcs."""
    img = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s, d in zip(srcs, dsts):
                y = G.mul(x, s)
                iy = G.mul(img[x], d)
                if y in img:
                    if img[y] != iy:
                        return None
                else:
                    img[y] = iy
                    nxt.append(y)
        frontier = nxt
    if len(img) != len(members) or len(set(img.values())) != len(members):
        return None
    return img


def automorphisms_of_span(G: FiniteGroup, members, gens) -> list[dict[int, int]]:
    """All automorphisms of the subgroup spanned by ``gens`` (a generating
    vector with product 1, so the last image is forced)."""
    member_set = frozenset(members)
    pools = []
    for g in gens[:-1]:
        o = G.order_of(g)
        pools.append([m for m in members if G.order_of(m) == o])
    last_order = G.order_of(gens[-1])
    out = []

    def rec(position, chosen, product):
        if position == len(gens) - 1:
            last = G.inv(product)
            if G.order_of(last) != last_order or last not in member_set:
                return
            targets = chosen + [last]
            if subgroup_generated(G, targets).order != len(members):
                return
            m = extend_hom(G, members, gens, targets)
            if m is not None:
                out.append(m)
            return
        for t in pools[position]:
            rec(position + 1, chosen + [t], G.mul(product, t))

    rec(0, [], 0)
    return out


def sigma_of(G: FiniteGroup, members_gens, entries) -> frozenset[int]:
    """Stabilizer set: conjugates (by the subgroup) of powers of the entries."""
    out = {0}
    for v in entries:
        k = v
        while k != 0:
            cls = {k}
            frontier = [k]
            while frontier:
                nxt = []
                for t in frontier:
                    for g in members_gens:
                        y = G.conj(g, t)
                        if y not in cls:
                            cls.add(y)
                            nxt.append(y)
                frontier = nxt
            out |= cls
            k = G.mul(k, v)
    return frozenset(out)


def free_extension_pairs(G: FiniteGroup, members, gens, auts, sigma):
    """(phi, tau) with phi^2 = conj_tau, phi(tau) = tau, and both freeness
    conditions satisfied."""
    out = []
    for phi in auts:
        for tau in members:
            if not all(phi[phi[g]] == G.conj(tau, g) for g in gens):
                continue
            if phi[tau] != tau or tau in sigma:
                continue
            if (sigma & {phi[s] for s in sigma}) != {0}:
                continue
            if all(G.mul(G.mul(h, phi[h]), tau) not in sigma for h in members):
                out.append((phi, tau))
    return out


def canon_ext_key(G: FiniteGroup, members, phi, tau):
    """Canonical form of (phi, tau) modulo re-choosing tau' inside its coset."""
    best = None
    for h in members:
        key = (tuple(G.conj(h, phi[m]) for m in members),
               G.mul(G.mul(h, phi[h]), tau))
        if best is None or key < best:
            best = key
    return best


def dedup_extensions(G: FiniteGroup, members, pairs):
    reps = {}
    for phi, tau in pairs:
        key = canon_ext_key(G, members, phi, tau)
        if key not in reps:
            reps[key] = (phi, tau)
    return [reps[k] for k in sorted(reps)]


def build_extension(G: FiniteGroup, members, phi, tau, vec_gens) -> FiniteGroup:
    """The index-2 extension of the span of ``members`` by (phi, tau), as a
    permutation group acting on its own 2|span| elements (right
    multiplication); generators are (vec_gens..., tau')."""
    pos = {m: i for i, m in enumerate(members)}
    size = 2 * len(members)

    def pid(m, eps):
        return pos[m] + len(members) * eps + 1

    def emul(m1, e1, m2, e2):
        if e1 == 0:
            return (G.mul(m1, m2), e2)
        mm = G.mul(m1, phi[m2])
        return ((G.mul(mm, tau), 0) if e2 == 1 else (mm, 1))

    def right_mult(g, ge):
        images = [0] * size
        for m in members:
            for eps in (0, 1):
                r = emul(m, eps, g, ge)
                images[pid(m, eps) - 1] = pid(*r)
        return Permutation(tuple(images))

    gens = [right_mult(v, 0) for v in vec_gens] + [right_mult(0, 1)]
    ext = closure(gens, budget=size + 1)
    assert ext.order == size, ext.order
    return ext


def iso_test(GA: FiniteGroup, GB: FiniteGroup) -> bool:
    """Exhaustive generator-image isomorphism search (order-pruned)."""
    if GA.order != GB.order:
        return False
    gA = [GA.index_of(p) for p in GA.generators]

    def word_ord(G, gens, w):
        acc = 0
        for q in w:
            acc = G.mul(acc, gens[q])
        return G.order_of(acc)

    probes = [(0, 1), (0, 3), (1, 3), (0, 1, 3), (0, 0, 1), (1, 1, 3)]
    cons = {w: word_ord(GA, gA, w) for w in probes}
    pool4 = [i for i in range(GB.order) if GB.order_of(i) == GA.order_of(gA[0])]
    poolt = [i for i in range(GB.order) if GB.order_of(i) == GA.order_of(gA[3])]

    def try_map(ts):
        img = {0: 0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s, d in zip(gA, ts):
                    y = GA.mul(x, s)
                    iy = GB.mul(img[x], d)
                    if y in img:
                        if img[y] != iy:
                            return False
                    else:
                        img[y] = iy
                        nxt.append(y)
            frontier = nxt
        return len(img) == GA.order and len(set(img.values())) == GA.order

    for t1 in pool4:
        for t2 in pool4:
            p12 = GB.mul(t1, t2)
            if GB.order_of(p12) != cons[(0, 1)]:
                continue
            t3 = GB.inv(p12)
            if GB.order_of(t3) != GA.order_of(gA[2]):
                continue
            if word_ord(GB, [t1, t2, t3, 0], (0, 0, 1)) != cons[(0, 0, 1)]:
                continue
            for t4 in poolt:
                if GB.order_of(GB.mul(t1, t4)) != cons[(0, 3)]:
                    continue
                if GB.order_of(GB.mul(t2, t4)) != cons[(1, 3)]:
                    continue
                if word_ord(GB, [t1, t2, t3, t4], (0, 1, 3)) != cons[(0, 1, 3)]:
                    continue
                if word_ord(GB, [t1, t2, t3, t4], (1, 1, 3)) != cons[(1, 1, 3)]:
                    continue
                if try_map((t1, t2, t3, t4)):
                    return True
    return False


# ----------------------------------------------------------------------
# Word helpers for writing the surface files.

def subgroup_word(G: FiniteGroup, gens, target: int) -> list[int]:
    """A word (generator indices) expressing ``target`` in ``gens``, via BFS."""
    parent = {0: None}
    frontier = [0]
    while target not in parent:
        nxt = []
        for x in frontier:
            for ci, g in enumerate(gens):
                y = G.mul(x, g)
                if y not in parent:
                    parent[y] = (x, ci)
                    nxt.append(y)
        frontier = nxt
        if not nxt and target not in parent:
            raise RuntimeError("target not in the span of the given generators")
    word = []
    cur = target
    while parent[cur] is not None:
        prev, ci = parent[cur]
        word.append(ci)
        cur = prev
    word.reverse()
    return word


def word_text(word: list[int]) -> str:
    if not word:
        return "1"
    return "*".join(f"g{c + 1}" for c in word)


def group_word_text(G: FiniteGroup, index: int) -> str:
    return word_text(G.word_for(index))


# ----------------------------------------------------------------------
# Families 2..5.

def make_families_2_to_5(out: Path):
    t0 = time.time()
    H = build_h()
    log(f"covering group of order {H.order} built ({time.time() - t0:.1f}s)")

    h_prime = derived_subgroup(H)
    second = derived_subgroup(h_prime)
    assert (h_prime.order, second.order) == (384, 128)

    classes = vector_classes_238(H)
    assert len(classes) == 4, f"expected 4 vector classes, found {len(classes)}"
    log(f"[0;2,3,8] vector classes: {classes}")

    induced = [induced_vector(H, abc) for abc in classes]
    members = second.members
    V0 = induced[0]
    assert subgroup_generated(H, V0).member_set == second.member_set

    t0 = time.time()
    auts = automorphisms_of_span(H, members, V0)
    log(f"|Aut(G0)| = {len(auts)} ({time.time() - t0:.1f}s)")

    sigma = sigma_of(H, second.generators, V0)
    for vec in induced[1:]:
        assert sigma_of(H, second.generators, vec) == sigma

    t0 = time.time()
    pairs = free_extension_pairs(H, members, V0, auts, sigma)
    ext_reps = dedup_extensions(H, members, pairs)
    log(f"free (phi,tau) pairs: {len(pairs)}; extension classes: {len(ext_reps)} "
        f"({time.time() - t0:.1f}s)")

    t0 = time.time()
    ext_groups = [build_extension(H, members, phi, tau, V0) for phi, tau in ext_reps]
    type_a_idx = 0
    type_b_idx = None
    type_of = {0: "a"}
    for i in range(1, len(ext_groups)):
        if iso_test(ext_groups[type_a_idx], ext_groups[i]):
            type_of[i] = "a"
        else:
            if type_b_idx is None:
                type_b_idx = i
                type_of[i] = "b"
            elif iso_test(ext_groups[type_b_idx], ext_groups[i]):
                type_of[i] = "b"
            else:
                raise RuntimeError("more than two extension isomorphism types")
    counts = {t: sum(1 for v in type_of.values() if v == t) for t in ("a", "b")}
    log(f"extension isomorphism types: {counts} ({time.time() - t0:.1f}s)")
    assert type_b_idx is not None, "expected two isomorphism types"
    # The type occurring in more extension classes is the one carrying three
    # of the four families; the database ids follow the classification table
    # (multiplicity 3 <-> G(256,3678), multiplicity 1 <-> G(256,3679)).
    if counts["a"] < counts["b"]:
        type_a_idx, type_b_idx = type_b_idx, type_a_idx

    G_a = ext_groups[type_a_idx]
    G_b = ext_groups[type_b_idx]
    save_group_file(out / "g256a.json", "g256a", "G(256,3678)", G_a, PROVENANCE)
    save_group_file(out / "g256b.json", "g256b", "G(256,3679)", G_b, PROVENANCE)
    save_group_file(out / "h768.json", "h768", "G(768,1085341)", H, PROVENANCE)
    log("wrote g256a.json, g256b.json, h768.json")

    # Surface files.  Family 2 pairs the rarer group with the first vector
    # class; families 3-5 pair the common group with the other three classes.
    def vector_words_in_ext(ext: FiniteGroup, vec):
        # Express an induced vector (H-indices inside G0) in the extension's
        # generators g1..g3 (the images of V0) via words over V0.
        ext_g0 = [ext.index_of(p) for p in ext.generators[:3]]
        words = []
        for v in vec:
            w = subgroup_word(H, V0, v)
            acc = 0
            for ci in w:
                acc = ext.mul(acc, ext_g0[ci])
            words.append(group_word_text(ext, acc))
        return words

    def h_vector_words(abc):
        return [group_word_text(H, x) for x in abc]

    assignments = {
        2: (G_b, "g256b.json", 0),
        3: (G_a, "g256a.json", 1),
        4: (G_a, "g256a.json", 2),
        5: (G_a, "g256a.json", 3),
    }
    for fam, (ext, gfile, class_id) in assignments.items():
        record = {
            "name": f"family{fam}",
            "group_file": gfile,
            "g0_generators": ["g1", "g2", "g3"],
            "tau_prime": "g4",
            "vector": vector_words_in_ext(ext, induced[class_id]),
            "type": "[0;4^3]",
            "extra_automorphisms": {
                "group_file": "h768.json",
                "vector": h_vector_words(classes[class_id]),
            },
        }
        save_surface_file(out / f"family{fam}.json", record)
        log(f"wrote family{fam}.json (vector class {class_id})")

    search_variant = {
        "name": "family2-search",
        "group_file": "g256b.json",
        "g0_generators": ["g1", "g2", "g3"],
        "tau_prime": "g4",
        "vector": vector_words_in_ext(G_b, induced[0]),
        "type": "[0;4^3]",
        "extra_automorphisms": {"group_file": "h768.json", "vector": "search"},
    }
    save_surface_file(out / "family2_search.json", search_variant)
    log("wrote family2_search.json")


# ----------------------------------------------------------------------
# Family 1.

def make_family_1(out: Path):
    e1 = Permutation.from_cycles(8, [(1, 2)])
    e2 = Permutation.from_cycles(8, [(3, 4)])
    r = Permutation.from_cycles(8, [(5, 6, 7, 8)])
    s = Permutation.from_cycles(8, [(5, 7)])
    G0 = closure([e1, e2, r, s])
    assert G0.order == 32
    n = G0.order
    gens = [G0.index_of(p) for p in (e1, e2, r, s)]

    class_of = {}
    for i in range(n):
        if i not in class_of:
            cls = conjugacy_class(G0, i)
            for x in cls:
                class_of[x] = cls

    invol = [i for i in range(n) if G0.order_of(i) == 2]
    ord4 = [i for i in range(n) if G0.order_of(i) == 4]
    central = [i for i in range(n)
               if all(G0.mul(i, g) == G0.mul(g, i) for g in gens)]
    cinvol = [i for i in central if G0.order_of(i) == 2]

    t0 = time.time()
    auts = []
    for a1 in cinvol:
        for a2 in cinvol:
            if a1 == a2:
                continue
            for br in ord4:
                for cs in invol:
                    if G0.mul(G0.mul(cs, br), cs) != G0.inv(br):
                        continue
                    m = extend_hom(G0, range(n), gens, (a1, a2, br, cs))
                    if m is not None:
                        auts.append(m)
    log(f"family 1: |Aut(G0)| = {len(auts)} ({time.time() - t0:.1f}s)")

    pairs = []
    for phi in auts:
        for tau in range(n):
            if all(phi[phi[g]] == G0.conj(tau, g) for g in gens) and phi[tau] == tau:
                pairs.append((phi, tau))
    log(f"family 1: {len(pairs)} (phi,tau) pairs")

    t0 = time.time()
    buckets: dict[frozenset, list[tuple]] = {}
    for h1 in invol:
        for h2 in invol:
            p2 = G0.mul(h1, h2)
            for h3 in invol:
                p3 = G0.mul(p2, h3)
                for h4 in invol:
                    h5 = G0.inv(G0.mul(p3, h4))
                    if G0.order_of(h5) != 2:
                        continue
                    V = (h1, h2, h3, h4, h5)
                    S = frozenset({0} | class_of[h1] | class_of[h2] | class_of[h3]
                                  | class_of[h4] | class_of[h5])
                    buckets.setdefault(S, []).append(V)
    log(f"family 1: {sum(map(len, buckets.values()))} tuples in {len(buckets)} "
        f"stabilizer-set buckets ({time.time() - t0:.1f}s)")

    t0 = time.time()
    chosen = None
    for S, tuples in sorted(buckets.items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))):
        for phi, tau in pairs:
            if tau in S:
                continue
            if (S & {phi[x] for x in S}) != {0}:
                continue
            if not all(G0.mul(G0.mul(h, phi[h]), tau) not in S for h in range(n)):
                continue
            for V in tuples:
                if subgroup_generated(G0, V).order == n:
                    chosen = (phi, tau, V, S)
                    break
            if chosen:
                break
        if chosen:
            break
    assert chosen is not None, "no free family-1 data found"
    phi, tau, V, S = chosen
    log(f"family 1: free data found, |Sigma_V| = {len(S)} ({time.time() - t0:.1f}s)")

    G = build_extension(G0, tuple(range(n)), phi, tau, V[:4])
    save_group_file(out / "g64.json", "g64", "G(64,92)", G, PROVENANCE)

    record = {
        "name": "family1",
        "group_file": "g64.json",
        "g0_generators": ["g1", "g2", "g3", "g4"],
        "tau_prime": "g5",
        "vector": ["g1", "g2", "g3", "g4", "(g1*g2*g3*g4)^-1"],
        "type": "[0;2^5]",
        "extra_automorphisms": None,
    }
    save_surface_file(out / "family1.json", record)
    log("wrote g64.json, family1.json")

    # Negative fixture: the first valid [0;2^5] generating vector (scan
    # order) whose stabilizer set breaks a freeness condition for the same
    # extension.
    bad = None
    for h1 in invol:
        for h2 in invol:
            p2 = G0.mul(h1, h2)
            for h3 in invol:
                p3 = G0.mul(p2, h3)
                for h4 in invol:
                    h5 = G0.inv(G0.mul(p3, h4))
                    if G0.order_of(h5) != 2:
                        continue
                    Vb = (h1, h2, h3, h4, h5)
                    Sb = frozenset({0} | class_of[h1] | class_of[h2] | class_of[h3]
                                   | class_of[h4] | class_of[h5])
                    cond1 = (Sb & {phi[x] for x in Sb}) == {0}
                    cond2 = (tau not in Sb and
                             all(G0.mul(G0.mul(h, phi[h]), tau) not in Sb
                                 for h in range(n)))
                    if cond1 and cond2:
                        continue
                    if subgroup_generated(G0, Vb).order != n:
                        continue
                    bad = Vb
                    break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    assert bad is not None
    ext_gens = [G.index_of(p) for p in G.generators[:4]]

    def in_ext(x):
        w = subgroup_word(G0, V[:4], x)
        acc = 0
        for ci in w:
            acc = G.mul(acc, ext_gens[ci])
        return acc

    bad_words = [group_word_text(G, in_ext(x)) for x in bad]
    record = {
        "name": "family1-nonfree",
        "group_file": "g64.json",
        "g0_generators": ["g1", "g2", "g3", "g4"],
        "tau_prime": "g5",
        "vector": bad_words,
        "type": "[0;2^5]",
        "extra_automorphisms": None,
    }
    save_surface_file(out / "family1_nonfree.json", record)
    log("wrote family1_nonfree.json")


# ----------------------------------------------------------------------
# Toy negative fixture: abelian G0 with phi = identity.

def make_toy(out: Path):
    sgen = Permutation.from_cycles(4, [(1, 2, 3, 4)])
    G = closure([sgen])
    save_group_file(out / "toy_z4_group.json", "z4", "G(4,1)", G, PROVENANCE)
    record = {
        "name": "toy-z4",
        "group_file": "toy_z4_group.json",
        "g0_generators": ["g1^2"],
        "tau_prime": "g1",
        "vector": ["g1^2"] * 8,
        "type": "[0;2^8]",
        "extra_automorphisms": None,
    }
    save_surface_file(out / "toy_z4.json", record)
    log("wrote toy_z4_group.json, toy_z4.json")


# ----------------------------------------------------------------------
# Self-check: run the pipeline on every fixture.

def self_check(out: Path):
    for fam in (1, 2, 3, 4, 5):
        t0 = time.time()
        surface = build_surface(out / f"family{fam}.json")
        freeness = check_free_action(surface)
        orbits = graph_orbits(surface.h_group, surface)
        table = intersection_table(orbits, surface, surface.h_covering)
        report = cone_report(table)
        items = compare_family(FAMILY_EXPECTATIONS[fam], surface, freeness,
                               table, report)
        bad = [(name, detail) for name, ok, detail in items if not ok]
        assert not bad, f"family {fam} self-check failed: {bad}"
        log(f"family {fam}: all {len(items)} expectation checks pass "
            f"({time.time() - t0:.1f}s)")

    for name, expect_free in (("family1_nonfree", False), ("toy_z4", False)):
        surface = build_surface(out / f"{name}.json")
        freeness = check_free_action(surface)
        assert freeness.ok == expect_free, name
        assert freeness.isolated_witness is not None or freeness.curve_witness is not None
        log(f"{name}: freeness fails with a witness, as intended")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path,
                        default=Path(__file__).resolve().parent.parent
                        / "src" / "mixedsurf" / "data")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    make_toy(args.out)
    make_family_1(args.out)
    make_families_2_to_5(args.out)
    self_check(args.out)
    log("all data files written and verified")


if __name__ == "__main__":
    main()
