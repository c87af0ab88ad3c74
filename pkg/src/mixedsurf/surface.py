"""Mixed actions on C x C and their surface invariants.

A mixed action is encoded by a group G, an index-2 subgroup G0 (the
elements preserving the two factors), and a chosen tau' in G \\ G0.  These
determine tau = tau'^2 in G0 and the automorphism phi(h) = tau' h tau'^-1
of G0; the action on C x C is then

    g (x, y) = (g x, phi(g) y)          for g in G0,
    tau' g (x, y) = (phi(g) y, tau g x) for g in G0.

The quotient S = (C x C)/G is smooth iff the action is free:
  i)  no isolated fixed points: Sigma_V and phi(Sigma_V) meet only in 1;
  ii) no fixed curves: no g outside G0 has g^2 in Sigma_V;
where Sigma_V is the stabilizer set of the generating vector V of G0.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .covering import CoverType, CoveringData, GeneratingVector, covering_data
from .errors import IntegrityError, ValidationError
from .perm import FiniteGroup, Subgroup, derived_subgroup, subgroup_as_group, subgroup_generated


@dataclass(frozen=True)
class MixedAction:
    """(G, G0, tau') with the derived tau and phi materialized as tables."""

    G: FiniteGroup
    G0: Subgroup
    tau_prime: int
    tau: int
    phi: dict[int, int]


def build_mixed_action(G: FiniteGroup, G0: Subgroup, tau_prime: int) -> MixedAction:
    if G0.parent is not G:
        raise ValidationError("G0 must be a subgroup of G")
    if 2 * G0.order != G.order:
        raise ValidationError(
            f"G0 has index {G.order // G0.order if G0.order else 'inf'} in G, expected 2")
    if not 0 <= tau_prime < G.order:
        raise ValidationError("tau' index out of range")
    if tau_prime in G0:
        raise ValidationError("tau' must lie outside G0")
    tau = G.mul(tau_prime, tau_prime)
    if tau not in G0:
        raise IntegrityError("tau'^2 landed outside G0; G0 is not index 2")
    phi = {h: G.conj(tau_prime, h) for h in G0.members}
    if set(phi.values()) != set(G0.members):
        raise IntegrityError("conjugation by tau' does not preserve G0")
    for h in G0.members:
        if phi[phi[h]] != G.conj(tau, h):
            raise IntegrityError("phi^2 differs from conjugation by tau")
    return MixedAction(G, G0, tau_prime, tau, phi)


@dataclass(frozen=True)
class FreenessReport:
    no_isolated_fixed_points: bool
    no_fixed_curves: bool
    isolated_witness: int | None   # element of G0 fixing points in both coordinates
    curve_witness: int | None      # mixed element whose square has fixed points

    @property
    def ok(self) -> bool:
        return self.no_isolated_fixed_points and self.no_fixed_curves


@dataclass(frozen=True)
class SurfaceData:
    """A mixed action together with its covering data and invariants.

    ``g0_group`` is the standalone realization of G0 acting on C; the
    defining generating vector lives there.  ``h_group`` is the (possibly
    larger) automorphism group used to build orbit divisors, reached
    through ``embedding``; for surfaces without extra automorphisms it is
    ``g0_group`` itself and the embedding is the identity.
    """

    action: MixedAction
    g0_group: FiniteGroup
    to_g0: dict[int, int]          # G-index of a G0 member -> g0_group index
    from_g0: dict[int, int]
    covering: CoveringData         # cover C -> C/G0 (no fixed-point table needed)
    h_group: FiniteGroup
    embedding: dict[int, int]      # g0_group index -> h_group index
    phi_h: dict[int, int]
    tau_h: int
    h_covering: CoveringData | None  # cover used for intersection counts
    chi: int
    k2: int
    euler: int
    q: int
    pg: int


def invariants_from(genus: int, order_g: int, g_prime: int) -> tuple[int, int, int, int, int]:
    """(chi, K^2, e, q, p_g) of S from g(C), |G| and the quotient genus."""
    chi = Fraction((genus - 1) ** 2, order_g)
    if chi.denominator != 1:
        raise IntegrityError(
            f"(g-1)^2 = {(genus - 1) ** 2} is not divisible by |G| = {order_g}")
    chi = int(chi)
    q = g_prime
    return chi, 8 * chi, 4 * chi, q, chi - 1 + q


def surface_invariants(S: SurfaceData) -> tuple[int, int, int, int, int]:
    return invariants_from(S.covering.genus, S.action.G.order, S.covering.vector.cover_type.g_prime)


def check_free_action(S: SurfaceData) -> FreenessReport:
    """Evaluate the two freeness conditions, with witnesses on failure."""
    act = S.action
    G = act.G
    sigma_g = frozenset(S.from_g0[s] for s in S.covering.sigma_v)
    isolated = None
    for s in sorted(sigma_g):
        if s != 0 and act.phi[s] in sigma_g:
            isolated = s
            break
    curve = None
    for h in act.G0.members:
        g = G.mul(act.tau_prime, h)
        if G.mul(g, g) in sigma_g:
            curve = g
            break
    return FreenessReport(isolated is None, curve is None, isolated, curve)


@dataclass(frozen=True)
class InducedTower:
    """Generating vectors derived from a [0;2,3,8] vector (a, b, c).

    first  = (a b a^-1, b, c^2), of type [0;3,3,4] for [H,H];
    second = (e f e^-1, e^2 f e^-2, f), of type [0;4^3] for [[H,H],[H,H]].
    """

    first: tuple[int, int, int]
    second: tuple[int, int, int]
    h_prime: Subgroup
    g0_sub: Subgroup


def derive_induced_vectors(H: FiniteGroup, a: int, b: int, c: int) -> InducedTower:
    from .covering import validate_generating_vector  # local to avoid cycle noise

    report = validate_generating_vector(
        GeneratingVector(H, CoverType(0, (2, 3, 8)), (a, b, c)))
    if not report.ok:
        raise ValidationError(
            "(a,b,c) is not a [0;2,3,8] generating vector: " + "; ".join(report.failures))

    h_prime = derived_subgroup(H)
    d, e, f = H.conj(a, b), b, H.mul(c, c)
    _check_induced(H, (d, e, f), (3, 3, 4), h_prime, "[0;3,3,4]")

    g0_sub = derived_subgroup(h_prime)
    e2 = H.mul(e, e)
    u = (H.conj(e, f), H.mul(H.mul(e2, f), H.inv(e2)), f)
    _check_induced(H, u, (4, 4, 4), g0_sub, "[0;4^3]")
    return InducedTower((d, e, f), u, h_prime, g0_sub)


def _check_induced(H: FiniteGroup, entries, orders, target: Subgroup, label: str):
    for i, (x, o) in enumerate(zip(entries, orders)):
        if H.order_of(x) != o:
            raise ValidationError(
                f"induced {label} vector: entry {i + 1} has order {H.order_of(x)}, expected {o}")
    acc = 0
    for x in entries:
        acc = H.mul(acc, x)
    if acc != 0:
        raise ValidationError(f"induced {label} vector: product is not the identity")
    for x in entries:
        if x not in target:
            raise ValidationError(f"induced {label} vector: entry outside the target subgroup")
    if subgroup_generated(H, entries).member_set != target.member_set:
        raise ValidationError(f"induced {label} vector does not generate the target subgroup")


def transport_embedding(src: FiniteGroup, src_gens, dst: FiniteGroup, dst_gens) -> dict[int, int]:
    """Extend src_gens[i] -> dst_gens[i] multiplicatively to an isomorphism.

    Verifies the extension is a homomorphism on every pair of elements and a
    bijection onto the subgroup generated by ``dst_gens``.
    """
    if len(src_gens) != len(dst_gens):
        raise ValidationError("generator lists have different lengths")
    for s, t in zip(src_gens, dst_gens):
        if src.order_of(s) != dst.order_of(t):
            raise ValidationError(
                f"entry orders mismatch: {src.order_of(s)} vs {dst.order_of(t)}")
    span = subgroup_generated(dst, dst_gens)
    if span.order != src.order:
        raise ValidationError(
            f"targets generate a subgroup of order {span.order}, expected {src.order}")
    if subgroup_generated(src, src_gens).order != src.order:
        raise ValidationError("source entries do not generate the source group")

    img = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s, t in zip(src_gens, dst_gens):
                y = src.mul(x, s)
                iy = dst.mul(img[x], t)
                if y in img:
                    if img[y] != iy:
                        raise ValidationError(
                            "generator matching does not extend to a homomorphism")
                else:
                    img[y] = iy
                    nxt.append(y)
        frontier = nxt
    if len(img) != src.order or set(img.values()) != span.member_set:
        raise ValidationError("generator matching does not extend to a bijection")
    for x in range(src.order):
        for y in range(src.order):
            if img[src.mul(x, y)] != dst.mul(img[x], img[y]):
                raise ValidationError(
                    "generator matching does not extend to a homomorphism "
                    f"(failure at pair ({x}, {y}))")
    return img


def assemble_surface(G: FiniteGroup, g0_seeds, tau_prime: int, vector_entries,
                     cover_type: CoverType, h_group: FiniteGroup | None = None,
                     h_vector: tuple[int, int, int] | None = None,
                     parallel: int = 1) -> SurfaceData:
    """Build the full surface bundle from raw group data.

    ``vector_entries`` are G-element indices (inside G0) of the defining
    generating vector.  When ``h_group``/``h_vector`` are given, the larger
    automorphism group is attached: the vector induced by ``h_vector`` must
    match the defining vector entrywise under the transported isomorphism.
    """
    G0 = subgroup_generated(G, g0_seeds)
    action = build_mixed_action(G, G0, tau_prime)
    for v in vector_entries:
        if v not in G0:
            raise ValidationError("generating-vector entry outside G0")

    g0_group = subgroup_as_group(G0)
    to_g0 = {i: g0_group.index_of(G.element(i)) for i in G0.members}
    from_g0 = {v: k for k, v in to_g0.items()}

    defining = GeneratingVector(g0_group, cover_type,
                                tuple(to_g0[v] for v in vector_entries))

    if h_group is None:
        covering = covering_data(defining, with_fix_table=True, parallel=parallel)
        embedding = {i: i for i in range(g0_group.order)}
        h_grp = g0_group
        h_covering = covering
    else:
        covering = covering_data(defining, with_fix_table=False)
        tower = derive_induced_vectors(h_group, *h_vector)
        embedding = transport_embedding(g0_group, defining.entries, h_group, tower.second)
        h_grp = h_group
        h_covering = covering_data(
            GeneratingVector(h_group, CoverType(0, (2, 3, 8)), h_vector),
            with_fix_table=True, parallel=parallel)
        if h_covering.genus != covering.genus:
            raise IntegrityError(
                f"genus mismatch between covers: {covering.genus} vs {h_covering.genus}")
        _check_sigma_consistency(covering, embedding, h_covering)

    phi_g0 = {to_g0[h]: to_g0[action.phi[h]] for h in G0.members}
    phi_h = {embedding[i]: embedding[phi_g0[i]] for i in range(g0_group.order)}
    tau_h = embedding[to_g0[action.tau]]

    chi, k2, euler, q, pg = invariants_from(covering.genus, G.order, cover_type.g_prime)
    return SurfaceData(action, g0_group, to_g0, from_g0, covering, h_grp,
                       embedding, phi_h, tau_h, h_covering, chi, k2, euler, q, pg)


def _check_sigma_consistency(covering: CoveringData, embedding: dict[int, int],
                             h_covering: CoveringData):
    # Both covers describe the same curve, so a subgroup element has fixed
    # points for one exactly when it does for the other.
    image_sigma = {embedding[s] for s in covering.sigma_v if s != 0}
    h_fix = h_covering.fix_table
    from_h = {embedding[i] for i in embedding}
    h_side = {f for f in from_h if f != 0 and h_fix[f] > 0}
    if image_sigma != h_side:
        raise IntegrityError(
            "stabilizer set of the subgroup cover disagrees with the fixed-point "
            "table of the ambient cover")


def transport_structure(S: SurfaceData, h_group: FiniteGroup,
                        induced_vector: GeneratingVector,
                        h_covering: CoveringData | None = None) -> SurfaceData:
    """Re-attach S to a bigger automorphism group along its defining vector."""
    embedding = transport_embedding(S.g0_group, S.covering.vector.entries,
                                    h_group, induced_vector.entries)
    phi_g0 = {S.to_g0[h]: S.to_g0[S.action.phi[h]] for h in S.action.G0.members}
    phi_h = {embedding[i]: embedding[phi_g0[i]] for i in range(S.g0_group.order)}
    tau_h = embedding[S.to_g0[S.action.tau]]
    if h_covering is not None:
        _check_sigma_consistency(S.covering, embedding, h_covering)
    return replace(S, h_group=h_group, embedding=embedding, phi_h=phi_h,
                   tau_h=tau_h, h_covering=h_covering)
