"""Ideal lattices of a finite inverse semigroup.

The nodes are the covering-closed invariant subsets of the unit set; when a
zero is present the empty set is dropped in favour of {0} (both project to
the empty open set downstairs, and every nonempty covering-closed set
contains 0 vacuously).  The lattice is matched against the lattice of
invariant subsets of the minimal groupoid's unit space, which is the open
invariant set lattice at finite scale.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import completion, groupoids, semigroups
from .semigroups import classify, covered_by


class IdealError(ValueError):
    pass


class NotIdempotents(IdealError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"element {witness} is not an idempotent")


class LCViolated(IdealError):
    pass


class NotInvariantIdeal(IdealError):
    pass


@dataclass(frozen=True)
class UnitIdeal:
    members: frozenset
    lt_closed: bool
    invariant: bool


def _check_units(S, I):
    idem = set(S.idempotent_set)
    for p in I:
        if p not in idem:
            raise NotIdempotents(p)


def is_lt_closed(S, I):
    I = frozenset(I)
    if not I:
        return True  # no nonempty witness list can be drawn from the empty set
    lst = sorted(I)
    return all(
        p in I
        for p in S.idempotent_set
        if covered_by(S, p, lst)
    )


def is_invariant_ideal(S, I):
    """Invariance: p in I and p below x^{-1} x implies x p x^{-1} in I."""
    I = frozenset(I)
    for p in I:
        for x in range(S.n):
            if S.leq(p, S.m(S.i(x), x)) and S.m(S.m(x, p), S.i(x)) not in I:
                return False
    return True


def is_order_ideal(S, I):
    I = frozenset(I)
    return all(q in I for p in I for q in S.idempotent_set if S.leq(q, p))


def unit_ideal(S, I):
    I = frozenset(I)
    _check_units(S, I)
    return UnitIdeal(I, lt_closed=is_lt_closed(S, I), invariant=is_invariant_ideal(S, I))


def closure_Cl(S, I):
    """Smallest covering-closed subset of the units containing I.

    Transitivity of the covering relation makes one pass sufficient; the
    closure-operator laws are property-tested.  Cl of the empty set is
    empty (a witness list must be nonempty).
    """
    I = frozenset(I)
    _check_units(S, I)
    if not I:
        return unit_ideal(S, frozenset())
    lst = sorted(I)
    closed = frozenset(p for p in S.idempotent_set if covered_by(S, p, lst))
    return unit_ideal(S, closed | I)


@dataclass(frozen=True)
class IdealLattice:
    nodes: tuple  # tuple of frozensets, deterministic order
    joins: dict  # (i, j) -> node index
    meets: dict


def _node_order(nodes):
    return sorted(nodes, key=lambda s: (len(s), sorted(s)))


def enumerate_ideal_lattice(S, warn=None):
    """All covering-closed invariant unit subsets with join/meet tables.

    With a zero present the bare empty set is excluded ({0} is the bottom
    node).  Emits a warning through ``warn`` when S is not (LC)."""
    flags = classify(S)
    if not flags.LC and warn is not None:
        warn("semigroup is not (LC); the lattice correspondence is not guaranteed")
    idem = list(S.idempotent_set)
    nodes = []
    for mask in range(1 << len(idem)):
        I = frozenset(idem[k] for k in range(len(idem)) if mask >> k & 1)
        if S.zero is not None and not I:
            continue
        if S.zero is not None and S.zero not in I:
            continue  # nonempty covering-closed sets always contain 0
        if is_lt_closed(S, I) and is_invariant_ideal(S, I):
            nodes.append(I)
    nodes = tuple(_node_order(nodes))
    index = {I: k for k, I in enumerate(nodes)}
    joins, meets = {}, {}
    for a, I in enumerate(nodes):
        for b, J in enumerate(nodes):
            jn = closure_Cl(S, I | J).members
            mt = I & J
            assert jn in index, "join escapes the node set"
            assert mt in index, "meet escapes the node set"
            joins[(a, b)] = index[jn]
            meets[(a, b)] = index[mt]
    lat = IdealLattice(nodes=nodes, joins=joins, meets=meets)
    _check_lattice_axioms(lat)
    return lat


def _check_lattice_axioms(lat):
    n = len(lat.nodes)
    for a in range(n):
        assert lat.joins[(a, a)] == a and lat.meets[(a, a)] == a
        for b in range(n):
            assert lat.joins[(a, b)] == lat.joins[(b, a)]
            assert lat.meets[(a, b)] == lat.meets[(b, a)]
            # absorption
            assert lat.meets[(a, lat.joins[(a, b)])] == a
            assert lat.joins[(a, lat.meets[(a, b)])] == a


def V_q(S, q):
    """The basic open set of a unit q downstairs: minimal classes below q."""
    return completion.basis_V(S, completion.BasisSetDescriptor(top=q))


@dataclass(frozen=True)
class LatticeMapsVerdict:
    ok: bool
    detail: str = ""


def open_invariant_lattice(S):
    """V(S): invariant subsets of the minimal groupoid's unit space.
    At finite scale every such subset is open."""
    Gm = completion.minimal_groupoid(S)
    return tuple(groupoids.invariant_unit_subsets(Gm))


def lattice_maps(S, force=False):
    """The mutually inverse lattice maps between unit ideals and open
    invariant sets, with a verdict on the roundtrip and on preservation of
    join and meet."""
    flags = classify(S)
    if not flags.LC and not force:
        raise LCViolated("lattice correspondence requires (LC); pass force=True to override")
    ilat = enumerate_ideal_lattice(S)
    vnodes = open_invariant_lattice(S)
    vindex = {V: k for k, V in enumerate(vnodes)}
    iindex = {I: k for k, I in enumerate(ilat.nodes)}

    def S_u(I):
        out = frozenset()
        for q in I:
            out |= V_q(S, q)
        return out

    def S_i(V):
        return frozenset(q for q in S.idempotent_set if V_q(S, q) <= V)

    su = {}
    si = {}
    for I in ilat.nodes:
        V = S_u(I)
        if V not in vindex:
            return su, si, LatticeMapsVerdict(False, f"S_u image not invariant for {sorted(I)}")
        su[I] = V
    for V in vnodes:
        I = S_i(V)
        if I not in iindex:
            return su, si, LatticeMapsVerdict(False, f"S_i image not a node for {sorted(map(repr, V))}")
        si[V] = I

    for I in ilat.nodes:
        if si[su[I]] != I:
            return su, si, LatticeMapsVerdict(False, f"S_i(S_u(I)) != I at {sorted(I)}")
    for V in vnodes:
        if su[si[V]] != V:
            return su, si, LatticeMapsVerdict(False, f"S_u(S_i(V)) != V at {sorted(map(repr, V))}")

    # preservation of join and meet (joins upstairs are closures of unions,
    # downstairs plain unions; meets are intersections on both sides)
    for I in ilat.nodes:
        for J in ilat.nodes:
            join = closure_Cl(S, I | J).members
            if su[join] != su[I] | su[J]:
                return su, si, LatticeMapsVerdict(False, "join not preserved")
            if su[I & J] != su[I] & su[J]:
                return su, si, LatticeMapsVerdict(False, "meet not preserved")
    return su, si, LatticeMapsVerdict(True)


@dataclass(frozen=True)
class MinimalityReport:
    no_nontrivial_ideals: bool
    condition_ii: bool
    groupoid_minimal: bool
    all_equal: bool


def _trivial_nodes(S):
    full = frozenset(S.idempotent_set)
    bottom = frozenset({S.zero}) if S.zero is not None else frozenset()
    return {bottom, full}


def condition_ii(S):
    """For every nonzero unit p and every unit q there are x_1..x_n with
    sources below p and q covered by their ranges.  covered_by is monotone
    in its list, so the maximal candidate list decides the condition
    exactly (no search cap is needed)."""
    for p in S.idempotent_set:
        if S.is_zero(p):
            continue
        ranges = sorted(
            {S.m(x, S.i(x)) for x in range(S.n) if S.leq(S.m(S.i(x), x), p)}
        )
        for q in S.idempotent_set:
            if not covered_by(S, q, ranges):
                return False
    return True


def minimality_report(S, force=False):
    flags = classify(S)
    if not flags.LC and not force:
        raise LCViolated("minimality criteria require (LC); pass force=True to override")
    lat = enumerate_ideal_lattice(S)
    trivial = _trivial_nodes(S)
    crit_i = all(I in trivial for I in lat.nodes)
    crit_ii = condition_ii(S)
    Gm = completion.minimal_groupoid(S)
    crit_iii = len(groupoids.invariant_unit_subsets(Gm)) <= 2
    return MinimalityReport(
        no_nontrivial_ideals=crit_i,
        condition_ii=crit_ii,
        groupoid_minimal=crit_iii,
        all_equal=crit_i == crit_ii == crit_iii,
    )


@dataclass(frozen=True)
class GammaIReport:
    semigroup: object
    embedding: tuple  # Gamma_I element index -> S element index
    reduction_iso: bool


def gamma_I(S, I):
    """The subsemigroup of elements whose range unit lies in I, and the
    verification that its minimal groupoid is the reduction of G_m(S) to
    the open set generated by I."""
    I = frozenset(I)
    _check_units(S, I)
    if not (is_invariant_ideal(S, I) and is_order_ideal(S, I)):
        raise NotInvariantIdeal(f"{sorted(I)} is not an invariant order ideal")
    members = sorted(x for x in range(S.n) if S.m(x, S.i(x)) in I)
    if not members or (S.zero is not None and members == [S.zero]):
        # degenerate: Gamma_I is at most the zero element; its minimal
        # groupoid is empty, matching the empty reduction
        T = semigroups.validate([[0]], ["0"])
        VI = frozenset()
        GmS = completion.minimal_groupoid(S)
        red = groupoids.reduction(GmS, VI)
        return GammaIReport(
            semigroup=T,
            embedding=tuple(members),
            reduction_iso=len(red.elements) == 0,
        )
    pos = {x: k for k, x in enumerate(members)}
    table = []
    for x in members:
        row = []
        for y in members:
            v = S.m(x, y)
            assert v in pos, "Gamma_I not closed under multiplication"
            row.append(pos[v])
        table.append(row)
    T = semigroups.validate(table, [S.names[x] for x in members])

    # reduction isomorphism: G_m(Gamma_I) vs reduction of G_m(S) to V(I)
    GmT = completion.minimal_groupoid(T)
    GmS = completion.minimal_groupoid(S)
    VI = frozenset()
    for q in I:
        VI |= V_q(S, q)
    red = groupoids.reduction(GmS, VI & GmS.units)
    phi = {k: members[k] for k in GmT.elements}
    iso = sorted(phi[k] for k in GmT.elements) == sorted(red.elements)
    if iso:
        for a in GmT.elements:
            for b in GmT.elements:
                if GmT.defined(a, b) != red.defined(phi[a], phi[b]):
                    iso = False
                elif GmT.defined(a, b) and phi[GmT.mul(a, b)] != red.mul(phi[a], phi[b]):
                    iso = False
    return GammaIReport(semigroup=T, embedding=tuple(members), reduction_iso=iso)


@dataclass(frozen=True)
class SimplicityReport:
    verdict: str  # SIMPLE | NOT-SIMPLE | CONDITIONAL
    condition: bool
    minimal: bool
    principal: bool
    essentially_principal: bool
    assumed: bool


def simplicity_report(S, assume_essentially_principal=False, force=False):
    """Simplicity of the reduced algebra of G_m(S).

    A definite verdict is issued only when essential principality is
    established (finite principality check) or assumed; otherwise the
    verdict is CONDITIONAL and carries the raw condition result."""
    flags = classify(S)
    if not flags.LC and not force:
        raise LCViolated("simplicity criterion requires (LC); pass force=True to override")
    cond = condition_ii(S)
    rep = minimality_report(S, force=force)
    assert rep.all_equal, "minimality criteria disagree"
    Gm = completion.minimal_groupoid(S)
    pr = groupoids.principality(Gm)
    ess = pr.essentially_principal or assume_essentially_principal
    if ess:
        verdict = "SIMPLE" if cond else "NOT-SIMPLE"
    else:
        verdict = "CONDITIONAL"
    return SimplicityReport(
        verdict=verdict,
        condition=cond,
        minimal=rep.no_nontrivial_ideals,
        principal=pr.principal,
        essentially_principal=ess,
        assumed=assume_essentially_principal and not pr.essentially_principal,
    )


def ideal_lattice_dot(S, lat, title="ideal-lattice"):
    """DOT export of the Hasse diagram of an IdealLattice."""
    nodes = lat.nodes
    lines = [f'digraph "{title}" {{', "  rankdir=BT;"]
    for k, I in enumerate(nodes):
        label = "{" + ",".join(S.names[p] for p in sorted(I)) + "}"
        lines.append(f'  n{k} [label="{label}"];')
    for a, I in enumerate(nodes):
        for b, J in enumerate(nodes):
            if a == b or not I < J:
                continue
            if any(I < K < J for K in nodes):
                continue
            lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
