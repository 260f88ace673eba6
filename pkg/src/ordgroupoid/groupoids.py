"""Finite groupoids with a partial product.

The product is stored as an explicit defined-flag table (a dict), so an
undefined product is never conflated with a zero element.  Construction
entry points are the restricted-product groupoid G(S) of an inverse
semigroup, the minimal subgroupoid M(S), and reductions to invariant unit
sets.  ``all_bisections`` rebuilds an inverse semigroup from a groupoid's
G-sets, closing the circle used by the ample-groupoid roundtrip.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from . import semigroups


class GroupoidError(ValueError):
    pass


class NotInvariant(GroupoidError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"unit subset not invariant: witness element {witness!r}")


class CapExceeded(GroupoidError):
    pass


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    axiom: str = ""
    witness: tuple = ()


class FiniteGroupoid:
    """Element tags must be hashable; ordering of ``elements`` is canonical."""

    def __init__(self, elements, product, inverse):
        self.elements = tuple(elements)
        self.product = dict(product)
        self.inverse = dict(inverse)

    def defined(self, x, y):
        return (x, y) in self.product

    def mul(self, x, y):
        return self.product[(x, y)]

    def inv(self, x):
        return self.inverse[x]

    @cached_property
    def units(self):
        return frozenset(self.mul(g, self.inv(g)) for g in self.elements)

    def source(self, g):
        return self.mul(self.inv(g), g)

    def range(self, g):
        return self.mul(g, self.inv(g))

    def isotropy(self, u):
        return frozenset(
            g for g in self.elements if self.source(g) == u and self.range(g) == u
        )

    def __len__(self):
        return len(self.elements)

    def same_structure(self, other):
        return (
            set(self.elements) == set(other.elements)
            and self.product == other.product
            and self.inverse == other.inverse
        )

    def __repr__(self):
        return f"FiniteGroupoid({len(self.elements)} elements, {len(self.units)} units)"


def check_axioms(G):
    """Exhaustive check of (G1)-(G4) plus associativity where defined."""
    els = set(G.elements)
    for g in G.elements:
        if G.inv(g) not in els:
            return AxiomReport(False, "closure", (g,))
        if G.inv(G.inv(g)) != g:
            return AxiomReport(False, "G1", (g,))
    for (x, y), v in G.product.items():
        if v not in els:
            return AxiomReport(False, "closure", (x, y))
    for x in G.elements:
        if not G.defined(G.inv(x), x):
            return AxiomReport(False, "G3", (x,))
        if not G.defined(x, G.inv(x)):
            return AxiomReport(False, "G4", (x,))
    for x in G.elements:
        for y in G.elements:
            if not G.defined(x, y):
                continue
            xy = G.mul(x, y)
            # G3: x^{-1} * (x*y) = y
            if not G.defined(G.inv(x), xy) or G.mul(G.inv(x), xy) != y:
                return AxiomReport(False, "G3", (x, y))
            # G4: (x*y) * y^{-1} = x
            if not G.defined(xy, G.inv(y)) or G.mul(xy, G.inv(y)) != x:
                return AxiomReport(False, "G4", (x, y))
            for z in G.elements:
                if G.defined(y, z):
                    if not G.defined(xy, z):
                        return AxiomReport(False, "G2", (x, y, z))
                    if G.mul(xy, z) != G.mul(x, G.mul(y, z)):
                        return AxiomReport(False, "assoc", (x, y, z))
    return AxiomReport(True)


def restricted_product_groupoid(S):
    """G(S): underlying set S, product x*y defined exactly when x^{-1}x = yy^{-1}."""
    product = {}
    for x in range(S.n):
        for y in range(S.n):
            if S.m(S.i(x), x) == S.m(y, S.i(y)):
                product[(x, y)] = S.m(x, y)
    G = FiniteGroupoid(range(S.n), product, {x: S.i(x) for x in range(S.n)})
    rep = check_axioms(G)
    assert rep.ok, rep
    return G


def minimal_subgroupoid(S):
    """M(S): minimal elements, product defined whenever it is not zero."""
    mins = S.minimal_set
    product = {}
    for x in mins:
        for y in mins:
            if not S.is_zero(S.m(x, y)):
                product[(x, y)] = S.m(x, y)
    G = FiniteGroupoid(mins, product, {x: S.i(x) for x in mins})
    rep = check_axioms(G)
    assert rep.ok, rep
    # M(S) is the reduction of G(S) to the minimal units
    E = frozenset(p for p in S.idempotent_set if p in set(mins))
    red = reduction(restricted_product_groupoid(S), E)
    assert G.same_structure(red), "M(S) differs from the reduction of G(S)"
    return G


def is_invariant(G, E):
    for g in G.elements:
        if G.source(g) in E and G.range(g) not in E:
            return g
    return None


def reduction(G, E):
    """Reduction of G to the invariant unit subset E."""
    E = frozenset(E)
    w = is_invariant(G, E)
    if w is not None:
        raise NotInvariant(w)
    keep = [g for g in G.elements if G.source(g) in E]
    kset = set(keep)
    product = {
        (x, y): v for (x, y), v in G.product.items() if x in kset and y in kset
    }
    return FiniteGroupoid(keep, product, {g: G.inv(g) for g in keep})


def _unit_orbits(G):
    parent = {u: u for u in G.units}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in G.elements:
        a, b = find(G.source(g)), find(G.range(g))
        if a != b:
            parent[a] = b
    orbits = {}
    for u in G.units:
        orbits.setdefault(find(u), []).append(u)
    return [frozenset(v) for v in orbits.values()]


def invariant_unit_subsets(G):
    """All invariant unit subsets, as unions of orbits; includes the empty
    and the full set.  Deterministically ordered by (size, repr)."""
    orbits = sorted(_unit_orbits(G), key=lambda o: sorted(map(repr, o)))
    subsets = [frozenset()]
    for orb in orbits:
        subsets += [s | orb for s in subsets]
    return sorted(set(subsets), key=lambda s: (len(s), sorted(map(repr, s))))


def aperiodic_points(G):
    return frozenset(u for u in G.units if G.isotropy(u) == {u})


@dataclass(frozen=True)
class PrincipalityReport:
    principal: bool
    essentially_principal: bool
    note: str


def principality(G):
    """Principality of a finite groupoid.

    At finite scale every subset of the unit space is closed, so a dense set
    of aperiodic points in a closed invariant set is the whole set; hence
    essentially principal coincides with principal.
    """
    p = aperiodic_points(G) == G.units
    return PrincipalityReport(
        principal=p,
        essentially_principal=p,
        note="finite scale: essentially principal iff principal",
    )


def all_bisections(G, cap=16):
    """The inverse semigroup of all G-sets of G.

    Returns (semigroup, bisections) where ``bisections[k]`` is the subset of
    G carried by element k.  The empty set is the zero.  Enumeration is
    exponential in |G|, guarded by ``cap``.
    """
    if len(G.elements) > cap:
        raise CapExceeded(f"|G| = {len(G.elements)} exceeds cap {cap}")

    def is_bisection(sub):
        srcs = [G.source(g) for g in sub]
        rngs = [G.range(g) for g in sub]
        return len(set(srcs)) == len(srcs) and len(set(rngs)) == len(rngs)

    els = sorted(G.elements, key=repr)
    bisections = []
    for mask in range(1 << len(els)):
        sub = frozenset(els[i] for i in range(len(els)) if mask >> i & 1)
        if is_bisection(sub):
            bisections.append(sub)
    bisections.sort(key=lambda s: (len(s), sorted(map(repr, s))))
    index = {b: k for k, b in enumerate(bisections)}

    table = []
    for a in bisections:
        row = []
        for b in bisections:
            prod = frozenset(
                G.mul(x, y) for x in a for y in b if G.defined(x, y)
            )
            assert prod in index, "product of bisections is not a bisection"
            row.append(index[prod])
        table.append(row)
    names = ["{" + ",".join(sorted(map(repr, b))) + "}" for b in bisections]
    S = semigroups.validate(table, names)
    assert S.zero == index[frozenset()]
    return S, bisections


def orbit_graph_dot(G, title="orbits"):
    """DOT export of the orbit graph: units as nodes, one edge per
    connecting arrow class (source unit, range unit)."""
    units = sorted(G.units, key=repr)
    uid = {u: k for k, u in enumerate(units)}
    lines = [f'digraph "{title}" {{']
    for u in units:
        lines.append(f'  u{uid[u]} [label="{u!r}"];')
    seen = set()
    for g in sorted(G.elements, key=repr):
        s, r = G.source(g), G.range(g)
        if s == r:
            continue
        if (s, r) in seen:
            continue
        seen.add((s, r))
        lines.append(f"  u{uid[s]} -> u{uid[r]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def product_table_json(G):
    """Deterministic JSON dump of the product table."""
    els = sorted(G.elements, key=repr)
    name = {g: repr(g) for g in els}
    data = {
        "elements": [name[g] for g in els],
        "inverse": {name[g]: name[G.inv(g)] for g in els},
        "product": [
            [name[x], name[y], name[v]]
            for (x, y), v in sorted(G.product.items(), key=lambda kv: (repr(kv[0][0]), repr(kv[0][1])))
        ],
        "units": sorted(name[u] for u in G.units),
    }
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
