"""Directed-set completion of a finite inverse semigroup.

For a finite semigroup every downward directed subset has a least element,
so the completion O(S) collapses onto S itself: each class is canonically
represented by its least element.  The general directed-subset model lives
only in the test oracle, which enumerates all directed subsets, quotients by
mutual domination and rebuilds the product; the two models are verified
isomorphic there.

On top of the completion we build the universal groupoid G_u(S), the
minimal groupoid G_m(S), the U/V basis sets, the membership injection, the
covering-relation quotient, the pair model of the universal groupoid with
its isomorphism maps, radius functions, and the ample-groupoid roundtrip.

All topological statements of the source construction are discrete at
finite scale; only their set-level content is computed here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import groupoids, semigroups
from .semigroups import covered_by


class CompletionError(ValueError):
    pass


class EmptySet(CompletionError):
    pass


class NotDirected(CompletionError):
    pass


class MalformedDescriptor(CompletionError):
    pass


def is_directed(S, A):
    """Downward directed: every pair in A has a lower bound inside A."""
    A = list(A)
    if not A:
        raise EmptySet("directedness is defined for nonempty subsets")
    return all(
        any(S.leq(z, x) and S.leq(z, y) for z in A) for x in A for y in A
    )


def class_of(S, A):
    """Canonical representative (the least element) of the class of A."""
    A = list(A)
    if not is_directed(S, A):
        raise NotDirected(f"subset {A} is not directed")
    least = [m for m in A if all(S.leq(m, a) for a in A)]
    assert least, "finite directed set must have a least element"
    return least[0]


@dataclass(frozen=True)
class Completion:
    """O(S) in the least-element model: the semigroup itself plus the
    embedding x -> [{x}] (the identity on indices)."""

    semigroup: object
    embed: tuple


def completion_semigroup(S):
    return Completion(semigroup=S, embed=tuple(range(S.n)))


def universal_groupoid(S):
    """G_u(S) = G(O(S)); elements are completion classes (= elements of S)."""
    return groupoids.restricted_product_groupoid(completion_semigroup(S).semigroup)


def minimal_groupoid(S):
    """G_m(S) = M(O(S)); equals the reduction of G_u(S) at the minimal units."""
    return groupoids.minimal_subgroupoid(completion_semigroup(S).semigroup)


@dataclass(frozen=True)
class BasisSetDescriptor:
    top: int
    excluded: tuple = ()


def _check_descriptor(S, d):
    for e in d.excluded:
        if e == d.top or not S.leq(e, d.top):
            raise MalformedDescriptor(
                f"excluded element {e} is not strictly below top {d.top}"
            )


def basis_U(S, d):
    """U_{x; x_1..x_n} = down-set of x minus the down-sets of the x_i."""
    _check_descriptor(S, d)
    return frozenset(
        X
        for X in S.below[d.top]
        if not any(S.leq(X, e) for e in d.excluded)
    )


def basis_V(S, d):
    """V_{x; x_1..x_n} = U_{x; x_1..x_n} intersected with the minimal classes."""
    mins = set(S.minimal_set)
    return frozenset(X for X in basis_U(S, d) if X in mins)


def membership_vector(S, X):
    """Bit x is set iff the class X lies below x; injective across classes."""
    return tuple(S.leq(X, x) for x in range(S.n))


def separating_descriptor(S, X, Y):
    """A basis descriptor whose set contains X but not Y (X != Y)."""
    if S.leq(Y, X):
        for x in S.above[X]:
            for z in S.below[x]:
                if S.leq(Y, z) and not S.leq(X, z):
                    return BasisSetDescriptor(top=x, excluded=(z,))
    for x in S.above[X]:
        if not S.leq(Y, x):
            return BasisSetDescriptor(top=x)
    raise CompletionError(f"no separating descriptor for {X},{Y}")


# ---------------------------------------------------------------------------
# the quotient by the two-sided covering relation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Quotient:
    semigroup: object
    pi: tuple  # element of S -> class index
    classes: tuple  # class index -> tuple of S-elements


def quotient_tilde(S):
    """S modulo x <> y (covered both ways), with the induced product."""
    lt = [[covered_by(S, x, [y]) for y in range(S.n)] for x in range(S.n)]
    reps = []
    pi = [None] * S.n
    classes = []
    for x in range(S.n):
        for k, r in enumerate(reps):
            if lt[x][r] and lt[r][x]:
                pi[x] = k
                classes[k].append(x)
                break
        else:
            pi[x] = len(reps)
            reps.append(x)
            classes.append([x])
    m = len(reps)
    table = [[None] * m for _ in range(m)]
    for a in range(m):
        for b in range(m):
            vals = {pi[S.m(x, y)] for x in classes[a] for y in classes[b]}
            assert len(vals) == 1, "quotient product is not well defined"
            table[a][b] = vals.pop()
    names = ["[" + S.names[r] + "]" for r in reps]
    Q = semigroups.validate(table, names)
    return Quotient(semigroup=Q, pi=tuple(pi), classes=tuple(map(tuple, classes)))


# ---------------------------------------------------------------------------
# the pair model of the universal groupoid
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PairModel:
    groupoid: object  # elements are frozensets of identified (P, x) pairs
    J: dict  # S-element (= G_u element) -> pair class
    K: dict  # pair class -> S-element


def paterson_groupoid(S):
    """The pair model of G_u(S) together with the isomorphisms J and K.

    Pairs (P, x) with P a unit class below x x^{-1}; (P, x) and (P, x') are
    identified when some p above P satisfies p x = p x'.  J sends a class X
    to [X X^{-1}, x] for any x above X, K sends [P, x] to P x; the two are
    verified to be mutually inverse homomorphisms by the test suite.
    """
    idem = set(S.idempotent_set)
    pairs = [
        (P, x)
        for P in sorted(idem)
        for x in range(S.n)
        if S.leq(P, S.m(x, S.i(x)))
    ]
    pidx = {pr: k for k, pr in enumerate(pairs)}

    parent = list(range(len(pairs)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for k, (P, x) in enumerate(pairs):
        for x2 in range(S.n):
            if (P, x2) not in pidx:
                continue
            if any(S.leq(P, p) and S.m(p, x) == S.m(p, x2) for p in range(S.n)):
                union(k, pidx[(P, x2)])

    groups = {}
    for k, pr in enumerate(pairs):
        groups.setdefault(find(k), []).append(pr)
    classes = sorted(
        (frozenset(v) for v in groups.values()),
        key=lambda c: sorted(c),
    )
    cls_of = {pr: c for c in classes for pr in c}

    def star(c):
        outs = {cls_of[(S.m(S.m(S.i(x), P), x), S.i(x))] for (P, x) in c}
        assert len(outs) == 1, "involution not constant on a pair class"
        return outs.pop()

    inverse = {c: star(c) for c in classes}
    product = {}
    for a in classes:
        for b in classes:
            vals = set()
            for (P, x) in a:
                src = S.m(S.m(S.i(x), P), x)  # x^{-1} P x
                for (Q, y) in b:
                    if Q == src:
                        vals.add(cls_of[(P, S.m(x, y))])
            if vals:
                assert len(vals) == 1, "pair product not well defined"
                product[(a, b)] = vals.pop()
    H = groupoids.FiniteGroupoid(classes, product, inverse)
    rep = groupoids.check_axioms(H)
    assert rep.ok, rep

    J = {}
    for X in range(S.n):
        P = S.m(X, S.i(X))
        J[X] = cls_of[(P, X)]
    K = {}
    for c in classes:
        vals = {S.m(P, x) for (P, x) in c}
        assert len(vals) == 1, "K not constant on a pair class"
        K[c] = vals.pop()
    return PairModel(groupoid=H, J=J, K=K)


# ---------------------------------------------------------------------------
# radius functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RadiusReport:
    ok: bool
    axiom: str = ""
    witness: tuple = ()
    admissible: bool = False
    lifted: tuple = ()


def check_radius(S, values):
    """Check (R1)-(R3) exhaustively and lift R to completion classes.

    The lift is R(X) = sup of R over the successors of X.  Admissibility
    requires the lifted value to be infinite exactly on the nonzero minimal
    classes; the zero class is exempt (every element succeeds zero, so its
    lifted value is the global supremum by construction).
    """
    values = tuple(float(v) for v in values)
    if len(values) != S.n:
        raise CompletionError("radius vector has wrong length")
    for x in range(S.n):
        if values[S.i(x)] != values[x]:
            return RadiusReport(False, "R1", (x,))
    for x in range(S.n):
        for y in range(S.n):
            if values[S.m(x, y)] < min(values[x], values[y]):
                return RadiusReport(False, "R2", (x, y))
    for x in range(S.n):
        for y in S.above[x]:
            if values[y] > values[x]:
                return RadiusReport(False, "R3", (x, y))
    lifted = tuple(max(values[y] for y in S.above[x]) for x in range(S.n))
    mins = set(S.minimal_set)
    admissible = all(
        (lifted[x] == math.inf) == (x in mins)
        for x in range(S.n)
        if not S.is_zero(x)
    )
    return RadiusReport(True, admissible=admissible, lifted=lifted)


# ---------------------------------------------------------------------------
# ample-groupoid roundtrip
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RoundtripReport:
    ok: bool
    semigroup_size: int
    groupoid_size: int
    detail: str = ""


def consistency_roundtrip(G, cap=16):
    """Rebuild G from its bisection semigroup: G_m(all_bisections(G)) ~ G.

    The map sends g to the class of the directed set of all bisections
    containing g; the report verifies it is a product-preserving bijection.
    """
    S, bis = groupoids.all_bisections(G, cap=cap)
    Gm = groupoids.minimal_subgroupoid(S)
    phi = {}
    for g in G.elements:
        A = [k for k, b in enumerate(bis) if g in b]
        phi[g] = class_of(S, A)
    if sorted(phi.values()) != sorted(Gm.elements):
        return RoundtripReport(False, S.n, len(G.elements), "not a bijection")
    for x in G.elements:
        if Gm.inv(phi[x]) != phi[G.inv(x)]:
            return RoundtripReport(False, S.n, len(G.elements), f"inverse mismatch at {x!r}")
        for y in G.elements:
            if G.defined(x, y) != Gm.defined(phi[x], phi[y]):
                return RoundtripReport(
                    False, S.n, len(G.elements), f"composability mismatch at {x!r},{y!r}"
                )
            if G.defined(x, y) and phi[G.mul(x, y)] != Gm.mul(phi[x], phi[y]):
                return RoundtripReport(
                    False, S.n, len(G.elements), f"product mismatch at {x!r},{y!r}"
                )
    return RoundtripReport(True, S.n, len(G.elements))
