"""Bundled desk-scale corpus of inverse semigroups.

Every entry is built from first principles (matrix units, partial
bijections, semilattice meets) rather than from a hand-typed table, so the
tables double as fixtures for the validator.
"""

from __future__ import annotations

from . import semigroups


def _from_elements(elements, op, names):
    """Cayley table from an element list and a binary operation."""
    index = {e: k for k, e in enumerate(elements)}
    table = [[index[op(a, b)] for b in elements] for a in elements]
    return semigroups.validate(table, names)


def trivial_group():
    return semigroups.validate([[0]], ["e"])


def semilattice_chain(k):
    """The meet-semilattice chain 0 < p1 < ... < p_{k-1} (k elements)."""
    els = list(range(k))
    names = ["0"] + [f"p{j}" for j in range(1, k)]
    return _from_elements(els, min, names)


def semilattice_fork():
    """{0, p, q} with p and q incomparable above 0."""
    els = ["0", "p", "q"]

    def op(a, b):
        return a if a == b else "0"

    return _from_elements(els, op, els)


def semilattice_diamond():
    """{0, p, q, t} with p, q below t and p meet q = 0."""
    els = ["0", "p", "q", "t"]

    def op(a, b):
        if a == b:
            return a
        if "t" in (a, b):
            other = a if b == "t" else b
            return other
        return "0"

    return _from_elements(els, op, els)


def _matrix_unit_op(a, b):
    if a == "0" or b == "0":
        return "0"
    # a = e_{ij}, b = e_{kl}: product e_{il} when j == k
    return "e" + a[1] + b[2] if a[2] == b[1] else "0"


def brandt_b2():
    """B2: the 2x2 matrix units with zero."""
    els = ["0", "e11", "e12", "e21", "e22"]
    return _from_elements(els, _matrix_unit_op, els)


def two_brandt_b2():
    """Two disjoint copies of B2 sharing one zero (9 elements)."""
    els = ["0"] + ["a" + s for s in ("11", "12", "21", "22")] + [
        "b" + s for s in ("11", "12", "21", "22")
    ]

    def op(a, b):
        if a == "0" or b == "0" or a[0] != b[0]:
            return "0"
        return a[0] + a[1] + b[2] if a[2] == b[1] else "0"

    return _from_elements(els, op, els)


def _partial_bijections(points):
    """All partial bijections on `points`, as frozensets of (src, dst)."""
    points = list(points)
    maps = [frozenset()]
    for p in points:
        new = []
        for m in maps:
            used = {d for (_, d) in m}
            new.append(m)
            for q in points:
                if q not in used:
                    new.append(m | {(p, q)})
        maps = new
    return maps


def _compose_partial(f, g):
    """f after g: (f.g)(x) = f(g(x)), as relations of (src, dst) pairs."""
    return frozenset((s, t) for (s, m) in g for (m2, t) in f if m == m2)


def symmetric_inverse_monoid(k):
    """I_k: all partial bijections on k points under composition."""
    maps = sorted(_partial_bijections(range(1, k + 1)), key=lambda m: (len(m), sorted(m)))

    def op(a, b):
        # (a . b)(x) = a(b(x))
        return _compose_partial(a, b)

    def name(m):
        if not m:
            return "0"
        return "(" + ",".join(f"{s}>{t}" for (s, t) in sorted(m)) + ")"

    return _from_elements(maps, op, [name(m) for m in maps])


def z2_with_zero():
    """The group Z/2 with an adjoined zero: {0, e, g}."""
    els = ["0", "e", "g"]

    def op(a, b):
        if "0" in (a, b):
            return "0"
        return "e" if a == b else "g"

    return _from_elements(els, op, els)


def corpus():
    """Name -> semigroup, in deterministic order."""
    return {
        "trivial": trivial_group(),
        "sl2": semilattice_chain(2),
        "sl3_chain": semilattice_chain(3),
        "sl3_fork": semilattice_fork(),
        "sl4_diamond": semilattice_diamond(),
        "b2": brandt_b2(),
        "i2": symmetric_inverse_monoid(2),
        "z2_zero": z2_with_zero(),
        "b2_pair": two_brandt_b2(),
    }


# the two standing corpus graphs, as edge lists (name, src, dst)
GRAPH_O2 = [("a", "v", "v"), ("b", "v", "v")]
GRAPH_TWO_VERTEX = [("a", "v", "v"), ("e", "v", "w"), ("b", "w", "w")]
GRAPH_SINGLE_LOOP = [("a", "v", "v")]


def graph_corpus():
    return {
        "o2": GRAPH_O2,
        "two_vertex": GRAPH_TWO_VERTEX,
        "single_loop": GRAPH_SINGLE_LOOP,
    }
