"""Shared oracles and fixtures used by both the unit and acceptance tests.

Everything here is deliberately independent of the library internals: the
completion oracle re-derives the directed-subset model from scratch, and
the groupoid builders write their product tables by hand.
"""

import itertools

from ordgroupoid import groupoids, semigroups


# ---------------------------------------------------------------------------
# order proposition oracles (exhaustive)
# ---------------------------------------------------------------------------


def order_prop_failures(S):
    """Exhaustively check the five order propositions; returns failures."""
    bad = []
    idem = set(S.idempotent_set)
    mins = set(S.minimal_set)

    for x in range(S.n):
        for y in range(S.n):
            lhs = S.leq(x, y)
            via_inv = S.leq(S.i(x), S.i(y))
            via_p = any(S.m(p, y) == x for p in idem)
            via_q = any(S.m(y, q) == x for q in idem)
            if not (lhs == via_inv == via_p == via_q):
                bad.append(("order-equivalences", x, y))

    # compatibility with products
    for x1 in range(S.n):
        for y1 in range(S.n):
            if not S.leq(x1, y1):
                continue
            for x2 in range(S.n):
                for y2 in range(S.n):
                    if S.leq(x2, y2) and not S.leq(S.m(x1, x2), S.m(y1, y2)):
                        bad.append(("product-compat", x1, x2, y1, y2))

    # minimality transfers through inversion and the two unit maps
    for x in range(S.n):
        flags = {
            x in mins,
            S.i(x) in mins,
            S.m(S.i(x), x) in mins,
            S.m(x, S.i(x)) in mins,
        }
        if len(flags) != 1:
            bad.append(("minimality-transfer", x))

    # products of minimal elements
    for x in mins:
        for y in mins:
            i = not S.is_zero(S.m(x, y))
            ii = S.m(S.i(x), x) == S.m(y, S.i(y))
            iii = S.m(x, y) in mins
            if not (i == ii == iii):
                bad.append(("minimal-products", x, y))

    # closed form of the meet
    for x in range(S.n):
        for y in range(S.n):
            has_succ = any(S.leq(x, z) and S.leq(y, z) for z in range(S.n))
            lows = [
                z
                for z in range(S.n)
                if not S.is_zero(z) and S.leq(z, x) and S.leq(z, y)
            ]
            if not (has_succ and lows):
                continue
            m = S.m(S.m(S.m(x, S.i(x)), S.m(y, S.i(y))), x)
            if m not in lows or not all(S.leq(z, m) for z in lows):
                bad.append(("meet-formula", x, y))
    return bad


# ---------------------------------------------------------------------------
# brute-force directed-subset completion
# ---------------------------------------------------------------------------


def brute_force_completion_iso(S):
    """Build the completion from all directed subsets and check it is
    isomorphic to S via x -> [{x}].  Returns None on success, else a reason."""
    n = S.n
    subsets = []
    for mask in range(1, 1 << n):
        A = frozenset(k for k in range(n) if mask >> k & 1)
        if all(
            any(S.leq(z, x) and S.leq(z, y) for z in A) for x in A for y in A
        ):
            subsets.append(A)

    def dominated(A, B):
        # every element of A has an element of B below it
        return all(any(S.leq(b, a) for b in B) for a in A)

    def equiv(A, B):
        return dominated(A, B) and dominated(B, A)

    classes = []
    cls_of = {}
    for A in subsets:
        for k, rep in enumerate(classes):
            if equiv(A, rep):
                cls_of[A] = k
                break
        else:
            cls_of[A] = len(classes)
            classes.append(A)

    if len(classes) != n:
        return f"class count {len(classes)} != {n}"

    # the product of classes is the class of the elementwise product
    table = {}
    for A in subsets:
        for B in subsets:
            AB = frozenset(S.m(a, b) for a in A for b in B)
            key = (cls_of[A], cls_of[B])
            val = cls_of[AB]
            if table.setdefault(key, val) != val:
                return f"product not well defined at {key}"

    phi = {x: cls_of[frozenset([x])] for x in range(n)}
    if len(set(phi.values())) != n:
        return "x -> [{x}] is not injective"
    for x in range(n):
        for y in range(n):
            if table[(phi[x], phi[y])] != phi[S.m(x, y)]:
                return f"x -> [{{x}}] not a homomorphism at ({x},{y})"
    return None


# ---------------------------------------------------------------------------
# hand-built groupoids for the roundtrip criterion
# ---------------------------------------------------------------------------


def trivial_groupoid():
    return groupoids.FiniteGroupoid(["u"], {("u", "u"): "u"}, {"u": "u"})


def z2_groupoid():
    product = {
        ("e", "e"): "e",
        ("e", "g"): "g",
        ("g", "e"): "g",
        ("g", "g"): "e",
    }
    return groupoids.FiniteGroupoid(["e", "g"], product, {"e": "e", "g": "g"})


def pair_groupoid(k):
    els = [(i, j) for i in range(k) for j in range(k)]
    product = {
        ((i, j), (j2, l)): (i, l)
        for (i, j) in els
        for (j2, l) in els
        if j == j2
    }
    return groupoids.FiniteGroupoid(els, product, {(i, j): (j, i) for (i, j) in els})


# ---------------------------------------------------------------------------
# a small semigroup where two elements have no largest common precessor
# ---------------------------------------------------------------------------


def clifford_without_meets():
    """{0, a, b, e, g}: a copy of Z/2 sitting above the incomparable units
    a and b; e and g share the lower bounds {a, b} but no largest one."""
    els = ["0", "a", "b", "e", "g"]

    def op(x, y):
        if "0" in (x, y):
            return "0"
        if x in "ab" and y in "ab":
            return x if x == y else "0"
        if x in "ab":
            return x
        if y in "ab":
            return y
        return "e" if x == y else "g"

    index = {v: k for k, v in enumerate(els)}
    table = [[index[op(x, y)] for y in els] for x in els]
    return semigroups.validate(table, els)


def small_lists(items, max_size):
    """All nonempty lists (as sorted tuples) of up to max_size items."""
    out = []
    for size in range(1, max_size + 1):
        out += [list(c) for c in itertools.combinations(items, size)]
    return out
