"""Finite inverse semigroups given by Cayley tables.

Elements are positional indices 0..n-1; names are display-only.  A table is
accepted only after an exhaustive check of associativity, existence and
uniqueness of generalized inverses, and commutativity of idempotents.  On top
of a validated semigroup we compute the natural partial order, minimal
elements, meets, the covering relation and the structural condition flags
(E-unitary, 0-E-unitary, (L), (T), (LC)).

All values are immutable after validation and every operation here is pure,
so concurrent reads are safe.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property


class SemigroupError(ValueError):
    pass


class NotAssociative(SemigroupError):
    def __init__(self, x, y, z):
        self.triple = (x, y, z)
        super().__init__(f"associativity fails at ({x}*{y})*{z} != {x}*({y}*{z})")


class NoInverse(SemigroupError):
    def __init__(self, x):
        self.element = x
        super().__init__(f"element {x} has no generalized inverse")


class NonUniqueInverse(SemigroupError):
    def __init__(self, x, candidates):
        self.element = x
        self.candidates = tuple(candidates)
        super().__init__(f"element {x} has several generalized inverses: {candidates}")


class IdempotentsDontCommute(SemigroupError):
    def __init__(self, p, q):
        self.pair = (p, q)
        super().__init__(f"idempotents {p} and {q} do not commute")


class EmptyList(SemigroupError):
    pass


class MeetError(SemigroupError):
    pass


class NoNonzeroLowerBound(MeetError):
    pass


class NoLargestLowerBound(MeetError):
    pass


class ParseError(SemigroupError):
    def __init__(self, message, line, col):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {message}")


@dataclass(frozen=True)
class OrderRelation:
    """The natural partial order as an explicit set of (smaller, larger) pairs."""

    pairs: frozenset


@dataclass(frozen=True)
class ClassifyReport:
    E_unitary: bool
    zero_E_unitary: bool
    L: bool
    T: bool
    LC: bool
    has_zero: bool
    notes: tuple = ()

    def as_dict(self):
        return {
            "E_unitary": self.E_unitary,
            "zero_E_unitary": self.zero_E_unitary,
            "L": self.L,
            "T": self.T,
            "LC": self.LC,
            "has_zero": self.has_zero,
            "notes": list(self.notes),
        }


class InverseSemigroup:
    """A validated finite inverse semigroup.

    Do not construct directly; use :func:`validate`.
    """

    def __init__(self, mul, inv, zero, names):
        self.n = len(mul)
        self.mul = tuple(tuple(row) for row in mul)
        self.inv = tuple(inv)
        self.zero = zero
        self.names = tuple(names)

    def m(self, x, y):
        return self.mul[x][y]

    def i(self, x):
        return self.inv[x]

    def leq(self, x, y):
        # x is smaller than y when x y^{-1} = x x^{-1}
        return self.mul[x][self.inv[y]] == self.mul[x][self.inv[x]]

    def is_idempotent(self, x):
        return self.mul[x][x] == x

    def is_zero(self, x):
        return self.zero is not None and x == self.zero

    @cached_property
    def idempotent_set(self):
        return tuple(x for x in range(self.n) if self.is_idempotent(x))

    @cached_property
    def below(self):
        """below[x] = tuple of all y with y smaller than x."""
        return tuple(
            tuple(y for y in range(self.n) if self.leq(y, x)) for x in range(self.n)
        )

    @cached_property
    def above(self):
        return tuple(
            tuple(y for y in range(self.n) if self.leq(x, y)) for x in range(self.n)
        )

    @cached_property
    def minimal_set(self):
        out = []
        for x in range(self.n):
            if self.is_zero(x):
                continue
            if all(self.is_zero(y) or y == x for y in self.below[x]):
                out.append(x)
        return tuple(out)

    def name(self, x):
        return self.names[x]

    def __repr__(self):
        return f"InverseSemigroup(n={self.n}, zero={self.zero})"


def validate(raw_table, names=None):
    """Validate a raw n x n multiplication table and derive inverses and zero.

    Raises NotAssociative / NoInverse / NonUniqueInverse /
    IdempotentsDontCommute with exact witnesses; failures are never sampled.
    """
    n = len(raw_table)
    if n == 0:
        raise SemigroupError("empty table")
    table = []
    for irow, row in enumerate(raw_table):
        row = list(row)
        if len(row) != n:
            raise SemigroupError(f"row {irow} has length {len(row)}, expected {n}")
        for e in row:
            if not isinstance(e, int) or not 0 <= e < n:
                raise SemigroupError(f"entry {e!r} in row {irow} out of range [0,{n})")
        table.append(tuple(row))

    for x in range(n):
        for y in range(n):
            xy = table[x][y]
            for z in range(n):
                if table[xy][z] != table[x][table[y][z]]:
                    raise NotAssociative(x, y, z)

    inv = []
    for x in range(n):
        cands = [
            y
            for y in range(n)
            if table[table[x][y]][x] == x and table[table[y][x]][y] == y
        ]
        if not cands:
            raise NoInverse(x)
        if len(cands) > 1:
            raise NonUniqueInverse(x, cands)
        inv.append(cands[0])

    for x in range(n):
        if inv[inv[x]] != x:
            raise SemigroupError(f"inverse map is not an involution at {x}")

    idem = [x for x in range(n) if table[x][x] == x]
    for p in idem:
        for q in idem:
            if table[p][q] != table[q][p]:
                raise IdempotentsDontCommute(p, q)

    # A single-element semigroup is treated as the trivial group: its only
    # element is a unit, not a zero.
    zero = None
    if n > 1:
        zs = [
            z
            for z in range(n)
            if all(table[z][x] == z and table[x][z] == z for x in range(n))
        ]
        if len(zs) > 1:
            raise SemigroupError("more than one zero element")
        if zs:
            zero = zs[0]

    if names is None:
        names = [f"x{k}" for k in range(n)]
    else:
        names = list(names)
        if len(names) != n or len(set(names)) != n:
            raise SemigroupError("names must be unique and match the table size")
    return InverseSemigroup(table, inv, zero, names)


def natural_order(S):
    """The full natural partial order of S as an OrderRelation."""
    pairs = frozenset(
        (x, y) for x in range(S.n) for y in range(S.n) if S.leq(x, y)
    )
    # sanity: the relation is an order
    for x in range(S.n):
        assert (x, x) in pairs
    for (x, y) in pairs:
        if (y, x) in pairs:
            assert x == y
        for z in range(S.n):
            if (y, z) in pairs:
                assert (x, z) in pairs
    return OrderRelation(pairs)


def idempotents(S):
    return frozenset(S.idempotent_set)


def minimal_elements(S):
    return frozenset(S.minimal_set)


def meet(S, x, y):
    """Largest common precessor of x and y.

    Raises NoNonzeroLowerBound when x and y have no common precessor other
    than zero, and NoLargestLowerBound when precessors exist but no largest
    one does (an (L) violation witness).
    """
    lows = [z for z in range(S.n) if S.leq(z, x) and S.leq(z, y)]
    if not any(not S.is_zero(z) for z in lows):
        raise NoNonzeroLowerBound(f"elements {x},{y} share no nonzero lower bound")
    tops = [z for z in lows if all(S.leq(w, z) for w in lows)]
    if not tops:
        raise NoLargestLowerBound(f"elements {x},{y} have no largest lower bound")
    assert len(tops) == 1
    top = tops[0]
    # closed form when a common successor exists
    if any(S.leq(x, s) and S.leq(y, s) for s in range(S.n)):
        cf = S.m(S.m(S.m(S.m(x, S.i(x)), y), S.i(y)), x)
        assert cf == top, "closed-form meet disagrees with exhaustive search"
    return top


def covered_by(S, x, xs):
    """x < (x_1,...,x_n): every nonzero y below x meets some x_j from below."""
    xs = list(xs)
    if not xs:
        raise EmptyList("covering relation needs a nonempty list")
    for y in S.below[x]:
        if S.is_zero(y):
            continue
        hit = any(
            not S.is_zero(z) and S.leq(z, y) and S.leq(z, xj)
            for xj in xs
            for z in range(S.n)
        )
        if not hit:
            return False
    return True


def _has_nonzero_common_low(S, x, y):
    return any(
        not S.is_zero(z) and S.leq(z, x) and S.leq(z, y) for z in range(S.n)
    )


def classify(S):
    """Exhaustively decide the structural condition flags of S."""
    idem = set(S.idempotent_set)

    e_unitary = all(
        y in idem for p in idem for y in S.above[p]
    )
    zero_e_unitary = all(
        y in idem
        for p in idem
        if not S.is_zero(p)
        for y in S.above[p]
    )

    L = True
    for x in range(S.n):
        for y in range(S.n):
            if _has_nonzero_common_low(S, x, y):
                try:
                    meet(S, x, y)
                except NoLargestLowerBound:
                    L = False
                    break
        if not L:
            break

    has_zero = S.zero is not None

    # (T): for q smaller than p in the units, look for p_1..p_n below p with
    # p < (p_1..p_n, q) and each p_j below q or killed by q.  covered_by is
    # monotone in its list, so testing the maximal admissible list is exact.
    T = has_zero
    notes = []
    if has_zero:
        for p in idem:
            for q in idem:
                if q == p or not S.leq(q, p):
                    continue
                cand = [
                    pj
                    for pj in idem
                    if S.leq(pj, p) and (S.leq(pj, q) or S.is_zero(S.m(pj, q)))
                ]
                if not covered_by(S, p, cand + [q]):
                    T = False
                    break
            if not T:
                break
        notes.append(
            "(T) checked over all unit pairs q below p including q = 0; "
            "the maximal admissible witness list makes the check exact"
        )
    # For finite semigroups G_m^(0) is automatically closed in G_u^(0),
    # so (LC) reduces to zero + (L).
    LC = has_zero and L
    notes.append("finite scale: (LC) = has_zero and (L); closedness is automatic")
    return ClassifyReport(
        E_unitary=e_unitary,
        zero_E_unitary=zero_e_unitary,
        L=L,
        T=T,
        LC=LC,
        has_zero=has_zero,
        notes=tuple(notes),
    )


# ---------------------------------------------------------------------------
# Cayley-table text format
#
#   # comment
#   elements: name_0 name_1 ... name_{n-1}
#   table:
#   <n rows of n names>
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\S+")


def _tokens(line):
    return [(m.group(0), m.start() + 1) for m in _TOKEN.finditer(line)]


def parse_cayley(text):
    """Parse the Cayley-table format; returns (raw_table, names).

    Errors carry exact line and column numbers.
    """
    lines = text.splitlines()
    logical = []  # (lineno, content with comments stripped)
    for no, line in enumerate(lines, start=1):
        body = line.split("#", 1)[0]
        if body.strip():
            logical.append((no, body))
    if not logical:
        raise ParseError("empty input", 1, 1)

    no, header = logical[0]
    toks = _tokens(header)
    if toks[0][0] != "elements:":
        raise ParseError("expected 'elements:' header", no, toks[0][1])
    names = [t for t, _ in toks[1:]]
    if not names:
        raise ParseError("no element names given", no, toks[0][1])
    if len(set(names)) != len(names):
        raise ParseError("element names must be unique", no, toks[1][1])
    index = {nm: k for k, nm in enumerate(names)}
    n = len(names)

    if len(logical) < 2:
        raise ParseError("expected 'table:' line", no, 1)
    no2, tline = logical[1]
    ttoks = _tokens(tline)
    if ttoks[0][0] != "table:" or len(ttoks) != 1:
        raise ParseError("expected 'table:' line", no2, ttoks[0][1])

    rows = logical[2:]
    if len(rows) != n:
        where = rows[-1][0] if rows else no2
        raise ParseError(f"expected {n} table rows, got {len(rows)}", where, 1)
    table = []
    for rno, rline in rows:
        rtoks = _tokens(rline)
        if len(rtoks) != n:
            raise ParseError(f"expected {n} entries, got {len(rtoks)}", rno, 1)
        row = []
        for tok, col in rtoks:
            if tok not in index:
                raise ParseError(f"unknown element name {tok!r}", rno, col)
            row.append(index[tok])
        table.append(row)
    return table, names


def load_cayley(path):
    with open(path, "r", encoding="utf-8") as fh:
        table, names = parse_cayley(fh.read())
    return validate(table, names)


def dump_cayley(S):
    """Render S in the Cayley-table text format (bit-exact, deterministic)."""
    out = ["elements: " + " ".join(S.names), "table:"]
    for x in range(S.n):
        out.append(" ".join(S.names[S.m(x, y)] for y in range(S.n)))
    return "\n".join(out) + "\n"


def order_hasse_dot(S, title="order"):
    """DOT rendering of the Hasse diagram of the natural order."""
    lines = [f'digraph "{title}" {{', "  rankdir=BT;"]
    for x in range(S.n):
        lines.append(f'  n{x} [label="{S.names[x]}"];')
    for x in range(S.n):
        for y in range(S.n):
            if x == y or not S.leq(x, y):
                continue
            # cover edge: nothing strictly between
            if any(
                z != x and z != y and S.leq(x, z) and S.leq(z, y)
                for z in range(S.n)
            ):
                continue
            lines.append(f"  n{x} -> n{y};")
    lines.append("}")
    return "\n".join(lines) + "\n"
