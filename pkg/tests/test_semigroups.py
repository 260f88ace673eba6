import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordgroupoid import semigroups
from ordgroupoid.semigroups import (
    EmptyList,
    NoLargestLowerBound,
    NoNonzeroLowerBound,
    NotAssociative,
    NonUniqueInverse,
    ParseError,
    covered_by,
    meet,
)

import helpers


def test_corpus_revalidates_from_text(all_semigroups):
    for name, S in all_semigroups.items():
        S2 = semigroups.validate(
            *semigroups.parse_cayley(semigroups.dump_cayley(S))
        )
        assert S2.mul == S.mul, name
        assert S2.zero == S.zero, name


def test_zero_detection(all_semigroups):
    assert all_semigroups["trivial"].zero is None
    assert all_semigroups["sl2"].zero == 0
    assert all_semigroups["b2"].names[all_semigroups["b2"].zero] == "0"


def test_corrupted_table_reports_coordinates(b2):
    table = [list(row) for row in b2.mul]
    table[1][2] = 3  # e11 * e12 should be e12
    with pytest.raises(NotAssociative) as exc:
        semigroups.validate(table, list(b2.names))
    assert len(exc.value.triple) == 3


def test_left_zero_band_has_no_unique_inverses():
    with pytest.raises(NonUniqueInverse):
        semigroups.validate([[0, 0], [1, 1]])


def test_order_axioms(all_semigroups):
    for S in all_semigroups.values():
        rel = semigroups.natural_order(S)
        for x in range(S.n):
            assert (x, x) in rel.pairs
        for (a, b) in rel.pairs:
            assert not ((b, a) in rel.pairs and a != b)
            for (c, d) in rel.pairs:
                if c == b:
                    assert (a, d) in rel.pairs


def test_order_propositions_hold(all_semigroups):
    for name, S in all_semigroups.items():
        assert helpers.order_prop_failures(S) == [], name


def test_meet_of_comparable_elements(b2):
    for x in range(b2.n):
        for y in range(b2.n):
            if b2.leq(x, y) and not b2.is_zero(x):
                assert meet(b2, x, y) == x


def test_meet_without_nonzero_lower_bound(all_semigroups):
    S = all_semigroups["sl3_fork"]
    p, q = S.names.index("p"), S.names.index("q")
    with pytest.raises(NoNonzeroLowerBound):
        meet(S, p, q)


def test_meet_without_largest_lower_bound():
    S = helpers.clifford_without_meets()
    e, g = S.names.index("e"), S.names.index("g")
    with pytest.raises(NoLargestLowerBound):
        meet(S, e, g)
    assert not semigroups.classify(S).L


def test_classification_flags(all_semigroups):
    expected = {
        "trivial": dict(E_unitary=True, zero_E_unitary=True, L=True, LC=False),
        "b2": dict(E_unitary=False, zero_E_unitary=True, L=True, LC=True),
        # extensions of a nonzero partial identity are partial identities,
        # so I2 is 0-E-unitary but (because of the swap above 0) not E-unitary
        "i2": dict(E_unitary=False, zero_E_unitary=True, L=True, LC=True),
        "z2_zero": dict(E_unitary=False, zero_E_unitary=True, L=True, LC=True),
        "sl3_fork": dict(E_unitary=True, zero_E_unitary=True, L=True, LC=True),
    }
    for name, want in expected.items():
        rep = semigroups.classify(all_semigroups[name])
        for key, val in want.items():
            assert getattr(rep, key) == val, (name, key)


def test_covered_by_rejects_empty_list(b2):
    with pytest.raises(EmptyList):
        covered_by(b2, 1, [])


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_covered_by_is_monotone_in_the_list(all_semigroups, data):
    S = all_semigroups["i2"]
    x = data.draw(st.integers(0, S.n - 1))
    xs = data.draw(st.lists(st.integers(0, S.n - 1), min_size=1, max_size=3))
    extra = data.draw(st.lists(st.integers(0, S.n - 1), max_size=3))
    if covered_by(S, x, xs):
        assert covered_by(S, x, xs + extra)


def test_minimal_elements(all_semigroups):
    i2 = all_semigroups["i2"]
    mins = {i2.names[k] for k in i2.minimal_set}
    assert mins == {"(1>1)", "(1>2)", "(2>1)", "(2>2)"}
    b2p = all_semigroups["b2_pair"]
    assert len(b2p.minimal_set) == 8


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as exc:
        semigroups.parse_cayley("elements: a b\ntable:\na b\nb c\n")
    assert exc.value.line == 4
    with pytest.raises(ParseError):
        semigroups.parse_cayley("# nothing\n")


def test_hasse_dot_is_deterministic(b2):
    assert semigroups.order_hasse_dot(b2) == semigroups.order_hasse_dot(b2)
    assert semigroups.order_hasse_dot(b2).startswith("digraph")
