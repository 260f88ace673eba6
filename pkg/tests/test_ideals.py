import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordgroupoid import ideals
from ordgroupoid.ideals import (
    LCViolated,
    NotIdempotents,
    NotInvariantIdeal,
    closure_Cl,
    condition_ii,
    enumerate_ideal_lattice,
    gamma_I,
    lattice_maps,
    minimality_report,
    simplicity_report,
)

import helpers


def test_closure_is_a_closure_operator(all_semigroups):
    S = all_semigroups["b2_pair"]
    idem = sorted(S.idempotent_set)
    # extensive and idempotent on every principal seed
    for p in idem:
        c = closure_Cl(S, {p}).members
        assert p in c
        assert closure_Cl(S, c).members == c


@settings(max_examples=50, deadline=None)
@given(data=st.data())
def test_closure_is_monotone(all_semigroups, data):
    S = all_semigroups["i2"]
    idem = sorted(S.idempotent_set)
    A = frozenset(data.draw(st.sets(st.sampled_from(idem), max_size=4)))
    B = A | frozenset(data.draw(st.sets(st.sampled_from(idem), max_size=2)))
    if A:
        assert closure_Cl(S, A).members <= closure_Cl(S, B).members


def test_closure_of_empty_set_is_empty(b2):
    assert closure_Cl(b2, frozenset()).members == frozenset()


def test_closure_rejects_non_idempotents(b2):
    with pytest.raises(NotIdempotents):
        closure_Cl(b2, {2})  # e12 is not a unit


def test_lattice_node_counts(all_semigroups):
    assert len(enumerate_ideal_lattice(all_semigroups["b2"]).nodes) == 2
    assert len(enumerate_ideal_lattice(all_semigroups["sl3_fork"]).nodes) == 4
    assert len(enumerate_ideal_lattice(all_semigroups["b2_pair"]).nodes) == 4


def test_lattice_maps_are_mutually_inverse(lc_semigroups):
    for name, S in lc_semigroups.items():
        su, si, verdict = lattice_maps(S)
        assert verdict.ok, (name, verdict.detail)
        for I, V in su.items():
            assert si[V] == I, name


def test_lattice_maps_require_lc(all_semigroups):
    S = all_semigroups["trivial"]
    with pytest.raises(LCViolated):
        lattice_maps(S)
    su, si, verdict = lattice_maps(S, force=True)
    assert verdict.ok


def test_condition_ii(all_semigroups):
    assert condition_ii(all_semigroups["b2"])
    assert not condition_ii(all_semigroups["b2_pair"])


def test_minimality_reports(all_semigroups):
    rep = minimality_report(all_semigroups["b2"])
    assert rep.all_equal and rep.groupoid_minimal
    rep = minimality_report(all_semigroups["b2_pair"])
    assert rep.all_equal and not rep.groupoid_minimal


def test_gamma_i_reduction(all_semigroups):
    S = all_semigroups["b2_pair"]
    lat = enumerate_ideal_lattice(S)
    for I in lat.nodes:
        rep = gamma_I(S, I)
        assert rep.reduction_iso, sorted(I)
    # one copy of B2 inside the pair has 5 elements
    half = next(I for I in lat.nodes if len(I) == 3)
    rep = gamma_I(S, half)
    assert rep.semigroup.n == 5


def test_gamma_i_rejects_non_ideals(b2):
    with pytest.raises(NotInvariantIdeal):
        gamma_I(b2, frozenset({1}))  # {e11} is not invariant


def test_gamma_i_degenerate(b2):
    rep = gamma_I(b2, frozenset({b2.zero}))
    assert rep.reduction_iso


def test_simplicity_verdicts(all_semigroups):
    assert simplicity_report(all_semigroups["b2"]).verdict == "SIMPLE"
    assert simplicity_report(all_semigroups["b2_pair"]).verdict == "NOT-SIMPLE"
    rep = simplicity_report(all_semigroups["z2_zero"])
    assert rep.verdict == "CONDITIONAL" and rep.condition
    rep = simplicity_report(
        all_semigroups["z2_zero"], assume_essentially_principal=True
    )
    assert rep.assumed and rep.verdict == "SIMPLE"


def test_ideal_lattice_dot(b2):
    lat = enumerate_ideal_lattice(b2)
    dot = ideals.ideal_lattice_dot(b2, lat)
    assert dot == ideals.ideal_lattice_dot(b2, lat)
    assert dot.startswith("digraph")
