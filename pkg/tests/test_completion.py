import math

import pytest

from ordgroupoid import completion, groupoids
from ordgroupoid.completion import (
    BasisSetDescriptor,
    EmptySet,
    MalformedDescriptor,
    NotDirected,
    basis_U,
    basis_V,
    check_radius,
    class_of,
    consistency_roundtrip,
    is_directed,
    membership_vector,
    paterson_groupoid,
    quotient_tilde,
    separating_descriptor,
)

import helpers


def test_directedness(b2):
    assert is_directed(b2, [0, 1])  # {0, e11}: 0 is a common lower bound
    assert not is_directed(b2, [1, 4])  # e11, e22 have no bound inside
    with pytest.raises(EmptySet):
        is_directed(b2, [])
    with pytest.raises(NotDirected):
        class_of(b2, [1, 4])
    assert class_of(b2, [0, 1]) == 0


def test_completion_collapses_to_least_elements(all_semigroups):
    # the canonical finite model: each directed set is its least element
    for name, S in all_semigroups.items():
        c = completion.completion_semigroup(S)
        assert c.embed == tuple(range(S.n)), name


def test_brute_force_directed_subset_model(all_semigroups):
    for name, S in all_semigroups.items():
        if S.n > 8:
            continue
        assert helpers.brute_force_completion_iso(S) is None, name


def test_minimal_groupoid_is_reduction_of_universal(all_semigroups):
    # checked internally by minimal_subgroupoid via same_structure
    for S in all_semigroups.values():
        completion.minimal_groupoid(S)


def test_basis_sets(b2):
    e11 = 1
    U = basis_U(b2, BasisSetDescriptor(top=e11))
    assert U == {b2.zero, e11}
    V = basis_V(b2, BasisSetDescriptor(top=e11))
    assert V == {e11}
    U2 = basis_U(b2, BasisSetDescriptor(top=e11, excluded=(b2.zero,)))
    assert U2 == {e11}
    with pytest.raises(MalformedDescriptor):
        basis_U(b2, BasisSetDescriptor(top=e11, excluded=(e11,)))
    with pytest.raises(MalformedDescriptor):
        basis_U(b2, BasisSetDescriptor(top=e11, excluded=(2,)))


def test_membership_vector_is_injective(all_semigroups):
    for name, S in all_semigroups.items():
        vecs = {membership_vector(S, X) for X in range(S.n)}
        assert len(vecs) == S.n, name


def test_separating_descriptors(lc_semigroups):
    for name, S in lc_semigroups.items():
        for X in range(S.n):
            for Y in range(S.n):
                if X == Y:
                    continue
                d = separating_descriptor(S, X, Y)
                U = basis_U(S, d)
                assert X in U and Y not in U, (name, X, Y)


def test_quotient_by_covering(all_semigroups):
    q = quotient_tilde(all_semigroups["sl3_chain"])
    assert q.semigroup.n == 2
    assert q.pi == (0, 1, 1)
    # B2 has no two-sided coverings between distinct elements
    qb = quotient_tilde(all_semigroups["b2"])
    assert qb.semigroup.n == all_semigroups["b2"].n


def test_pair_model_isomorphisms(all_semigroups):
    for name, S in all_semigroups.items():
        if S.n > 8:
            continue
        pm = paterson_groupoid(S)
        Gu = completion.universal_groupoid(S)
        assert len(pm.groupoid) == len(Gu), name
        for X in range(S.n):
            assert pm.K[pm.J[X]] == X, name
        for c in pm.groupoid.elements:
            assert pm.J[pm.K[c]] == c, name
        # J transports the product structure
        for x in range(S.n):
            for y in range(S.n):
                if Gu.defined(x, y):
                    assert pm.groupoid.defined(pm.J[x], pm.J[y]), name
                    assert pm.groupoid.mul(pm.J[x], pm.J[y]) == pm.J[Gu.mul(x, y)]
                else:
                    assert not pm.groupoid.defined(pm.J[x], pm.J[y]), name


def test_radius_axioms_and_admissibility(all_semigroups):
    b2 = all_semigroups["b2"]
    rep = check_radius(b2, [math.inf] * 5)
    assert rep.ok and rep.admissible

    # a finite value at the zero is inconsistent: products that collapse to
    # zero violate (R2), and zero being below everything violates (R3)
    rep = check_radius(b2, [0, math.inf, math.inf, math.inf, math.inf])
    assert not rep.ok and rep.axiom in ("R2", "R3")

    # finite values on minimal elements are not admissible
    rep = check_radius(b2, [math.inf, 1, 1, 1, 1])
    assert rep.ok and not rep.admissible

    # rank-graded radius on I2: infinite on the minimal layer
    i2 = all_semigroups["i2"]
    mins = set(i2.minimal_set)
    vals = [
        math.inf if (i2.is_zero(x) or x in mins) else 2.0 for x in range(i2.n)
    ]
    rep = check_radius(i2, vals)
    assert rep.ok and rep.admissible


def test_radius_r1_r2_violations(b2):
    vals = [math.inf, 1, 2, 3, 1]  # e12 and e21 are mutual inverses
    rep = check_radius(b2, vals)
    assert not rep.ok and rep.axiom == "R1"
    vals = [math.inf, 1, 4, 4, 5]  # e12 * e21 = e11 but 1 < min(4, 4)
    rep = check_radius(b2, vals)
    assert not rep.ok and rep.axiom == "R2"


def test_roundtrip_small():
    rep = consistency_roundtrip(helpers.z2_groupoid())
    assert rep.ok
    rep = consistency_roundtrip(helpers.pair_groupoid(2))
    assert rep.ok and rep.semigroup_size == 7
