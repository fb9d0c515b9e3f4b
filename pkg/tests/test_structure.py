from __future__ import annotations

import pytest

from ringlab.dsl import elaborate
from ringlab.errors import InvalidParameter
from ringlab.ring import RingElement, SubsetIdeal, build_quotient
from ringlab.structure import (classify_ring, corner_ring, idempotent_census, ideal_generated,
                               is_regular_ideal, jacobson_mask, jacobson_radical,
                               maximal_regular_ideal, maximal_regular_ideal_oracle,
                               peirce_corner_product, primitive_decomposition,
                               projectives_isomorphic, regular_principal_ideals)

import oracles

RINGS = ["Zn(12)", "Zn(36)", "Zn(8)", "T(2,GF(2))", "T(3,GF(2))", "M(2,GF(2))",
         "Prod(Zn(4),T(2,GF(2)))", "Prod(GF(2),GF(3))", "GF(2,2)", "Zn(1)",
         "Tri(Zn(4),nat,Zn(4))", "Tri(M(2,GF(2)),col,GF(2))"]


def test_jacobson_examples():
    assert jacobson_radical(elaborate("Zn(12)")).members == (0, 6)
    assert jacobson_radical(elaborate("M(2,GF(2))")).members == (0,)
    T2 = elaborate("T(2,GF(2))")
    assert jacobson_radical(T2).members == (0, T2.encode([0, 1, 0]))


@pytest.mark.parametrize("expr,oracle", [("Zn(12)", oracles.zn(12)), ("Zn(36)", oracles.zn(36)),
                                         ("T(2,GF(2))", oracles.upper(2, 2)),
                                         ("T(2,GF(3))", oracles.upper(2, 3)),
                                         ("M(2,GF(2))", oracles.matrices(2, 2))])
def test_jacobson_matches_quasi_regularity_oracle(expr, oracle):
    got = jacobson_radical(elaborate(expr)).members
    want = tuple(sorted(oracle.index[a] for a in oracles.jacobson(oracle)))
    assert got == want


@pytest.mark.parametrize("expr", RINGS)
def test_radical_of_quotient_by_radical_is_zero(expr):
    R = elaborate(expr)
    J = jacobson_radical(R)
    assert isinstance(J, SubsetIdeal) and J.sidedness == "two-sided"
    Q = build_quotient(R, J)
    assert jacobson_mask(Q).sum() == 1


def test_census_examples():
    assert idempotent_census(elaborate("Zn(12)")).all == (0, 1, 4, 9)
    assert idempotent_census(elaborate("Zn(4)")).all == (0, 1)
    assert len(idempotent_census(elaborate("M(2,GF(2))")).all) == 8


@pytest.mark.parametrize("expr", RINGS)
def test_census_invariants(expr):
    R = elaborate(expr)
    c = idempotent_census(R)
    assert set(c.central) <= set(c.all) and set(c.primitive) <= set(c.all)
    for e in c.all:
        assert R.mul(e, e) == e
    for e in c.primitive:
        sub = idempotent_census(corner_ring(R, e)).all
        assert e != R.zero and len(sub) == 2


def test_classify_examples():
    z4 = classify_ring(elaborate("Zn(4)"))
    assert z4.local and not z4.regular and z4.abelian
    m2 = classify_ring(elaborate("M(2,GF(2))"))
    assert m2.semisimple and m2.regular and not m2.abelian
    f4 = classify_ring(elaborate("GF(2,2)"))
    assert f4.division and f4.local and f4.regular
    z1 = classify_ring(elaborate("Zn(1)"))
    assert z1.regular and z1.semisimple and z1.local and not z1.division


def test_ideal_generated_examples():
    Z12 = elaborate("Zn(12)")
    assert ideal_generated(Z12, 4).members == (0, 4, 8)
    assert ideal_generated(Z12, 0).members == (0,)
    assert ideal_generated(Z12, 1).members == tuple(range(12))


def test_regular_ideal_examples():
    Z12 = elaborate("Zn(12)")
    assert is_regular_ideal(SubsetIdeal(Z12, (0,)))
    assert not is_regular_ideal(SubsetIdeal(Z12, (0, 6)))
    assert is_regular_ideal(SubsetIdeal(Z12, (0, 4, 8)))


def test_maximal_regular_ideal_examples():
    assert maximal_regular_ideal(elaborate("T(2,GF(2))")).members == (0,)
    assert maximal_regular_ideal(elaborate("Zn(12)")).members == (0, 4, 8)
    M2 = elaborate("M(2,GF(2))")
    assert maximal_regular_ideal(M2).members == tuple(range(16))


@pytest.mark.parametrize("expr,oracle", [("Zn(12)", oracles.zn(12)), ("Zn(8)", oracles.zn(8)),
                                         ("Zn(16)", oracles.zn(16)),
                                         ("T(2,GF(2))", oracles.upper(2, 2)),
                                         ("Prod(GF(2),Zn(4))",
                                          oracles.direct_product(oracles.zn(2), oracles.zn(4)))])
def test_mr_matches_both_oracles(expr, oracle):
    R = elaborate(expr)
    M = maximal_regular_ideal(R)
    assert M == maximal_regular_ideal_oracle(R)
    assert M.members == tuple(sorted(oracle.index[a] for a in oracles.largest_regular_ideal(oracle)))


@pytest.mark.parametrize("expr", RINGS)
def test_mr_contains_regular_principal_ideals(expr):
    R = elaborate(expr)
    M = set(maximal_regular_ideal(R).members)
    assert is_regular_ideal(maximal_regular_ideal(R))
    for members in regular_principal_ideals(R):
        assert set(members) <= M


def test_primitive_decomposition_examples():
    assert primitive_decomposition(elaborate("Zn(12)")).idempotents == (4, 9)
    assert primitive_decomposition(elaborate("Zn(8)")).idempotents == (1,)
    M2 = elaborate("M(2,GF(2))")
    d = primitive_decomposition(M2).idempotents
    assert len(d) == 2 and M2.add(*d) == M2.one and M2.mul(*d) == M2.zero


@pytest.mark.parametrize("expr", RINGS)
def test_primitive_decomposition_invariants(expr):
    R = elaborate(expr)
    d = primitive_decomposition(R).idempotents
    total = R.zero
    for i, e in enumerate(d):
        assert e in idempotent_census(R).primitive
        total = R.add(total, e)
        for f in d[i + 1:]:
            assert R.mul(e, f) == R.zero and R.mul(f, e) == R.zero
    assert total == R.one or R.order == 1
    assert primitive_decomposition(elaborate(expr)) == primitive_decomposition(R)


def test_projectives_isomorphic_examples():
    M2 = elaborate("M(2,GF(2))")
    E11, E22 = M2.encode([1, 0, 0, 0]), M2.encode([0, 0, 0, 1])
    assert projectives_isomorphic(RingElement(M2, E11), RingElement(M2, E11))
    assert projectives_isomorphic(RingElement(M2, E11), RingElement(M2, E22))
    P = elaborate("Prod(GF(2),GF(3))")
    e, f = P.encode([1, 0]), P.encode([0, 1])
    assert not projectives_isomorphic(RingElement(P, e), RingElement(P, f))
    with pytest.raises(InvalidParameter):
        projectives_isomorphic(RingElement(M2, M2.encode([1, 1, 1, 1])), RingElement(M2, E11))


def test_peirce_examples():
    T2 = elaborate("T(2,GF(2))")
    pd = peirce_corner_product(RingElement(T2, T2.encode([1, 0, 0])))
    assert pd.X == frozenset({0, T2.encode([0, 1, 0])}) and pd.Y == frozenset({0})
    assert pd.XY_zero and pd.X_in_J
    Z12 = elaborate("Zn(12)")
    pd = peirce_corner_product(RingElement(Z12, 4))
    assert pd.X == pd.Y == frozenset({0})
    M2 = elaborate("M(2,GF(2))")
    assert not peirce_corner_product(RingElement(M2, M2.encode([1, 0, 0, 0]))).XY_zero


@pytest.mark.parametrize("expr", RINGS)
def test_lemma_41_on_every_idempotent(expr):
    R = elaborate(expr)
    for e in idempotent_census(R).all:
        pd = peirce_corner_product(RingElement(R, e))
        if pd.XY_zero or pd.YX_zero:
            assert pd.X_in_J and pd.Y_in_J
