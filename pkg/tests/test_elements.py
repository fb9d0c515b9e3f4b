from __future__ import annotations

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from ringlab.dsl import elaborate
from ringlab.elements import (exchange_witness, idempotents, is_idempotent, is_regular,
                              is_unimodular_row, principal_right_ideal, regular_mask,
                              regular_witness, unit_inverse, unit_mask)
from ringlab.errors import InvalidParameter
from ringlab.ring import RingElement, build_cyclic

import oracles

SMALL = ["Zn(12)", "Zn(36)", "T(2,GF(2))", "M(2,GF(2))", "T(3,GF(2))", "Prod(Zn(4),GF(3))",
         "GF(2,2)", "Zn(1)"]


def el(expr, i):
    return RingElement(elaborate(expr), i)


def test_regular_witness_examples():
    assert regular_witness(el("Zn(12)", 4)).inner_inverse == 1
    assert regular_witness(el("Zn(4)", 2)) is None
    for expr in SMALL:
        R = elaborate(expr)
        assert regular_witness(RingElement(R, R.zero)).inner_inverse == R.zero


def test_unit_inverse_examples():
    assert unit_inverse(el("Zn(12)", 5)).index == 5
    assert unit_inverse(el("Zn(12)", 1)).index == 1
    assert unit_inverse(el("Zn(4)", 2)) is None


def test_exchange_examples():
    Z4 = elaborate("Zn(4)")
    assert exchange_witness(RingElement(Z4, 0)).idempotent == 0
    assert exchange_witness(RingElement(Z4, 2)).idempotent == 0
    Z12 = elaborate("Zn(12)")
    assert exchange_witness(RingElement(Z12, 9)).idempotent in (9, 4, 0, 1)
    w = exchange_witness(RingElement(Z12, 9))
    assert is_idempotent(RingElement(Z12, w.idempotent))


def test_principal_right_ideals():
    Z12 = elaborate("Zn(12)")
    assert principal_right_ideal(RingElement(Z12, 4)) == frozenset({0, 4, 8})
    assert principal_right_ideal(RingElement(Z12, 1)) == frozenset(range(12))
    assert principal_right_ideal(RingElement(Z12, 0)) == frozenset({0})


def test_unimodular_rows():
    Z12 = elaborate("Zn(12)")
    row = lambda *xs: [RingElement(Z12, x) for x in xs]
    assert is_unimodular_row(row(4, 3))
    assert not is_unimodular_row(row(2, 4))
    assert all(is_unimodular_row(row(1, x)) for x in range(12))
    with pytest.raises(InvalidParameter):
        is_unimodular_row([RingElement(Z12, 1), RingElement(build_cyclic(5), 1)])


@pytest.mark.parametrize("expr,oracle", [("Zn(12)", oracles.zn(12)), ("Zn(36)", oracles.zn(36)),
                                         ("T(2,GF(2))", oracles.upper(2, 2)),
                                         ("M(2,GF(2))", oracles.matrices(2, 2)),
                                         ("M(2,GF(3))", oracles.matrices(2, 3))])
def test_masks_match_plain_scan(expr, oracle):
    R = elaborate(expr)
    reg, units = regular_mask(R), unit_mask(R)
    for i, a in enumerate(oracle.elements):
        assert bool(reg[i]) == oracles.is_regular(oracle, a)
        assert bool(units[i]) == oracles.is_unit(oracle, a)
    assert sorted(idempotents(R).tolist()) == [i for i, a in enumerate(oracle.elements)
                                                if oracle.mul(a, a) == a]


@pytest.mark.parametrize("expr", SMALL)
def test_witness_invariants(expr):
    R = elaborate(expr)
    units, E = unit_mask(R), set(idempotents(R).tolist())
    for a in range(R.order):
        w = regular_witness(RingElement(R, a))
        if w is not None:
            x, y = w.inner_inverse, w.reflexive_inverse
            assert R.mul(R.mul(a, x), a) == a
            assert R.mul(R.mul(a, y), a) == a and R.mul(R.mul(y, a), y) == y
        if units[a] or a in E:
            assert w is not None
        x = exchange_witness(RingElement(R, a))
        assert x is not None  # finite rings are exchange
        e = x.idempotent
        assert e in E
        assert e in principal_right_ideal(RingElement(R, a))
        assert int(R.sub(R.one, e)) in principal_right_ideal(RingElement(R, int(R.sub(R.one, a))))


@pytest.mark.parametrize("expr", ["Zn(8)", "Zn(36)", "T(2,GF(2))", "T(3,GF(2))", "Prod(Zn(4),Zn(4))"])
def test_mccoy(expr):
    R = elaborate(expr)
    reg = regular_mask(R)
    for a in range(R.order):
        for x in range(R.order):
            if reg[R.sub(a, R.mul(R.mul(a, x), a))]:
                assert reg[a]


@hsettings(max_examples=60, deadline=None)
@given(st.integers(1, 120), st.integers(0, 10**6))
def test_zn_regularity_matches_gcd_rule(n, k):
    # a is regular in Z_n iff gcd(a, n) and n / gcd(a, n) are coprime
    from math import gcd
    a = k % n
    g = gcd(a, n)
    expected = gcd(g, n // g) == 1
    assert is_regular(RingElement(build_cyclic(n), a)) == expected
