from __future__ import annotations

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from ringlab.dsl import elaborate
from ringlab.errors import CapacityError, InternalInconsistency
from ringlab.properties import (classify_semiperfect_vnl, find_vnl_shape, is_exchange_ring,
                                is_n_vnl, is_nj, is_potent, is_regular_ring, is_semipotent, is_vnl,
                                nj_equivalence_hypotheses, r1_splits, r2_splits, verify_shape,
                                vnl_via_corner_condition, vnl_via_mr_local, zn_vnl_criterion)
from ringlab.elements import is_unimodular_row, regular_mask
from ringlab.ring import RingElement, build_cyclic
import ringlab.properties as props

import oracles


def test_vnl_examples():
    assert is_vnl(elaborate("Zn(12)")).holds
    r = is_vnl(elaborate("Zn(36)"))
    assert not r.holds
    a = r.witness
    reg = regular_mask(build_cyclic(36))
    assert not reg[a] and not reg[(1 - a) % 36]
    assert is_vnl(elaborate("Zn(4)")).holds
    assert is_vnl(elaborate("Zn(1)")).holds


@pytest.mark.parametrize("expr,oracle", [("Zn(36)", oracles.zn(36)), ("Zn(12)", oracles.zn(12)),
                                         ("T(2,GF(2))", oracles.upper(2, 2)),
                                         ("T(3,GF(2))", oracles.upper(3, 2)),
                                         ("M(2,GF(2))", oracles.matrices(2, 2)),
                                         ("Prod(Zn(4),Zn(4))",
                                          oracles.direct_product(oracles.zn(4), oracles.zn(4)))])
def test_vnl_matches_plain_definition(expr, oracle):
    assert is_vnl(elaborate(expr)).holds == oracles.is_vnl(oracle)


def test_criterion_examples():
    assert zn_vnl_criterion(12) and not zn_vnl_criterion(36) and zn_vnl_criterion(1)


@hsettings(max_examples=80, deadline=None)
@given(st.integers(1, 400))
def test_criterion_matches_definition(n):
    assert zn_vnl_criterion(n) == oracles.zn_vnl_by_definition(n)


def test_nj_examples():
    assert is_nj(elaborate("T(2,GF(2))")).holds
    assert is_nj(elaborate("Zn(4)")).holds
    r = is_nj(elaborate("T(3,GF(2))"))
    assert not r.holds


@pytest.mark.parametrize("expr", ["Zn(12)", "M(2,GF(2))", "Zn(1)", "T(3,GF(2))", "Zn(36)",
                                  "Prod(T(2,GF(2)),Zn(4))"])
def test_finite_rings_are_exchange_potent_semipotent(expr):
    R = elaborate(expr)
    assert is_exchange_ring(R).holds and is_potent(R).holds and is_semipotent(R).holds


def test_potent_but_not_vnl():
    Z36 = elaborate("Zn(36)")
    assert is_potent(Z36).holds and not is_vnl(Z36).holds


def test_n_vnl_examples():
    T3 = elaborate("T(3,GF(2))")
    assert is_n_vnl(T3, 2).holds
    r = is_n_vnl(T3, 3)
    assert not r.holds
    row = r.witness
    reg = regular_mask(T3)
    assert len(row) == 3 and not any(reg[list(row)])
    assert is_unimodular_row([RingElement(T3, a) for a in row])
    for expr in ["Zn(36)", "M(2,GF(2))", "Zn(1)"]:
        assert is_n_vnl(elaborate(expr), 1).holds


def test_n_vnl_against_plain_search():
    for expr, oracle in [("T(2,GF(2))", oracles.upper(2, 2)), ("Zn(36)", oracles.zn(36))]:
        for n in (1, 2):
            assert is_n_vnl(elaborate(expr), n).holds == (oracles.n_vnl_witness(oracle, n) is None)


def test_n_vnl_budget():
    with pytest.raises(CapacityError):
        is_n_vnl(elaborate("T(3,GF(2))"), 3, max_tuples=1000)


def test_corner_condition_examples():
    assert vnl_via_corner_condition(elaborate("Zn(12)")).holds
    r = vnl_via_corner_condition(elaborate("Zn(36)"))
    assert not r.holds and r.method == "corner-condition"
    assert vnl_via_corner_condition(elaborate("Zn(4)")).holds


def test_mr_local_examples():
    assert vnl_via_mr_local(elaborate("Zn(12)")).holds
    assert not vnl_via_mr_local(elaborate("Zn(36)")).holds
    assert vnl_via_mr_local(elaborate("M(2,GF(2))")).holds
    assert vnl_via_mr_local(elaborate("Prod(GF(2),GF(3))")).holds


def test_classifier_fixed_outputs():
    assert classify_semiperfect_vnl(elaborate("M(2,GF(2))")).tag == "Semisimple"
    c = classify_semiperfect_vnl(elaborate("T(2,GF(2))"))
    assert c.tag == "TypeR1"
    assert len(c.split.X) == 2 and c.split.Y == (0,) and c.split.first_order == 2
    c = classify_semiperfect_vnl(elaborate("T(3,GF(2))"))
    assert c.tag == "TypeR2" and c.split.first_order == 8 and c.split.second_order == 2
    assert len(c.split.Y) == 1 and c.split.YX_zero
    c = classify_semiperfect_vnl(elaborate("Zn(36)"))
    assert c.tag == "NotVNL" and c.witness is not None


def test_classifier_wraps_semisimple_factor():
    R = elaborate("Prod(GF(3),T(2,GF(2)))")
    c = classify_semiperfect_vnl(R)
    assert c.tag == "ProductWithSemisimple" and c.block.tag == "TypeR1"
    assert verify_shape(R, c) == []


def test_classifier_surfaces_inconsistency(monkeypatch):
    monkeypatch.setattr(props, "find_vnl_shape", lambda ring: None)
    with pytest.raises(InternalInconsistency):
        classify_semiperfect_vnl(elaborate("T(2,GF(3))"))


def test_split_search():
    T2 = elaborate("T(2,GF(2))")
    assert r1_splits(T2) and not r2_splits(T2)
    T3 = elaborate("T(3,GF(2))")
    assert r2_splits(T3)
    assert find_vnl_shape(elaborate("Zn(36)")) is None


def test_nj_hypotheses_examples():
    h = nj_equivalence_hypotheses(elaborate("T(2,GF(2))"))
    assert h.applicable and h.conclusion_checked
    assert not nj_equivalence_hypotheses(elaborate("M(2,GF(2))")).applicable
    h = nj_equivalence_hypotheses(elaborate("Zn(4)"))
    assert h.applicable and h.conclusion_checked


@hsettings(max_examples=30, deadline=None)
@given(st.sampled_from(["Zn(2)", "Zn(4)", "Zn(6)", "Zn(8)", "Zn(9)", "Zn(12)", "GF(3)",
                        "T(2,GF(2))", "M(2,GF(2))"]),
       st.sampled_from(["Zn(2)", "Zn(4)", "Zn(9)", "GF(3)", "T(2,GF(2))"]))
def test_product_law(a, b):
    S, T = elaborate(a), elaborate(b)
    P = elaborate(f"Prod({a},{b})")
    law = (is_regular_ring(S).holds and is_vnl(T).holds) or \
          (is_vnl(S).holds and is_regular_ring(T).holds)
    assert is_vnl(P).holds == law


@hsettings(max_examples=40, deadline=None)
@given(st.integers(1, 64))
def test_implication_chain_on_cyclic(n):
    R = build_cyclic(n)
    chain = [is_nj(R).holds, is_vnl(R).holds, is_exchange_ring(R).holds, is_potent(R).holds,
             is_semipotent(R).holds]
    for a, b in zip(chain, chain[1:]):
        assert not a or b
    assert all(chain[2:])


@hsettings(max_examples=40, deadline=None)
@given(st.integers(1, 64))
def test_abelian_routes_agree_on_cyclic(n):
    R = build_cyclic(n)
    v = is_vnl(R).holds
    assert vnl_via_corner_condition(R).holds == v == vnl_via_mr_local(R).holds
