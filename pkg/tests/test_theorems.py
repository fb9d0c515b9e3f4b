from __future__ import annotations

import pytest

from ringlab import theorems
from ringlab.corpus import base_expressions, fingerprint, generate_corpus
from ringlab.dsl import Elaborator
from ringlab.errors import InternalInconsistency, InvalidParameter
from ringlab.theorems import (REGISTRY, SuiteContext, TheoremReport, run_theorem_suite,
                              search_question, suite_json)

SPEC_IDS = ["prop-2.2", "cor-2.3", "lemma-2.4", "cor-2.6", "cor-2.7", "prop-2.8", "prop-2.11",
            "thm-2.12", "cor-2.13", "cor-2.14", "cor-2.15", "cor-2.16", "cor-2.17", "lemma-2.18",
            "thm-3.1", "lemma-3.4", "thm-3.5", "example-3.3", "lemma-4.1", "lemma-4.2", "cor-4.3",
            "cor-4.4", "lemma-4.5", "thm-4.6", "thm-4.7", "thm-4.8", "lemma-5.1", "prop-5.2"]


@pytest.fixture(scope="module")
def ctx():
    el = Elaborator()
    return SuiteContext(generate_corpus("quick", 0, elaborator=el), "quick", 0, el)


def test_registry_covers_every_statement():
    assert set(SPEC_IDS) <= set(REGISTRY)


def test_quick_corpus_contents(ctx):
    exprs = [e.expr for e in ctx.corpus]
    for must in ["Zn(12)", "Zn(36)", "T(3,GF(2))", "T(2,GF(2))", "M(2,GF(2))", "GF(2,2)",
                 "Prod(T(2,GF(2)),T(2,GF(2)))"]:
        assert must in exprs
    assert all(e.order <= 64 for e in ctx.corpus if e.origin != "base")
    assert any(e.origin == "corner" for e in ctx.corpus)


def test_corpus_is_deterministic():
    a = [(e.expr, e.origin, e.parent) for e in generate_corpus("quick", 3)]
    b = [(e.expr, e.origin, e.parent) for e in generate_corpus("quick", 3)]
    assert a == b


def test_full_profile_lists_large_rings():
    exprs = base_expressions("full")
    assert "T(4,GF(2))" in exprs and "Zn(64)" in exprs and "M(2,GF(3,2))" in exprs
    with pytest.raises(InvalidParameter):
        base_expressions("huge")


def test_fingerprint_separates_small_rings():
    el = Elaborator()
    assert fingerprint(el("Zn(4)")) != fingerprint(el("Prod(GF(2),GF(2))"))
    assert fingerprint(el("Zn(6)")) == fingerprint(el("Prod(GF(2),GF(3))"))


@pytest.mark.parametrize("tid", SPEC_IDS)
def test_every_check_passes_on_quick(ctx, tid):
    (rep,) = run_theorem_suite([tid], ctx=ctx)
    assert rep.passed, [f.to_dict() for f in rep.failures]
    assert rep.instances_checked > 0


def test_named_examples(ctx):
    reps = run_theorem_suite(["lemma-2.4", "example-3.3", "thm-4.7"], ctx=ctx)
    assert [r.theorem_id for r in reps] == ["lemma-2.4", "example-3.3", "thm-4.7"]
    assert all(r.passed for r in reps)


def test_unknown_id_lists_registry(ctx):
    with pytest.raises(InvalidParameter) as err:
        run_theorem_suite(["lemma-9.9"], ctx=ctx)
    assert "lemma-2.4" in str(err.value)


def test_failures_are_recorded_with_replayable_rings(ctx, monkeypatch):
    def bogus(c, rep):
        for entry in c.rings(rep, max_order=4):
            rep.instance()
            rep.fail(entry.ring, {"index": 0}, "deliberately false")
    monkeypatch.setitem(REGISTRY, "bogus", theorems.Check("bogus", "", bogus))
    (rep,) = run_theorem_suite(["bogus"], ctx=ctx)
    assert not rep.passed and rep.failures[0].ring == "Zn(1)"
    d = rep.to_dict()
    assert d["failures"][0] == {"ring": "Zn(1)", "witness": {"index": 0},
                                "condition": "deliberately false"}
    assert ctx.build(d["failures"][-1]["ring"]).order <= 4


def test_fast_path_disagreement_raises(ctx, monkeypatch):
    from ringlab.properties import PropertyReport
    monkeypatch.setattr(theorems, "vnl_via_corner_condition",
                        lambda R: PropertyReport("vnl", False, None, "corner-condition"))
    with pytest.raises(InternalInconsistency):
        run_theorem_suite(["thm-3.1"], ctx=ctx)


def test_search_questions(ctx):
    q54 = search_question("q54", ctx=ctx)
    assert q54.passed and q54.instances_checked > 0
    q53 = search_question("q53", ctx=ctx)
    assert isinstance(q53, TheoremReport) and q53.instances_checked > 0
    with pytest.raises(InvalidParameter):
        search_question("q99", ctx=ctx)


def test_report_schema(ctx):
    reps = run_theorem_suite(["example-3.3"], ctx=ctx)
    doc = suite_json(reps, "quick", 0)
    assert set(doc) == {"tool_version", "profile", "seed", "reports"}
    r = doc["reports"][0]
    assert {"theorem_id", "instances_checked", "failures", "wall_time_ms"} <= set(r)
