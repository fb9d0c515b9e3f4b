"""Named executable checks, one per statement, and the suite runner.

Every check walks the corpus (or a fixed family of constructions), counts the
instances it evaluated, and records failures with enough data to replay them:
the ring expression, a witness, and the condition that failed. A disagreement
between a fast criterion and brute force raises InternalInconsistency instead,
since that points at the implementation rather than the mathematics.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

import numpy as np

from . import __version__
from .config import settings
from .corpus import CorpusEntry, generate_corpus, regular_ideals
from .dsl import Elaborator
from .elements import idempotents, regular_mask, regular_witness, unit_mask
from .errors import InternalInconsistency, InvalidParameter
from .properties import (_jsonable, classify_semiperfect_vnl, find_vnl_shape, is_exchange_ring,
                         is_n_vnl, is_nj, is_potent, is_regular_ring, is_semipotent, is_vnl,
                         nj_equivalence_hypotheses, r1_splits, r2_splits, verify_shape,
                         vnl_via_corner_condition, vnl_via_mr_local, zn_vnl_criterion)
from .ring import (FiniteRing, ProductRing, RingElement, build_cyclic,
                   build_matrix_ring, build_quotient, center, validate_ring)
from .structure import (central_idempotents, classify_ring, corner_ring, idempotent_census,
                        ideal_generated, is_local, is_semisimple, jacobson_mask,
                        maximal_regular_ideal, maximal_regular_ideal_oracle, peirce_corner_product,
                        peirce_piece, primitive_decomposition, products_vanish,
                        projectives_isomorphic)
from .triangular import (Bimodule, FormalTriangularRing, column_bimodule, corner_block_inverse,
                         ideal_bimodule, is_partial_module, regular_via_prop28, vnl_via_thm212,
                         witness_unit_corner)


@dataclass
class Failure:
    ring: str
    witness: object
    condition: str

    def to_dict(self) -> dict:
        return {"ring": self.ring, "witness": _jsonable(self.witness), "condition": self.condition}


@dataclass
class TheoremReport:
    theorem_id: str
    corpus_description: str
    instances_checked: int = 0
    failures: list[Failure] = field(default_factory=list)
    wall_time_ms: float = 0.0
    skipped: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def instance(self, n: int = 1) -> None:
        self.instances_checked += n

    def fail(self, ring, witness, condition: str) -> None:
        label = ring if isinstance(ring, str) else ring.label
        self.failures.append(Failure(label, witness, condition))

    def to_dict(self) -> dict:
        return {"theorem_id": self.theorem_id, "corpus_description": self.corpus_description,
                "instances_checked": self.instances_checked, "skipped": self.skipped,
                "failures": [f.to_dict() for f in self.failures],
                "wall_time_ms": round(self.wall_time_ms, 3)}


@dataclass
class SuiteContext:
    corpus: list[CorpusEntry]
    profile: str = "quick"
    seed: int = 0
    elaborator: Elaborator = field(default_factory=Elaborator)

    def rings(self, report: TheoremReport, max_order: int | None = None,
              where: Callable[[CorpusEntry], bool] | None = None):
        """Corpus entries within the analysis cap (and ``max_order``); others count as skipped."""
        cap = settings.analysis_cap if max_order is None else min(max_order, settings.analysis_cap)
        for entry in self.corpus:
            if entry.order > cap:
                report.skipped += 1
                continue
            if where is not None and not where(entry):
                continue
            yield entry

    def build(self, expr: str) -> FiniteRing:
        return self.elaborator.ring(expr)

    @property
    def full(self) -> bool:
        return self.profile == "full"


@dataclass(frozen=True)
class Check:
    theorem_id: str
    description: str
    run: Callable[[SuiteContext, TheoremReport], None]


REGISTRY: dict[str, Check] = {}


def register(theorem_id: str, description: str):
    def deco(fn):
        REGISTRY[theorem_id] = Check(theorem_id, description, fn)
        return fn
    return deco


def disagree(route: str, ring: FiniteRing, fast, brute, **context):
    raise InternalInconsistency(
        f"{route} disagrees with brute force on {ring.label}: {fast} vs {brute}",
        {"ring": ring.label, "route": route, "fast": _jsonable(fast), "brute": _jsonable(brute),
         **_jsonable(context)})


def _is_triangular(entry: CorpusEntry) -> bool:
    return isinstance(entry.ring, FormalTriangularRing)


def _abelian(entry: CorpusEntry) -> bool:
    return classify_ring(entry.ring).abelian


# -- section 2 ----------------------------------------------------------------

@register("example-2.1", "Z_n criterion vs brute force (n <= 200); T_2(D) is NJ; "
                         "[[regular, M], [0, local]] has regular unit-corner elements")
def _example_21(ctx: SuiteContext, rep: TheoremReport):
    for n in range(1, 201):
        rep.instance()
        fast, brute = zn_vnl_criterion(n), is_vnl(build_cyclic(n)).holds
        if fast != brute:
            disagree("zn-criterion", build_cyclic(n), fast, brute)
    for expr in ["T(2,GF(2))", "T(2,GF(3))", "T(2,GF(2,2))"]:
        rep.instance()
        r = is_nj(ctx.build(expr))
        if not r.holds:
            rep.fail(expr, r.witness, "T_2 over a field is NJ")
    for entry in ctx.rings(rep, where=_is_triangular):
        T = entry.ring
        R, M, S = T.components
        if not (is_regular_ring(R).holds and is_local(S)):
            continue
        rep.instance()
        units = unit_mask(S)
        for a in T.elements().tolist():
            if units[T.triple(a)[2]] and witness_unit_corner(T, a) is None:
                rep.fail(entry.expr, a, "unit lower corner but no closed-form inner inverse")
                break
        if not is_vnl(T).holds:
            rep.fail(entry.expr, is_vnl(T).witness, "regular/local triangular ring is VNL")


@register("prop-2.2", "VNL R has VNL center")
def _prop_22(ctx, rep):
    for entry in ctx.rings(rep):
        R = entry.ring
        if not is_vnl(R).holds:
            continue
        rep.instance()
        Z = center(R)
        r = is_vnl(Z)
        if not r.holds:
            rep.fail(entry.expr, {"center_element": int(Z.inclusion[r.witness])}, "center is VNL")


@register("cor-2.3", "VNL R: no nontrivial central idempotent <=> center local")
def _cor_23(ctx, rep):
    for entry in ctx.rings(rep):
        R = entry.ring
        if not is_vnl(R).holds:
            continue
        rep.instance()
        indecomposable = not classify_ring(R).has_nontrivial_central_idempotent
        local = is_local(center(R))
        if indecomposable != local:
            rep.fail(entry.expr, {"indecomposable": indecomposable, "center_local": local},
                     "indecomposable iff center local")


@register("lemma-2.4", "VNL R: eRe or (1-e)R(1-e) regular for every idempotent e")
def _lemma_24(ctx, rep):
    for entry in ctx.rings(rep):
        R = entry.ring
        if not is_vnl(R).holds:
            continue
        rep.instance()
        for e in idempotents(R).tolist():
            f = int(R.sub(R.one, e))
            if not classify_ring(corner_ring(R, e)).regular and \
                    not classify_ring(corner_ring(R, f)).regular:
                rep.fail(entry.expr, {"idempotent": e}, "one corner regular")
                break


@register("cor-2.6", "M_2(R) VNL <=> R regular")
def _cor_26(ctx, rep):
    cap = 4096 if ctx.full else 1296
    seen = set()
    for entry in ctx.rings(rep):
        R = entry.ring
        if R.order ** 4 > cap or R.label in seen:
            continue
        seen.add(R.label)
        rep.instance()
        M2 = build_matrix_ring(2, R)
        lhs, rhs = is_vnl(M2).holds, is_regular_ring(R).holds
        if lhs != rhs:
            rep.fail(M2.label, {"vnl": lhs, "base_regular": rhs}, "M_2(R) VNL iff R regular")


@register("cor-2.7", "abelian VNL R (order <= 32): unimodular rows of length <= 3 have a regular entry")
def _cor_27(ctx, rep):
    for entry in ctx.rings(rep, max_order=32, where=_abelian):
        R = entry.ring
        if not is_vnl(R).holds:
            continue
        rep.instance()
        for n in (1, 2, 3):
            r = is_n_vnl(R, n)
            if not r.holds:
                rep.fail(entry.expr, {"n": n, "row": r.witness}, "unimodular row has a regular entry")
                break


@register("prop-2.8", "triangular element regular <=> idempotent criterion (order <= 256)")
def _prop_28(ctx, rep):
    for entry in ctx.rings(rep, max_order=256, where=_is_triangular):
        T = entry.ring
        rep.instance()
        reg = regular_mask(T)
        for a in T.elements().tolist():
            w = regular_via_prop28(T, a)
            if (w is not None) != bool(reg[a]):
                disagree("prop28", T, w is not None, bool(reg[a]), element=a)
            if w is not None:
                b = regular_witness(RingElement(T, a))
                for x in (w.inner_inverse, b.inner_inverse):
                    if int(T.mul(T.mul(a, x), a)) != a:
                        disagree("prop28-witness", T, x, None, element=a)


@register("prop-2.11", "no nonzero module over M_2(F_q) is partial (q = 2, 3)")
def _prop_211(ctx, rep):
    for q in (2, 3):
        S = ctx.build(f"M(2,GF({q}))")
        M = column_bimodule(S, ctx.build(f"GF({q})"))
        E = idempotents(S)
        for m in range(M.order):
            if m == M.zero:
                continue
            rep.instance()
            em = M.left_t[E, m]
            cem = M.left_t[S.sub(S.one, E), m]
            if not ((em != M.zero) & (cem != M.zero)).any():
                rep.fail(S.label, {"m": m}, "some idempotent splits m")
        rep.instance()
        if is_partial_module(M, "left").holds:
            rep.fail(S.label, None, "column module is not partial")


def _thm212_agrees(T: FormalTriangularRing) -> bool:
    R, M, S = T.components
    fast, brute = vnl_via_thm212(R, M, S), is_vnl(T)
    if fast.holds != brute.holds:
        disagree("thm212", T, fast.to_dict(), brute.to_dict())
    return brute.holds


@register("thm-2.12", "triangular VNL <=> the three conditions")
def _thm_212(ctx, rep):
    for entry in ctx.rings(rep, where=_is_triangular):
        rep.instance()
        _thm212_agrees(entry.ring)


@register("cor-2.13", "T_n(R) VNL iff n in {2, 3} and R a division ring")
def _cor_213(ctx, rep):
    cases = [(2, "GF(2)"), (3, "GF(2)"), (2, "GF(3)"), (2, "GF(2,2)"), (2, "Zn(4)"),
             (2, "Prod(GF(2),GF(2))"), (1, "GF(2)")]
    if ctx.full:
        cases += [(4, "GF(2)"), (3, "GF(3)"), (2, "Zn(6)")]
    for n, base in cases:
        expr = f"T({n},{base})"
        if n == 1:
            continue  # T_1(R) = R; the statement concerns n >= 2
        rep.instance()
        D = ctx.build(base)
        expected = n in (2, 3) and classify_ring(D).division
        got = is_vnl(ctx.build(expr)).holds
        if got != expected:
            rep.fail(expr, {"vnl": got}, "VNL iff n in {2,3} over a division ring")


def _triangular_with(ctx, rep, R: str, M: str, S: str) -> FormalTriangularRing:
    return ctx.build(f"Tri({R},{M},{S})")


@register("cor-2.14", "[[regular, M], [0, local]] is VNL; [[M_2(D), M], [0, T_2(D)]] is VNL")
def _cor_214(ctx, rep):
    for entry in ctx.rings(rep, where=_is_triangular):
        R, M, S = entry.ring.components
        if is_regular_ring(R).holds and is_local(S):
            rep.instance()
            if not _thm212_agrees(entry.ring):
                rep.fail(entry.expr, None, "regular/local triangular ring is VNL")
    T = _triangular_with(ctx, rep, "M(2,GF(2))", "col", "T(2,GF(2))")
    rep.instance()
    if not _thm212_agrees(T):
        rep.fail(T.label, is_vnl(T).witness, "[[M_2(D), col], [0, T_2(D)]] is VNL")


@register("cor-2.15", "simple artinian R, S: VNL iff M = 0 or R or S division")
def _cor_215(ctx, rep):
    cases = [("GF(2)", "nat", "GF(2)"), ("GF(2,2)", "nat", "GF(2,2)"), ("M(2,GF(2))", "col", "GF(2)"),
             ("GF(2)", "row", "M(2,GF(2))"), ("M(2,GF(2))", "zero", "M(2,GF(2))"),
             ("GF(3)", "nat", "GF(3)")]
    if ctx.full:
        cases += [("M(2,GF(2))", "nat", "M(2,GF(2))"), ("M(2,GF(3))", "col", "GF(3)")]
    for R, M, S in cases:
        T = _triangular_with(ctx, rep, R, M, S)
        rep.instance()
        expected = (T.M.order == 1 or classify_ring(T.R).division or classify_ring(T.S).division)
        got = _thm212_agrees(T)
        if got != expected:
            rep.fail(T.label, {"vnl": got}, "VNL iff M = 0 or a division corner")


def _field_split(R: FiniteRing, members: tuple[int, ...], field_only: bool) -> int | None:
    """A central idempotent e with I = eR, eRe division (a field when commutative) and
    (1-e)R(1-e) semisimple; None if there is none."""
    target = set(members)
    for e in central_idempotents(R).tolist():
        if set(np.unique(R.mul(e, R.elements())).tolist()) != target:
            continue
        D = corner_ring(R, e)
        f = int(R.sub(R.one, e))
        if not classify_ring(D).division:
            continue
        if field_only and not classify_ring(D).commutative:
            continue
        if is_semisimple(corner_ring(R, f)):
            return e
    return None


def _ideal_instances(ctx, bases, max_order):
    for base in bases:
        R = ctx.build(base)
        seen = set()
        for k in R.elements().tolist():
            if k == R.zero:
                continue
            members = ideal_generated(R, k).members
            if members in seen or R.order ** 2 * len(members) > max_order:
                continue
            seen.add(members)
            yield R, k, members


@register("cor-2.16", "commutative R, I != 0: [[R, I], [0, R]] VNL iff R = F x S, I = F x 0")
def _cor_216(ctx, rep):
    bases = ["Zn(2)", "Zn(3)", "Zn(4)", "Zn(6)", "Zn(8)", "Prod(GF(2),GF(2))", "GF(2,2)"]
    if ctx.full:
        bases += ["Zn(9)", "Zn(10)", "Zn(12)", "Prod(GF(2),GF(3))", "Prod(Zn(4),GF(2))", "Zn(30)"]
    for R, k, members in _ideal_instances(ctx, bases, 4096 if ctx.full else 512):
        T = ctx.build(f"Tri({R.label},ideal[{k}],{R.label})")
        rep.instance()
        got = _thm212_agrees(T)
        expected = _field_split(R, members, field_only=True) is not None
        if got != expected:
            rep.fail(T.label, {"vnl": got, "field_split": expected}, "VNL iff R = F x S, I = F x 0")


@register("cor-2.17", "[[R, I], [0, R]] VNL iff R = D x S (S semisimple), I = D x 0; E-corner VNL")
def _cor_217(ctx, rep):
    bases = ["T(2,GF(2))", "Prod(GF(2),GF(3))", "Prod(GF(2),M(2,GF(2)))", "Zn(4)"]
    if ctx.full:
        bases += ["M(2,GF(2))", "Prod(GF(2,2),GF(2))"]
    for R, k, members in _ideal_instances(ctx, bases, 4096 if ctx.full else 2048):
        T = ctx.build(f"Tri({R.label},ideal[{k}],{R.label})")
        rep.instance()
        got = _thm212_agrees(T)
        e = _field_split(R, members, field_only=False)
        if got != (e is not None):
            rep.fail(T.label, {"vnl": got, "division_split": e is not None},
                     "VNL iff R = D x S, I = D x 0")
            continue
        if e is not None:
            m0 = T.M.zero
            E = T.encode([e, m0, e])
            xs = T.elements()
            if int(T.mul(E, E)) != E or (T.mul(E, xs) != T.mul(xs, E)).any():
                rep.fail(T.label, {"E": E}, "E = diag(e, e) is a central idempotent")
            elif not is_vnl(corner_ring(T, E)).holds:
                rep.fail(T.label, {"E": E}, "ET is VNL")


@register("lemma-2.18", "VNL R: every corner eRe is VNL")
def _lemma_218(ctx, rep):
    for entry in ctx.rings(rep):
        R = entry.ring
        if not is_vnl(R).holds:
            continue
        rep.instance()
        for e in idempotents(R).tolist():
            r = is_vnl(corner_ring(R, e))
            if not r.holds:
                rep.fail(entry.expr, {"idempotent": e}, "corner is VNL")
                break


@register("example-2.10", "partial modules: trivial-idempotent rings, simple Z_n-modules, S x 0")
def _example_210(ctx, rep):
    for entry in ctx.rings(rep, where=_is_triangular):
        R, M, S = entry.ring.components
        for side, ring in (("left", R), ("right", S)):
            if len(idempotents(ring)) <= 2:
                rep.instance()
                r = is_partial_module(M, side)
                if not r.holds:
                    rep.fail(entry.expr, {"side": side, "idempotent": r.witness},
                             "module over a ring with trivial idempotents is partial")
    for n in (6, 12, 30, 36):
        Zn = build_cyclic(n)
        for p in (2, 3, 5):
            if n % p:
                continue
            rep.instance()
            xs, ms = Zn.elements(), np.arange(p)
            act = (xs[:, None] * ms[None, :]) % p
            M = Bimodule(Zn, Zn, (ms[:, None] + ms[None, :]) % p, act, act.T, label=f"Z{p}")
            if not is_partial_module(M, "left").holds:
                rep.fail(f"Zn({n})", {"p": p}, "simple module is partial")
    for base in ["Prod(GF(2),GF(2))", "Prod(Zn(4),Zn(4))", "Prod(GF(3),GF(3))"]:
        R = ctx.build(base)
        S0 = R.factors[0]
        gen = R.encode([S0.one, R.factors[1].zero])
        rep.instance()
        M = ideal_bimodule(R, ideal_generated(R, gen).members)
        if not is_partial_module(M, "left").holds:
            rep.fail(base, {"generator": gen}, "S x 0 is partial")


# -- section 3 ----------------------------------------------------------------

@register("thm-3.1", "abelian R: VNL <=> exchange with the corner condition")
def _thm_31(ctx, rep):
    for entry in ctx.rings(rep, where=_abelian):
        rep.instance()
        fast, brute = vnl_via_corner_condition(entry.ring), is_vnl(entry.ring)
        if fast.holds != brute.holds:
            disagree("corner-condition", entry.ring, fast.to_dict(), brute.to_dict())


@register("lemma-3.4", "I a regular ideal: R VNL <=> R/I VNL")
def _lemma_34(ctx, rep):
    for entry in ctx.rings(rep, max_order=256):
        R = entry.ring
        vnl = is_vnl(R).holds
        for members in regular_ideals(R):
            rep.instance()
            Q = build_quotient(R, members)
            q = is_vnl(Q).holds
            if q != vnl:
                rep.fail(entry.expr, {"ideal": list(members), "R_vnl": vnl, "quotient_vnl": q},
                         "VNL passes to and from quotients by regular ideals")


@register("thm-3.5", "abelian R: VNL <=> R/M(R) local")
def _thm_35(ctx, rep):
    for entry in ctx.rings(rep, where=_abelian):
        rep.instance()
        fast, brute = vnl_via_mr_local(entry.ring), is_vnl(entry.ring)
        if fast.holds != brute.holds:
            disagree("mr-local", entry.ring, fast.to_dict(), brute.to_dict())


@register("example-3.3", "M(T_2(F_2)) = 0")
def _example_33(ctx, rep):
    for expr in ["T(2,GF(2))", "T(2,GF(3))"]:
        R = ctx.build(expr)
        rep.instance()
        M = maximal_regular_ideal(R)
        if M.members != (R.zero,):
            rep.fail(expr, list(M.members), "M(T_2(D)) = 0")
        if R.order <= 16 and maximal_regular_ideal_oracle(R) != M:
            disagree("mr-closure-sum", R, M.members, maximal_regular_ideal_oracle(R).members)


# -- section 4 ----------------------------------------------------------------

@register("lemma-4.1", "XY = 0 or YX = 0 forces X, Y inside J(R)")
def _lemma_41(ctx, rep):
    for entry in ctx.rings(rep, max_order=1024):
        R = entry.ring
        rep.instance()
        for e in idempotents(R).tolist():
            pd = peirce_corner_product(RingElement(R, e))
            if (pd.XY_zero or pd.YX_zero) and not (pd.X_in_J and pd.Y_in_J):
                rep.fail(entry.expr, {"idempotent": e}, "X, Y inside J(R)")
                break


@register("lemma-4.2", "local idempotents: e1R ~ e2R or e1Re2, e2Re1 inside J(R)")
def _lemma_42(ctx, rep):
    for entry in ctx.rings(rep, max_order=1024):
        R = entry.ring
        rep.instance()
        J = jacobson_mask(R)
        local = idempotent_census(R).local
        for e1, e2 in combinations(local, 2):
            if projectives_isomorphic(RingElement(R, e1), RingElement(R, e2)):
                continue
            if not (J[peirce_piece(R, e1, e2)].all() and J[peirce_piece(R, e2, e1)].all()):
                rep.fail(entry.expr, {"e1": e1, "e2": e2}, "pieces inside J(R)")
                break


def _matrix_shape(R: FiniteRing) -> bool:
    dec = primitive_decomposition(R).idempotents
    if not dec or not classify_ring(corner_ring(R, dec[0])).division:
        return False
    return all(projectives_isomorphic(RingElement(R, dec[0]), RingElement(R, e)) for e in dec[1:])


def _primitive_count(n: int):
    return lambda entry: len(primitive_decomposition(entry.ring)) == n


@register("cor-4.3", "two primitive idempotents: VNL iff M_2(D) or [[D, X], [Y, L]] with XY = 0")
def _cor_43(ctx, rep):
    for entry in ctx.rings(rep, where=_primitive_count(2)):
        R = entry.ring
        rep.instance()
        got = is_vnl(R).holds
        shape = _matrix_shape(R) or bool(r1_splits(R))
        if got != shape:
            rep.fail(entry.expr, {"vnl": got, "shape": shape}, "VNL iff one of the two shapes")


@register("cor-4.4", "three primitive idempotents: VNL iff M_3(D), the R1 shape or the R2 shape")
def _cor_44(ctx, rep):
    for entry in ctx.rings(rep, where=_primitive_count(3)):
        R = entry.ring
        rep.instance()
        got = is_vnl(R).holds
        shape = _matrix_shape(R) or bool(r1_splits(R)) or bool(r2_splits(R))
        if got != shape:
            rep.fail(entry.expr, {"vnl": got, "shape": shape}, "VNL iff one of the three shapes")


def _corner_regular(R: FiniteRing, e: int, a: int) -> tuple[bool, bool]:
    """(regular, unit) of the eRe-component of a inside eRe."""
    C = corner_ring(R, e)
    loc = C.locate(int(R.mul(R.mul(e, a), e)))
    return bool(regular_mask(C)[loc]), bool(unit_mask(C)[loc])


@register("lemma-4.5", "unit-corner elements are regular; the R2 block inverse formula")
def _lemma_45(ctx, rep):
    for entry in ctx.rings(rep, where=_is_triangular):
        T = entry.ring
        units = unit_mask(T.S)
        reg_R = regular_mask(T.R)
        rep.instance()
        for a in T.elements().tolist():
            r, m, l = T.triple(a)
            if reg_R[r] and units[l]:
                witness_unit_corner(T, a)  # raises if the closed form fails
    for entry in ctx.rings(rep):
        R = entry.ring
        if not is_vnl(R).holds:
            continue
        shape = find_vnl_shape(R)
        if shape is not None and shape.tag == "ProductWithSemisimple":
            R = corner_ring(R, shape.central[1])  # the non-semisimple block, as a ring
            shape = find_vnl_shape(R)
        if shape is None or shape.tag not in ("TypeR1", "TypeR2"):
            continue
        rep.instance()
        reg = regular_mask(R)
        first, second = shape.split.first, shape.split.second
        if shape.tag == "TypeR1":
            for a in R.elements().tolist():
                if _corner_regular(R, second, a)[1] and not reg[a]:
                    rep.fail(entry.expr, {"element": a}, "unit L-corner forces regularity")
                    break
            continue
        units = unit_mask(R)
        for b in R.elements().tolist():
            t_reg, t_unit = _corner_regular(R, first, b)
            d = int(R.mul(R.mul(second, b), second))
            if ((t_reg and d != R.zero) or t_unit) and not reg[b]:
                rep.fail(entry.expr, {"element": b}, "regular T-part with d != 0, or unit T-part, "
                                                     "forces regularity")
                break
            if t_unit and d != R.zero:
                inv = corner_block_inverse(R, first, second, b)
                if inv is None or int(R.mul(b, inv)) != R.one or int(R.mul(inv, b)) != R.one:
                    rep.fail(entry.expr, {"element": b, "inverse": inv}, "block inverse formula")
                    break
                if not units[b]:
                    rep.fail(entry.expr, {"element": b}, "c is a unit")
                    break


@register("thm-4.6", "finite R: VNL iff A x B with A semisimple and B semisimple, R1 or R2")
def _thm_46(ctx, rep):
    fixed = {"T(2,GF(2))": "TypeR1", "T(3,GF(2))": "TypeR2", "M(2,GF(2))": "Semisimple"}
    for entry in ctx.rings(rep):
        R = entry.ring
        rep.instance()
        cls = classify_semiperfect_vnl(R)  # raises on an unverifiable VNL ring
        if cls.tag == "NotVNL":
            shape = find_vnl_shape(R)
            if shape is not None and not verify_shape(R, shape):
                rep.fail(entry.expr, shape.to_dict(), "non-VNL ring has no VNL shape")
        if entry.expr in fixed and cls.tag != fixed[entry.expr]:
            rep.fail(entry.expr, cls.tag, f"expected {fixed[entry.expr]}")


@register("thm-4.7", "finite VNL R (order <= 64) is 2-VNL")
def _thm_47(ctx, rep):
    for entry in ctx.rings(rep, max_order=64):
        R = entry.ring
        if not is_vnl(R).holds:
            continue
        rep.instance()
        r = is_n_vnl(R, 2)
        if not r.holds:
            rep.fail(entry.expr, r.witness, "2-VNL")


@register("thm-4.8", "primitive e with J(eRe) != 0: VNL iff the R1 shape with S regular")
def _thm_48(ctx, rep):
    for entry in ctx.rings(rep):
        R = entry.ring
        J = jacobson_mask(R)
        heavy = [e for e in idempotent_census(R).primitive
                 if not is_semisimple(corner_ring(R, e))]
        if not heavy:
            continue
        rep.instance()
        vnl = is_vnl(R).holds
        if vnl != bool(r1_splits(R)):
            rep.fail(entry.expr, {"vnl": vnl}, "VNL iff an R1 split exists")
        if not vnl:
            continue
        for e in heavy:
            f = int(R.sub(R.one, e))
            X, Y = peirce_piece(R, e, f), peirce_piece(R, f, e)
            if not classify_ring(corner_ring(R, f)).regular:
                rep.fail(entry.expr, {"idempotent": e}, "(1-e)R(1-e) regular")
            elif not (J[X].all() and J[Y].all()):
                rep.fail(entry.expr, {"idempotent": e}, "eR(1-e), (1-e)Re inside J(R)")
            elif not products_vanish(R, Y, X):
                rep.fail(entry.expr, {"idempotent": e}, "(1-e)Re·eR(1-e) = 0")


# -- section 5 ----------------------------------------------------------------

@register("lemma-5.1", "under the section-5 hypotheses: proper Peirce pieces in J; "
                       "an idempotent acting as identity on J is 1")
def _lemma_51(ctx, rep):
    for entry in ctx.rings(rep):
        R = entry.ring
        if not nj_equivalence_hypotheses(R).applicable or not is_semipotent(R).holds:
            continue
        rep.instance()
        J = np.flatnonzero(jacobson_mask(R))
        for e in idempotents(R).tolist():
            if e in (R.zero, R.one):
                continue
            pd = peirce_corner_product(RingElement(R, e))
            if not (pd.X_in_J and pd.Y_in_J):
                rep.fail(entry.expr, {"idempotent": e}, "proper Peirce pieces inside J(R)")
            if (R.mul(J, e) == J).all() and (R.mul(e, J) == J).all():
                rep.fail(entry.expr, {"idempotent": e}, "identity on J(R) forces e = 1")


@register("prop-5.2", "under the section-5 hypotheses VNL, exchange, potent, semipotent, NJ coincide")
def _prop_52(ctx, rep):
    for entry in ctx.rings(rep):
        h = nj_equivalence_hypotheses(entry.ring)
        if not h.applicable:
            continue
        rep.instance()
        if not h.conclusion_checked:
            rep.fail(entry.expr, h.values, "all five properties agree")


# -- cross-cutting invariants -----------------------------------------------

@register("implication-chain", "NJ => VNL => exchange => potent => semipotent; the last three "
                               "hold for every finite ring")
def _chain(ctx, rep):
    for entry in ctx.rings(rep):
        R = entry.ring
        rep.instance()
        vals = [is_nj(R), is_vnl(R), is_exchange_ring(R), is_potent(R), is_semipotent(R)]
        names = ["nj", "vnl", "exchange", "potent", "semipotent"]
        for (a, na), (b, nb) in zip(zip(vals, names), zip(vals[1:], names[1:])):
            if a.holds and not b.holds:
                rep.fail(entry.expr, {nb: b.witness}, f"{na} implies {nb}")
        for r in vals[2:]:
            if not r.holds:
                rep.fail(entry.expr, r.witness, f"finite rings are {r.property}")


@register("product-law", "S x T VNL <=> (S regular and T VNL) or (S VNL and T regular)")
def _product_law(ctx, rep):
    def two_factors(entry):
        return isinstance(entry.ring, ProductRing) and len(entry.ring.factors) == 2
    for entry in ctx.rings(rep, where=two_factors):
        S, T = entry.ring.factors
        rep.instance()
        lhs = is_vnl(entry.ring).holds
        rhs = (is_regular_ring(S).holds and is_vnl(T).holds) or \
              (is_vnl(S).holds and is_regular_ring(T).holds)
        if lhs != rhs:
            rep.fail(entry.expr, {"vnl": lhs, "law": rhs}, "product law")


@register("ring-axioms", "every corpus ring satisfies the unital ring axioms")
def _axioms(ctx, rep):
    for entry in ctx.corpus:
        rep.instance()
        try:
            validate_ring(entry.ring, samples=settings.sample_budget, seed=ctx.seed)
        except InvalidParameter as exc:
            rep.fail(entry.expr, exc.witness, str(exc))


@register("mccoy", "a - axa regular implies a regular (order <= 64)")
def _mccoy(ctx, rep):
    for entry in ctx.rings(rep, max_order=64):
        R = entry.ring
        rep.instance()
        reg = regular_mask(R)
        xs = R.elements()
        for a in np.flatnonzero(~reg).tolist():
            b = R.sub(a, R.mul(R.mul(a, xs), a))
            if reg[b].any():
                x = int(xs[reg[b].argmax()])
                rep.fail(entry.expr, {"a": a, "x": x}, "McCoy's lemma")
                break


# -- runner -----------------------------------------------------------------

def describe_corpus(ctx: SuiteContext) -> str:
    return f"{ctx.profile} corpus, {len(ctx.corpus)} rings, seed {ctx.seed}"


def run_check(check_id: str, ctx: SuiteContext) -> TheoremReport:
    if check_id not in REGISTRY:
        raise InvalidParameter(f"unknown theorem id {check_id!r}; known: {', '.join(REGISTRY)}",
                               check_id)
    rep = TheoremReport(check_id, describe_corpus(ctx))
    start = time.perf_counter()
    REGISTRY[check_id].run(ctx, rep)
    rep.wall_time_ms = (time.perf_counter() - start) * 1000
    return rep


def run_theorem_suite(ids, corpus=None, profile: str = "quick", seed: int = 0,
                      ctx: SuiteContext | None = None) -> list[TheoremReport]:
    """Run the named checks (``"all"`` expands to the whole registry) in the given order."""
    ids = list(ids)
    if ids == ["all"] or not ids:
        ids = list(REGISTRY)
    for i in ids:
        if i not in REGISTRY:
            raise InvalidParameter(f"unknown theorem id {i!r}; known: {', '.join(REGISTRY)}", i)
    if ctx is None:
        elab = Elaborator()
        if corpus is None:
            corpus = generate_corpus(profile, seed, elaborator=elab)
        ctx = SuiteContext(corpus, profile, seed, elab)
    return [run_check(i, ctx) for i in ids]


def search_question(which: str, corpus=None, profile: str = "quick", seed: int = 0,
                    ctx: SuiteContext | None = None) -> TheoremReport:
    """Look for candidate counterexamples to the two open questions. Findings are
    candidates only; an empty list means none up to the searched bound."""
    if which not in ("q53", "q54"):
        raise InvalidParameter(f"unknown question {which!r}; choose q53 or q54", which)
    if ctx is None:
        elab = Elaborator()
        ctx = SuiteContext(corpus if corpus is not None else generate_corpus(profile, seed,
                                                                              elaborator=elab),
                           profile, seed, elab)
    bound = settings.analysis_cap if which == "q53" else 64
    rep = TheoremReport(which, f"{describe_corpus(ctx)}; searched orders <= {bound}")
    start = time.perf_counter()
    for entry in ctx.rings(rep, max_order=bound):
        R = entry.ring
        rep.instance()
        if which == "q53":
            if vnl_via_corner_condition(R).holds and not is_vnl(R).holds:
                rep.fail(entry.expr, is_vnl(R).witness,
                         "candidate: exchange with the corner condition but not VNL")
        else:
            if is_vnl(R).holds:
                r = is_n_vnl(R, 2)
                if not r.holds:
                    rep.fail(entry.expr, r.witness, "candidate: VNL but not 2-VNL")
    rep.wall_time_ms = (time.perf_counter() - start) * 1000
    return rep


def suite_json(reports: list[TheoremReport], profile: str, seed: int) -> dict:
    return {"tool_version": __version__, "profile": profile, "seed": seed,
            "reports": [r.to_dict() for r in reports]}
