"""Ring-level property deciders and the semiperfect VNL classifier.

Each decider returns a :class:`PropertyReport`. Negative answers always carry a
witness that reproduces the failure when the defining condition is re-evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import settings
from .elements import (first_inner_inverses, idempotents, regular_mask, right_ideal_mask,
                       unit_mask)
from .errors import CapacityError, InternalInconsistency, InvalidParameter
from .ring import FiniteRing, build_quotient, subgroup_sum
from .structure import (central_idempotents, classify_ring, corner_ring, is_local, is_semisimple,
                        jacobson_mask, maximal_regular_ideal, peirce_piece, primitive_decomposition,
                        products_vanish)

BRUTE = "brute-force"


@dataclass(frozen=True)
class PropertyReport:
    property: str
    holds: bool
    witness: object = None
    method: str = BRUTE

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return {"property": self.property, "holds": self.holds,
                "witness": _jsonable(self.witness), "method": self.method}


def _jsonable(w):
    if isinstance(w, dict):
        return {k: _jsonable(v) for k, v in w.items()}
    if isinstance(w, (tuple, list)):
        return [_jsonable(v) for v in w]
    if isinstance(w, (np.integer,)):
        return int(w)
    if isinstance(w, (np.bool_,)):
        return bool(w)
    return w


# -- definition-level deciders ---------------------------------------------

def is_regular_ring(ring: FiniteRing) -> PropertyReport:
    bad = np.flatnonzero(~regular_mask(ring))
    return PropertyReport("regular", not len(bad), int(bad[0]) if len(bad) else None)


def is_vnl(ring: FiniteRing) -> PropertyReport:
    """Every a has a or 1-a regular; witness is an a with both non-regular."""
    reg = regular_mask(ring)
    xs = ring.elements()
    bad = np.flatnonzero(~reg & ~reg[ring.sub(ring.one, xs)])
    return PropertyReport("vnl", not len(bad), int(bad[0]) if len(bad) else None)


def zn_vnl_criterion(n: int) -> bool:
    """Z_n is VNL iff no two distinct primes both divide n to exponent >= 2."""
    if n < 1:
        raise InvalidParameter(f"n must be >= 1, got {n}", n)
    squared = 0
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            squared += e >= 2
        p += 1
    return squared <= 1


def is_nj(ring: FiniteRing) -> PropertyReport:
    """Every element outside J(R) is regular."""
    bad = np.flatnonzero(~jacobson_mask(ring) & ~regular_mask(ring))
    return PropertyReport("nj", not len(bad), int(bad[0]) if len(bad) else None)


def exchange_idempotents(ring: FiniteRing) -> np.ndarray:
    """Least exchange idempotent for every element, or -1."""
    E = idempotents(ring)
    one_minus_E = ring.sub(ring.one, E)
    out = np.full(ring.order, -1, dtype=np.int64)
    for a in range(ring.order):
        in_aR = right_ideal_mask(ring, a)
        in_bR = right_ideal_mask(ring, int(ring.sub(ring.one, a)))
        ok = in_aR[E] & in_bR[one_minus_E]
        if ok.any():
            out[a] = E[ok.argmax()]
    return out


def is_exchange_ring(ring: FiniteRing) -> PropertyReport:
    bad = np.flatnonzero(exchange_idempotents(ring) < 0)
    return PropertyReport("exchange", not len(bad), int(bad[0]) if len(bad) else None)


def is_semipotent(ring: FiniteRing) -> PropertyReport:
    """For every a outside J(R), aR contains a nonzero idempotent.

    Any right ideal not inside J(R) contains such an a together with aR, so
    principal right ideals suffice.
    """
    J = jacobson_mask(ring)
    E = idempotents(ring)
    E = E[E != ring.zero]
    for a in np.flatnonzero(~J).tolist():
        if not right_ideal_mask(ring, a)[E].any():
            return PropertyReport("semipotent", False, a)
    return PropertyReport("semipotent", True)


def is_potent(ring: FiniteRing) -> PropertyReport:
    """Semipotent, and idempotents lift modulo J(R)."""
    semi = is_semipotent(ring)
    if not semi.holds:
        return PropertyReport("potent", False, {"semipotent_failure": semi.witness})
    J = jacobson_mask(ring)
    E = idempotents(ring)
    xs = ring.elements()
    near = xs[J[ring.sub(ring.mul(xs, xs), xs)]]
    for a in near.tolist():
        if not J[ring.sub(E, a)].any():
            return PropertyReport("potent", False, {"unliftable": a})
    return PropertyReport("potent", True)


def is_n_vnl(ring: FiniteRing, n: int, max_tuples: int | None = None) -> PropertyReport:
    """a_1R + ... + a_nR = R forces some a_i regular.

    Only tuples of non-regular elements are scanned (unordered, since the
    condition is symmetric); the witness is the least such unimodular tuple.
    """
    if n < 1:
        raise InvalidParameter(f"n must be >= 1, got {n}", n)
    max_tuples = settings.nvnl_max_tuples if max_tuples is None else max_tuples
    if ring.order ** n > max_tuples:
        raise CapacityError(f"is_n_vnl: {ring.order}^{n} tuples exceeds budget {max_tuples}")
    bad = np.flatnonzero(~regular_mask(ring))
    if not len(bad):
        return PropertyReport(f"{n}-vnl", True)
    xs = ring.elements()
    member = np.zeros((len(bad), ring.order), dtype=bool)
    ideals = []
    for i, a in enumerate(bad.tolist()):
        I = np.unique(ring.mul(a, xs))
        member[i, I] = True
        ideals.append(I)

    def search(start: int, depth: int, acc: np.ndarray, prefix: list[int]):
        if (acc == ring.one).any():
            return prefix + [prefix[-1]] * (n - len(prefix))
        targets = ring.sub(ring.one, acc)
        if depth == n - 1:
            hit = member[start:, targets].any(axis=1)
            if hit.any():
                return prefix + [start + int(hit.argmax())]
            return None
        for i in range(start, len(bad)):
            found = search(i, depth + 1, subgroup_sum(ring, acc, ideals[i]), prefix + [i])
            if found:
                return found
        return None

    found = search(0, 0, np.array([ring.zero], dtype=np.int64), [])
    if found:
        return PropertyReport(f"{n}-vnl", False, tuple(int(bad[i]) for i in found))
    return PropertyReport(f"{n}-vnl", True)


# -- fast paths -----------------------------------------------------------

def corner_is_regular(ring: FiniteRing, e: int) -> bool:
    return classify_ring(corner_ring(ring, e)).regular


def vnl_via_corner_condition(ring: FiniteRing) -> PropertyReport:
    """Exchange, and for each idempotent e one of eRe, (1-e)R(1-e) is regular."""
    name, method = "vnl", "corner-condition"
    ex = is_exchange_ring(ring)
    if not ex.holds:
        return PropertyReport(name, False, {"not_exchange": ex.witness}, method)
    for e in idempotents(ring).tolist():
        f = int(ring.sub(ring.one, e))
        if not corner_is_regular(ring, e) and not corner_is_regular(ring, f):
            return PropertyReport(name, False, {"idempotent": e}, method)
    return PropertyReport(name, True, None, method)


def vnl_via_mr_local(ring: FiniteRing) -> PropertyReport:
    """R/M(R) is local (the zero ring counting as local)."""
    M = maximal_regular_ideal(ring)
    Q = build_quotient(ring, M)
    if is_local(Q):
        return PropertyReport("vnl", True, {"M": list(M.members)}, "mr-local")
    nonunits = np.flatnonzero(~unit_mask(Q))
    units = unit_mask(Q)
    for a in nonunits.tolist():
        s = Q.add(a, nonunits)
        hit = units[s]
        if hit.any():
            b = int(nonunits[hit.argmax()])
            reps = Q.representatives
            return PropertyReport("vnl", False, {"M": list(M.members),
                                                 "nonunit_pair": (int(reps[a]), int(reps[b]))},
                                  "mr-local")
    raise InternalInconsistency(f"{ring.label}: quotient is not local but no witness found")


# -- semiperfect classification -------------------------------------------

@dataclass(frozen=True)
class PeirceSplit:
    """Two orthogonal idempotents summing to a block identity and the pieces between them.

    ``first`` heads the upper-left corner (S or T), ``second`` the lower-right
    (L or D); X = first·R·second and Y = second·R·first.
    """

    first: int
    second: int
    X: tuple[int, ...]
    Y: tuple[int, ...]
    XY_zero: bool
    YX_zero: bool
    X_in_J: bool
    Y_in_J: bool
    first_order: int
    second_order: int

    def to_dict(self) -> dict:
        return dict(self.__dict__, X=list(self.X), Y=list(self.Y))


@dataclass(frozen=True)
class SemiperfectVnlClass:
    tag: str
    witness: object = None
    split: PeirceSplit | None = None
    central: tuple[int, int] | None = None
    block: SemiperfectVnlClass | None = None
    notes: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"tag": self.tag}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.split is not None:
            out["split"] = self.split.to_dict()
        if self.central is not None:
            out["central"] = list(self.central)
        if self.block is not None:
            out["block"] = self.block.to_dict()
        if self.notes:
            out["notes"] = _jsonable(self.notes)
        return out


TAGS = ("NotVNL", "Semisimple", "TypeR1", "TypeR2", "ProductWithSemisimple")


def primitive_central_idempotents(ring: FiniteRing) -> list[int]:
    C = [c for c in central_idempotents(ring).tolist() if c != ring.zero]
    out = []
    for c in C:
        if not any(d != c and int(ring.mul(d, c)) == d for d in C):
            out.append(c)
    return out


def _split(ring: FiniteRing, first: int, second: int) -> PeirceSplit:
    X = peirce_piece(ring, first, second)
    Y = peirce_piece(ring, second, first)
    J = jacobson_mask(ring)
    return PeirceSplit(first, second, tuple(X.tolist()), tuple(Y.tolist()),
                       products_vanish(ring, X, Y), products_vanish(ring, Y, X),
                       bool(J[X].all()), bool(J[Y].all()),
                       corner_ring(ring, first).order, corner_ring(ring, second).order)


def _idempotents_under(ring: FiniteRing, c: int) -> list[int]:
    E = idempotents(ring)
    return [e for e in E[(ring.mul(c, E) == E) & (ring.mul(E, c) == E)].tolist() if e != ring.zero]


def _r1_ok(ring: FiniteRing, s: int, l: int) -> bool:
    if not is_local(corner_ring(ring, l)) or not is_semisimple(corner_ring(ring, s)):
        return False
    return products_vanish(ring, peirce_piece(ring, s, l), peirce_piece(ring, l, s))


def _r2_ok(ring: FiniteRing, t: int, f: int) -> bool:
    if not classify_ring(corner_ring(ring, f)).division:
        return False
    T = corner_ring(ring, t)
    if len(primitive_decomposition(T)) != 2 or not is_nj(T).holds:
        return False
    return products_vanish(ring, peirce_piece(ring, f, t), peirce_piece(ring, t, f))


def r1_splits(ring: FiniteRing, c: int | None = None) -> list[tuple[int, int]]:
    """All (s, l) with s + l = c (default 1), lRl local, sRs semisimple and sRl·lRs = 0."""
    c = ring.one if c is None else c
    out = []
    for l in _idempotents_under(ring, c):
        s = int(ring.sub(c, l))
        if _r1_ok(ring, s, l):
            out.append((s, l))
    return out


def r2_splits(ring: FiniteRing, c: int | None = None) -> list[tuple[int, int]]:
    """All (t, f) with t + f = c, fRf division, tRt a two-idempotent NJ ring, fRt·tRf = 0."""
    c = ring.one if c is None else c
    out = []
    for f in _idempotents_under(ring, c):
        t = int(ring.sub(c, f))
        if t != ring.zero and _r2_ok(ring, t, f):
            out.append((t, f))
    return out


def _block_shape(ring: FiniteRing, c: int) -> SemiperfectVnlClass | None:
    under = _idempotents_under(ring, c)
    for l in under:
        s = int(ring.sub(c, l))
        if _r1_ok(ring, s, l):
            return SemiperfectVnlClass("TypeR1", split=_split(ring, s, l))
    for f in under:
        t = int(ring.sub(c, f))
        if t != ring.zero and _r2_ok(ring, t, f):
            return SemiperfectVnlClass("TypeR2", split=_split(ring, t, f))
    return None


def find_vnl_shape(ring: FiniteRing) -> SemiperfectVnlClass | None:
    """Search for an A x B decomposition of one of the VNL shapes, without testing VNL."""
    if is_semisimple(ring):
        return SemiperfectVnlClass("Semisimple")
    J = np.flatnonzero(jacobson_mask(ring))
    heavy = [c for c in primitive_central_idempotents(ring)
             if (ring.mul(c, J) != ring.zero).any()]
    if len(heavy) != 1:
        return None
    c = heavy[0]
    inner = _block_shape(ring, c)
    if inner is None:
        return None
    a = int(ring.sub(ring.one, c))
    if a == ring.zero:
        return inner
    return SemiperfectVnlClass("ProductWithSemisimple", central=(a, c), block=inner)


def verify_shape(ring: FiniteRing, cls: SemiperfectVnlClass, block_one: int | None = None) -> list[str]:
    """Re-check every claim carried by a classification; returns the failed ones."""
    fails = []
    one = ring.one if block_one is None else block_one
    if cls.tag == "Semisimple":
        if not is_semisimple(ring):
            fails.append("ring is not semisimple")
    elif cls.tag == "ProductWithSemisimple":
        a, c = cls.central
        central = set(central_idempotents(ring).tolist())
        if a not in central or c not in central:
            fails.append("split idempotents are not central")
        if int(ring.add(a, c)) != ring.one or int(ring.mul(a, c)) != ring.zero:
            fails.append("central idempotents are not complementary")
        if not is_semisimple(corner_ring(ring, a)):
            fails.append("A factor is not semisimple")
        fails += verify_shape(ring, cls.block, block_one=c)
    elif cls.tag in ("TypeR1", "TypeR2"):
        sp = cls.split
        p, q = sp.first, sp.second
        if int(ring.mul(p, p)) != p or int(ring.mul(q, q)) != q:
            fails.append("split elements are not idempotent")
        if int(ring.mul(p, q)) != ring.zero or int(ring.mul(q, p)) != ring.zero:
            fails.append("split idempotents are not orthogonal")
        if int(ring.add(p, q)) != one:
            fails.append("split idempotents do not sum to the block identity")
        fresh = _split(ring, p, q)
        if fresh != sp:
            fails.append("recorded Peirce pieces differ from recomputation")
        if not (fresh.X_in_J and fresh.Y_in_J):
            fails.append("off-diagonal pieces are not inside J(R)")
        if cls.tag == "TypeR1":
            if not is_semisimple(corner_ring(ring, p)):
                fails.append("S corner is not semisimple")
            if not is_local(corner_ring(ring, q)):
                fails.append("L corner is not local")
            if not fresh.XY_zero:
                fails.append("XY != 0")
        else:
            if not classify_ring(corner_ring(ring, q)).division:
                fails.append("D corner is not a division ring")
            T = corner_ring(ring, p)
            if not is_nj(T).holds or len(primitive_decomposition(T)) != 2:
                fails.append("T corner is not a two-idempotent NJ ring")
            if not fresh.YX_zero:
                fails.append("YX != 0")
    else:
        fails.append(f"unexpected tag {cls.tag}")
    return fails


def classify_semiperfect_vnl(ring: FiniteRing) -> SemiperfectVnlClass:
    """Place a finite (hence semiperfect) ring among the VNL shapes.

    Raises InternalInconsistency if the ring is VNL but no shape verifies.
    """
    rep = is_vnl(ring)
    if not rep.holds:
        return SemiperfectVnlClass("NotVNL", witness=rep.witness)
    shape = find_vnl_shape(ring)
    if shape is None:
        raise InternalInconsistency(f"{ring.label} is VNL but fits no semiperfect VNL shape",
                                    {"ring": ring.label})
    fails = verify_shape(ring, shape)
    if fails:
        raise InternalInconsistency(f"{ring.label}: classification failed re-verification",
                                    {"ring": ring.label, "failures": fails})
    return shape


# -- equivalence hypotheses -----------------------------------------------

@dataclass(frozen=True)
class NjHypotheses:
    applicable: bool
    conclusion_checked: bool
    values: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"applicable": self.applicable, "conclusion_checked": self.conclusion_checked,
                "values": dict(self.values)}


def proper_corners_semisimple(ring: FiniteRing) -> bool:
    for e in idempotents(ring).tolist():
        if e not in (ring.zero, ring.one) and not is_semisimple(corner_ring(ring, e)):
            return False
    return True


def nj_equivalence_hypotheses(ring: FiniteRing) -> NjHypotheses:
    """No nontrivial central idempotent, J(R) != 0, J(eRe) = 0 for proper e.

    When these hold, VNL, exchange, potent, semipotent and NJ must coincide.
    """
    flags = classify_ring(ring)
    applicable = (not flags.has_nontrivial_central_idempotent and not flags.semisimple
                  and proper_corners_semisimple(ring))
    if not applicable:
        return NjHypotheses(False, False)
    values = {
        "vnl": is_vnl(ring).holds,
        "exchange": is_exchange_ring(ring).holds,
        "potent": is_potent(ring).holds,
        "semipotent": is_semipotent(ring).holds,
        "nj": is_nj(ring).holds,
    }
    return NjHypotheses(True, len(set(values.values())) == 1, values)


def inner_inverse_of(ring: FiniteRing, a: int) -> int | None:
    x = int(first_inner_inverses(ring)[a])
    return None if x < 0 else x
