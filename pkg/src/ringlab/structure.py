"""Ring-level invariants: radical, idempotents, ideals, M(R), Peirce data."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .elements import idempotents, regular_mask, unit_mask
from .errors import CapacityError, InternalInconsistency, InvalidParameter
from .ring import (FiniteRing, RingElement, SubRing, SubsetIdeal, _chunk_rows, additive_closure,
                   as_index, build_corner, cached, subgroup_sum)

__all__ = [
    "SubsetIdeal", "IdempotentCensus", "PrimitiveDecomposition", "RingFlags", "PeirceData",
    "jacobson_radical", "jacobson_mask", "idempotent_census", "classify_ring", "ideal_generated",
    "is_regular_ideal", "regular_principal_ideals", "maximal_regular_ideal", "maximal_regular_ideal_oracle",
    "primitive_decomposition", "projectives_isomorphic", "peirce_corner_product", "corner_ring",
    "is_local", "peirce_piece", "central_idempotents", "is_primitive",
]


@dataclass(frozen=True)
class IdempotentCensus:
    all: tuple[int, ...]
    central: tuple[int, ...]
    primitive: tuple[int, ...]
    local: tuple[int, ...]


@dataclass(frozen=True)
class PrimitiveDecomposition:
    idempotents: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.idempotents)


@dataclass(frozen=True)
class RingFlags:
    regular: bool
    local: bool
    division: bool
    semisimple: bool
    abelian: bool
    commutative: bool
    has_nontrivial_central_idempotent: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class PeirceData:
    """Off-diagonal pieces X = eR(1-e), Y = (1-e)Re and their products."""

    idempotent: int
    X: frozenset[int]
    Y: frozenset[int]
    XY_zero: bool
    YX_zero: bool
    X_in_J: bool
    Y_in_J: bool

    def to_dict(self) -> dict:
        return {"idempotent": self.idempotent, "X": sorted(self.X), "Y": sorted(self.Y),
                "XY_zero": self.XY_zero, "YX_zero": self.YX_zero,
                "X_in_J": self.X_in_J, "Y_in_J": self.Y_in_J}


# -- radical ----------------------------------------------------------------

@cached
def jacobson_mask(ring: FiniteRing) -> np.ndarray:
    """a is in J(R) iff 1 - r·a is a unit for every r."""
    units = unit_mask(ring)
    xs = ring.elements()
    out = np.zeros(ring.order, dtype=bool)
    for rows in _chunk_rows(ring.order, ring.order):
        a = xs[rows, None]
        out[rows] = units[ring.sub(ring.one, ring.mul(xs[None, :], a))].all(axis=1)
    return out


@cached
def jacobson_radical(ring: FiniteRing) -> SubsetIdeal:
    return SubsetIdeal(ring, tuple(np.flatnonzero(jacobson_mask(ring)).tolist()), "two-sided")


def is_semisimple(ring: FiniteRing) -> bool:
    return int(jacobson_mask(ring).sum()) == 1


# -- corners and idempotents ------------------------------------------------

@cached
def corner_ring(ring: FiniteRing, e: int) -> SubRing:
    return build_corner(ring, e)


def peirce_piece(ring: FiniteRing, e: int, f: int) -> np.ndarray:
    """Sorted members of eRf."""
    return np.unique(ring.mul(ring.mul(e, ring.elements()), f))


@cached
def central_idempotents(ring: FiniteRing) -> np.ndarray:
    xs = ring.elements()
    E = idempotents(ring)
    keep = [bool((ring.mul(e, xs) == ring.mul(xs, e)).all()) for e in E]
    return E[np.asarray(keep, dtype=bool)] if len(E) else E


def _sub_idempotents(ring: FiniteRing, e: int) -> np.ndarray:
    """Idempotents f of R lying in eRe, i.e. ef = fe = f."""
    E = idempotents(ring)
    return E[(ring.mul(e, E) == E) & (ring.mul(E, e) == E)]


def is_primitive(ring: FiniteRing, e: int) -> bool:
    if e == ring.zero:
        return False
    return len(_sub_idempotents(ring, e)) == 2


@cached
def is_local(ring: FiniteRing) -> bool:
    """Non-units form an additive subgroup. The zero ring counts as local."""
    if ring.order == 1:
        return True
    nonunits = np.flatnonzero(~unit_mask(ring))
    mask = ~unit_mask(ring)
    for rows in _chunk_rows(len(nonunits), len(nonunits)):
        if not mask[ring.add(nonunits[rows, None], nonunits[None, :])].all():
            return False
    return True


@cached
def idempotent_census(ring: FiniteRing) -> IdempotentCensus:
    E = idempotents(ring)
    central = set(central_idempotents(ring).tolist())
    primitive, local = [], []
    for e in E.tolist():
        if is_primitive(ring, e):
            primitive.append(e)
        if e != ring.zero and is_local(corner_ring(ring, e)):
            local.append(e)
    return IdempotentCensus(tuple(E.tolist()), tuple(sorted(central)), tuple(primitive), tuple(local))


@cached
def classify_ring(ring: FiniteRing) -> RingFlags:
    xs = ring.elements()
    units = unit_mask(ring)
    E = idempotents(ring)
    C = central_idempotents(ring)
    commutative = True
    for rows in _chunk_rows(ring.order, ring.order):
        if not (ring.mul(xs[rows, None], xs[None, :]) == ring.mul(xs[None, :], xs[rows, None])).all():
            commutative = False
            break
    nonzero = xs != ring.zero
    return RingFlags(
        regular=bool(regular_mask(ring).all()),
        local=is_local(ring),
        division=ring.order > 1 and bool(units[nonzero].all()),
        semisimple=is_semisimple(ring),
        abelian=len(C) == len(E),
        commutative=commutative,
        has_nontrivial_central_idempotent=bool(((C != ring.zero) & (C != ring.one)).any()),
    )


# -- ideals and M(R) --------------------------------------------------------

def _two_sided_generators(ring: FiniteRing, a: int) -> np.ndarray:
    xs = ring.elements()
    aR = np.unique(ring.mul(a, xs))
    parts = [np.unique(ring.mul(xs[rows, None], aR[None, :])) for rows in _chunk_rows(ring.order, len(aR))]
    return np.unique(np.concatenate(parts))


@cached
def _ideal_generated_members(ring: FiniteRing, a: int) -> np.ndarray:
    return additive_closure(ring, _two_sided_generators(ring, a))


def ideal_generated(ring: FiniteRing, a) -> SubsetIdeal:
    """Smallest two-sided ideal containing a: additive closure of RaR."""
    a = as_index(ring, a)
    return SubsetIdeal(ring, tuple(_ideal_generated_members(ring, a).tolist()), "two-sided")


def is_regular_ideal(ideal: SubsetIdeal) -> bool:
    """Every member has an inner inverse in R (equivalently one inside the ideal)."""
    return bool(regular_mask(ideal.ring)[ideal.array].all())


@cached
def regular_principal_ideals(ring: FiniteRing) -> tuple[tuple[int, ...], ...]:
    """Distinct regular ideals RaR, as sorted member tuples.

    For regular a with aR = eR (e = ax) we have RaR = ReR, so scanning the
    idempotents finds every regular principal ideal.
    """
    reg = regular_mask(ring)
    seen = {}
    for e in idempotents(ring).tolist():
        if not reg[_two_sided_generators(ring, e)].all():
            continue
        I = _ideal_generated_members(ring, e)
        if reg[I].all():
            seen.setdefault(tuple(I.tolist()), None)
    return tuple(sorted(seen, key=lambda m: (len(m), m)))


@cached
def maximal_regular_ideal(ring: FiniteRing) -> SubsetIdeal:
    """Sum of all regular principal two-sided ideals.

    Every member of a regular ideal generates a regular ideal, and sums of
    regular ideals are regular, so the sum is the largest regular ideal.
    """
    current = np.array([ring.zero], dtype=np.int64)
    for I in regular_principal_ideals(ring):
        current = subgroup_sum(ring, current, np.asarray(I))
    M = SubsetIdeal(ring, tuple(current.tolist()), "two-sided")
    if not is_regular_ideal(M):
        raise InternalInconsistency(f"{ring.label}: sum of regular ideals is not regular",
                                    {"members": M.members})
    return M


def additive_subgroups(ring: FiniteRing) -> list[np.ndarray]:
    """All additive subgroups, by closing under one new generator at a time."""
    seen = {(ring.zero,)}
    frontier = [np.array([ring.zero], dtype=np.int64)]
    out = list(frontier)
    while frontier:
        nxt = []
        for S in frontier:
            mask = np.zeros(ring.order, dtype=bool)
            mask[S] = True
            for g in np.flatnonzero(~mask).tolist():
                T = additive_closure(ring, np.concatenate([S, [g]]))
                key = tuple(T.tolist())
                if key not in seen:
                    seen.add(key)
                    nxt.append(T)
        out.extend(nxt)
        frontier = nxt
    return out


def maximal_regular_ideal_oracle(ring: FiniteRing, max_order: int = 16) -> SubsetIdeal:
    """Largest two-sided ideal that is a regular ring, by lattice enumeration.

    Regularity is tested with inner inverses taken inside the ideal itself.
    """
    if ring.order > max_order:
        raise CapacityError(f"ideal-lattice oracle limited to order {max_order}")
    xs = ring.elements()
    regular_ideals = []
    for S in additive_subgroups(ring):
        mask = np.zeros(ring.order, dtype=bool)
        mask[S] = True
        if not (mask[ring.mul(S[:, None], xs[None, :])].all()
                and mask[ring.mul(xs[None, :], S[:, None])].all()):
            continue
        axa = ring.mul(ring.mul(S[:, None], S[None, :]), S[:, None])
        if (axa == S[:, None]).any(axis=1).all():
            regular_ideals.append(mask)
    best = max(regular_ideals, key=lambda m: int(m.sum()))
    for m in regular_ideals:
        if (m & ~best).any():
            raise InternalInconsistency(f"{ring.label}: regular ideals have no largest element")
    return SubsetIdeal(ring, tuple(np.flatnonzero(best).tolist()), "two-sided")


# -- decompositions and Peirce data ------------------------------------------

@cached
def primitive_decomposition(ring: FiniteRing) -> PrimitiveDecomposition:
    """Split 1 repeatedly by the least proper idempotent of each corner."""
    if ring.order == 1:
        return PrimitiveDecomposition(())
    stack, out = [ring.one], []
    while stack:
        e = stack.pop(0)
        subs = [f for f in _sub_idempotents(ring, e).tolist() if f not in (ring.zero, e)]
        if not subs:
            out.append(e)
            continue
        f = min(subs)
        stack[:0] = [f, int(ring.sub(e, f))]
    return PrimitiveDecomposition(tuple(out))


def _require_idempotent(ring: FiniteRing, e: int) -> None:
    if int(ring.mul(e, e)) != e:
        raise InvalidParameter(f"{e} is not idempotent in {ring.label}", e)


def projectives_isomorphic(e: RingElement, f: RingElement) -> bool:
    """eR ≅ fR iff some x in eRf, y in fRe have xy = e and yx = f."""
    if e.ring is not f.ring:
        raise InvalidParameter("idempotents belong to different rings", (e, f))
    ring = e.ring
    _require_idempotent(ring, e.index)
    _require_idempotent(ring, f.index)
    X = peirce_piece(ring, e.index, f.index)
    Y = peirce_piece(ring, f.index, e.index)
    for rows in _chunk_rows(len(X), len(Y)):
        ok = (ring.mul(X[rows, None], Y[None, :]) == e.index) & \
             (ring.mul(Y[None, :], X[rows, None]) == f.index)
        if ok.any():
            return True
    return False


def products_vanish(ring: FiniteRing, A: np.ndarray, B: np.ndarray) -> bool:
    for rows in _chunk_rows(len(A), len(B)):
        if (ring.mul(A[rows, None], B[None, :]) != ring.zero).any():
            return False
    return True


def peirce_corner_product(e: RingElement) -> PeirceData:
    ring = e.ring
    _require_idempotent(ring, e.index)
    f = int(ring.sub(ring.one, e.index))
    X = peirce_piece(ring, e.index, f)
    Y = peirce_piece(ring, f, e.index)
    J = jacobson_mask(ring)
    return PeirceData(
        idempotent=e.index,
        X=frozenset(X.tolist()), Y=frozenset(Y.tolist()),
        XY_zero=products_vanish(ring, X, Y), YX_zero=products_vanish(ring, Y, X),
        X_in_J=bool(J[X].all()), Y_in_J=bool(J[Y].all()),
    )
