"""Element-level properties decided by exhaustive search, with witnesses.

Witness tie-breaking is always the least element index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidParameter
from .ring import (FiniteRing, RingElement, _chunk_rows, additive_closure, as_index,
                   cached, subgroup_sum)


@dataclass(frozen=True)
class RegularityWitness:
    """``inner_inverse`` x has a·x·a = a; ``reflexive_inverse`` y also has y·a·y = y."""

    element: int
    inner_inverse: int | None
    reflexive_inverse: int | None

    def to_dict(self) -> dict:
        return {"element": self.element, "inner_inverse": self.inner_inverse,
                "reflexive_inverse": self.reflexive_inverse}


@dataclass(frozen=True)
class ExchangeWitness:
    element: int
    idempotent: int

    def to_dict(self) -> dict:
        return {"element": self.element, "idempotent": self.idempotent}


@cached
def first_inner_inverses(ring: FiniteRing) -> np.ndarray:
    """For every a the least x with a·x·a = a, or -1."""
    xs = ring.elements()
    out = np.full(ring.order, -1, dtype=np.int64)
    for rows in _chunk_rows(ring.order, ring.order):
        a = xs[rows, None]
        hit = ring.mul(ring.mul(a, xs[None, :]), a) == a
        found = hit.any(axis=1)
        out[rows] = np.where(found, hit.argmax(axis=1), -1)
    return out


@cached
def regular_mask(ring: FiniteRing) -> np.ndarray:
    return first_inner_inverses(ring) >= 0


@cached
def unit_inverses(ring: FiniteRing) -> np.ndarray:
    """Two-sided inverse of every element, or -1."""
    xs = ring.elements()
    out = np.full(ring.order, -1, dtype=np.int64)
    for rows in _chunk_rows(ring.order, ring.order):
        a = xs[rows, None]
        hit = (ring.mul(a, xs[None, :]) == ring.one) & (ring.mul(xs[None, :], a) == ring.one)
        found = hit.any(axis=1)
        out[rows] = np.where(found, hit.argmax(axis=1), -1)
    return out


@cached
def unit_mask(ring: FiniteRing) -> np.ndarray:
    return unit_inverses(ring) >= 0


@cached
def idempotents(ring: FiniteRing) -> np.ndarray:
    xs = ring.elements()
    return xs[ring.mul(xs, xs) == xs]


def right_ideal_mask(ring: FiniteRing, a: int) -> np.ndarray:
    mask = np.zeros(ring.order, dtype=bool)
    mask[ring.mul(a, ring.elements())] = True
    return mask


def left_ideal_mask(ring: FiniteRing, a: int) -> np.ndarray:
    mask = np.zeros(ring.order, dtype=bool)
    mask[ring.mul(ring.elements(), a)] = True
    return mask


def regular_witness(a: RingElement) -> RegularityWitness | None:
    ring, i = a.ring, a.index
    x = int(first_inner_inverses(ring)[i])
    if x < 0:
        return None
    y = int(ring.mul(ring.mul(x, i), x))
    return RegularityWitness(i, x, y)


def is_regular(a: RingElement) -> bool:
    return bool(regular_mask(a.ring)[a.index])


def unit_inverse(a: RingElement) -> RingElement | None:
    x = int(unit_inverses(a.ring)[a.index])
    return None if x < 0 else RingElement(a.ring, x)


def is_idempotent(a: RingElement) -> bool:
    return int(a.ring.mul(a.index, a.index)) == a.index


def exchange_witness(a: RingElement) -> ExchangeWitness | None:
    """Least idempotent e with e in aR and 1-e in (1-a)R."""
    ring, i = a.ring, a.index
    E = idempotents(ring)
    in_aR = right_ideal_mask(ring, i)
    in_bR = right_ideal_mask(ring, int(ring.sub(ring.one, i)))
    ok = in_aR[E] & in_bR[ring.sub(ring.one, E)]
    if not ok.any():
        return None
    return ExchangeWitness(i, int(E[ok.argmax()]))


def principal_right_ideal(a: RingElement) -> frozenset[int]:
    return frozenset(np.flatnonzero(right_ideal_mask(a.ring, a.index)).tolist())


def principal_left_ideal(a: RingElement) -> frozenset[int]:
    return frozenset(np.flatnonzero(left_ideal_mask(a.ring, a.index)).tolist())


def _common_ring(elements: Sequence) -> FiniteRing:
    if not elements:
        raise InvalidParameter("a row needs at least one element")
    rings = {id(e.ring): e.ring for e in elements if isinstance(e, RingElement)}
    if len(rings) != 1 or not all(isinstance(e, RingElement) for e in elements):
        raise InvalidParameter("row entries must be elements of one ring", tuple(elements))
    return next(iter(rings.values()))


def row_span(ring: FiniteRing, row: Sequence[int]) -> np.ndarray:
    """Members of a_1R + ... + a_nR, as additive closure of the union."""
    gens = np.concatenate([ring.mul(int(a), ring.elements()) for a in row])
    return additive_closure(ring, gens)


def is_unimodular_row(elements: Sequence[RingElement]) -> bool:
    """True iff a_1R + ... + a_nR = R."""
    ring = _common_ring(list(elements))
    return len(row_span(ring, [e.index for e in elements])) == ring.order


def sums_to_whole(ring: FiniteRing, ideals: Sequence[np.ndarray]) -> bool:
    """Whether the sum of right ideals (given as member arrays) contains 1."""
    acc = np.asarray(ideals[0])
    for I in ideals[1:-1]:
        acc = subgroup_sum(ring, acc, I)
    if len(ideals) == 1:
        return bool((acc == ring.one).any())
    mask = np.zeros(ring.order, dtype=bool)
    mask[acc] = True
    last = np.asarray(ideals[-1])
    return bool(mask[ring.sub(ring.one, last)].any())


# -- corner helpers shared by later modules -------------------------------

def corner_inverse(ring: FiniteRing, e: int, u: int) -> int | None:
    """Inverse of u inside eRe (identity e), or None."""
    xs = ring.elements()
    cand = np.unique(ring.mul(ring.mul(e, xs), e))
    ok = (ring.mul(u, cand) == e) & (ring.mul(cand, u) == e)
    return int(cand[ok.argmax()]) if ok.any() else None


def mccoy_holds(ring: FiniteRing, a: int, x: int) -> bool:
    """If a - axa is regular then a is regular."""
    reg = regular_mask(ring)
    b = int(ring.sub(a, ring.mul(ring.mul(a, x), a)))
    return (not reg[b]) or bool(reg[a])


def as_element(ring: FiniteRing, a) -> RingElement:
    return RingElement(ring, as_index(ring, a))
