"""Deterministic test corpora of finite rings.

A corpus is a list of :class:`CorpusEntry` in a fixed order. Each entry keeps
the expression it was built from, so any report line can be replayed through
the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

import numpy as np

from .config import settings
from .dsl import Elaborator, Sidecar
from .elements import idempotents, regular_mask, unit_mask
from .ring import FiniteRing, ProductRing
from .structure import maximal_regular_ideal, regular_principal_ideals

PROFILES = ("quick", "full")

QUICK_FIELDS = ["GF(2)", "GF(3)", "GF(2,2)"]
QUICK_MATRIX = ["M(2,GF(2))", "T(2,GF(2))", "T(3,GF(2))"]
PRODUCT_FACTORS = ["Zn(4)", "GF(2)", "GF(3)", "T(2,GF(2))"]

# small triangular constructions exercising both outcomes of the VNL criterion
QUICK_TRIANGULAR = [
    "Tri(GF(2),nat,GF(2))",
    "Tri(GF(2),zero,Zn(4))",
    "Tri(Prod(GF(2),GF(2)),ideal[2],Prod(GF(2),GF(2)))",
    "Tri(Prod(GF(2),GF(2)),nat,Prod(GF(2),GF(2)))",
    "Tri(Zn(4),nat,Zn(4))",
    "Tri(Zn(6),ideal[3],Zn(6))",
    "Tri(T(2,GF(2)),col,GF(2))",
    "Tri(M(2,GF(2)),col,GF(2))",
    "Tri(GF(2),row,M(2,GF(2)))",
    "Tri(GF(3),nat,GF(3))",
]

FULL_EXTRA = [
    "T(4,GF(2))",
    "T(2,GF(3))",
    "T(3,GF(3))",
    "T(2,Zn(4))",
    "M(2,GF(3))",
    "M(2,GF(3,2))",
    "Tri(M(2,GF(2)),col,T(2,GF(2)))",
    "Tri(Prod(GF(2),M(2,GF(2))),ideal[16],Prod(GF(2),M(2,GF(2))))",
    "Tri(M(2,GF(2)),nat,M(2,GF(2)))",
]


@dataclass
class CorpusEntry:
    expr: str
    ring: FiniteRing
    origin: str = "base"
    parent: str | None = None
    tags: frozenset = field(default_factory=frozenset)

    @property
    def order(self) -> int:
        return self.ring.order

    def describe(self) -> dict:
        return {"expr": self.expr, "order": self.ring.order, "repr_kind": self.ring.repr_kind,
                "origin": self.origin}


def base_expressions(profile: str) -> list[str]:
    if profile not in PROFILES:
        from .errors import InvalidParameter
        raise InvalidParameter(f"unknown profile {profile!r}; choose from {', '.join(PROFILES)}",
                               profile)
    top = 36 if profile == "quick" else 64
    exprs = [f"Zn({n})" for n in range(1, top + 1)]
    exprs += QUICK_FIELDS + QUICK_MATRIX
    exprs += [f"Prod({a},{b})" for a, b in combinations_with_replacement(PRODUCT_FACTORS, 2)]
    exprs += QUICK_TRIANGULAR
    if profile == "full":
        exprs += FULL_EXTRA
    return exprs


def regular_ideals(ring: FiniteRing) -> list[tuple[int, ...]]:
    """Proper nonzero regular ideals: the regular principal ones and M(R)."""
    found = set(regular_principal_ideals(ring))
    found.add(maximal_regular_ideal(ring).members)
    return sorted(m for m in found if 1 < len(m) < ring.order)


def fingerprint(ring: FiniteRing) -> tuple:
    """An isomorphism invariant: order plus the multiset of per-element profiles
    (right/left ideal sizes, additive order, unit/regular/idempotent flags)."""
    xs = ring.elements()
    reg, units = regular_mask(ring), unit_mask(ring)
    prods = ring.mul(xs[:, None], xs[None, :])
    right = np.array([len(np.unique(row)) for row in prods])
    left = np.array([len(np.unique(col)) for col in prods.T])
    add_order = np.ones(ring.order, dtype=np.int64)
    acc = xs.copy()
    while (acc != ring.zero).any():
        live = acc != ring.zero
        add_order[live] += 1
        acc = np.where(live, ring.add(acc, xs), acc)
    idem = prods[xs, xs] == xs
    rows = np.stack([right, left, add_order, units, reg, idem], axis=1).tolist()
    return (ring.order, tuple(sorted(map(tuple, rows))))


def _derived(entry: CorpusEntry, limit: int) -> list[str]:
    ring = entry.ring
    if ring.order > settings.analysis_cap:
        return []
    out = []
    for e in idempotents(ring).tolist():
        if e not in (ring.zero, ring.one):
            out.append(f"Corner({entry.expr},{e})")
    for members in regular_ideals(ring):
        if ring.order // len(members) <= limit:
            out.append(f"Quot({entry.expr},{{{','.join(map(str, members))}}})")
    return out


def generate_corpus(profile: str = "quick", seed: int = 0, sidecar: Sidecar | None = None,
                    elaborator: Elaborator | None = None) -> list[CorpusEntry]:
    """Base rings for the profile, then one round of corners and regular quotients.

    Derived rings are kept when their order is at most 64 (quick) or 256 (full)
    and their fingerprint differs from every ring kept before them.
    ``seed`` does not change the list; it is recorded for the sampled checks.
    """
    limit = 64 if profile == "quick" else 256
    elab = elaborator or Elaborator(sidecar)
    entries = []
    for expr in base_expressions(profile):
        ring = elab.ring(expr)
        tags = {"triangular"} if expr.startswith("Tri(") else set()
        if isinstance(ring, ProductRing):
            tags.add("product")
        entries.append(CorpusEntry(expr, ring, "base", None, frozenset(tags)))
    derived, prints = [], {}
    for entry in entries:
        if entry.order <= limit:
            prints.setdefault(fingerprint(entry.ring), entry.expr)
    for entry in entries:
        for expr in _derived(entry, limit):
            ring = elab.ring(expr)
            if ring.order > limit:
                continue
            key = fingerprint(ring)
            if key in prints:
                continue
            prints[key] = expr
            origin = "corner" if expr.startswith("Corner(") else "quotient"
            derived.append(CorpusEntry(expr, ring, origin, entry.expr))
    return entries + derived
