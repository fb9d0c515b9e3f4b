"""Finite unital rings: representation, constructions and axiom validation.

Every ring has elements ``0 .. order-1`` and vectorized ``add``/``neg``/``mul``
that accept ints or numpy index arrays (broadcasting like ufuncs). Rings up to
``settings.dense_cap`` carry dense Cayley tables; larger structured rings
compute products from their tuple encoding.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .config import settings
from .errors import CapacityError, InvalidParameter

INDEX = np.int32


def _chunk_rows(total: int, width: int) -> Iterable[slice]:
    step = max(1, settings.chunk // max(1, width))
    for lo in range(0, total, step):
        yield slice(lo, min(total, lo + step))


def cached(fn):
    """Memoize ``fn(ring, *args)`` on the ring itself.

    Rings are immutable, so the cache is write-once per key; concurrent
    writers store equal values.
    """
    key = fn.__module__ + "." + fn.__qualname__

    @functools.wraps(fn)
    def wrapper(ring, *args):
        k = (key, args)
        try:
            return ring._memo[k]
        except KeyError:
            pass
        value = fn(ring, *args)
        if isinstance(value, np.ndarray):
            value.flags.writeable = False
        ring._memo[k] = value
        return value

    return wrapper


class FiniteRing:
    """A finite unital ring on the element indices ``0 .. order-1``."""

    def __init__(self, order: int, zero: int, one: int, label: str):
        self.order = int(order)
        self.zero = int(zero)
        self.one = int(one)
        self.label = label
        self._add_t: np.ndarray | None = None
        self._neg_t: np.ndarray | None = None
        self._mul_t: np.ndarray | None = None
        self._memo: dict = {}

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label} order={self.order}>"

    @property
    def repr_kind(self) -> str:
        return "dense-table" if self._mul_t is not None else "structured"

    # -- arithmetic -------------------------------------------------------
    def add(self, a, b):
        if self._add_t is not None:
            return self._add_t[a, b]
        return self._struct_op(self._add, a, b)

    def mul(self, a, b):
        if self._mul_t is not None:
            return self._mul_t[a, b]
        return self._struct_op(self._mul, a, b)

    def neg(self, a):
        if self._neg_t is not None:
            return self._neg_t[a]
        out = np.asarray(self._neg(np.asarray(a, dtype=np.int64)))
        return out[()] if out.ndim == 0 else out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    @staticmethod
    def _struct_op(op, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        out = np.asarray(op(a, b))
        return out[()] if out.ndim == 0 else out

    def _direct_tables(self):
        """Optional (add, mul) tables assembled from component tables; None = generic path."""
        return None

    def _add(self, a, b):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    # -- conveniences -----------------------------------------------------
    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def element(self, index: int) -> RingElement:
        return RingElement(self, index)

    def format(self, a: int) -> str:
        return str(int(a))

    def describe(self) -> dict:
        return {"label": self.label, "order": self.order, "repr_kind": self.repr_kind}

    def tabulate(self, cap: int | None = None) -> FiniteRing:
        """Materialize dense tables in place when ``order <= cap``."""
        cap = settings.dense_cap if cap is None else cap
        if self._mul_t is not None or self.order > cap:
            return self
        n = self.order
        fast = self._direct_tables()
        if fast is not None:
            add_t, mul_t = fast
        else:
            add_t = np.empty((n, n), dtype=INDEX)
            mul_t = np.empty((n, n), dtype=INDEX)
            cols = np.arange(n, dtype=np.int64)[None, :]
            for rows in _chunk_rows(n, n * 8):
                a = np.arange(rows.start, rows.stop, dtype=np.int64)[:, None]
                add_t[rows] = self._struct_op(self._add, a, cols)
                mul_t[rows] = self._struct_op(self._mul, a, cols)
        neg_t = np.asarray(self._neg(np.arange(n, dtype=np.int64)), dtype=INDEX)
        for t in (add_t, mul_t, neg_t):
            t.flags.writeable = False
        self._add_t, self._mul_t, self._neg_t = add_t, mul_t, neg_t
        return self


@dataclass(frozen=True, eq=True)
class RingElement:
    """An element of a specific ring, with operator arithmetic."""

    ring: FiniteRing
    index: int

    def __post_init__(self):
        index = int(self.index)
        if not 0 <= index < self.ring.order:
            raise InvalidParameter(f"index {index} out of range for {self.ring.label}", index)
        object.__setattr__(self, "index", index)

    def _same(self, other: RingElement) -> None:
        if not isinstance(other, RingElement) or other.ring is not self.ring:
            raise InvalidParameter("elements belong to different rings", (self, other))

    def __add__(self, other: RingElement) -> RingElement:
        self._same(other)
        return RingElement(self.ring, self.ring.add(self.index, other.index))

    def __sub__(self, other: RingElement) -> RingElement:
        self._same(other)
        return RingElement(self.ring, self.ring.sub(self.index, other.index))

    def __mul__(self, other: RingElement) -> RingElement:
        self._same(other)
        return RingElement(self.ring, self.ring.mul(self.index, other.index))

    def __neg__(self) -> RingElement:
        return RingElement(self.ring, self.ring.neg(self.index))

    def __int__(self) -> int:
        return self.index

    def __repr__(self) -> str:
        return f"{self.ring.label}[{self.index}]"


def as_index(ring: FiniteRing, a) -> int:
    """Accept a RingElement of ``ring`` or a bare index."""
    if isinstance(a, RingElement):
        if a.ring is not ring:
            raise InvalidParameter("element belongs to a different ring", a)
        return a.index
    a = int(a)
    if not 0 <= a < ring.order:
        raise InvalidParameter(f"index {a} out of range for {ring.label}", a)
    return a


# -- table-backed rings ---------------------------------------------------

class TableRing(FiniteRing):
    """A ring given directly by Cayley tables (subrings, quotients, corners)."""

    def __init__(self, add_t, neg_t, mul_t, zero: int, one: int, label: str):
        super().__init__(len(neg_t), zero, one, label)
        self._add_t = np.asarray(add_t, dtype=INDEX)
        self._neg_t = np.asarray(neg_t, dtype=INDEX)
        self._mul_t = np.asarray(mul_t, dtype=INDEX)
        for t in (self._add_t, self._neg_t, self._mul_t):
            t.flags.writeable = False


class SubRing(TableRing):
    """A subset of ``parent`` closed under the ring operations, with its own identity.

    ``inclusion[i]`` is the parent index of element ``i``; members are listed in
    increasing parent order.
    """

    def __init__(self, parent: FiniteRing, members: np.ndarray, one: int, label: str):
        members = np.asarray(members, dtype=np.int64)
        position = np.full(parent.order, -1, dtype=np.int64)
        position[members] = np.arange(len(members))
        grid_a, grid_b = members[:, None], members[None, :]
        add_t = position[parent.add(grid_a, grid_b)]
        mul_t = position[parent.mul(grid_a, grid_b)]
        neg_t = position[parent.neg(members)]
        if (add_t < 0).any() or (mul_t < 0).any() or (neg_t < 0).any():
            raise InvalidParameter(f"{label}: subset is not closed under the ring operations")
        super().__init__(add_t, neg_t, mul_t, position[parent.zero], position[one], label)
        self.parent = parent
        self.inclusion = members
        self.inclusion.flags.writeable = False
        self._position = position

    def locate(self, parent_index: int) -> int:
        """Index of a parent element inside this subring (raises if absent)."""
        i = int(self._position[int(parent_index)])
        if i < 0:
            raise InvalidParameter(f"{parent_index} is not in {self.label}", parent_index)
        return i

    def format(self, a: int) -> str:
        return self.parent.format(self.inclusion[int(a)])


class QuotientRing(TableRing):
    """Cosets of a two-sided ideal; each coset is named by its least member."""

    def __init__(self, parent: FiniteRing, ideal_members: np.ndarray, label: str):
        ideal_members = np.asarray(ideal_members, dtype=np.int64)
        xs = parent.elements()
        rep = np.empty(parent.order, dtype=np.int64)
        for rows in _chunk_rows(parent.order, len(ideal_members)):
            rep[rows] = parent.add(xs[rows, None], ideal_members[None, :]).min(axis=1)
        reps = np.unique(rep)
        position = np.full(parent.order, -1, dtype=np.int64)
        position[reps] = np.arange(len(reps))
        qmap = position[rep]
        grid_a, grid_b = reps[:, None], reps[None, :]
        add_t = qmap[parent.add(grid_a, grid_b)]
        mul_t = qmap[parent.mul(grid_a, grid_b)]
        neg_t = qmap[parent.neg(reps)]
        super().__init__(add_t, neg_t, mul_t, qmap[parent.zero], qmap[parent.one], label)
        self.parent = parent
        self.representatives = reps
        self.quotient_map = qmap
        for t in (reps, qmap):
            t.flags.writeable = False

    def format(self, a: int) -> str:
        return self.parent.format(self.representatives[int(a)]) + "+I"


# -- tuple-encoded rings --------------------------------------------------

class TupleRing(FiniteRing):
    """Elements are mixed-radix tuples; the first digit is most significant."""

    def __init__(self, radices: Sequence[int], zero_digits, one_digits, label: str):
        self.radices = np.asarray(radices, dtype=np.int64)
        places = np.ones(len(radices), dtype=np.int64)
        for j in range(len(radices) - 2, -1, -1):
            places[j] = places[j + 1] * self.radices[j + 1]
        self.places = places
        order = int(np.prod(self.radices)) if len(radices) else 1
        if order > settings.structured_cap:
            raise CapacityError(f"{label}: order {order} exceeds structured cap {settings.structured_cap}")
        super().__init__(order, self.encode(zero_digits), self.encode(one_digits), label)

    def decode(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        return (idx[..., None] // self.places) % self.radices

    def encode(self, digits) -> int | np.ndarray:
        digits = np.asarray(digits, dtype=np.int64)
        out = (digits * self.places).sum(axis=-1)
        return int(out) if out.ndim == 0 else out

    def _add(self, a, b):
        return self.encode(self._add_digits(self.decode(a), self.decode(b)))

    def _mul(self, a, b):
        return self.encode(self._mul_digits(self.decode(a), self.decode(b)))

    def _neg(self, a):
        return self.encode(self._neg_digits(self.decode(a)))


class CyclicRing(FiniteRing):
    def __init__(self, n: int):
        super().__init__(n, 0, 1 % n, f"Zn({n})")
        self.n = n

    def _add(self, a, b):
        return (a + b) % self.n

    def _mul(self, a, b):
        return (a * b) % self.n

    def _neg(self, a):
        return (-a) % self.n


def format_poly(coeffs_high_first: Sequence[int]) -> str:
    """Render a coefficient list (highest degree first) like ``x^2+x+1``."""
    deg = len(coeffs_high_first) - 1
    terms = []
    for i, c in enumerate(coeffs_high_first):
        c = int(c)
        if c == 0:
            continue
        d = deg - i
        mono = "" if d == 0 else ("x" if d == 1 else f"x^{d}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


def _poly_divmod_mod_p(num: list[int], den: list[int], p: int) -> list[int]:
    """Remainder of num / den over Z_p; both lists low-degree first, den monic."""
    num = [c % p for c in num]
    dd = len(den) - 1
    for d in range(len(num) - 1, dd - 1, -1):
        c = num[d]
        if c:
            for i, m in enumerate(den):
                num[d - dd + i] = (num[d - dd + i] - c * m) % p
    return num[:dd]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def find_factor(p: int, modulus_high_first: Sequence[int]) -> list[int] | None:
    """Exhaustive search for a monic proper factor; returns it high-first or None."""
    k = len(modulus_high_first) - 1
    low = [int(c) % p for c in reversed(modulus_high_first)]
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            cand = list(reversed(tail)) + [1]  # low-first, monic
            if not any(_poly_divmod_mod_p(low, cand, p)):
                return list(reversed(cand))
    return None


def default_modulus(p: int, k: int) -> list[int]:
    """Least (lexicographically) monic irreducible polynomial of degree k."""
    for tail in itertools.product(range(p), repeat=k):
        cand = [1, *tail]
        if k == 1 or (cand[-1] != 0 and find_factor(p, cand) is None):
            return cand
    raise InvalidParameter(f"no irreducible polynomial of degree {k} over Z_{p}")


class GaloisField(TupleRing):
    """GF(p^k) as polynomial residues; digits are coefficients, highest degree first."""

    def __init__(self, p: int, k: int, modulus_high_first: Sequence[int], label: str):
        self.p, self.k = p, k
        self.modulus = [int(c) % p for c in modulus_high_first]
        self._mod_low = np.asarray(list(reversed(self.modulus)), dtype=np.int64)
        one = [0] * (k - 1) + [1]
        super().__init__([p] * k, [0] * k, one, label)

    def _add_digits(self, A, B):
        return (A + B) % self.p

    def _neg_digits(self, A):
        return (-A) % self.p

    def _mul_digits(self, A, B):
        p, k = self.p, self.k
        a, b = A[..., ::-1], B[..., ::-1]  # low-first
        prod = np.zeros(a.shape[:-1] + (2 * k - 1,), dtype=np.int64)
        for i in range(k):
            prod[..., i:i + k] += a[..., i:i + 1] * b
        prod %= p
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[..., d:d + 1]
            prod[..., d - k:d + 1] = (prod[..., d - k:d + 1] - c * self._mod_low) % p
        return prod[..., :k][..., ::-1]

    def format(self, a: int) -> str:
        return format_poly(self.decode(a).tolist())


class ProductRing(TupleRing):
    """Componentwise ring; ``project`` / ``inject`` expose the factor maps."""

    def __init__(self, factors: Sequence[FiniteRing], label: str):
        self.factors = tuple(factors)
        super().__init__([f.order for f in factors], [f.zero for f in factors],
                         [f.one for f in factors], label)

    def _apply(self, op, A, B=None):
        out = np.empty_like(A)
        for j, f in enumerate(self.factors):
            if B is None:
                out[..., j] = getattr(f, op)(A[..., j])
            else:
                out[..., j] = getattr(f, op)(A[..., j], B[..., j])
        return out

    def _add_digits(self, A, B):
        return self._apply("add", A, B)

    def _mul_digits(self, A, B):
        return self._apply("mul", A, B)

    def _neg_digits(self, A):
        return self._apply("neg", A)

    def project(self, i: int, a):
        return self.decode(a)[..., i]

    def inject(self, i: int, x) -> int:
        digits = [f.zero for f in self.factors]
        digits[i] = int(x)
        return self.encode(digits)

    def format(self, a: int) -> str:
        parts = self.decode(a).tolist()
        return "(" + ",".join(f.format(x) for f, x in zip(self.factors, parts)) + ")"


def matmul_digits(base: FiniteRing, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Matrix product over ``base`` of index arrays shaped (..., n, k) and (..., k, m)."""
    terms = base.mul(A[..., :, :, None], B[..., None, :, :])
    terms = np.asarray(terms, dtype=np.int64)
    acc = terms[..., 0, :]
    for l in range(1, terms.shape[-2]):
        acc = np.asarray(base.add(acc, terms[..., l, :]), dtype=np.int64)
    return acc


class MatrixRing(TupleRing):
    """M_n(base); digits are the entries in row-major order."""

    def __init__(self, n: int, base: FiniteRing, label: str):
        self.n, self.base = n, base
        zero = [base.zero] * (n * n)
        one = [base.one if i == j else base.zero for i in range(n) for j in range(n)]
        super().__init__([base.order] * (n * n), zero, one, label)

    def to_matrix(self, idx) -> np.ndarray:
        d = self.decode(idx)
        return d.reshape(d.shape[:-1] + (self.n, self.n))

    def from_matrix(self, mat) -> int | np.ndarray:
        mat = np.asarray(mat, dtype=np.int64)
        return self.encode(mat.reshape(mat.shape[:-2] + (self.n * self.n,)))

    def _add_digits(self, A, B):
        return np.asarray(self.base.add(A, B), dtype=np.int64)

    def _neg_digits(self, A):
        return np.asarray(self.base.neg(A), dtype=np.int64)

    def _mul_digits(self, A, B):
        n = self.n
        shape = A.shape[:-1] + (n, n)
        C = matmul_digits(self.base, A.reshape(shape), B.reshape(shape))
        return C.reshape(A.shape)

    def format(self, a: int) -> str:
        m = self.to_matrix(a).tolist()
        return "[" + ",".join("[" + ",".join(self.base.format(x) for x in row) + "]" for row in m) + "]"


class UpperTriangularRing(TupleRing):
    """T_n(base); digits are the entries on or above the diagonal, row-major."""

    def __init__(self, n: int, base: FiniteRing, label: str):
        self.n, self.base = n, base
        self.positions = [(i, j) for i in range(n) for j in range(i, n)]
        rows = np.array([p[0] for p in self.positions])
        cols = np.array([p[1] for p in self.positions])
        self._rows, self._cols = rows, cols
        zero = [base.zero] * len(self.positions)
        one = [base.one if i == j else base.zero for i, j in self.positions]
        super().__init__([base.order] * len(self.positions), zero, one, label)

    def to_matrix(self, idx) -> np.ndarray:
        d = self.decode(idx)
        mat = np.full(d.shape[:-1] + (self.n, self.n), self.base.zero, dtype=np.int64)
        mat[..., self._rows, self._cols] = d
        return mat

    def from_matrix(self, mat) -> int | np.ndarray:
        mat = np.asarray(mat, dtype=np.int64)
        return self.encode(mat[..., self._rows, self._cols])

    def _add_digits(self, A, B):
        return np.asarray(self.base.add(A, B), dtype=np.int64)

    def _neg_digits(self, A):
        return np.asarray(self.base.neg(A), dtype=np.int64)

    def _mul_digits(self, A, B):
        n, z = self.n, self.base.zero
        shape = A.shape[:-1] + (n, n)
        MA = np.full(shape, z, dtype=np.int64)
        MB = np.full(shape, z, dtype=np.int64)
        MA[..., self._rows, self._cols] = A
        MB[..., self._rows, self._cols] = B
        return matmul_digits(self.base, MA, MB)[..., self._rows, self._cols]

    def format(self, a: int) -> str:
        m = self.to_matrix(a).tolist()
        return "[" + ",".join("[" + ",".join(self.base.format(x) for x in row) + "]" for row in m) + "]"


# -- subset ideals --------------------------------------------------------

SIDES = ("left", "right", "two-sided")


@dataclass(frozen=True, eq=False)
class SubsetIdeal:
    """A set of element indices verified to be a one- or two-sided ideal."""

    ring: FiniteRing
    members: tuple[int, ...]
    sidedness: str = "two-sided"

    def __post_init__(self):
        if self.sidedness not in SIDES:
            raise InvalidParameter(f"unknown sidedness {self.sidedness!r}")
        members = tuple(sorted({int(m) for m in self.members}))
        object.__setattr__(self, "members", members)
        failure = ideal_closure_failure(self.ring, members, self.sidedness)
        if failure is not None:
            raise InvalidParameter(f"not a {self.sidedness} ideal of {self.ring.label}: {failure[0]}",
                                   failure)

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.ring.order, dtype=bool)
        m[list(self.members)] = True
        return m

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.members, dtype=np.int64)

    def __contains__(self, a) -> bool:
        return int(a) in set(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other) -> bool:
        return (isinstance(other, SubsetIdeal) and other.ring is self.ring
                and other.members == self.members)

    def __hash__(self) -> int:
        return hash((id(self.ring), self.members))


def ideal_closure_failure(ring: FiniteRing, members: Sequence[int], sidedness: str):
    """First closure violation as ``(condition, witness)``, or None."""
    if not members:
        return ("empty", ())
    I = np.asarray(members, dtype=np.int64)
    mask = np.zeros(ring.order, dtype=bool)
    mask[I] = True
    if not mask[ring.zero]:
        return ("missing zero", (ring.zero,))
    neg = ring.neg(I)
    bad = np.flatnonzero(~mask[neg])
    if len(bad):
        return ("not closed under negation", (int(I[bad[0]]),))
    sums = ring.add(I[:, None], I[None, :])
    bad = np.argwhere(~mask[sums])
    if len(bad):
        i, j = bad[0]
        return ("not closed under addition", (int(I[i]), int(I[j])))
    xs = ring.elements()
    if sidedness in ("right", "two-sided"):
        for rows in _chunk_rows(len(I), ring.order):
            prod = ring.mul(I[rows, None], xs[None, :])
            bad = np.argwhere(~mask[prod])
            if len(bad):
                i, r = bad[0]
                return ("does not absorb right multiplication", (int(I[rows][i]), int(r)))
    if sidedness in ("left", "two-sided"):
        for rows in _chunk_rows(len(I), ring.order):
            prod = ring.mul(xs[None, :], I[rows, None])
            bad = np.argwhere(~mask[prod])
            if len(bad):
                i, r = bad[0]
                return ("does not absorb left multiplication", (int(r), int(I[rows][i])))
    return None


def additive_closure(ring: FiniteRing, generators: Iterable[int]) -> np.ndarray:
    """Sorted members of the additive subgroup generated by ``generators``."""
    members = np.array([ring.zero], dtype=np.int64)
    mask = np.zeros(ring.order, dtype=bool)
    mask[ring.zero] = True
    for g in np.unique(np.asarray(list(generators) if not isinstance(generators, np.ndarray)
                                  else generators, dtype=np.int64)):
        if mask[g]:
            continue
        cyc = [ring.zero]
        x = int(g)
        while x != ring.zero:
            cyc.append(x)
            x = int(ring.add(x, g))
        members = np.unique(ring.add(members[:, None], np.asarray(cyc)[None, :]))
        mask[:] = False
        mask[members] = True
    return members


def subgroup_sum(ring: FiniteRing, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """The set A + B for additive subgroups A, B (which is again a subgroup)."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    return np.unique(ring.add(A[:, None], B[None, :]))


# -- constructions --------------------------------------------------------

def _finish(ring: FiniteRing, dense_cap: int | None) -> FiniteRing:
    return ring.tabulate(dense_cap)


def build_cyclic(n: int, dense_cap: int | None = None) -> FiniteRing:
    """Z_n, the integers mod n (n = 1 gives the zero ring)."""
    if int(n) < 1:
        raise InvalidParameter(f"Zn needs n >= 1, got {n}", n)
    return _finish(CyclicRing(int(n)), dense_cap)


def field_label(p: int, k: int, modulus: Sequence[int]) -> str:
    if list(modulus) == default_modulus(p, k):
        return f"GF({p})" if k == 1 else f"GF({p},{k})"
    return f"GF({p},{k},{format_poly(modulus)})"


def build_field(p: int, k: int = 1, modulus: Sequence[int] | None = None,
                dense_cap: int | None = None) -> FiniteRing:
    """GF(p^k) modulo a monic irreducible ``modulus`` (coefficients, highest first)."""
    p, k = int(p), int(k)
    if not _is_prime(p):
        raise InvalidParameter(f"{p} is not prime", p)
    if k < 1:
        raise InvalidParameter(f"field degree must be >= 1, got {k}", k)
    if modulus is None:
        modulus = default_modulus(p, k)
    modulus = [int(c) % p for c in modulus]
    if len(modulus) != k + 1 or modulus[0] != 1:
        raise InvalidParameter(f"modulus must be monic of degree {k}: {format_poly(modulus)}", modulus)
    factor = find_factor(p, modulus)
    if factor is not None:
        raise InvalidParameter(
            f"{format_poly(modulus)} is reducible over Z_{p}: divisible by {format_poly(factor)}", factor)
    return _finish(GaloisField(p, k, modulus, field_label(p, k, modulus)), dense_cap)


def build_product(factors: Sequence[FiniteRing], dense_cap: int | None = None) -> FiniteRing:
    """Direct product; a single factor is returned unchanged."""
    factors = list(factors)
    if not factors:
        raise InvalidParameter("product needs at least one factor")
    if len(factors) == 1:
        return factors[0]
    label = "Prod(" + ",".join(f.label for f in factors) + ")"
    return _finish(ProductRing(factors, label), dense_cap)


def build_matrix_ring(n: int, base: FiniteRing, dense_cap: int | None = None) -> FiniteRing:
    if int(n) < 1:
        raise InvalidParameter(f"matrix size must be >= 1, got {n}", n)
    n = int(n)
    _check_budget(base.order, n * n, f"M({n},{base.label})")
    return _finish(MatrixRing(n, base, f"M({n},{base.label})"), dense_cap)


def build_upper_triangular(n: int, base: FiniteRing, dense_cap: int | None = None) -> FiniteRing:
    if int(n) < 1:
        raise InvalidParameter(f"matrix size must be >= 1, got {n}", n)
    n = int(n)
    _check_budget(base.order, n * (n + 1) // 2, f"T({n},{base.label})")
    return _finish(UpperTriangularRing(n, base, f"T({n},{base.label})"), dense_cap)


def _check_budget(base_order: int, entries: int, label: str) -> None:
    if base_order ** entries > settings.structured_cap:
        raise CapacityError(f"{label}: order {base_order}^{entries} exceeds structured cap "
                            f"{settings.structured_cap}")


def build_quotient(base: FiniteRing, ideal, label: str | None = None) -> QuotientRing:
    """R/I for a two-sided ideal given as a SubsetIdeal or an iterable of indices."""
    if isinstance(ideal, SubsetIdeal):
        if ideal.ring is not base:
            raise InvalidParameter("ideal belongs to a different ring")
        if ideal.sidedness != "two-sided":
            failure = ideal_closure_failure(base, ideal.members, "two-sided")
            if failure is not None:
                raise InvalidParameter(f"not a two-sided ideal: {failure[0]}", failure)
        members = ideal.members
    else:
        members = tuple(sorted({int(m) for m in ideal}))
        failure = ideal_closure_failure(base, members, "two-sided")
        if failure is not None:
            raise InvalidParameter(f"not a two-sided ideal of {base.label}: {failure[0]}", failure)
    if label is None:
        label = f"Quot({base.label},{{{','.join(str(m) for m in members)}}})"
    return QuotientRing(base, np.asarray(members), label)


def corner_members(base: FiniteRing, e: int) -> np.ndarray:
    xs = base.elements()
    return np.unique(base.mul(base.mul(e, xs), e))


def build_corner(base: FiniteRing, e, label: str | None = None) -> SubRing:
    """eRe with identity e."""
    e = as_index(base, e)
    if int(base.mul(e, e)) != e:
        raise InvalidParameter(f"{e} is not idempotent in {base.label}", e)
    return SubRing(base, corner_members(base, e), e, label or f"Corner({base.label},{e})")


def center(base: FiniteRing, label: str | None = None) -> SubRing:
    """The subring of elements commuting with everything."""
    xs = base.elements()
    keep = np.ones(base.order, dtype=bool)
    for rows in _chunk_rows(base.order, base.order):
        a = xs[rows, None]
        keep[rows] = (base.mul(a, xs[None, :]) == base.mul(xs[None, :], a)).all(axis=1)
    return SubRing(base, np.flatnonzero(keep), base.one, label or f"Center({base.label})")


# -- axiom validation -----------------------------------------------------

def validate_ring(ring: FiniteRing, *, exhaustive: bool | None = None,
                  samples: int | None = None, seed: int = 0) -> dict:
    """Check the unital-ring axioms; raises InvalidParameter with a witness on failure.

    Exhaustive on every triple when ``exhaustive`` (default: order up to
    ``settings.exhaustive_limit``), otherwise on ``samples`` random triples.
    """
    n = ring.order
    if exhaustive is None:
        exhaustive = n <= settings.exhaustive_limit
    if (ring.zero == ring.one) != (n == 1):
        raise InvalidParameter(f"{ring.label}: zero == one in a nonzero ring", (ring.zero, ring.one))
    xs = ring.elements()

    def fail(name, *w):
        raise InvalidParameter(f"{ring.label}: {name} fails", tuple(int(v) for v in w))

    # pairwise laws are cheap enough to run on every pair
    for rows in _chunk_rows(n, n):
        a = xs[rows, None]
        b = xs[None, :]
        bad = np.argwhere(ring.add(a, b) != ring.add(b, a))
        if len(bad):
            fail("additive commutativity", xs[rows][bad[0][0]], bad[0][1])
    if (ring.add(xs, ring.zero) != xs).any():
        fail("additive identity", np.flatnonzero(ring.add(xs, ring.zero) != xs)[0])
    if (ring.add(xs, ring.neg(xs)) != ring.zero).any():
        fail("additive inverse", np.flatnonzero(ring.add(xs, ring.neg(xs)) != ring.zero)[0])
    if (ring.mul(xs, ring.one) != xs).any() or (ring.mul(ring.one, xs) != xs).any():
        bad = np.flatnonzero((ring.mul(xs, ring.one) != xs) | (ring.mul(ring.one, xs) != xs))
        fail("multiplicative identity", bad[0])

    def triple_laws(a, b, c):
        ab = ring.mul(a, b)
        checks = [
            ("additive associativity", ring.add(ring.add(a, b), c) != ring.add(a, ring.add(b, c))),
            ("multiplicative associativity", ring.mul(ab, c) != ring.mul(a, ring.mul(b, c))),
            ("left distributivity", ring.mul(a, ring.add(b, c)) != ring.add(ab, ring.mul(a, c))),
            ("right distributivity",
             ring.mul(ring.add(a, b), c) != ring.add(ring.mul(a, c), ring.mul(b, c))),
        ]
        for name, bad in checks:
            if np.any(bad):
                return name, np.argwhere(np.atleast_1d(bad))[0]
        return None

    if exhaustive:
        for a in range(n):
            for rows in _chunk_rows(n, n):
                b = xs[rows, None]
                c = xs[None, :]
                hit = triple_laws(np.int64(a), b, c)
                if hit:
                    i, j = hit[1]
                    fail(hit[0], a, xs[rows][i], j)
        return {"mode": "exhaustive", "checked": n ** 3}
    samples = settings.sample_budget if samples is None else samples
    rng = np.random.default_rng(seed)
    a, b, c = (rng.integers(0, n, size=samples) for _ in range(3))
    hit = triple_laws(a, b, c)
    if hit:
        k = hit[1][0]
        fail(hit[0], a[k], b[k], c[k])
    return {"mode": "sampled", "checked": samples}
