"""Plain-Python reference rings and brute-force predicates.

Nothing here imports ringlab: elements are ordinary tuples/ints and every
predicate is a direct transcription of its definition, looped naively. Element
lists are generated in lexicographic order so position i corresponds to index i
of the matching ringlab construction.
"""

from __future__ import annotations

from itertools import product


class PlainRing:
    def __init__(self, elements, add, mul, zero, one, name=""):
        self.elements = list(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        self.add, self.mul, self.zero, self.one, self.name = add, mul, zero, one, name

    def __len__(self):
        return len(self.elements)

    def neg(self, a):
        return next(x for x in self.elements if self.add(a, x) == self.zero)

    def sub(self, a, b):
        return self.add(a, self.neg(b))


def zn(n):
    return PlainRing(range(n), lambda a, b: (a + b) % n, lambda a, b: (a * b) % n, 0, 1 % n, f"Z{n}")


def _matmul(A, B, n, p):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) % p for j in range(n))
                 for i in range(n))


def matrices(n, p):
    """M_n(Z_p), entries row-major, first entry most significant."""
    elems = [tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
             for flat in product(range(p), repeat=n * n)]
    add = lambda A, B: tuple(tuple((a + b) % p for a, b in zip(r, s)) for r, s in zip(A, B))
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    zero = tuple(tuple(0 for _ in range(n)) for _ in range(n))
    return PlainRing(elems, add, lambda A, B: _matmul(A, B, n, p), zero, ident, f"M{n}(Z{p})")


def upper(n, p):
    """T_n(Z_p), upper entries row-major, first entry most significant."""
    slots = [(i, j) for i in range(n) for j in range(i, n)]
    elems = []
    for flat in product(range(p), repeat=len(slots)):
        A = [[0] * n for _ in range(n)]
        for (i, j), v in zip(slots, flat):
            A[i][j] = v
        elems.append(tuple(map(tuple, A)))
    M = matrices(n, p)
    return PlainRing(elems, M.add, M.mul, M.zero, M.one, f"T{n}(Z{p})")


def direct_product(A, B):
    elems = [(a, b) for a in A.elements for b in B.elements]
    return PlainRing(elems, lambda x, y: (A.add(x[0], y[0]), B.add(x[1], y[1])),
                     lambda x, y: (A.mul(x[0], y[0]), B.mul(x[1], y[1])),
                     (A.zero, B.zero), (A.one, B.one), f"{A.name}x{B.name}")


def is_regular(R, a):
    return any(R.mul(R.mul(a, x), a) == a for x in R.elements)


def is_unit(R, a):
    return any(R.mul(a, x) == R.one and R.mul(x, a) == R.one for x in R.elements)


def idempotents(R):
    return [e for e in R.elements if R.mul(e, e) == e]


def vnl_witness(R):
    """Some a with a and 1-a both non-regular, or None."""
    for a in R.elements:
        if not is_regular(R, a) and not is_regular(R, R.sub(R.one, a)):
            return a
    return None


def is_vnl(R):
    return vnl_witness(R) is None


def jacobson(R):
    return [a for a in R.elements
            if all(is_unit(R, R.sub(R.one, R.mul(r, a))) for r in R.elements)]


def is_local(R):
    nonunits = [a for a in R.elements if not is_unit(R, a)]
    if len(R) == 1:
        return True
    s = set(nonunits)
    return all(R.add(a, b) in s for a in nonunits for b in nonunits)


def right_ideal(R, a):
    return {R.mul(a, x) for x in R.elements}


def additive_closure(R, gens):
    out = {R.zero}
    frontier = set(gens)
    while frontier:
        out |= frontier
        frontier = {R.add(a, b) for a in out for b in out} - out
    return out


def is_unimodular(R, row):
    gens = set()
    for a in row:
        gens |= right_ideal(R, a)
    return R.one in additive_closure(R, gens)


def n_vnl_witness(R, n):
    """A unimodular row of length n with no regular entry, or None."""
    nonreg = [a for a in R.elements if not is_regular(R, a)]
    for row in product(nonreg, repeat=n):
        if is_unimodular(R, row):
            return row
    return None


def two_sided_ideals(R):
    """Every two-sided ideal, by closing each subset generated from single elements and sums."""
    found = set()
    frontier = [frozenset({R.zero})]
    while frontier:
        nxt = []
        for I in frontier:
            if I in found:
                continue
            found.add(I)
            for a in R.elements:
                if a in I:
                    continue
                gens = set(I) | {R.mul(R.mul(x, a), y) for x in R.elements for y in R.elements}
                J = frozenset(additive_closure(R, gens))
                if J not in found:
                    nxt.append(J)
        frontier = nxt
    return found


def largest_regular_ideal(R):
    """Union-maximal ideal in which every a has x in the ideal with axa = a."""
    best = frozenset({R.zero})
    for I in two_sided_ideals(R):
        if all(any(R.mul(R.mul(a, x), a) == a for x in I) for a in I) and len(I) > len(best):
            best = I
    return best


def center(R):
    return [z for z in R.elements if all(R.mul(z, r) == R.mul(r, z) for r in R.elements)]


def zn_vnl_by_definition(n):
    reg = {a for a in range(n) if any((a * x * a - a) % n == 0 for x in range(n))}
    return all(a in reg or (1 - a) % n in reg for a in range(n))
