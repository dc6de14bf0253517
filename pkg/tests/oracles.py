"""Independent reference implementations used to freeze expected values.

Nothing here imports package arithmetic. Field elements are handled as
coefficient tuples (lowest degree first) over a prime field, reduced modulo
the same defining polynomial the package uses, and converted to and from the
package's exponent encoding through a table built by repeated
multiplication by x.
"""

from __future__ import annotations

import itertools
from functools import cached_property

# modulus coefficients are ascending (constant term first) and monic, as in the package header
Poly = tuple[int, ...]


class PolyField:
    """F_{p^d} as polynomials over F_p modulo a primitive ``modulus``."""

    def __init__(self, p: int, modulus):
        self.p = p
        self.mod = [int(c) % p for c in modulus]
        assert self.mod[-1] == 1, "modulus must be monic"
        self.d = len(self.mod) - 1
        self.size = p**self.d

    def zero(self) -> Poly:
        return (0,) * self.d

    def one(self) -> Poly:
        return (1,) + (0,) * (self.d - 1)

    def add(self, a: Poly, b: Poly) -> Poly:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a: Poly) -> Poly:
        return tuple((-x) % self.p for x in a)

    def scale(self, c: int, a: Poly) -> Poly:
        return tuple((c * x) % self.p for x in a)

    def mul(self, a: Poly, b: Poly) -> Poly:
        prod = [0] * (2 * self.d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        # x^d = -(mod[0] + mod[1] x + ... + mod[d-1] x^(d-1))
        for deg in range(len(prod) - 1, self.d - 1, -1):
            c = prod[deg]
            if c:
                prod[deg] = 0
                for t in range(self.d):
                    prod[deg - self.d + t] = (prod[deg - self.d + t] - c * self.mod[t]) % self.p
        return tuple(prod[: self.d])

    def power(self, a: Poly, e: int) -> Poly:
        out = self.one()
        for _ in range(e):
            out = self.mul(out, a)
        return out

    @cached_property
    def antilog(self) -> list[Poly]:
        if self.d == 1:
            g = ((-self.mod[0]) % self.p,)  # the root of x + mod[0]
        else:
            g = (0, 1) + (0,) * (self.d - 2)
        out = [self.one()]
        for _ in range(self.size - 2):
            out.append(self.mul(out[-1], g))
        return out

    @cached_property
    def log(self) -> dict[Poly, int]:
        table = {v: i for i, v in enumerate(self.antilog)}
        assert len(table) == self.size - 1, "modulus is not primitive"
        return table

    def to_poly(self, a: int) -> Poly:
        return self.zero() if a == -1 else self.antilog[a]

    def from_poly(self, v: Poly) -> int:
        return -1 if not any(v) else self.log[tuple(v)]

    def add_exp(self, a: int, b: int) -> int:
        return self.from_poly(self.add(self.to_poly(a), self.to_poly(b)))

    def mul_exp(self, a: int, b: int) -> int:
        return self.from_poly(self.mul(self.to_poly(a), self.to_poly(b)))

    def elements(self) -> list[int]:
        return [-1] + list(range(self.size - 1))

    def subfield(self, q: int) -> list[int]:
        """Elements with ``a^q = a``."""
        return [a for a in self.elements() if self.power(self.to_poly(a), q) == self.to_poly(a)]


# -- linear algebra over a prime field -------------------------------------------


def rank_mod_p(rows, p: int) -> int:
    A = [list(r) for r in rows]
    if not A:
        return 0
    rk, ncols = 0, len(A[0])
    for c in range(ncols):
        piv = next((i for i in range(rk, len(A)) if A[i][c] % p), None)
        if piv is None:
            continue
        A[rk], A[piv] = A[piv], A[rk]
        inv = pow(A[rk][c], p - 2, p)
        A[rk] = [x * inv % p for x in A[rk]]
        for i in range(len(A)):
            if i != rk and A[i][c] % p:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[rk])]
        rk += 1
    return rk


def fq_rank_prime(F: PolyField, vector) -> int:
    """F_p-dimension of the span of the entries of ``vector`` (q = p, coordinates = poly coefficients)."""
    return rank_mod_p([F.to_poly(a) for a in vector], F.p)


def rank_ext(F: PolyField, rows) -> int:
    """Rank over F_{p^d} of a matrix in exponent encoding (schoolbook elimination)."""
    A = [[F.to_poly(a) for a in r] for r in rows]
    if not A:
        return 0
    zero = F.zero()
    rk, ncols = 0, len(A[0])
    for c in range(ncols):
        piv = next((i for i in range(rk, len(A)) if A[i][c] != zero), None)
        if piv is None:
            continue
        A[rk], A[piv] = A[piv], A[rk]
        inv = F.to_poly((F.size - 1 - F.from_poly(A[rk][c])) % (F.size - 1))
        A[rk] = [F.mul(inv, x) for x in A[rk]]
        for i in range(len(A)):
            if i != rk and A[i][c] != zero:
                f = A[i][c]
                A[i] = [F.add(x, F.neg(F.mul(f, y))) for x, y in zip(A[i], A[rk])]
        rk += 1
    return rk


# -- codes ---------------------------------------------------------------------


def codewords(F: PolyField, G) -> list[tuple[int, ...]]:
    """All codewords ``u G`` computed with polynomial arithmetic."""
    k, n = len(G), len(G[0])
    out = []
    for msg in itertools.product(F.elements(), repeat=k):
        word = []
        for j in range(n):
            acc = F.zero()
            for i in range(k):
                acc = F.add(acc, F.mul(F.to_poly(msg[i]), F.to_poly(G[i][j])))
            word.append(F.from_poly(acc))
        out.append(tuple(word))
    return out


def gl_matrices(F: PolyField, q: int, n: int):
    """Every invertible ``n x n`` matrix with entries in F_q (exponent encoding)."""
    sub = F.subfield(q)
    for flat in itertools.product(sub, repeat=n * n):
        M = [flat[i * n : (i + 1) * n] for i in range(n)]
        if rank_ext(F, M) == n:
            yield M


def min_distance_via_gl(F: PolyField, q: int, G) -> int:
    """``min over c != 0 and M in GL_n(F_q)`` of the Hamming weight of ``c M``."""
    n = len(G[0])
    words = [c for c in codewords(F, G) if any(x != -1 for x in c)]
    mats = list(gl_matrices(F, q, n))
    best = n
    for c in words:
        cp = [F.to_poly(x) for x in c]
        for M in mats:
            wt = 0
            for j in range(n):
                acc = F.zero()
                for i in range(n):
                    acc = F.add(acc, F.mul(cp[i], F.to_poly(M[i][j])))
                wt += any(acc)
            best = min(best, wt)
    return best


def grw_bruteforce(F: PolyField, G, r: int) -> int:
    """``d_r`` over a prime base field by listing every r-dimensional subcode as a set.

    The support of a subcode is the F_p-span of the coordinate columns of all
    its codewords; its dimension is the rank of the stacked coefficient rows.
    """
    p = F.p
    words = codewords(F, G)
    zero = tuple([-1] * len(G[0]))
    subcodes = {frozenset([zero])}
    for _ in range(r):
        bigger = set()
        for S in subcodes:
            for w in words:
                if w in S:
                    continue
                span = set()
                for a in F.elements():
                    for s in S:
                        span.add(tuple(F.add_exp(x, F.mul_exp(a, y)) for x, y in zip(s, w)))
                bigger.add(frozenset(span))
        subcodes = bigger
    best = len(G[0])
    for S in subcodes:
        # row i of the m x n matrix of a word lists coefficient i of every coordinate
        rows = []
        for w in S:
            polys = [F.to_poly(x) for x in w]
            rows.extend([tuple(pp[i] for pp in polys) for i in range(F.d)])
        best = min(best, rank_mod_p(rows, p))
    return best


# -- subspace counts -------------------------------------------------------------


def count_subspaces(F: PolyField, q: int, n: int, r: int) -> int:
    """Number of r-dimensional F_q-subspaces of F_q^n, grown one vector at a time as sets."""
    return len(subspaces_as_sets(F, q, n, r))


def subspaces_as_sets(F: PolyField, q: int, n: int, r: int) -> set[frozenset]:
    sub = F.subfield(q)
    vectors = list(itertools.product(sub, repeat=n))
    zero = tuple([-1] * n)
    spaces = {frozenset([zero])}
    for _ in range(r):
        bigger = set()
        for S in spaces:
            for v in vectors:
                if v in S:
                    continue
                bigger.add(frozenset(
                    tuple(F.add_exp(x, F.mul_exp(a, y)) for x, y in zip(s, v)) for s in S for a in sub
                ))
        spaces = bigger
    return spaces


def binary_subspaces(n: int, r: int) -> set[frozenset[int]]:
    """r-dimensional subspaces of F_2^n as sets of bitmask vectors.

    Over F_2 the span of ``S`` and ``v`` is ``S ∪ (S xor v)``.
    """
    spaces = {frozenset([0])}
    for _ in range(r):
        spaces = {S | frozenset(s ^ v for s in S) for S in spaces for v in range(1 << n) if v not in S}
    return spaces
