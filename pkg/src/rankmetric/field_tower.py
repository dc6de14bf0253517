"""Finite-field towers F_p ⊂ F_q ⊂ F_{q^m} in discrete-log representation.

An element of F_{q^m} is a plain ``int``: ``ZERO = -1`` stands for 0 and any
``i`` in ``range(q**m - 1)`` stands for ``g**i``, where ``g`` is a root of the
tower's primitive modulus. This is also the on-disk encoding of an element.

Multiplication is addition of exponents; addition goes through the Zech
table ``Z`` defined by ``g**Z[k] == 1 + g**k``. The base field F_q is never
built separately: it is the set ``{0} ∪ {g**i : (q**m - 1)/(q - 1) | i}``
inside the big field.

Vectorised variants (``vadd``, ``vmul``...) accept numpy integer arrays in the
same encoding. Dense ``size x size`` tables are used for small fields; note
the layout places the zero element in the *last* slot so that indexing a table
with ``-1`` hits it.
"""

from __future__ import annotations

import functools
from typing import Iterable, Sequence

import numpy as np

from . import limits
from .errors import (
    BadParameters,
    CoordinateNotInSubfield,
    FieldTooLarge,
    InverseOfZero,
    NoPolynomialInTable,
    NotABasis,
    NotPrime,
)

ZERO = -1
ONE = 0

DENSE_TABLE_BOUND = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` as ``(p, e)`` with ``q == p**e``; raise if not a prime power."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    p = prime_factors(q)[0]
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise NotPrime(f"{q} is not a prime power")
    return p, e


# -- polynomials over F_p: coefficient lists, ascending degree ---------------


def _poly_mulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    d = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # f is monic
    for top in range(len(prod) - 1, d - 1, -1):
        c = prod[top]
        if c:
            for j in range(d + 1):
                prod[top - d + j] = (prod[top - d + j] - c * f[j]) % p
    res = prod[:d] + [0] * (d - len(prod[:d]))
    return res


def _x_pow_mod(exp: int, f: Sequence[int], p: int) -> list[int]:
    d = len(f) - 1
    result = [1] + [0] * (d - 1)
    base = _poly_mulmod([0, 1], [1], f, p) if d == 1 else [0, 1] + [0] * (d - 2)
    while exp:
        if exp & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        exp >>= 1
    return result


def is_primitive_polynomial(f: Sequence[int], p: int) -> bool:
    """True iff the monic ``f`` (ascending coefficients) is primitive over F_p.

    A monic polynomial with non-zero constant term is primitive exactly when
    ``x`` has multiplicative order ``p**deg - 1`` modulo ``f``; reducible
    polynomials have a strictly smaller unit group, so this also certifies
    irreducibility.
    """
    d = len(f) - 1
    if d < 1 or f[-1] != 1 or f[0] % p == 0:
        return False
    order = p**d - 1
    one = [1] + [0] * (d - 1)
    if _x_pow_mod(order, f, p) != one:
        return False
    return all(_x_pow_mod(order // ell, f, p) != one for ell in prime_factors(order))


@functools.lru_cache(maxsize=None)
def smallest_primitive_polynomial(p: int, degree: int) -> tuple[int, ...]:
    """Lexicographically smallest monic primitive polynomial of ``degree`` over F_p.

    Candidates are ordered by their value at ``x = p`` (so the comparison is
    lexicographic from the leading coefficient down). Returned ascending.
    """
    for value in range(p**degree, 2 * p**degree):
        coeffs = []
        v = value
        for _ in range(degree + 1):
            coeffs.append(v % p)
            v //= p
        if is_primitive_polynomial(coeffs, p):
            return tuple(coeffs)
    raise NoPolynomialInTable(f"no primitive polynomial of degree {degree} over F_{p}")


class FieldTower:
    """The pair F_q ⊂ F_{q^m} with q = p**e; immutable after construction.

    Use :func:`make_tower` rather than calling this directly: it checks the
    parameters and interns towers so that equal towers are the same object.
    """

    def __init__(self, p: int, e: int, m: int, modulus: Sequence[int]):
        self.p = p
        self.e = e
        self.m = m
        self.q = p**e
        self.degree = e * m
        self.size = p**self.degree
        self.order = self.size - 1
        self.modulus = tuple(int(c) for c in modulus)
        self.subfield_step = self.order // (self.q - 1)
        self._build_tables()

    # -- construction -------------------------------------------------------

    def _build_tables(self) -> None:
        p, d, n = self.p, self.degree, self.order
        f = self.modulus
        antilog = np.empty(n, dtype=np.int64)
        log = np.full(self.size, ZERO, dtype=np.int64)
        if p == 2:
            f_int = sum(c << i for i, c in enumerate(f))
            top = 1 << d
            cur = 1
            for i in range(n):
                antilog[i] = cur
                cur <<= 1
                if cur & top:
                    cur ^= f_int
            back_to_one = cur == 1
        else:
            weights = [p**i for i in range(d)]
            cur = [1] + [0] * (d - 1)
            for i in range(n):
                antilog[i] = sum(c * w for c, w in zip(cur, weights))
                lead = cur[-1]
                cur = [0] + cur[:-1]
                if lead:
                    cur = [(c - lead * fc) % p for c, fc in zip(cur, f)]
            back_to_one = cur == [1] + [0] * (d - 1)
        log[antilog] = np.arange(n, dtype=np.int64)
        if not back_to_one or len(np.unique(antilog)) != n:
            raise BadParameters(f"modulus {f} is not primitive over F_{p}")
        self._antilog = antilog
        self._log = log
        c0 = antilog % p
        plus_one = antilog - c0 + (c0 + 1) % p
        self.zech = log[plus_one]  # -1 marks "1 + g^k == 0"
        self.zech.setflags(write=False)
        self._zech_list = self.zech.tolist()
        self.neg_one = 0 if p == 2 else n // 2
        self._expansion_tables: dict[tuple[int, ...], np.ndarray] = {}

    @functools.cached_property
    def _tables(self) -> tuple[np.ndarray, np.ndarray] | None:
        if self.size > DENSE_TABLE_BOUND:
            return None
        elems = self.elements()
        a, b = elems[:, None], elems[None, :]
        add = np.empty((self.size, self.size), dtype=np.int64)
        mul = np.empty((self.size, self.size), dtype=np.int64)
        add[a, b] = self._zech_add(a, b)
        mul[a, b] = self._log_mul(a, b)
        return add, mul

    # -- identity -------------------------------------------------------------

    def key(self) -> tuple:
        return (self.p, self.e, self.m, self.modulus)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldTower) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"FieldTower(F_{self.q}^{self.m} = F_{self.size}, modulus={list(self.modulus)})"

    def header(self) -> dict:
        """Field header embedded in every serialized object."""
        return {"p": self.p, "e": self.e, "m": self.m, "modulus": list(self.modulus)}

    # -- element sets -----------------------------------------------------------

    def elements(self) -> np.ndarray:
        """All field elements, zero first."""
        return np.arange(-1, self.order, dtype=np.int64)

    def subfield_elements(self) -> np.ndarray:
        """Elements of F_q ordered ``0, 1, g^s, g^2s, ...`` with ``s = (q^m-1)/(q-1)``."""
        return np.concatenate(
            [[ZERO], np.arange(self.q - 1, dtype=np.int64) * self.subfield_step]
        ).astype(np.int64)

    def is_in_subfield(self, a: int) -> bool:
        return a == ZERO or a % self.subfield_step == 0

    def check_element(self, a: int) -> int:
        a = int(a)
        if not -1 <= a < self.order:
            raise ValueError(f"{a} is not an element of {self!r}")
        return a

    # -- scalar arithmetic ------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if a == ZERO:
            return b
        if b == ZERO:
            return a
        z = self._zech_list[(b - a) % self.order]
        return ZERO if z == ZERO else (a + z) % self.order

    def neg(self, a: int) -> int:
        return ZERO if a == ZERO else (a + self.neg_one) % self.order

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == ZERO or b == ZERO:
            return ZERO
        return (a + b) % self.order

    def inv(self, a: int) -> int:
        if a == ZERO:
            raise InverseOfZero("zero has no multiplicative inverse")
        return -a % self.order

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == ZERO:
            if k < 0:
                raise InverseOfZero("zero has no multiplicative inverse")
            return ONE if k == 0 else ZERO
        return (a * k) % self.order

    def frobenius(self, a: int, times: int = 1) -> int:
        """``a ** (q ** times)``; fixes exactly the elements of F_q."""
        return self.pow(a, self.q**times)

    def sum(self, items: Iterable[int]) -> int:
        acc = ZERO
        for x in items:
            acc = self.add(acc, x)
        return acc

    # -- vectorised arithmetic ----------------------------------------------------

    def _zech_add(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        z = self.zech[(b - a) % self.order]
        s = np.where(z < 0, ZERO, (a + z) % self.order)
        s = np.where(a < 0, b, s)
        return np.where(b < 0, a, s)

    def _log_mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        return np.where((a < 0) | (b < 0), ZERO, (a + b) % self.order)

    def vadd(self, a, b) -> np.ndarray:
        t = self._tables
        if t is not None:
            return t[0][a, b]
        return self._zech_add(a, b)

    def vmul(self, a, b) -> np.ndarray:
        t = self._tables
        if t is not None:
            return t[1][a, b]
        return self._log_mul(a, b)

    def vneg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return np.where(a < 0, ZERO, (a + self.neg_one) % self.order)

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a < 0):
            raise InverseOfZero("zero has no multiplicative inverse")
        return -a % self.order

    def vfrobenius(self, a, times: int = 1) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return np.where(a == ZERO, ZERO, (a * pow(self.q, times, self.order)) % self.order)

    def vsum(self, a, axis: int = -1) -> np.ndarray:
        """Field sum of an array along ``axis``."""
        a = np.moveaxis(np.asarray(a, dtype=np.int64), axis, 0)
        acc = np.full(a.shape[1:], ZERO, dtype=np.int64)
        for row in a:
            acc = self.vadd(acc, row)
        return acc

    # -- polynomial representation -------------------------------------------------

    def to_poly(self, a: int) -> tuple[int, ...]:
        """Coefficients over F_p (ascending) of ``a`` in the basis 1, g, ..., g^(em-1)."""
        v = 0 if a == ZERO else int(self._antilog[a])
        out = []
        for _ in range(self.degree):
            out.append(v % self.p)
            v //= self.p
        return tuple(out)

    def from_poly(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.degree:
            raise ValueError("too many coefficients")
        v = sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs))
        return int(self._log[v])

    # -- expansion over F_q -------------------------------------------------------

    @property
    def default_basis(self) -> tuple[int, ...]:
        """``(1, g, ..., g^(m-1))``: g generates F_{q^m} over F_q since it is primitive."""
        return tuple(range(self.m))

    def _expansion_table(self, basis: Sequence[int] | None) -> np.ndarray:
        basis = self.default_basis if basis is None else tuple(int(b) for b in basis)
        table = self._expansion_tables.get(basis)
        if table is not None:
            return table
        if len(basis) != self.m:
            raise NotABasis(f"a basis of F_{self.size}/F_{self.q} has {self.m} elements")
        sub = self.subfield_elements()
        digits = np.indices((self.q,) * self.m).reshape(self.m, -1).T
        coords = sub[digits]
        values = self.vsum(self.vmul(coords, np.array(basis, dtype=np.int64)), axis=-1)
        if len(np.unique(values)) != self.size:
            raise NotABasis(f"{basis} is not F_{self.q}-linearly independent")
        table = np.empty((self.size, self.m), dtype=np.int64)
        table[values] = coords
        table.setflags(write=False)
        self._expansion_tables[basis] = table
        return table

    def expand(self, a: int, basis: Sequence[int] | None = None) -> tuple[int, ...]:
        """Coordinates of ``a`` over F_q with respect to ``basis`` (default power basis)."""
        return tuple(int(c) for c in self._expansion_table(basis)[a])

    def expand_array(self, arr, basis: Sequence[int] | None = None) -> np.ndarray:
        """Vectorised :meth:`expand`; appends an axis of length ``m``."""
        return self._expansion_table(basis)[np.asarray(arr, dtype=np.int64)]

    def contract(self, coords: Sequence[int], basis: Sequence[int] | None = None) -> int:
        basis = self.default_basis if basis is None else tuple(basis)
        if len(coords) != len(basis):
            raise NotABasis("coordinate vector and basis lengths differ")
        for c in coords:
            if not self.is_in_subfield(c):
                raise CoordinateNotInSubfield(f"{c} is not in F_{self.q}")
        return self.sum(self.mul(c, b) for c, b in zip(coords, basis))

    # -- misc -----------------------------------------------------------------------

    def random_elements(self, rng: np.random.Generator, shape, subfield: bool = False) -> np.ndarray:
        pool = self.subfield_elements() if subfield else self.elements()
        return pool[rng.integers(0, len(pool), size=shape)]

    def format_element(self, a: int) -> str:
        if a == ZERO:
            return "0"
        if a == ONE:
            return "1"
        return "g" if a == 1 else f"g^{a}"


@functools.lru_cache(maxsize=None)
def _make_tower(p: int, e: int, m: int, modulus: tuple[int, ...] | None) -> FieldTower:
    if modulus is None:
        modulus = smallest_primitive_polynomial(p, e * m)
    elif len(modulus) != e * m + 1 or not is_primitive_polynomial(modulus, p):
        raise BadParameters(f"{list(modulus)} is not a primitive polynomial of degree {e * m} over F_{p}")
    return FieldTower(p, e, m, modulus)


def make_tower(
    p: int,
    e: int,
    m: int,
    modulus: Sequence[int] | None = None,
    table_bound: int = limits.TABLE_BOUND,
) -> FieldTower:
    """Build (or fetch the cached) tower F_{p^e} ⊂ F_{p^(e*m)}.

    The default modulus is the lexicographically smallest primitive polynomial
    of degree ``e*m`` over F_p, so serialized exponents are reproducible.

    Raises:
        NotPrime: ``p`` is not prime.
        FieldTooLarge: ``p**(e*m)`` exceeds ``table_bound``.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1 or m < 1:
        raise BadParameters("extension degrees must be >= 1")
    if p ** (e * m) > table_bound:
        raise FieldTooLarge(f"{p}^{e * m} exceeds the table bound {table_bound}")
    mod = None if modulus is None else tuple(int(c) % p for c in modulus)
    return _make_tower(p, e, m, mod)


def tower_for(q: int, m: int) -> FieldTower:
    """Tower F_q ⊂ F_{q^m} for a prime power ``q``."""
    p, e = prime_power(q)
    return make_tower(p, e, m)
