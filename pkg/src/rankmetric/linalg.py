"""Exact linear algebra over a :class:`FieldTower` and subspace enumeration.

Matrices are numpy ``int64`` arrays holding elements in the tower's log
encoding (``-1`` is zero). A matrix whose entries all lie in F_q is an F_q
matrix; elimination never leaves the subfield, so the same routines serve
both fields. Most routines accept a stack of matrices (leading batch axes)
because the searches in this package rank thousands of small matrices at once.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterator, Sequence

import numpy as np

from . import limits
from .errors import DimensionOutOfRange, GaussianOverflow, MixedTowers
from .field_tower import ONE, ZERO, FieldTower, make_tower

INT64_MAX = 2**63 - 1


def as_matrix(M, cols: int | None = None) -> np.ndarray:
    A = np.array(M, dtype=np.int64)
    if A.ndim == 1 and A.size == 0:
        A = A.reshape(0, 0 if cols is None else cols)
    if A.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {A.shape}")
    return A


def is_subfield_matrix(tower: FieldTower, M) -> bool:
    A = np.asarray(M, dtype=np.int64)
    return bool(np.all((A == ZERO) | (A % tower.subfield_step == 0)))


def _eliminate(tower: FieldTower, A: np.ndarray, full: bool) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Jordan on a batch ``(B, R, C)`` in place; returns (A, ranks)."""
    nb, nr, nc = A.shape
    rank = np.zeros(nb, dtype=np.int64)
    if nb == 0 or nr == 0:
        return A, rank
    rows = np.arange(nr)
    for c in range(nc):
        col = A[:, :, c]
        cand = (col != ZERO) & (rows[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        bi = np.nonzero(has)[0]
        piv = cand[bi].argmax(axis=1)
        rk = rank[bi]
        pivot_rows = A[bi, piv].copy()
        A[bi, piv] = A[bi, rk]
        inv = tower.vinv(pivot_rows[:, c])
        pivot_rows = tower.vmul(inv[:, None], pivot_rows)
        A[bi, rk] = pivot_rows
        sub = A[bi]
        factor = sub[:, :, c]
        if full:
            mask = rows[None, :] != rk[:, None]
        else:
            mask = rows[None, :] > rk[:, None]
        factor = np.where(mask, factor, ZERO)
        A[bi] = tower.vsub(sub, tower.vmul(factor[:, :, None], pivot_rows[:, None, :]))
        rank[bi] += 1
        if not full and np.all(rank == nr):
            break
    return A, rank


def batch_rank(tower: FieldTower, mats) -> np.ndarray:
    """Ranks of a stack of matrices of shape ``(..., R, C)``."""
    A = np.array(mats, dtype=np.int64)
    lead = A.shape[:-2]
    if A.shape[-1] == 0 or A.shape[-2] == 0:
        return np.zeros(lead, dtype=np.int64)
    A = A.reshape((-1,) + A.shape[-2:])
    _, rank = _eliminate(tower, A, full=False)
    return rank.reshape(lead)


def rank(tower: FieldTower, M) -> int:
    A = as_matrix(M)
    return int(batch_rank(tower, A[None])[0])


def row_reduce(tower: FieldTower, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form (same shape, zero rows last) and pivot columns."""
    A = as_matrix(M).copy()
    R, rk = _eliminate(tower, A[None], full=True)
    R = R[0]
    pivots = [int(np.argmax(R[i] != ZERO)) for i in range(int(rk[0]))]
    return R, pivots


def rref(tower: FieldTower, M) -> tuple[np.ndarray, int]:
    R, pivots = row_reduce(tower, M)
    return R, len(pivots)


def kernel(tower: FieldTower, M) -> np.ndarray:
    """Basis (as rows) of the right null space ``{v : M v^T = 0}``.

    Each free column ``f`` of the RREF contributes the vector with a one at
    ``f`` and ``-R[i, f]`` at the ``i``-th pivot.
    """
    A = as_matrix(M)
    ncols = A.shape[1]
    R, pivots = row_reduce(tower, A)
    free = [j for j in range(ncols) if j not in pivots]
    K = np.full((len(free), ncols), ZERO, dtype=np.int64)
    for t, f in enumerate(free):
        K[t, f] = ONE
        for i, pcol in enumerate(pivots):
            K[t, pcol] = tower.neg(int(R[i, f]))
    return K


def matmul(tower: FieldTower, A, B) -> np.ndarray:
    """Matrix product over the field with numpy broadcasting on leading axes."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    inner = A.shape[-1]
    if B.shape[-2] != inner:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    out_shape = np.broadcast_shapes(A.shape[:-2], B.shape[:-2]) + (A.shape[-2], B.shape[-1])
    acc = np.full(out_shape, ZERO, dtype=np.int64)
    for t in range(inner):
        acc = tower.vadd(acc, tower.vmul(A[..., :, t, None], B[..., None, t, :]))
    return acc


def expand_columns(tower: FieldTower, mats, basis: Sequence[int] | None = None) -> np.ndarray:
    """Replace each entry by its F_q coordinate column: ``(..., R, C) -> (..., R*m, C)``.

    The F_q-span of the columns of the result is the q-support of the input.
    """
    A = np.asarray(mats, dtype=np.int64)
    E = tower.expand_array(A, basis)  # (..., R, C, m)
    E = np.swapaxes(E, -1, -2)  # (..., R, m, C)
    return E.reshape(E.shape[:-3] + (A.shape[-2] * tower.m, A.shape[-1]))


def fq_rank_of_fqm_vectors(tower: FieldTower, vectors, basis: Sequence[int] | None = None) -> int:
    """Dimension over F_q of the span of vectors in F_{q^m}^k.

    Every length-k vector is expanded to a length k*m vector of F_q
    coordinates and the rank of the stacked rows is taken over F_q.
    """
    vectors = list(vectors)
    for v in vectors:
        other = getattr(v, "tower", tower)
        if other != tower:
            raise MixedTowers(f"vector over {other!r} mixed with {tower!r}")
    V = np.array([getattr(v, "coords", v) for v in vectors], dtype=np.int64)
    if V.size == 0:
        return 0
    if V.ndim == 1:
        V = V[:, None]
    E = tower.expand_array(V, basis).reshape(V.shape[0], -1)
    return rank(tower, E)


def fq_column_rank(tower: FieldTower, mats, basis: Sequence[int] | None = None) -> np.ndarray:
    """Batched F_q-dimension of the span of the columns of ``(..., R, C)`` matrices."""
    return batch_rank(tower, expand_columns(tower, mats, basis))


# -- counting ------------------------------------------------------------------


def gaussian_binomial(n: int, r: int, s: int) -> int:
    """Number of ``r``-dimensional subspaces of an ``n``-dimensional space over F_s.

    Raises:
        DimensionOutOfRange: unless ``0 <= r <= n``.
        GaussianOverflow: the count does not fit in a signed 64-bit integer.
    """
    if not 0 <= r <= n:
        raise DimensionOutOfRange(f"need 0 <= r <= n, got r={r}, n={n}")
    num = 1
    den = 1
    for i in range(r):
        num *= s ** (n - i) - 1
        den *= s ** (i + 1) - 1
    value = num // den
    if value > INT64_MAX:
        raise GaussianOverflow(f"[{n} choose {r}]_{s} does not fit in 64 bits")
    return value


def subspace_count_formula(q: int, m: int, k: int, r: int) -> int:
    """``L_r``: r-dim F_{q^m}-subspaces of F_{q^m}^k, as the ratio of falling products."""
    Q = q**m
    num = math.prod(Q**k - Q**i for i in range(r))
    den = math.prod(Q**r - Q**i for i in range(r))
    return num // den


def subspaces_through_point_formula(q: int, m: int, k: int, r: int) -> int:
    """``L_{r,1}``: r-dim subspaces of F_{q^m}^k containing a fixed non-zero vector."""
    if r == 0:
        return 0
    Q = q**m
    num = math.prod(Q**k - Q**i for i in range(1, r))
    den = Q ** (r - 1) * math.prod(Q ** (r - 1) - Q**i for i in range(r - 1))
    return num // den


# -- enumeration ---------------------------------------------------------------


class SubspaceEnumerator:
    """All ``r``-dimensional subspaces of F^n as canonical RREF generator matrices.

    ``field`` is ``"base"`` (F_q) or ``"ext"`` (F_{q^m}). Subspaces are grouped
    by pivot pattern; within a pattern the free entries run through the field
    in mixed-radix order, so each subspace appears exactly once.
    """

    def __init__(self, tower: FieldTower, n: int, r: int, field: str = "base"):
        if field not in ("base", "ext"):
            raise ValueError("field must be 'base' or 'ext'")
        if not 0 <= r <= n:
            raise DimensionOutOfRange(f"need 0 <= r <= n, got r={r}, n={n}")
        self.tower = tower
        self.n = n
        self.r = r
        self.field = field
        self.values = tower.subfield_elements() if field == "base" else tower.elements()
        self.s = len(self.values)
        self.count = gaussian_binomial(n, r, self.s)
        limits.check_cap("subspaces", self.count, f"{r}-dim subspaces of F_{self.s}^{n}")

    def __len__(self) -> int:
        return self.count

    def patterns(self) -> Iterator[tuple[int, ...]]:
        return itertools.combinations(range(self.n), self.r)

    def pattern_batches(self, pivots: Sequence[int], batch_size: int = 8192) -> Iterator[np.ndarray]:
        """Batches ``(B, r, n)`` of the subspaces with the given pivot columns."""
        n, r, s = self.n, self.r, self.s
        pivset = set(pivots)
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, n) if j not in pivset]
        fr = np.array([i for i, _ in free], dtype=np.int64)
        fc = np.array([j for _, j in free], dtype=np.int64)
        total = s ** len(free)
        radix = s ** np.arange(len(free), dtype=np.int64)
        for start in range(0, total, batch_size):
            idx = np.arange(start, min(total, start + batch_size), dtype=np.int64)
            M = np.full((len(idx), r, n), ZERO, dtype=np.int64)
            M[:, np.arange(r), list(pivots)] = ONE
            if free:
                digits = (idx[:, None] // radix[None, :]) % s
                M[:, fr, fc] = self.values[digits]
            yield M

    def batches(self, batch_size: int = 8192) -> Iterator[tuple[tuple[int, ...], np.ndarray]]:
        """Yield ``(pivots, batch)`` pairs covering every subspace once."""
        for piv in self.patterns():
            for M in self.pattern_batches(piv, batch_size):
                yield piv, M

    def __iter__(self) -> Iterator[np.ndarray]:
        for _, M in self.batches():
            yield from M


def enumerate_subspaces(tower: FieldTower, n: int, r: int, field: str = "base") -> SubspaceEnumerator:
    return SubspaceEnumerator(tower, n, r, field)


def all_vectors(tower: FieldTower, n: int, field: str = "ext", batch_size: int = 1 << 16) -> Iterator[np.ndarray]:
    """Every vector of F^n in batches, zero vector first."""
    values = tower.subfield_elements() if field == "base" else tower.elements()
    s = len(values)
    total = s**n
    radix = s ** np.arange(n, dtype=np.int64)
    for start in range(0, total, batch_size):
        idx = np.arange(start, min(total, start + batch_size), dtype=np.int64)
        yield values[(idx[:, None] // radix[None, :]) % s]


# -- matrix text format -------------------------------------------------------


def format_matrix(tower: FieldTower, M) -> str:
    """Header ``p e m n_rows n_cols``, modulus line, then one row of exponents per line."""
    A = as_matrix(M)
    lines = [
        f"{tower.p} {tower.e} {tower.m} {A.shape[0]} {A.shape[1]}",
        " ".join(str(c) for c in tower.modulus),
    ]
    lines += [" ".join(str(int(x)) for x in row) for row in A]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> tuple[FieldTower, np.ndarray]:
    tokens = text.split()
    p, e, m, nr, nc = (int(t) for t in tokens[:5])
    deg = e * m
    modulus = [int(t) for t in tokens[5 : 6 + deg]]
    tower = make_tower(p, e, m, modulus)
    body = [int(t) for t in tokens[6 + deg :]]
    if len(body) != nr * nc:
        raise ValueError(f"expected {nr * nc} entries, found {len(body)}")
    A = np.array(body, dtype=np.int64).reshape(nr, nc)
    for x in body:
        tower.check_element(x)
    return tower, A
