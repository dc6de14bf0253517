"""F_{q^m}-linear rank-metric codes.

A code is identified by the reduced row echelon form of its generator
matrix; two :class:`RankMetricCode` objects are equal iff their towers and
canonical generators agree.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from . import limits
from .errors import DualDimensionZero, MixedTowers, RankDeficientGenerator
from .field_tower import ONE, ZERO, FieldTower, make_tower
from .linalg import (
    SubspaceEnumerator,
    all_vectors,
    as_matrix,
    expand_columns,
    fq_column_rank,
    kernel,
    matmul,
    row_reduce,
)


@dataclass(frozen=True)
class Codeword:
    tower: FieldTower
    coords: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.coords)

    def rank_weight(self) -> int:
        return rank_weight(self)

    def hamming_weight(self) -> int:
        return hamming_weight(self)


class RankMetricCode:
    """An ``[n, k]`` code over F_{q^m}/F_q with canonical generator ``G`` and parity check ``H``.

    Build instances with :func:`make_code`. ``H`` is computed once from the
    RREF of ``G``: for every non-pivot column ``f`` it has a row with a one at
    ``f`` and ``-G[i, f]`` at the ``i``-th pivot, so ``G @ H.T == 0`` and the
    non-pivot block of ``H`` is the identity.
    """

    def __init__(self, tower: FieldTower, G: np.ndarray, pivots: Sequence[int]):
        self.tower = tower
        self.G = G
        self.G.setflags(write=False)
        self.k, self.n = G.shape
        self.pivots = tuple(pivots)
        self.free_columns = tuple(j for j in range(self.n) if j not in self.pivots)
        H = kernel(tower, G)
        H.setflags(write=False)
        self.H = H

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RankMetricCode)
            and self.tower == other.tower
            and np.array_equal(self.G, other.G)
        )

    def __hash__(self) -> int:
        return hash((self.tower, self.G.tobytes(), self.G.shape))

    def __repr__(self) -> str:
        return f"RankMetricCode([{self.n},{self.k}] over F_{self.tower.size}/F_{self.tower.q})"

    @property
    def m(self) -> int:
        return self.tower.m

    @property
    def q(self) -> int:
        return self.tower.q

    def encode(self, message) -> np.ndarray:
        """Codeword(s) ``message @ G``; ``message`` may be a batch ``(..., k)``."""
        msg = np.asarray(message, dtype=np.int64)
        return matmul(self.tower, msg[..., None, :], self.G)[..., 0, :]

    def codeword(self, message) -> Codeword:
        return Codeword(self.tower, tuple(int(x) for x in self.encode(message)))

    def syndrome(self, x) -> np.ndarray:
        return matmul(self.tower, self.H, np.asarray(x, dtype=np.int64)[:, None])[:, 0]

    def contains(self, x) -> bool:
        return bool(np.all(self.syndrome(x) == ZERO))

    def codewords(self, batch_size: int = 1 << 16):
        """All ``q^(mk)`` codewords in batches, zero first."""
        limits.check_cap("codewords", self.tower.size**self.k, f"codewords of {self!r}")
        for msg in all_vectors(self.tower, self.k, "ext", batch_size):
            yield self.encode(msg)

    def projective_codewords(self, batch_size: int = 8192):
        """One codeword per F_{q^m}-line of the code (message has leading one)."""
        count = (self.tower.size**self.k - 1) // (self.tower.size - 1)
        limits.check_cap("codewords", count, f"projective codewords of {self!r}")
        for _, msg in SubspaceEnumerator(self.tower, self.k, 1, "ext").batches(batch_size):
            yield self.encode(msg[:, 0, :])

    def fingerprint(self) -> str:
        """Short stable identifier derived from the canonical serialization."""
        return hashlib.sha256(self.dumps().encode()).hexdigest()[:12]

    def to_dict(self) -> dict:
        d = self.tower.header()
        d.update(n=self.n, k=self.k, generator=self.G.tolist())
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_dict()) + "\n"

    def save(self, path) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")


def make_code(tower: FieldTower, G_in) -> RankMetricCode:
    """Canonical code spanned by the rows of ``G_in``.

    Raises:
        RankDeficientGenerator: the rows are dependent, or there are none
            (zero-dimensional codes are not supported).
    """
    G = as_matrix(G_in)
    if G.shape[0] == 0:
        raise RankDeficientGenerator("a code needs dimension k >= 1")
    for x in G.ravel():
        tower.check_element(int(x))
    R, pivots = row_reduce(tower, G)
    if len(pivots) < G.shape[0]:
        raise RankDeficientGenerator(
            f"generator has rank {len(pivots)} but {G.shape[0]} rows"
        )
    return RankMetricCode(tower, R.copy(), pivots)


def code_from_dict(d: dict) -> RankMetricCode:
    tower = make_tower(int(d["p"]), int(d["e"]), int(d["m"]), d.get("modulus"))
    G = np.array(d["generator"], dtype=np.int64)
    if G.ndim != 2 or G.shape != (int(d["k"]), int(d["n"])):
        raise ValueError(f"generator shape {G.shape} does not match k={d['k']}, n={d['n']}")
    return make_code(tower, G)


def load_code(path) -> RankMetricCode:
    return code_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def dual(C: RankMetricCode) -> RankMetricCode:
    if C.k == C.n:
        raise DualDimensionZero("the dual of the full space is zero-dimensional")
    return make_code(C.tower, C.H)


# -- weights ---------------------------------------------------------------------


def _unpack(x, tower: FieldTower | None) -> tuple[FieldTower | None, np.ndarray]:
    if isinstance(x, Codeword):
        if tower is not None and tower != x.tower:
            raise MixedTowers("codeword belongs to a different tower")
        return x.tower, np.array(x.coords, dtype=np.int64)
    return tower, np.asarray(x, dtype=np.int64)


def rank_weights(tower: FieldTower, words) -> np.ndarray:
    """Rank weights of a batch of vectors ``(..., n)``."""
    W = np.asarray(words, dtype=np.int64)
    return fq_column_rank(tower, W[..., None, :])


def rank_weight(x, tower: FieldTower | None = None) -> int:
    """F_q-dimension of the span of the coordinates of ``x``."""
    tower, v = _unpack(x, tower)
    if tower is None:
        raise TypeError("a tower is needed for a plain vector")
    return int(rank_weights(tower, v))


def hamming_weight(x) -> int:
    _, v = _unpack(x, None)
    return int(np.count_nonzero(v != ZERO))


def min_rank_distance(C: RankMetricCode) -> int:
    """Minimum rank weight over one representative of each codeword line."""
    best = C.n + 1
    for words in C.projective_codewords():
        best = min(best, int(rank_weights(C.tower, words).min()))
    return best


def rank_weight_distribution(C: RankMetricCode) -> dict[int, int]:
    counts = np.zeros(C.n + 1, dtype=np.int64)
    for words in C.codewords():
        counts += np.bincount(rank_weights(C.tower, words), minlength=C.n + 1)
    return {w: int(c) for w, c in enumerate(counts) if c}


# -- degeneracy -------------------------------------------------------------------


def support_dimension(C: RankMetricCode) -> int:
    """F_q-dimension of the span of the generator columns."""
    return int(fq_column_rank(C.tower, C.G))


def is_nondegenerate(C: RankMetricCode) -> bool:
    return support_dimension(C) == C.n


@dataclass(frozen=True)
class Reduction:
    """How a degenerate code was shortened.

    ``M`` is in GL_n(F_q) with ``G @ M == [G[:, kept] | 0]``.
    """

    n_original: int
    n_reduced: int
    kept_columns: tuple[int, ...]
    M: np.ndarray

    def to_dict(self) -> dict:
        return {
            "n_original": self.n_original,
            "n_reduced": self.n_reduced,
            "kept_columns": list(self.kept_columns),
            "M": self.M.tolist(),
        }


def reduce_degenerate(C: RankMetricCode) -> tuple[RankMetricCode, Reduction]:
    """Equivalent non-degenerate code of length ``support_dimension(C)``.

    The kept columns are the pivots of the expanded column matrix; the
    dropped ones are replaced by F_q-kernel vectors, which map to zero.
    """
    tower, n = C.tower, C.n
    E = expand_columns(tower, C.G)
    _, pivots = row_reduce(tower, E)
    K = kernel(tower, E)
    M = np.full((n, n), ZERO, dtype=np.int64)
    for j, p in enumerate(pivots):
        M[p, j] = ONE
    M[:, len(pivots):] = K.T
    reduced = make_code(tower, C.G[:, pivots])
    return reduced, Reduction(n, len(pivots), tuple(pivots), M)
