"""q-systems, their generalized weights, and the linear sets they define.

A q-system is an n-dimensional F_q-subspace X of F_{q^m}^k that spans
F_{q^m}^k over F_{q^m}. It is stored through an F_q-basis ``P_1..P_n`` kept
as the columns of a ``k x n`` matrix; the columns of the generator matrix of
a non-degenerate code are such a basis, and conversely.

Intersections ``X ∩ Π`` are computed by brute force over the ``q^n``
elements of X, testing membership against the RREF basis of Π. A second
route through an F_q kernel computation exists for cross-checking and for
q-systems too large to list.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from . import limits
from .code import RankMetricCode, is_nondegenerate, make_code
from .errors import BadParameters, DegenerateCode, DimensionOutOfRange, NotABasis
from .field_tower import ZERO, FieldTower
from .linalg import (
    SubspaceEnumerator,
    all_vectors,
    as_matrix,
    fq_column_rank,
    kernel,
    matmul,
    rank,
    row_reduce,
)

_CHUNK = 1 << 22


class QSystem:
    def __init__(self, tower: FieldTower, basis: np.ndarray):
        self.tower = tower
        self.basis = basis
        self.basis.setflags(write=False)
        self.k, self.n = basis.shape

    def __repr__(self) -> str:
        return f"QSystem(n={self.n} in F_{self.tower.size}^{self.k} over F_{self.tower.q})"

    def __eq__(self, other: object) -> bool:
        """Same F_q-subspace (bases may differ)."""
        if not isinstance(other, QSystem) or other.tower != self.tower or other.k != self.k:
            return False
        if other.n != self.n:
            return False
        both = np.concatenate([self.basis, other.basis], axis=1)
        return int(fq_column_rank(self.tower, both)) == self.n

    __hash__ = None

    @functools.cached_property
    def elements(self) -> np.ndarray:
        """All ``q^n`` vectors of X as rows ``(q^n, k)``, zero first."""
        size = self.tower.q**self.n
        limits.check_cap("qsystem", size, f"elements of {self!r}")
        coeffs = np.concatenate(list(all_vectors(self.tower, self.n, "base")))
        return matmul(self.tower, coeffs, self.basis.T)

    def _log_q(self, counts: np.ndarray) -> np.ndarray:
        powers = {self.tower.q**d: d for d in range(self.n + 1)}
        try:
            return np.array([powers[int(c)] for c in np.ravel(counts)], dtype=np.int64).reshape(np.shape(counts))
        except KeyError as exc:  # pragma: no cover - would mean X is not a subspace
            raise AssertionError(f"intersection size {exc} is not a power of q") from None


def make_qsystem(tower: FieldTower, columns) -> QSystem:
    """q-system spanned over F_q by the columns of a ``k x n`` matrix.

    Raises:
        NotABasis: the columns are F_q-dependent.
        BadParameters: the span lies in an F_{q^m}-hyperplane.
    """
    B = as_matrix(columns).copy()
    k, n = B.shape
    if int(fq_column_rank(tower, B)) != n:
        raise NotABasis("q-system columns must be linearly independent over F_q")
    if rank(tower, B) != k:
        raise BadParameters("q-system is contained in a hyperplane")
    return QSystem(tower, B)


def qsystem_from_code(C: RankMetricCode) -> QSystem:
    if not is_nondegenerate(C):
        raise DegenerateCode("a degenerate code has no q-system of dimension n")
    return QSystem(C.tower, np.array(C.G))


def code_from_qsystem(X: QSystem) -> RankMetricCode:
    return make_code(X.tower, X.basis)


def transform(X: QSystem, A) -> QSystem:
    """Image of X under the invertible F_{q^m}-linear map ``v -> A v``."""
    A = as_matrix(A)
    if A.shape != (X.k, X.k) or rank(X.tower, A) != X.k:
        raise BadParameters("transformation must be an invertible k x k matrix")
    return make_qsystem(X.tower, matmul(X.tower, A, X.basis))


def _as_qsystem(obj) -> QSystem:
    return qsystem_from_code(obj) if isinstance(obj, RankMetricCode) else obj


# -- intersections -----------------------------------------------------------


def _member_counts(tower: FieldTower, points: np.ndarray, pivots, spaces: np.ndarray) -> np.ndarray:
    """For each RREF ``spaces[b]`` (shared ``pivots``) count the rows of ``points`` it contains."""
    nb = spaces.shape[0]
    npts, k = points.shape
    out = np.empty(nb, dtype=np.int64)
    step = max(1, _CHUNK // max(1, npts * k))
    for lo in range(0, nb, step):
        S = spaces[lo : lo + step]
        res = np.broadcast_to(points[None], (S.shape[0], npts, k))
        for i, p in enumerate(pivots):
            res = tower.vsub(res, tower.vmul(points[None, :, p, None], S[:, None, i, :]))
        out[lo : lo + step] = np.all(res == ZERO, axis=-1).sum(axis=-1)
    return out


def _intersection_dims(X: QSystem, piv, spaces: np.ndarray) -> np.ndarray:
    return X._log_q(_member_counts(X.tower, X.elements, piv, spaces))


def intersection_dim(X: QSystem, Pi, method: str = "auto") -> int:
    """``dim_{F_q}(X ∩ Π)`` for the F_{q^m}-subspace Π spanned by the rows of ``Pi``.

    ``method`` is ``"enumerate"`` (scan the elements of X), ``"kernel"``
    (``n`` minus the F_q-rank of ``A [X]`` with ``Π = ker A``) or ``"auto"``.
    """
    tower = X.tower
    Pi = as_matrix(Pi, cols=X.k)
    if Pi.shape[1] != X.k:
        raise DimensionOutOfRange(f"subspace lives in dimension {Pi.shape[1]}, q-system in {X.k}")
    R, piv = row_reduce(tower, Pi)
    R = R[: len(piv)]
    if method == "auto":
        within = tower.q**X.n <= limits.get_cap("qsystem")
        method = "enumerate" if within else "kernel"
    if method == "enumerate":
        return int(_intersection_dims(X, piv, R[None])[0])
    if method == "kernel":
        A = kernel(tower, R)
        if A.shape[0] == 0:
            return X.n
        return X.n - int(fq_column_rank(tower, matmul(tower, A, X.basis)))
    raise ValueError(f"unknown method {method!r}")


def max_intersection(X: QSystem, dim: int, method: str = "auto") -> int:
    """Largest ``dim_{F_q}(X ∩ Π)`` over all ``dim``-dimensional F_{q^m}-subspaces Π."""
    if not 0 <= dim <= X.k:
        raise DimensionOutOfRange(f"subspace dimension {dim} outside 0..{X.k}")
    enum = SubspaceEnumerator(X.tower, X.k, dim, "ext")
    if method == "auto":
        method = "enumerate" if X.tower.q**X.n <= limits.get_cap("qsystem") else "kernel"
    best = 0
    for piv, batch in enum.batches():
        if method == "enumerate":
            best = max(best, int(_intersection_dims(X, piv, batch).max()))
        else:
            best = max(best, max(intersection_dim(X, S, "kernel") for S in batch))
        if best == X.n:
            break
    return best


def grw_geometric(obj, r: int, method: str = "auto") -> int:
    """``n`` minus the largest F_q-dimension of ``X ∩ Π`` over codimension-``r`` subspaces Π."""
    X = _as_qsystem(obj)
    if not 1 <= r <= X.k:
        raise DimensionOutOfRange(f"r must lie in 1..{X.k}")
    return X.n - max_intersection(X, X.k - r, method)


def minimum_distance(obj) -> int:
    return grw_geometric(obj, 1)


# -- linear sets -----------------------------------------------------------------


@dataclass(frozen=True)
class LinearSetPoint:
    vector: tuple[int, ...]  # first non-zero coordinate is one
    weight: int


def normalize_rows(tower: FieldTower, V: np.ndarray) -> np.ndarray:
    """Scale each non-zero row so its first non-zero entry is one."""
    V = np.asarray(V, dtype=np.int64)
    lead_idx = np.argmax(V != ZERO, axis=-1)
    lead = np.take_along_axis(V, lead_idx[..., None], axis=-1)
    return tower.vmul(tower.vinv(lead), V)


def linear_set_points(X: QSystem) -> list[LinearSetPoint]:
    """Points ``<x>`` for ``x`` in X\\{0}, each with weight ``dim_{F_q}(X ∩ <x>)``.

    The ``q^w - 1`` non-zero vectors of X on a point of weight ``w`` all
    normalize to the same representative, which is how weights are read off.
    """
    E = X.elements
    nonzero = E[np.any(E != ZERO, axis=1)]
    reps, counts = np.unique(normalize_rows(X.tower, nonzero), axis=0, return_counts=True)
    weights = X._log_q(counts + 1)
    return [LinearSetPoint(tuple(int(c) for c in v), int(w)) for v, w in zip(reps, weights)]


def subspace_weight(X: QSystem, W, method: str = "auto") -> int:
    """Weight of the projective subspace spanned by the rows of ``W`` w.r.t. the linear set of X."""
    return intersection_dim(X, W, method)


def is_scattered(X: QSystem) -> bool:
    return all(pt.weight == 1 for pt in linear_set_points(X))


def grw_linear_set(obj, r: int) -> int:
    """Generalized weight from the weighted points of the linear set.

    For every codimension-``r`` subspace W, ``|W ∩ X| = 1 + Σ (q^w(P) - 1)``
    over the points P of the linear set lying in W.
    """
    X = _as_qsystem(obj)
    if not 1 <= r <= X.k:
        raise DimensionOutOfRange(f"r must lie in 1..{X.k}")
    pts = linear_set_points(X)
    P = np.array([p.vector for p in pts], dtype=np.int64)
    contrib = np.array([X.tower.q**p.weight - 1 for p in pts], dtype=np.int64)
    best = 0
    for piv, batch in SubspaceEnumerator(X.tower, X.k, X.k - r, "ext").batches():
        nb = batch.shape[0]
        step = max(1, _CHUNK // max(1, len(P) * X.k))
        for lo in range(0, nb, step):
            S = batch[lo : lo + step]
            res = np.broadcast_to(P[None], (S.shape[0],) + P.shape)
            for i, p in enumerate(piv):
                res = X.tower.vsub(res, X.tower.vmul(P[None, :, p, None], S[:, None, i, :]))
            inside = np.all(res == ZERO, axis=-1)
            sizes = 1 + (inside * contrib[None, :]).sum(axis=-1)
            best = max(best, int(X._log_q(sizes).max()))
    return X.n - best


def linear_set_report(X: QSystem) -> dict:
    pts = linear_set_points(X)
    return {
        "field": X.tower.header(),
        "ambient": {"k": X.k, "q": X.tower.q, "m": X.tower.m},
        "rank": X.n,
        "points": [{"vector": list(p.vector), "weight": p.weight} for p in pts],
        "scattered": all(p.weight == 1 for p in pts),
    }
