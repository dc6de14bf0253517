"""Generalized rank weights by subcode supports and by parity-check ranks.

Together with :func:`rankmetric.qsystem.grw_geometric` this gives three
independent exhaustive computations of the weight hierarchy:

* ``geometric``: ``n - max dim_{F_q}(X ∩ Π)`` over codimension-r subspaces Π
  of the message space, scanning the elements of the q-system X;
* ``subcode``: the least F_q-dimension of the column span of a generator of
  an r-dimensional subcode;
* ``parity``: the least ``i`` for which some ``i``-dimensional F_q-subspace
  spanned by the columns of ``M`` satisfies ``i - r >= rank(H M)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .code import RankMetricCode, dual, support_dimension
from .errors import DimensionOutOfRange, HierarchyInvariantViolation, RankDeficientGenerator
from .linalg import SubspaceEnumerator, as_matrix, batch_rank, fq_column_rank, matmul, rank, row_reduce
from .qsystem import grw_geometric

METHODS = ("geometric", "subcode", "parity")


@dataclass(frozen=True)
class SubcodeHandle:
    parent: RankMetricCode
    r: int
    generator: np.ndarray


def subcode(C: RankMetricCode, U) -> SubcodeHandle:
    """Subcode spanned by the rows of ``U @ G`` for an ``r x k`` message matrix ``U``."""
    U = as_matrix(U)
    if U.shape[1] != C.k:
        raise DimensionOutOfRange(f"message matrix needs {C.k} columns")
    r = rank(C.tower, U)
    if r != U.shape[0]:
        raise RankDeficientGenerator("subcode generator rows are dependent")
    R, _ = row_reduce(C.tower, matmul(C.tower, U, C.G))
    return SubcodeHandle(C, r, R[:r])


def q_support_dim(D, basis=None) -> int:
    """F_q-dimension of the span of the columns of the subcode generator.

    Any generator of the same subcode gives the same value; ``basis`` picks
    the F_q-basis used for expansion and does not change the result either.
    """
    if isinstance(D, SubcodeHandle):
        return int(fq_column_rank(D.parent.tower, D.generator, basis))
    raise TypeError("expected a SubcodeHandle")


def _check_r(C: RankMetricCode, r: int) -> None:
    if not 1 <= r <= C.k:
        raise DimensionOutOfRange(f"r must lie in 1..{C.k}, got {r}")


def grw_subcode(C: RankMetricCode, r: int) -> int:
    _check_r(C, r)
    best = C.n
    for _, U in SubspaceEnumerator(C.tower, C.k, r, "ext").batches():
        D = matmul(C.tower, U, C.G)
        best = min(best, int(fq_column_rank(C.tower, D).min()))
        if best == r:
            break
    return best


def grw_parity(C: RankMetricCode, r: int) -> int:
    _check_r(C, r)
    tower = C.tower
    for i in range(r, C.n + 1):
        for _, Mt in SubspaceEnumerator(tower, C.n, i, "base").batches():
            HM = matmul(tower, C.H, np.swapaxes(Mt, -1, -2))
            if np.any(i - r >= batch_rank(tower, HM)):
                return i
    raise HierarchyInvariantViolation(f"no column space satisfies the parity condition for r={r}")


_DISPATCH = {
    "geometric": grw_geometric,
    "subcode": grw_subcode,
    "parity": grw_parity,
}


def grw(C: RankMetricCode, r: int, method: str = "subcode") -> int:
    try:
        fn = _DISPATCH[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}") from None
    return fn(C, r)


@dataclass(frozen=True)
class WeightHierarchy:
    """Generalized rank weights ``d_r`` for ``r`` in ``rs`` (normally ``1..k``)."""

    code_id: str
    method: str
    n: int
    k: int
    weights: tuple[int, ...]
    rs: tuple[int, ...]
    monotonic: bool = True
    singleton_ok: bool = True

    @property
    def complete(self) -> bool:
        return self.rs == tuple(range(1, self.k + 1))

    def __getitem__(self, r: int) -> int:
        """``d_r``, with ``d_0 = 0``."""
        if r == 0:
            return 0
        if r not in self.rs:
            raise IndexError(r)
        return self.weights[self.rs.index(r)]

    def to_dict(self) -> dict:
        d = {
            "code": self.code_id,
            "method": self.method,
            "weights": list(self.weights),
            "monotonic": self.monotonic,
            "singleton_ok": self.singleton_ok,
        }
        if not self.complete:
            d["r"] = list(self.rs)
        return d


def hierarchy(C: RankMetricCode, method: str = "subcode", rs=None) -> WeightHierarchy:
    """Weight hierarchy ``(d_1, ..., d_k)`` by one method, validated before return.

    Checks strict increase, ``d_k`` equal to the dimension of the column
    span of ``G`` (``n`` for a non-degenerate code) and ``d_r <= n - k + r``.
    With ``rs`` only those indices are computed; the ``d_k`` check then
    applies only if ``k`` is among them.

    Raises:
        HierarchyInvariantViolation: a check failed (an implementation bug).
    """
    rs = tuple(range(1, C.k + 1)) if rs is None else tuple(sorted(set(rs)))
    weights = tuple(grw(C, r, method) for r in rs)
    singleton_ok = all(w <= C.n - C.k + r for r, w in zip(rs, weights))
    monotonic = all(a < b for a, b in zip(weights, weights[1:])) and all(w > 0 for w in weights)
    if rs and rs[-1] == C.k:
        monotonic = monotonic and weights[-1] == support_dimension(C)
    if not (singleton_ok and monotonic):
        raise HierarchyInvariantViolation(
            f"{method} hierarchy {weights} of {C!r} breaks monotonicity or Singleton"
        )
    return WeightHierarchy(C.fingerprint(), method, C.n, C.k, weights, rs, monotonic, singleton_ok)


def all_hierarchies(C: RankMetricCode, methods=METHODS) -> dict[str, WeightHierarchy]:
    return {m: hierarchy(C, m) for m in methods}


# -- structural checks -----------------------------------------------------------


def is_mrd(C: RankMetricCode, method: str = "subcode") -> bool:
    return grw(C, 1, method) == C.n - C.k + 1


@dataclass(frozen=True)
class DualityReport:
    n: int
    code: WeightHierarchy
    dual: WeightHierarchy | None
    shifted_dual: tuple[int, ...]
    disjoint: bool
    covers: bool

    @property
    def holds(self) -> bool:
        return self.disjoint and self.covers

    def to_dict(self) -> dict:
        return {
            "code": self.code.to_dict(),
            "dual": None if self.dual is None else self.dual.to_dict(),
            "partition": {
                "code_weights": list(self.code.weights),
                "shifted_dual_weights": list(self.shifted_dual),
                "n": self.n,
            },
            "disjoint": self.disjoint,
            "covers": self.covers,
            "holds": self.holds,
        }


def verify_duality(C: RankMetricCode, method: str = "parity") -> DualityReport:
    """Check that the weights of C and ``n + 1 - d_r(C⊥)`` partition ``{1..n}``.

    The dual may be degenerate, so the geometric method is never used on it.
    A full-space code has an empty dual hierarchy.
    """
    h = hierarchy(C, method)
    if C.k == C.n:
        hd = None
        shifted: tuple[int, ...] = ()
    else:
        hd = hierarchy(dual(C), "parity" if method == "geometric" else method)
        shifted = tuple(C.n + 1 - d for d in hd.weights)
    a, b = set(h.weights), set(shifted)
    disjoint = not (a & b) and len(b) == len(shifted)
    covers = (a | b) == set(range(1, C.n + 1))
    return DualityReport(C.n, h, hd, shifted, disjoint, covers)


def singleton_defects(h: WeightHierarchy) -> tuple[int, ...]:
    """``n - k + r - d_r`` for each r; all zero exactly for MRD codes."""
    return tuple(h.n - h.k + r - w for r, w in enumerate(h.weights, start=1))
