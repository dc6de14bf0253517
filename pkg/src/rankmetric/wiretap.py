"""Coset coding over a network observed by an eavesdropper.

The sender maps a secret syndrome ``s`` in F_{q^m}^(n-k) to a uniformly
random ``x`` with ``H x^T = s``. An eavesdropper who taps ``u`` links sees
``w = B x^T`` for an F_q matrix ``B`` of rank ``u``. Every ``y = λB = μH`` in
``<B> ∩ <H>`` yields the relation ``μ·s = λ·w``, so the leakage is governed by

* ``δ_u``: the largest ``dim <B> ∩ <H>`` over rank-u matrices B, and
* ``Δ_u``: the smallest ``rank(H M^T)`` over F_q matrices M of rank ``n-u``,

with ``δ_u + Δ_u = n - k``. Both extremes only depend on the F_q row space
of B (resp. M), so the searches run over F_q-subspaces of F_q^n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .code import RankMetricCode
from .errors import DimensionOutOfRange, InconsistentSyndrome, LeakageMismatch, RankDeficientB
from .field_tower import ZERO
from .grw import WeightHierarchy, hierarchy
from .linalg import SubspaceEnumerator, as_matrix, batch_rank, is_subfield_matrix, kernel, matmul, rank


def coset_encode(C: RankMetricCode, s, rng: np.random.Generator) -> np.ndarray:
    """Uniformly random ``x`` with syndrome ``s``: a fixed coset leader plus a random codeword.

    The non-pivot columns of ``H`` form an identity block, so placing ``s``
    on those positions gives the coset leader.
    """
    tower = C.tower
    s = np.asarray(s, dtype=np.int64)
    if s.shape != (C.n - C.k,):
        raise DimensionOutOfRange(f"secret must have length n-k = {C.n - C.k}")
    leader = np.full(C.n, ZERO, dtype=np.int64)
    leader[list(C.free_columns)] = s
    msg = tower.random_elements(rng, C.k)
    x = tower.vadd(leader, C.encode(msg))
    if not np.array_equal(C.syndrome(x), s):
        raise InconsistentSyndrome("coset leader does not reproduce the secret")
    return x


def _check_b(tower, B: np.ndarray, n: int) -> None:
    if B.shape[1] != n:
        raise DimensionOutOfRange(f"observation matrix needs {n} columns")
    if not is_subfield_matrix(tower, B):
        raise RankDeficientB("observation matrix must have entries in F_q")
    if rank(tower, B) != B.shape[0]:
        raise RankDeficientB("observation matrix must have full row rank")


def eavesdrop(C: RankMetricCode, x, B) -> np.ndarray:
    """What the eavesdropper sees: ``w = B x^T``."""
    B = as_matrix(B, cols=C.n)
    _check_b(C.tower, B, C.n)
    return matmul(C.tower, B, np.asarray(x, dtype=np.int64)[:, None])[:, 0]


def leakage_dim(C: RankMetricCode, B) -> int:
    """``dim_{F_q^m} (<B> ∩ <H>)``, computed twice and cross-checked.

    Directly as ``u + (n-k) - rank [B; H]``, and through the complement
    ``M`` of the F_q row space of B as ``(n-k) - rank(H M^T)``.
    """
    tower = C.tower
    B = as_matrix(B, cols=C.n)
    _check_b(tower, B, C.n)
    u, nk = B.shape[0], C.n - C.k
    direct = u + nk - rank(tower, np.concatenate([B, C.H], axis=0))
    M = kernel(tower, B)
    via_complement = nk - rank(tower, matmul(tower, C.H, M.T))
    if direct != via_complement:
        raise LeakageMismatch(f"intersection {direct} != complement count {via_complement}")
    return direct


def leakage_relations(C: RankMetricCode, B) -> list[tuple[np.ndarray, np.ndarray]]:
    """Basis of pairs ``(λ, μ)`` with ``λB = μH``, one per dimension of the intersection."""
    tower = C.tower
    B = as_matrix(B, cols=C.n)
    _check_b(tower, B, C.n)
    u = B.shape[0]
    stacked = np.concatenate([B, tower.vneg(C.H)], axis=0)
    K = kernel(tower, stacked.T)
    return [(v[:u].copy(), v[u:].copy()) for v in K]


def dot(tower, a, b) -> int:
    return int(tower.vsum(tower.vmul(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))))


# -- profile ---------------------------------------------------------------------


def delta(C: RankMetricCode, u: int) -> int:
    """``δ_u``: worst-case intersection of an eavesdropper's row space with ``<H>``."""
    tower, n, nk = C.tower, C.n, C.n - C.k
    if not 0 <= u <= n:
        raise DimensionOutOfRange(f"u must lie in 0..{n}")
    ceiling = min(u, nk)
    best = 0
    for _, Bs in SubspaceEnumerator(tower, n, u, "base").batches():
        stacked = np.concatenate([Bs, np.broadcast_to(C.H, (Bs.shape[0],) + C.H.shape)], axis=1)
        best = max(best, int((u + nk - batch_rank(tower, stacked)).max()))
        if best == ceiling:
            break
    return best


def Delta(C: RankMetricCode, u: int) -> int:
    """``Δ_u``: least ``rank(H M^T)`` over F_q matrices M of rank ``n - u``."""
    tower, n = C.tower, C.n
    if not 0 <= u <= n:
        raise DimensionOutOfRange(f"u must lie in 0..{n}")
    floor = max(0, n - u - C.k)
    best = n
    for _, Ms in SubspaceEnumerator(tower, n, n - u, "base").batches():
        best = min(best, int(batch_rank(tower, matmul(tower, C.H, np.swapaxes(Ms, -1, -2))).min()))
        if best == floor:
            break
    return best


@dataclass(frozen=True)
class LeakageProfile:
    n: int
    k: int
    delta: dict[int, int]
    Delta: dict[int, int]

    def __iter__(self):
        for u in sorted(self.delta):
            yield u, self.delta[u], self.Delta[u]


def profile(C: RankMetricCode, us=None) -> LeakageProfile:
    """``(δ_u, Δ_u)`` for each ``u`` (default ``0..n``) from two separate searches.

    Raises:
        LeakageMismatch: ``δ_u + Δ_u != n - k`` for some ``u``.
    """
    us = range(C.n + 1) if us is None else sorted(set(us))
    d, D = {}, {}
    for u in us:
        d[u] = delta(C, u)
        D[u] = Delta(C, u)
        if d[u] + D[u] != C.n - C.k:
            raise LeakageMismatch(f"u={u}: delta={d[u]} + Delta={D[u]} != n-k={C.n - C.k}")
    return LeakageProfile(C.n, C.k, d, D)


# -- sandwich --------------------------------------------------------------------


@dataclass(frozen=True)
class SandwichRow:
    u: int
    delta_u: int
    Delta_u: int
    lhs_index: int
    left_holds: bool
    right_holds: bool
    flags: tuple[str, ...] = ()

    @property
    def holds(self) -> bool:
        return self.left_holds and self.right_holds

    def to_dict(self) -> dict:
        return {
            "u": self.u,
            "delta_u": self.delta_u,
            "Delta_u": self.Delta_u,
            "sandwich_lhs_index": self.lhs_index,
            "holds": self.holds,
            "flags": list(self.flags),
        }


@dataclass(frozen=True)
class SandwichReport:
    hierarchy: WeightHierarchy
    rows: tuple[SandwichRow, ...] = field(default=())

    @property
    def holds(self) -> bool:
        return all(r.holds for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "hierarchy": self.hierarchy.to_dict(),
            "rows": [r.to_dict() for r in self.rows],
            "holds": self.holds,
        }


def verify_sandwich(
    C: RankMetricCode,
    h: WeightHierarchy | None = None,
    prof: LeakageProfile | None = None,
    method: str = "parity",
) -> SandwichReport:
    """Check ``d_t <= n - u < d_{t+1}`` with ``t = n - u - Δ_u`` for every profiled ``u``.

    ``d_0 = 0`` and ``d_{k+1} = ∞`` are used at the ends; a row that needs
    either carries a ``left_vacuous`` / ``right_vacuous`` flag.
    """
    h = hierarchy(C, method) if h is None else h
    prof = profile(C) if prof is None else prof
    rows = []
    for u, dl, Dl in prof:
        t = C.n - u - Dl
        flags = []
        if t <= 0:
            flags.append("left_vacuous")
            left = True
        else:
            left = h[t] <= C.n - u
        if t + 1 > C.k:
            flags.append("right_vacuous")
            upper = math.inf
        else:
            upper = h[t + 1]
        rows.append(SandwichRow(u, dl, Dl, t, left, C.n - u < upper, tuple(flags)))
    return SandwichReport(h, tuple(rows))


def profile_report(C: RankMetricCode, report: SandwichReport) -> dict:
    d = {"field": C.tower.header(), "n": C.n, "k": C.k}
    d.update(report.to_dict())
    return d


# -- simulation ------------------------------------------------------------------


@dataclass(frozen=True)
class SimulationReport:
    transmissions: int
    relations: int
    failures: int

    @property
    def holds(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {
            "transmissions": self.transmissions,
            "relations": self.relations,
            "failures": self.failures,
            "holds": self.holds,
        }


def random_observation(tower, n: int, u: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform full-rank ``u x n`` matrix over F_q (rejection sampling)."""
    while True:
        B = tower.random_elements(rng, (u, n), subfield=True)
        if rank(tower, B) == u:
            return B


def simulate_relations(C: RankMetricCode, rng: np.random.Generator, trials: int = 4, us=None) -> SimulationReport:
    """Send random secrets past random eavesdroppers and test ``μ·s = λ·w``.

    Each relation is a random F_{q^m}-combination of the basis pairs from
    :func:`leakage_relations`, so it is a sampled element of ``<B> ∩ <H>``.
    """
    tower = C.tower
    us = range(1, C.n + 1) if us is None else [u for u in us if u >= 1]
    sent = checked = failed = 0
    for u in us:
        for _ in range(trials):
            B = random_observation(tower, C.n, u, rng)
            pairs = leakage_relations(C, B)
            s = tower.random_elements(rng, C.n - C.k)
            x = coset_encode(C, s, rng)
            w = eavesdrop(C, x, B)
            sent += 1
            if not pairs:
                continue
            coeffs = tower.random_elements(rng, len(pairs))
            lam = tower.vsum(tower.vmul(coeffs[:, None], np.stack([p[0] for p in pairs])), axis=0)
            mu = tower.vsum(tower.vmul(coeffs[:, None], np.stack([p[1] for p in pairs])), axis=0)
            checked += 1
            failed += dot(tower, mu, s) != dot(tower, lam, w)
    return SimulationReport(sent, checked, failed)
