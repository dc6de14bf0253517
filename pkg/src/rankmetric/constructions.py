"""Named code families, the hyperplane counting identity, and constant-weight classification."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

import numpy as np

from .code import (
    RankMetricCode,
    Reduction,
    dual,
    is_nondegenerate,
    make_code,
    min_rank_distance,
    rank_weights,
    reduce_degenerate,
    support_dimension,
)
from .errors import BadParameters, ClassificationContradiction, DualDimensionZero, NotMRD
from .field_tower import ONE, ZERO, FieldTower, tower_for
from .grw import hierarchy
from .linalg import SubspaceEnumerator, fq_column_rank, subspace_count_formula
from .qsystem import QSystem, intersection_dim

Family = Literal["h1", "h2", "gabidulin"]

# MRD is re-checked by exhaustion when the code has at most this many lines.
MRD_CHECK_LIMIT = 1 << 14


@dataclass(frozen=True)
class FamilyParams:
    family: Family
    q: int
    m: int
    k: int
    n: int | None = None

    def validate(self) -> None:
        if self.family not in ("h1", "h2", "gabidulin"):
            raise BadParameters(f"unknown family {self.family!r}")
        if self.k < 1 or self.m < 1:
            raise BadParameters("k and m must be positive")
        if self.family == "h2" and self.m < 2:
            raise DualDimensionZero("H2 needs m >= 2")
        if self.family == "gabidulin":
            if self.n is None or not self.k <= self.n <= self.m:
                raise BadParameters(f"Gabidulin codes need k <= n <= m, got k={self.k}, n={self.n}, m={self.m}")

    def build(self) -> RankMetricCode:
        self.validate()
        if self.family == "h1":
            return hadamard_h1(self.q, self.m, self.k)
        if self.family == "h2":
            return hadamard_h2(self.q, self.m, self.k)
        return gabidulin(self.q, self.m, self.n, self.k)

    def label(self) -> str:
        tail = f",{self.n}" if self.n is not None else ""
        return f"{self.family}({self.q},{self.m}{tail},{self.k})"


def hadamard_h1(q: int, m: int, k: int) -> RankMetricCode:
    """Code whose generator columns are the F_q-basis ``b_i e_j`` of F_{q^m}^k.

    Column ``j*m + i`` carries ``b_i`` (the power basis) in row ``j``.
    """
    if k < 1 or m < 1:
        raise BadParameters("k and m must be positive")
    tower = tower_for(q, m)
    G = np.full((k, m * k), ZERO, dtype=np.int64)
    for j in range(k):
        for i, b in enumerate(tower.default_basis):
            G[j, j * m + i] = b
    return make_code(tower, G)


def hadamard_h2(q: int, m: int, k: int) -> RankMetricCode:
    if m < 2:
        raise DualDimensionZero("H2 is the dual of a full-space code when m = 1")
    return dual(hadamard_h1(q, m, k))


def h1_hierarchy_formula(m: int, k: int) -> tuple[int, ...]:
    return tuple(m * r for r in range(1, k + 1))


def h2_hierarchy_formula(m: int, k: int) -> tuple[int, ...]:
    n = m * k
    return tuple(sorted(n + 1 - i for i in range(1, n) if i % m))


def hadamard_bound_holds(n: int, k: int, m: int, d: int) -> tuple[bool, bool]:
    """``(k <= (n/m)(m-d+1), equality)`` with exact rational arithmetic."""
    rhs = Fraction(n, m) * (m - d + 1)
    return k <= rhs, k == rhs


def moore_matrix(tower: FieldTower, points, k: int) -> np.ndarray:
    """``G[i][j] = a_j^(q^i)`` for ``i < k``."""
    pts = np.asarray(points, dtype=np.int64)
    return np.stack([tower.vfrobenius(pts, i) for i in range(k)])


def gabidulin(q: int, m: int, n: int, k: int) -> RankMetricCode:
    """Moore-matrix code on the first ``n`` power-basis elements.

    Raises:
        BadParameters: unless ``1 <= k <= n <= m``.
        NotMRD: the exhaustive distance check failed (a bug).
    """
    if not 1 <= k <= n <= m:
        raise BadParameters(f"Gabidulin codes need 1 <= k <= n <= m, got k={k}, n={n}, m={m}")
    tower = tower_for(q, m)
    C = make_code(tower, moore_matrix(tower, tower.default_basis[:n], k))
    lines = (tower.size**k - 1) // (tower.size - 1)
    if lines <= MRD_CHECK_LIMIT and min_rank_distance(C) != n - k + 1:
        raise NotMRD(f"gabidulin({q},{m},{n},{k}) is not MRD")
    return C


# -- counting identity ---------------------------------------------------------


@dataclass(frozen=True)
class Lemma1Report:
    q: int
    m: int
    k: int
    n: int
    r: int
    hypothesis: bool
    l: int | None = None
    lhs: int | None = None
    rhs: Fraction | None = None
    witnesses: tuple = ()

    @property
    def holds(self) -> bool:
        return self.hypothesis and self.lhs == self.rhs

    def to_dict(self) -> dict:
        d = {
            "q": self.q,
            "m": self.m,
            "k": self.k,
            "n": self.n,
            "r": self.r,
            "hypothesis": self.hypothesis,
        }
        if self.hypothesis:
            d.update(l=self.l, lhs=self.lhs, rhs=str(self.rhs), holds=self.holds)
        else:
            d["status"] = "hypothesis fails"
            d["witnesses"] = [{"subspace": S.tolist(), "dim": dim} for S, dim in self.witnesses]
        return d


def lemma1_rhs(q: int, m: int, k: int, r: int, l: int) -> Fraction:
    return (q**l - 1) * Fraction(q ** (m * k) - 1, q ** (m * r) - 1) + 1


def lemma1_check(X: QSystem, r: int) -> Lemma1Report:
    """Test whether every r-dimensional subspace meets X in the same F_q-dimension ``l``.

    If so, compare ``q^n`` with ``(q^l - 1)(q^{mk} - 1)/(q^{mr} - 1) + 1``;
    otherwise return two subspaces with different intersection dimensions.
    """
    tower = X.tower
    q, m = tower.q, tower.m
    if not 1 <= r <= X.k:
        raise BadParameters(f"r must lie in 1..{X.k}")
    first = None
    for S in SubspaceEnumerator(tower, X.k, r, "ext"):
        dim = intersection_dim(X, S)
        if first is None:
            first = (S.copy(), dim)
        elif dim != first[1]:
            return Lemma1Report(q, m, X.k, X.n, r, False, witnesses=(first, (S.copy(), dim)))
    l = first[1]
    return Lemma1Report(q, m, X.k, X.n, r, True, l, q**X.n, lemma1_rhs(q, m, X.k, r, l))


# -- classification ------------------------------------------------------------


@dataclass(frozen=True)
class ClassificationResult:
    """Constant-weight verdict plus the structure forced by it.

    ``verdict`` is ``"ConstantWeight"`` or ``"NotConstantWeight"``;
    ``structure`` is ``"K1"``, ``"HadamardEquivalent"`` or ``"NotApplicable"``.
    """

    verdict: str
    structure: str
    n: int
    k: int
    m: int
    weight: int | None = None
    witnesses: tuple = ()
    generator_row: tuple[int, ...] | None = None
    certificate_rank: int | None = None
    hierarchy: tuple[int, ...] | None = None
    reduction: Reduction | None = None

    @property
    def constant_weight(self) -> bool:
        return self.verdict == "ConstantWeight"

    def to_dict(self) -> dict:
        d: dict = {"verdict": self.verdict, "structure": self.structure, "n": self.n, "k": self.k, "m": self.m}
        if self.weight is not None:
            d["weight"] = self.weight
        if self.witnesses:
            d["witnesses"] = [{"codeword": list(w), "rank": rk} for w, rk in self.witnesses]
        if self.generator_row is not None:
            d["generator_row"] = list(self.generator_row)
        if self.certificate_rank is not None:
            d["certificate_rank"] = self.certificate_rank
        if self.hierarchy is not None:
            d["hierarchy"] = list(self.hierarchy)
        if self.reduction is not None:
            d["reduction"] = self.reduction.to_dict()
        return d


def _weight_witnesses(C: RankMetricCode):
    """Common rank weight of all non-zero codewords, or two codewords of different rank."""
    first = None
    for words in C.projective_codewords():
        w = rank_weights(C.tower, words)
        if first is None:
            first = (tuple(int(x) for x in words[0]), int(w[0]))
        odd = np.flatnonzero(w != first[1])
        if odd.size:
            i = odd[0]
            return None, (first, (tuple(int(x) for x in words[i]), int(w[i])))
    return first[1], ()


def classify_constant_weight(C: RankMetricCode, method: str = "subcode") -> ClassificationResult:
    """Decide whether C has constant rank weight and, if so, certify its structure.

    A degenerate code is first replaced by its non-degenerate reduction. For
    ``k > 1`` a constant-weight code must have ``n = mk``, columns forming an
    F_q-basis of F_{q^m}^k and hierarchy ``(m, 2m, ..., km)``.

    Raises:
        ClassificationContradiction: constant weight with ``k > 1`` but one of
            those conditions fails.
    """
    red = None
    if not is_nondegenerate(C):
        C, red = reduce_degenerate(C)
    n, k, m = C.n, C.k, C.m
    weight, witnesses = _weight_witnesses(C)
    if weight is None:
        return ClassificationResult("NotConstantWeight", "NotApplicable", n, k, m, witnesses=witnesses, reduction=red)
    if k == 1:
        return ClassificationResult(
            "ConstantWeight", "K1", n, k, m, weight=weight,
            generator_row=tuple(int(x) for x in C.G[0]), reduction=red,
        )
    cert = int(fq_column_rank(C.tower, C.G))
    h = hierarchy(C, method).weights
    problems = []
    if n != m * k:
        problems.append(f"n={n} != mk={m * k}")
    if cert != m * k:
        problems.append(f"column F_q-rank {cert} != mk={m * k}")
    if h != h1_hierarchy_formula(m, k):
        problems.append(f"hierarchy {h} != {h1_hierarchy_formula(m, k)}")
    if problems:
        raise ClassificationContradiction("constant-weight code with k > 1: " + "; ".join(problems))
    return ClassificationResult(
        "ConstantWeight", "HadamardEquivalent", n, k, m, weight=weight,
        certificate_rank=cert, hierarchy=h, reduction=red,
    )


@dataclass
class AuditReport:
    q: int
    m: int
    k: int
    n: int
    codes: int = 0
    nondegenerate: int = 0
    constant_weight: int = 0
    constant_weight_nondegenerate: int = 0
    certificate_passes: int = 0
    structures: dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def classification_audit(q: int, m: int, k: int, n: int) -> AuditReport:
    """Classify every k-dimensional subspace of F_{q^m}^n.

    Reports raw counts; certificate passes are counted per code, not per
    equivalence class.
    """
    tower = tower_for(q, m)
    rep = AuditReport(q, m, k, n)
    for G in SubspaceEnumerator(tower, n, k, "ext"):
        C = make_code(tower, G)
        nondeg = support_dimension(C) == n
        res = classify_constant_weight(C)
        rep.codes += 1
        rep.nondegenerate += nondeg
        rep.structures[res.structure] = rep.structures.get(res.structure, 0) + 1
        if res.constant_weight:
            rep.constant_weight += 1
            rep.constant_weight_nondegenerate += nondeg
            rep.certificate_passes += res.structure == "HadamardEquivalent"
    assert rep.codes == subspace_count_formula(q, m, n, k)
    return rep


# -- corpus --------------------------------------------------------------------


def random_code(
    tower: FieldTower, n: int, k: int, rng: np.random.Generator, nondegenerate: bool = True, tries: int = 1000
) -> RankMetricCode:
    """Uniformly random full-rank ``k x n`` generator, resampled until it qualifies."""
    if not 1 <= k <= n:
        raise BadParameters(f"need 1 <= k <= n, got k={k}, n={n}")
    if nondegenerate and n > tower.m * k:
        raise BadParameters(f"no non-degenerate code has n={n} > mk={tower.m * k}")
    for _ in range(tries):
        G = tower.random_elements(rng, (k, n))
        if int(fq_column_rank(tower, G)) < (n if nondegenerate else 0):
            continue
        try:
            return make_code(tower, G)
        except Exception:  # rank-deficient draw
            continue
    raise BadParameters(f"no suitable code found in {tries} draws")


@dataclass(frozen=True)
class CorpusEntry:
    label: str
    code: RankMetricCode


def build_corpus(seed: int = 2024, size: int = 60) -> list[CorpusEntry]:
    """Deterministic test corpus over q in {2,3}, m in {2,3}, n <= 6, k <= 3.

    Hadamard codes, their duals and Gabidulin codes first, then random
    non-degenerate codes until ``size`` distinct codes are collected.
    """
    entries: list[CorpusEntry] = []
    seen: set[RankMetricCode] = set()

    def add(label: str, C: RankMetricCode) -> None:
        if C.n <= 6 and C.k <= 3 and C not in seen:
            seen.add(C)
            entries.append(CorpusEntry(label, C))

    for q in (2, 3):
        for m in (2, 3):
            for k in (1, 2, 3):
                if m * k <= 6:
                    add(f"h1({q},{m},{k})", hadamard_h1(q, m, k))
                    add(f"h2({q},{m},{k})", hadamard_h2(q, m, k))
            for n in range(1, m + 1):
                for k in range(1, n + 1):
                    add(f"gabidulin({q},{m},{n},{k})", gabidulin(q, m, n, k))
    rng = np.random.default_rng(seed)
    shapes = [(q, m, n, k) for q in (2, 3) for m in (2, 3) for n in range(2, 7) for k in (1, 2, 3) if k < n <= m * k]
    i = 0
    while len(entries) < size:
        q, m, n, k = shapes[i % len(shapes)]
        i += 1
        add(f"random({q},{m},{n},{k})#{i}", random_code(tower_for(q, m), n, k, rng))
    return entries
