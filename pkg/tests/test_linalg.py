import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import PolyField, count_subspaces, rank_ext, subspaces_as_sets
from rankmetric import limits
from rankmetric.errors import DimensionOutOfRange, EnumerationTooLarge, GaussianOverflow, MixedTowers
from rankmetric.field_tower import ONE, ZERO, tower_for
from rankmetric.linalg import (
    SubspaceEnumerator,
    all_vectors,
    batch_rank,
    format_matrix,
    fq_column_rank,
    fq_rank_of_fqm_vectors,
    gaussian_binomial,
    kernel,
    matmul,
    parse_matrix,
    rank,
    rref,
    subspace_count_formula,
    subspaces_through_point_formula,
)

F4 = tower_for(2, 2)
O, Z, g, g2 = ONE, ZERO, 1, 2  # 1, 0, g, g^2 in exponent encoding


def test_rref_examples():
    R, rk = rref(F4, [[O, g], [g, g2]])
    assert rk == 1
    assert R.tolist() == [[O, g], [Z, Z]]
    R, rk = rref(F4, [[O, Z], [Z, O]])
    assert rk == 2 and R.tolist() == [[O, Z], [Z, O]]
    R, rk = rref(F4, [[Z, Z], [Z, Z]])
    assert rk == 0


def test_kernel_examples():
    assert kernel(F4, [[O, Z], [Z, O]]).shape == (0, 2)
    K = kernel(F4, [[O, g]])
    assert K.shape == (1, 2)
    # (g, 1) up to scale; the kernel keeps the free coordinate at one
    assert K[0].tolist() == [g, O]
    assert kernel(F4, [[Z, Z], [Z, Z]]).shape == (2, 2)


def test_fq_rank_examples():
    assert fq_rank_of_fqm_vectors(F4, [[O, Z], [g, Z], [Z, O], [Z, g]]) == 4
    assert fq_rank_of_fqm_vectors(F4, [[g, O], [g, O]]) == 1
    assert fq_rank_of_fqm_vectors(F4, [[O], [g]]) == 2
    assert fq_rank_of_fqm_vectors(F4, []) == 0


def test_fq_rank_rejects_mixed_towers():
    from rankmetric.code import Codeword

    with pytest.raises(MixedTowers):
        fq_rank_of_fqm_vectors(F4, [Codeword(tower_for(3, 2), (0, 1))])


def test_subspace_counts():
    assert len(SubspaceEnumerator(tower_for(2, 1), 2, 1)) == 3
    assert len(SubspaceEnumerator(tower_for(2, 1), 4, 2)) == 35
    assert len(SubspaceEnumerator(F4, 4, 0)) == 1
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(4, 2, 4) == 357
    assert gaussian_binomial(5, 0, 7) == 1


def test_gaussian_errors():
    with pytest.raises(DimensionOutOfRange):
        gaussian_binomial(3, 4, 2)
    with pytest.raises(GaussianOverflow):
        gaussian_binomial(40, 20, 2)


@pytest.mark.parametrize("q,n", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 3), (3, 4), (4, 3)])
def test_enumeration_matches_bruteforce_sets(q, n):
    T = tower_for(q, 1)
    F = PolyField(T.p, T.modulus)
    for r in range(n + 1):
        spaces = [frozenset(map(tuple, span(T, B))) for B in SubspaceEnumerator(T, n, r)]
        assert len(set(spaces)) == len(spaces) == gaussian_binomial(n, r, q)
        if q ** (n * 1) <= 64 and r <= 3:
            assert set(spaces) == subspaces_as_sets(F, q, n, r)


def span(T, B):
    coeffs = np.concatenate(list(all_vectors(T, B.shape[0], "base"))) if B.shape[0] else np.zeros((1, 0), np.int64)
    if B.shape[0] == 0:
        return np.full((1, B.shape[1]), ZERO)
    return matmul(T, coeffs, B)


def test_counting_formulas_match_bruteforce():
    F = PolyField(2, (1, 1))
    for n in range(1, 5):
        for r in range(n + 1):
            assert count_subspaces(F, 2, n, r) == gaussian_binomial(n, r, 2)


@pytest.mark.parametrize("q,m,k", [(2, 1, 4), (2, 2, 3), (3, 1, 3), (3, 2, 2)])
def test_lr_formulas(q, m, k):
    T = tower_for(q, m)
    point = np.full(k, ZERO)
    point[0] = ONE
    for r in range(0, k + 1):
        enum = SubspaceEnumerator(T, k, r, "ext")
        assert len(enum) == subspace_count_formula(q, m, k, r)
        through = sum(rank(T, np.vstack([B, point])) == r for B in enum)
        assert through == subspaces_through_point_formula(q, m, k, r)


def test_enumeration_cap():
    with limits.override_caps(10):
        with pytest.raises(EnumerationTooLarge) as exc:
            SubspaceEnumerator(tower_for(2, 1), 4, 2)
    assert exc.value.size == 35 and exc.value.cap == 10


def test_matrix_text_round_trip():
    M = np.array([[O, g, Z], [g2, Z, O]])
    T2, back = parse_matrix(format_matrix(F4, M))
    assert T2 == F4 and np.array_equal(back, M)
    with pytest.raises(ValueError):
        parse_matrix("2 1 2 1 2\n1 1 1\n0\n")


def test_batch_rank_empty_shapes():
    assert batch_rank(F4, np.zeros((3, 2, 0), np.int64)).tolist() == [0, 0, 0]


mat16 = st.lists(st.lists(st.integers(-1, 14), min_size=3, max_size=3), min_size=1, max_size=4)


@given(mat16)
def test_rank_matches_oracle(rows):
    T = tower_for(4, 2)
    F = PolyField(T.p, T.modulus)
    M = np.array(rows)
    assert rank(T, M) == rank_ext(F, rows)
    assert rank(T, M) == rank(T, M.T)


@given(mat16)
def test_rref_idempotent_and_kernel(rows):
    T = tower_for(4, 2)
    R, rk = rref(T, rows)
    R2, rk2 = rref(T, R)
    assert rk == rk2 and np.array_equal(R, R2)
    K = kernel(T, rows)
    assert K.shape[0] == len(rows[0]) - rk
    if K.shape[0]:
        assert np.all(matmul(T, np.array(rows), K.T) == ZERO)


@given(st.lists(st.lists(st.integers(-1, 7), min_size=3, max_size=3), min_size=1, max_size=4))
def test_fq_rank_basis_invariance(rows):
    T = tower_for(3, 2)
    M = np.array(rows)
    assert fq_column_rank(T, M) == fq_column_rank(T, M, basis=(1, 2)) == fq_column_rank(T, M, basis=(0, 5))
