import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import PolyField, fq_rank_prime, min_distance_via_gl
from rankmetric.code import (
    Codeword,
    code_from_dict,
    dual,
    hamming_weight,
    is_nondegenerate,
    load_code,
    make_code,
    min_rank_distance,
    rank_weight,
    rank_weight_distribution,
    reduce_degenerate,
    support_dimension,
)
from rankmetric.constructions import gabidulin, hadamard_h1, hadamard_h2
from rankmetric.errors import DualDimensionZero, EnumerationTooLarge, RankDeficientGenerator
from rankmetric.field_tower import ONE, ZERO, tower_for
from rankmetric.limits import override_caps
from rankmetric.linalg import matmul, rank

F4 = tower_for(2, 2)
O, Z, g, g2 = ONE, ZERO, 1, 2


def test_make_code_examples():
    C = make_code(F4, [[O, g, Z, Z], [Z, Z, O, g]])
    assert C == hadamard_h1(2, 2, 2)
    triv = make_code(F4, [[O]])
    assert (triv.n, triv.k) == (1, 1)
    with pytest.raises(RankDeficientGenerator):
        make_code(F4, [[O, g], [g, g2]])
    with pytest.raises(RankDeficientGenerator):
        make_code(F4, np.zeros((0, 3), np.int64))


def test_canonical_form_and_parity_check(corpus):
    for e in corpus:
        C = e.code
        T = C.tower
        assert rank(T, C.G) == C.k
        assert rank(T, C.H) == C.n - C.k
        if C.k < C.n:
            assert np.all(matmul(T, C.G, C.H.T) == ZERO)
        # any invertible change of rows gives the same code
        rng = np.random.default_rng(C.n * 10 + C.k)
        while True:
            A = T.random_elements(rng, (C.k, C.k))
            if rank(T, A) == C.k:
                break
        assert make_code(T, matmul(T, A, C.G)) == C


def test_dual_examples():
    C = hadamard_h1(2, 2, 2)
    assert dual(C) == hadamard_h2(2, 2, 2)
    assert (dual(C).n, dual(C).k) == (4, 2)
    Gab = gabidulin(2, 3, 3, 2)
    assert (dual(Gab).n, dual(Gab).k) == (3, 1)
    with pytest.raises(DualDimensionZero):
        dual(make_code(F4, [[O, Z], [Z, O]]))


def test_double_dual(corpus):
    for e in corpus:
        if e.code.k < e.code.n:
            assert dual(dual(e.code)) == e.code


def test_rank_weight_examples():
    assert rank_weight([O, g, Z, O], F4) == 2
    assert rank_weight(Codeword(F4, (Z, Z, Z))) == 0
    assert rank_weight([O, O, O], F4) == 1
    assert hamming_weight([O, g, Z, O]) == 3
    assert hamming_weight([Z, Z]) == 0
    assert hamming_weight([g, g, g]) == 3
    with pytest.raises(TypeError):
        rank_weight([O, g])


def test_min_distance_examples():
    assert min_rank_distance(hadamard_h1(2, 2, 2)) == 2
    assert min_rank_distance(make_code(tower_for(2, 3), [[0, 1, 2], [0, 2, 4]])) == 2
    assert min_rank_distance(make_code(F4, [[O, g]])) == 2


def test_distribution_examples():
    assert rank_weight_distribution(hadamard_h1(2, 2, 2)) == {0: 1, 2: 15}
    assert rank_weight_distribution(make_code(F4, [[O]])) == {0: 1, 1: 3}
    assert rank_weight_distribution(make_code(F4, [[O, Z], [Z, O]])) == {0: 1, 1: 9, 2: 6}


def test_codeword_cap():
    with override_caps(10):
        with pytest.raises(EnumerationTooLarge):
            rank_weight_distribution(hadamard_h1(2, 2, 2))


def test_degeneracy():
    assert is_nondegenerate(hadamard_h1(2, 2, 2))
    C = make_code(F4, [[O, g, g2]])
    assert not is_nondegenerate(C)
    R, red = reduce_degenerate(C)
    assert red.n_reduced == R.n == 2 == support_dimension(C)
    assert is_nondegenerate(R)
    # G M = [G' | 0] with M invertible over F_q
    GM = matmul(F4, C.G, red.M)
    assert rank(F4, red.M) == 3 and all(F4.is_in_subfield(int(x)) for x in red.M.ravel())
    assert np.array_equal(GM[:, :2], C.G[:, list(red.kept_columns)])
    assert np.all(GM[:, 2:] == ZERO)
    H = hadamard_h1(2, 2, 2)
    assert reduce_degenerate(H)[0] == H


def test_serialization_round_trip(tmp_path, corpus):
    for e in corpus[:10]:
        p = tmp_path / "c.json"
        e.code.save(p)
        assert load_code(p) == e.code
        assert json.loads(p.read_text()) == e.code.to_dict()
    d = hadamard_h1(2, 2, 2).to_dict()
    d["k"] = 3
    with pytest.raises(ValueError):
        code_from_dict(d)


def test_singleton_on_corpus(corpus):
    for e in corpus:
        assert min_rank_distance(e.code) <= e.code.n - e.code.k + 1


@pytest.mark.parametrize(
    "G",
    [
        [[0, 1]],
        [[0, 1, -1]],
        [[0, -1, 1], [-1, 0, 2]],
        [[0, 0, 0]],
        [[0, -1], [-1, 0]],
        [[0, 1, 2]],
    ],
)
def test_min_distance_equals_gl_oracle(G):
    T = tower_for(2, 2)
    F = PolyField(2, T.modulus)
    assert min_rank_distance(make_code(T, G)) == min_distance_via_gl(F, 2, G)


def test_min_distance_equals_gl_oracle_f8():
    T = tower_for(2, 3)
    F = PolyField(2, T.modulus)
    for G in ([[0, 1, 2], [0, 2, 4]], [[0, 1, 3]], [[0, 1, 1]]):
        assert min_rank_distance(make_code(T, G)) == min_distance_via_gl(F, 2, G)


vec9 = st.lists(st.integers(-1, 7), min_size=1, max_size=5)


@given(vec9, st.integers(0, 7))
def test_rank_weight_properties(v, lam):
    T = tower_for(3, 2)
    F = PolyField(3, T.modulus)
    w = rank_weight(v, T)
    assert w <= hamming_weight(v)
    assert w == fq_rank_prime(F, v)
    scaled = [T.mul(lam, x) for x in v]
    assert rank_weight(scaled, T) == w
