"""Exhaustive computations for F_{q^m}-linear rank-metric codes and their q-systems."""

from .code import (
    Codeword,
    RankMetricCode,
    code_from_dict,
    dual,
    load_code,
    make_code,
    min_rank_distance,
    rank_weight,
    rank_weight_distribution,
    reduce_degenerate,
)
from .constructions import (
    build_corpus,
    classify_constant_weight,
    gabidulin,
    hadamard_h1,
    hadamard_h2,
    lemma1_check,
)
from .errors import RankMetricError
from .field_tower import ONE, ZERO, FieldTower, make_tower, tower_for
from .grw import WeightHierarchy, grw, hierarchy, verify_duality
from .limits import override_caps
from .qsystem import QSystem, grw_geometric, linear_set_points, make_qsystem, qsystem_from_code
from .wiretap import coset_encode, eavesdrop, leakage_dim, profile, verify_sandwich

__all__ = [
    "ONE",
    "ZERO",
    "Codeword",
    "FieldTower",
    "QSystem",
    "RankMetricCode",
    "RankMetricError",
    "WeightHierarchy",
    "build_corpus",
    "classify_constant_weight",
    "code_from_dict",
    "coset_encode",
    "dual",
    "eavesdrop",
    "gabidulin",
    "grw",
    "grw_geometric",
    "hadamard_h1",
    "hadamard_h2",
    "hierarchy",
    "leakage_dim",
    "lemma1_check",
    "linear_set_points",
    "load_code",
    "make_code",
    "make_qsystem",
    "make_tower",
    "min_rank_distance",
    "override_caps",
    "profile",
    "qsystem_from_code",
    "rank_weight",
    "rank_weight_distribution",
    "reduce_degenerate",
    "tower_for",
    "verify_duality",
    "verify_sandwich",
]
