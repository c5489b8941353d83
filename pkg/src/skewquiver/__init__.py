"""Quivers of skew group algebras of path algebras, with a brute-force oracle."""

from .cyclo import CycloNumber, PrimeEmbedding, choose_prime, parse_cyclo
from .groups import FiniteGroup, Subgroup, from_cayley_table, from_permutation_generators, orbit_frame
from .characters import CharacterTable, ClassFunction, compute_character_table, inner_product
from .quiver import LinearQuiverAction, Quiver, validate_action
from .skew import SkewQuiver, build_skew_quiver, check_choices, default_embedding
from .preprojective import (
    check_relation_invariance,
    double_quiver,
    extend_action_contragredient,
    fold_double,
    from_pairing,
    symplectic_data,
)
from .oracle import build_explicit, oracle_arrow_count, oracle_multiplicities, verify_rG
from .mckay import crosscheck_fold, mckay_graph, sl2_subgroup, sl2_zoo

__all__ = [
    "CycloNumber",
    "PrimeEmbedding",
    "choose_prime",
    "parse_cyclo",
    "FiniteGroup",
    "Subgroup",
    "from_cayley_table",
    "from_permutation_generators",
    "orbit_frame",
    "CharacterTable",
    "ClassFunction",
    "compute_character_table",
    "inner_product",
    "LinearQuiverAction",
    "Quiver",
    "validate_action",
    "SkewQuiver",
    "build_skew_quiver",
    "check_choices",
    "default_embedding",
    "check_relation_invariance",
    "double_quiver",
    "extend_action_contragredient",
    "fold_double",
    "from_pairing",
    "symplectic_data",
    "build_explicit",
    "oracle_arrow_count",
    "oracle_multiplicities",
    "verify_rG",
    "crosscheck_fold",
    "mckay_graph",
    "sl2_subgroup",
    "sl2_zoo",
]

__version__ = "0.1.0"
