"""
Normalized formulas, Boolean circuits and exact-weight satisfiability oracles.
"""

from .circuits import (
    BooleanCircuit,
    CircuitBuilder,
    Gate,
    eval_circuit,
    formula_to_circuit,
    weighted_circuit_sat_bruteforce,
)
from .normalized import (
    And,
    Lit,
    NormalizedFormula,
    Or,
    WeightedSatInstance,
    colex_subsets,
    conj,
    disj,
    eval_formula,
    is_antimonotone,
    is_monotone,
    is_normalized,
    neg,
    normalization_level,
    pad_to_level,
    pos,
    random_normalized_formula,
    weighted_sat_bruteforce,
    weighted_sat_naive,
)

__all__ = [
    "And",
    "Or",
    "Lit",
    "conj",
    "disj",
    "pos",
    "neg",
    "NormalizedFormula",
    "WeightedSatInstance",
    "eval_formula",
    "normalization_level",
    "is_normalized",
    "is_antimonotone",
    "is_monotone",
    "pad_to_level",
    "random_normalized_formula",
    "colex_subsets",
    "weighted_sat_bruteforce",
    "weighted_sat_naive",
    "Gate",
    "BooleanCircuit",
    "CircuitBuilder",
    "eval_circuit",
    "weighted_circuit_sat_bruteforce",
    "formula_to_circuit",
]
