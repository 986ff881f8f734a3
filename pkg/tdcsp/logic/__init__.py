"""
Relational structures, guided and prenex sentences, their evaluators and the
encodings of Binary CSP on elimination forests and fat elimination trees.
"""

from .encodings import bincsp_dfold_to_prenex, bincsp_td_to_structure, is_forest_shaped
from .evaluate import count_guided_chains, eval_guided, eval_prenex
from .syntax import (
    FALSE,
    TRUE,
    Atom,
    Conj,
    Disj,
    Equals,
    Formula,
    GuidedSentence,
    Not,
    PrenexSentence,
    RelationalStructure,
    eval3,
    implies,
)

__all__ = [
    "Atom",
    "Equals",
    "Not",
    "Conj",
    "Disj",
    "Formula",
    "TRUE",
    "FALSE",
    "implies",
    "eval3",
    "RelationalStructure",
    "GuidedSentence",
    "PrenexSentence",
    "bincsp_td_to_structure",
    "bincsp_dfold_to_prenex",
    "is_forest_shaped",
    "eval_guided",
    "eval_prenex",
    "count_guided_chains",
]
