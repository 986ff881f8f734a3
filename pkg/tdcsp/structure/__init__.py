"""
Structural parameters and their witnesses.

Graphs, elimination forests and treedepth, vertex covers, feedback vertex
sets, treedepth modulators, k-fat elimination trees and tree edge labelings.
"""

from .covers import (
    feedback_vertex_set_exact,
    is_feedback_vertex_set,
    is_vertex_cover,
    vertex_cover_exact,
)
from .fat import (
    FatEliminationTree,
    d_fold_vc_number,
    fat_elimination_tree,
    fat_tree_to_elimination_forest,
    validate_fat_tree,
)
from .forests import (
    EliminationForest,
    modulator_to_treedepth,
    treedepth_exact,
    validate_elimination_forest,
)
from .graph import Graph
from .labeling import EdgeLabeling, leaf_index_width, tree_edge_labeling

__all__ = [
    "Graph",
    "EliminationForest",
    "FatEliminationTree",
    "EdgeLabeling",
    "validate_elimination_forest",
    "treedepth_exact",
    "vertex_cover_exact",
    "feedback_vertex_set_exact",
    "modulator_to_treedepth",
    "fat_elimination_tree",
    "d_fold_vc_number",
    "validate_fat_tree",
    "fat_tree_to_elimination_forest",
    "is_vertex_cover",
    "is_feedback_vertex_set",
    "tree_edge_labeling",
    "leaf_index_width",
]
