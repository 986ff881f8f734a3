"""
tdcsp - Binary CSP under structural parameters

Exact solvers for Binary CSP parameterized by vertex cover, modulators to
bounded treedepth, feedback vertex sets and elimination forests; the
parameterized reductions between Binary CSP, weighted satisfiability,
weighted circuit satisfiability, List Coloring and Precoloring Extension;
alternating read-once stack machines; universal trees; and first-order
encodings, all cross-checked against brute-force oracles.
"""

__version__ = "0.1.0"
__license__ = "MIT"

from .config import get_caps, get_config, load_config
from .core import (
    BinCspInstance,
    ListColoringInstance,
    PrecoloringInstance,
    check_assignment,
    random_instance,
)
from .errors import FormatError, InputError, ResourceCapError, TdcspError
from .registry import apply_rule, list_rules
from .solvers import (
    solve,
    solve_bruteforce,
    solve_by_elimination_forest,
    solve_by_modulator,
    solve_by_vertex_cover,
)
from .structure import EliminationForest, Graph, treedepth_exact
from .verify import run_campaign

__all__ = [
    "load_config",
    "get_config",
    "get_caps",
    "BinCspInstance",
    "ListColoringInstance",
    "PrecoloringInstance",
    "check_assignment",
    "random_instance",
    "Graph",
    "EliminationForest",
    "treedepth_exact",
    "solve",
    "solve_bruteforce",
    "solve_by_elimination_forest",
    "solve_by_vertex_cover",
    "solve_by_modulator",
    "apply_rule",
    "list_rules",
    "run_campaign",
    # Errors
    "TdcspError",
    "InputError",
    "FormatError",
    "ResourceCapError",
]
