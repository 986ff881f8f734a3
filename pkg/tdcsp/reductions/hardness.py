"""
Weighted satisfiability of anti-monotone normalized formulas to Binary CSP.

The variables set to true are chosen by a clique ``W`` of ``k`` vertices
with pairwise-distinct values. The formula tree below the root, with the
conjunction levels contracted away, becomes a forest ``T'`` on the other
vertices: each disjunction picks one of its terms, and a disjunction whose
enclosing term was not picked takes the inactive value ``0``. Only the
leaves of ``T'`` are joined to ``W``.
"""

import warnings
from typing import Dict, FrozenSet, List, Optional, Tuple

from ..core import BinCspInstance, Pair
from ..errors import InputError
from ..formulas import NormalizedFormula, Or, is_antimonotone, is_normalized
from ..formulas.normalized import iter_literals, normalization_level, variables_of
from ..structure import EliminationForest

INACTIVE = 0

TreeOutput = Tuple[BinCspInstance, FrozenSet[int], EliminationForest]


def _check_antimonotone(F: NormalizedFormula) -> None:
    if not is_antimonotone(F):
        raise InputError("Formula must be anti-monotone (negative literals only)")


def _canonical_unsatisfiable(F: NormalizedFormula, k: int) -> TreeOutput:
    warnings.warn(
        f"Weight {k} exceeds the {F.n} available variables; "
        "emitting the canonical unsatisfiable instance",
        stacklevel=3,
    )
    return BinCspInstance(((),)), frozenset(), EliminationForest((0,))


def _formula_tree_instance(F: NormalizedFormula, k: int) -> TreeOutput:
    n = F.n
    W = tuple(range(k))
    domains: List[Tuple[int, ...]] = [tuple(range(n)) for _ in W]
    relations: Dict[Tuple[int, int], List[Pair]] = {}
    for i in W:
        for j in range(i + 1, k):
            relations[(i, j)] = [(a, b) for a in range(n) for b in range(n) if a != b]

    # (disjunction, parent vertex, 1-based index of the enclosing term)
    tree: List[Tuple[Or, Optional[int], Optional[int]]] = []
    has_children: Dict[int, bool] = {}

    def visit(node: Or, parent: Optional[int], term: Optional[int]) -> None:
        vid = k + len(tree)
        tree.append((node, parent, term))
        has_children[vid] = False
        for i, term_node in enumerate(node.children, 1):
            for child in term_node.children:
                if isinstance(child, Or):
                    has_children[vid] = True
                    visit(child, vid, i)

    for top in F.root.children:
        visit(top, None, None)

    parent_of: Dict[int, int] = {}
    for offset, (node, parent, term) in enumerate(tree):
        vid = k + offset
        picks = tuple(range(1, len(node.children) + 1))
        domains.append(picks if parent is None else (INACTIVE,) + picks)
        if parent is not None:
            parent_of[vid] = parent
            relations[(parent, vid)] = [
                (i, INACTIVE) for i in domains[parent] if i != term
            ] + [(term, j) for j in picks]
        if has_children[vid]:
            continue
        blocked = [variables_of(term_node) for term_node in node.children]
        for w in W:
            pairs = [(x, INACTIVE) for x in range(n)] if parent is not None else []
            pairs += [(x, i) for i in picks for x in range(n) if x not in blocked[i - 1]]
            relations[(w, vid)] = pairs

    inst = BinCspInstance.build(domains, relations)
    forest = EliminationForest(tuple(range(k, k + len(tree))), parent_of)
    return inst, frozenset(W), forest


def wsat3am_to_bincsp_vc(
    F: NormalizedFormula, k: int
) -> Tuple[BinCspInstance, FrozenSet[int]]:
    """
    Anti-monotone 3-normalized weighted satisfiability to Binary CSP with a
    vertex cover of size ``k``.

    ``W = 0..k-1`` holds the chosen variables; vertex ``k + i`` picks the
    satisfied term of the ``i``-th disjunction.

    Raises:
        InputError: If F is not anti-monotone and 3-normalized, or ``k < 0``
    """
    _check_antimonotone(F)
    if not is_normalized(F, 3):
        raise InputError("Formula must be 3-normalized")
    if k < 0:
        raise InputError("Weight must be >= 0")
    if F.n < k:
        inst, W, _ = _canonical_unsatisfiable(F, k)
        return inst, W
    inst, W, _ = _formula_tree_instance(F, k)
    return inst, W


def wsat2d1am_to_bincsp_forest_modulator(
    F: NormalizedFormula, k: int, d: int
) -> TreeOutput:
    """
    Anti-monotone (2d+1)-normalized weighted satisfiability to Binary CSP with
    a modulator of size ``k`` to a forest of depth ``d``.

    For ``d = 1`` the output equals :func:`wsat3am_to_bincsp_vc`.

    Returns:
        (instance, W, forest of G - W of depth <= d)

    Raises:
        InputError: On precondition violations
    """
    if d < 1:
        raise InputError("Depth must be >= 1")
    _check_antimonotone(F)
    if not is_normalized(F, 2 * d + 1):
        raise InputError(f"Formula must be {2 * d + 1}-normalized")
    if k < 0:
        raise InputError("Weight must be >= 0")
    if F.n < k:
        return _canonical_unsatisfiable(F, k)
    return _formula_tree_instance(F, k)


def fvs_formula_depth(F: NormalizedFormula) -> int:
    """Forest depth ``d`` such that F is (2d+1)-normalized.

    Literal-free formulas use the smallest odd level not below their own.
    """
    level = normalization_level(F)
    has_literals = any(True for _ in iter_literals(F.root))
    if has_literals and (level < 3 or level % 2 == 0):
        raise InputError(f"Formula level {level} is not an odd level >= 3")
    if level % 2 == 0:
        level += 1
    return max(1, (level - 1) // 2)


def wsatam_to_bincsp_fvs(
    F: NormalizedFormula, k: int
) -> Tuple[BinCspInstance, FrozenSet[int]]:
    """
    Anti-monotone normalized weighted satisfiability to Binary CSP with a
    feedback vertex set of size ``k`` (the forest depth is unbounded).

    Raises:
        InputError: On precondition violations
    """
    _check_antimonotone(F)
    fvs_formula_depth(F)
    if k < 0:
        raise InputError("Weight must be >= 0")
    if F.n < k:
        inst, W, _ = _canonical_unsatisfiable(F, k)
        return inst, W
    inst, W, _ = _formula_tree_instance(F, k)
    return inst, W
