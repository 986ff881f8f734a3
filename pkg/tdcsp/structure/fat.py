"""k-fat elimination trees and the d-fold vertex cover number.

A k-fat elimination tree of depth d is a rooted tree of bags of size at most
k partitioning V(G) such that every edge joins vertices in equal or
ancestor/descendant bags. It exists iff ``vc_d(G) <= k`` where ``vc_1(G) = |V(G)|``
and ``vc_d(G) <= k`` iff some ``U`` with ``|U| <= k`` leaves components of
``G - U`` with ``vc_{d-1} <= k``.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from ..config import CapsConfig, get_caps
from ..errors import InputError, ResourceCapError
from .forests import EliminationForest
from .graph import BitGraph, Graph, iter_bits, popcount


@dataclass(frozen=True)
class FatEliminationTree:
    """Tree over bag nodes ``0..m-1`` (root 0) with one vertex bag per node."""

    tree: EliminationForest
    bags: Tuple[Tuple[int, ...], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0)

    @property
    def depth(self) -> int:
        return self.tree.depth

    def bag_of(self) -> Dict[int, int]:
        """Map graph vertex -> bag node."""
        return {v: t for t, bag in enumerate(self.bags) for v in bag}


def validate_fat_tree(G: Graph, T: FatEliminationTree, d: int, k: int) -> bool:
    """True iff ``T`` is a k-fat elimination tree of ``G`` of depth at most ``d``."""
    if set(T.tree.nodes) != set(range(len(T.bags))):
        return False
    placed = [v for bag in T.bags for v in bag]
    if len(placed) != len(set(placed)) or set(placed) != set(G.vertices):
        return False
    if T.width > k or T.depth > d:
        return False
    where = T.bag_of()
    return all(
        T.tree.is_ancestor(where[u], where[v]) or T.tree.is_ancestor(where[v], where[u])
        for u, v in G.edges
    )


def fat_elimination_tree(
    G: Graph, d: int, k: int, caps: Optional[CapsConfig] = None
) -> Optional[FatEliminationTree]:
    """
    Search for a k-fat elimination tree of depth at most ``d``.

    A vertex set of size at most ``k`` becomes a single bag. Otherwise root
    bags ``U`` are tried by size and then lexicographically, recursing into
    the components of ``G - U`` with depth ``d - 1``. Results are memoized on
    (vertex subset, depth).

    Returns:
        The first witness found, or None iff ``vc_d(G) > k``

    Raises:
        ResourceCapError: If G has more than ``caps.max_vertices`` vertices
    """
    caps = get_caps(caps)
    if G.n > caps.max_vertices:
        raise ResourceCapError("max_vertices", caps.max_vertices, G.n)
    if d < 1:
        return None
    bg = BitGraph(G)
    memo: Dict[Tuple[int, int], Optional[tuple]] = {}

    def search(mask: int, depth: int) -> Optional[tuple]:
        key = (mask, depth)
        if key in memo:
            return memo[key]
        result = None
        if popcount(mask) <= k:
            result = (mask, ())
        elif depth > 1:
            bits = list(iter_bits(mask))
            for size in range(0, k + 1):
                for chosen in combinations(bits, size):
                    umask = sum(1 << i for i in chosen)
                    subtrees = []
                    for comp in bg.components(mask & ~umask):
                        sub = search(comp, depth - 1)
                        if sub is None:
                            break
                        subtrees.append(sub)
                    else:
                        result = (umask, tuple(subtrees))
                        break
                if result is not None:
                    break
        memo[key] = result
        return result

    found = search(bg.full, d)
    if found is None:
        return None
    bags: List[Tuple[int, ...]] = []
    parent: Dict[int, int] = {}

    def flatten(node: tuple, above: Optional[int]) -> None:
        idx = len(bags)
        bags.append(tuple(bg.members(node[0])))
        if above is not None:
            parent[idx] = above
        for child in node[1]:
            flatten(child, idx)

    flatten(found, None)
    return FatEliminationTree(EliminationForest(tuple(range(len(bags))), parent), tuple(bags))


def d_fold_vc_number(G: Graph, d: int, caps: Optional[CapsConfig] = None) -> int:
    """Minimum ``k`` admitting a k-fat elimination tree of depth at most ``d``; 0 on the empty graph."""
    if d < 1:
        raise InputError("d must be >= 1")
    for k in range(0, G.n + 1):
        if fat_elimination_tree(G, d, k, caps) is not None:
            return k
    return G.n


def fat_tree_to_elimination_forest(T: FatEliminationTree) -> EliminationForest:
    """
    Chain every bag into a path to get an elimination forest of depth <= d*k.

    The first vertex of a bag hangs below the last vertex of the nearest
    ancestor bag that is nonempty.
    """
    parent: Dict[int, int] = {}
    bottom: Dict[int, Optional[int]] = {}
    for t in T.tree.preorder():
        above = T.tree.parent.get(t)
        hook = bottom[above] if above is not None else None
        for v in T.bags[t]:
            if hook is not None:
                parent[v] = hook
            hook = v
        bottom[t] = hook
    vertices = tuple(v for bag in T.bags for v in bag)
    return EliminationForest(vertices, parent)
