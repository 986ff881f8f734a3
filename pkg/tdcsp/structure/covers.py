"""Exact vertex covers and feedback vertex sets by subset enumeration."""

from itertools import combinations
from typing import FrozenSet, Iterable, Optional

from ..config import CapsConfig, get_caps
from ..errors import ResourceCapError
from .graph import BitGraph, Graph


def is_vertex_cover(G: Graph, W: Iterable[int]) -> bool:
    W = set(W)
    return all(u in W or v in W for u, v in G.edges)


def is_feedback_vertex_set(G: Graph, S: Iterable[int]) -> bool:
    S = set(S) & set(G.vertices)
    return G.without(S).is_forest()


def vertex_cover_exact(G: Graph, k: int) -> Optional[FrozenSet[int]]:
    """
    Smallest vertex cover of size at most ``k``.

    Sets are tried by size and then lexicographically, so the result is the
    lexicographically least minimum cover.

    Returns:
        The cover, or None if every cover is larger than k
    """
    bg = BitGraph(G)
    for size in range(0, min(k, G.n) + 1):
        for W in combinations(G.vertices, size):
            rest = bg.full & ~bg.mask_of(W)
            if not bg.has_edge_inside(rest):
                return frozenset(W)
    return None


def feedback_vertex_set_exact(
    G: Graph, k: int, caps: Optional[CapsConfig] = None
) -> Optional[FrozenSet[int]]:
    """
    Smallest feedback vertex set of size at most ``k``.

    Raises:
        ResourceCapError: If G has more than ``caps.max_vertices`` vertices
    """
    caps = get_caps(caps)
    if G.n > caps.max_vertices:
        raise ResourceCapError("max_vertices", caps.max_vertices, G.n)
    for size in range(0, min(k, G.n) + 1):
        for S in combinations(G.vertices, size):
            if is_feedback_vertex_set(G, S):
                return frozenset(S)
    return None

