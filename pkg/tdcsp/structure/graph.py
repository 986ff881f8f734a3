"""Simple undirected graphs with stable vertex ids, plus bitmask helpers for the exact searches."""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Tuple

import networkx as nx

from ..errors import InputError

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph.

    Vertex ids are arbitrary nonnegative integers so that induced subgraphs
    (``G - W``) keep the ids of the host graph. Edges are stored once as
    sorted ``(u, v)`` pairs with ``u < v``.
    """

    vertices: Tuple[int, ...]
    edges: Tuple[Edge, ...]
    _adj: Dict[int, FrozenSet[int]] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        vertices = tuple(sorted(set(self.vertices)))
        if len(vertices) != len(self.vertices):
            raise InputError("Duplicate vertex ids")
        vset = set(vertices)
        canon = set()
        for u, v in self.edges:
            if u == v:
                raise InputError(f"Self-loop at vertex {u}")
            if u not in vset or v not in vset:
                raise InputError(f"Edge ({u}, {v}) uses an unknown vertex")
            canon.add((min(u, v), max(u, v)))
        adj: Dict[int, set] = {v: set() for v in vertices}
        for u, v in canon:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(sorted(canon)))
        object.__setattr__(self, "_adj", {v: frozenset(s) for v, s in adj.items()})

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        """Graph on vertices ``0..n-1``."""
        return cls(tuple(range(n)), tuple(edges))

    @classmethod
    def from_networkx(cls, g: "nx.Graph") -> "Graph":
        return cls(tuple(int(v) for v in g.nodes), tuple(g.edges))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def subgraph(self, keep: Iterable[int]) -> "Graph":
        keep = set(keep)
        missing = keep - set(self.vertices)
        if missing:
            raise InputError(f"Unknown vertices: {sorted(missing)}")
        return Graph(
            tuple(v for v in self.vertices if v in keep),
            tuple((u, v) for u, v in self.edges if u in keep and v in keep),
        )

    def without(self, removed: Iterable[int]) -> "Graph":
        removed = set(removed)
        return self.subgraph(v for v in self.vertices if v not in removed)

    def with_edges(self, extra: Iterable[Edge]) -> "Graph":
        return Graph(self.vertices, self.edges + tuple(extra))

    def to_networkx(self) -> "nx.Graph":
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    def components(self) -> List[Tuple[int, ...]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        comps = [tuple(sorted(c)) for c in nx.connected_components(self.to_networkx())]
        return sorted(comps)

    def is_forest(self) -> bool:
        return self.n == 0 or nx.is_forest(self.to_networkx())


class BitGraph:
    """Bitmask view of a Graph used by the exponential searches.

    Bit ``i`` stands for ``order[i]``; ``nbr[i]`` is the neighbourhood mask.
    """

    __slots__ = ("order", "index", "nbr", "full")

    def __init__(self, graph: Graph):
        self.order: Tuple[int, ...] = graph.vertices
        self.index = {v: i for i, v in enumerate(self.order)}
        self.nbr = [0] * len(self.order)
        for u, v in graph.edges:
            iu, iv = self.index[u], self.index[v]
            self.nbr[iu] |= 1 << iv
            self.nbr[iv] |= 1 << iu
        self.full = (1 << len(self.order)) - 1

    def mask_of(self, vertices: Iterable[int]) -> int:
        mask = 0
        for v in vertices:
            mask |= 1 << self.index[v]
        return mask

    def members(self, mask: int) -> List[int]:
        return [self.order[i] for i in iter_bits(mask)]

    def components(self, mask: int) -> List[int]:
        """Connected components of the subgraph induced by ``mask``, lowest bit first."""
        comps = []
        rest = mask
        while rest:
            low = rest & -rest
            comp = low
            frontier = low
            while frontier:
                bit = frontier & -frontier
                frontier ^= bit
                grow = self.nbr[bit.bit_length() - 1] & mask & ~comp
                comp |= grow
                frontier |= grow
            comps.append(comp)
            rest &= ~comp
        return comps

    def has_edge_inside(self, mask: int) -> bool:
        for i in iter_bits(mask):
            if self.nbr[i] & mask:
                return True
        return False


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")
