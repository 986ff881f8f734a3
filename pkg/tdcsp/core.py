"""
Core instance model for tdcsp

Binary CSP, List Coloring and Precoloring Extension instances, assignment
checking, the gadget translations between them and seeded random generators.
Values are hashable tokens (integers, or tuples when a reduction tags values
with their origin); every instance is immutable after construction.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import (
    Any,
    Dict,
    FrozenSet,
    Hashable,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import numpy as np

from .errors import InputError
from .structure.graph import Edge, Graph

Value = Hashable
Assignment = Dict[int, Value]
Pair = Tuple[Value, Value]
SeedLike = Union[int, np.random.SeedSequence, np.random.Generator, None]


def value_key(value: Any) -> Tuple:
    """Total order on value tokens: integers, then strings, then tuples (recursively)."""
    if isinstance(value, bool):
        return (0, int(value))
    if isinstance(value, int):
        return (0, value)
    if isinstance(value, str):
        return (1, value)
    if isinstance(value, tuple):
        return (2, tuple(value_key(x) for x in value))
    return (3, repr(value))


def sort_values(values: Iterable[Value]) -> Tuple[Value, ...]:
    return tuple(sorted(set(values), key=value_key))


def make_rng(seed: SeedLike) -> np.random.Generator:
    """numpy Generator from an int seed, a SeedSequence or an existing Generator."""
    return np.random.default_rng(seed)


@dataclass(frozen=True)
class BinCspInstance:
    """Binary CSP instance on variables ``0..n-1``.

    ``constraints`` maps each edge in canonical orientation ``(u, v)`` with
    ``u < v`` to its allowed pairs ``(a, b)`` with ``a in D(u)``, ``b in D(v)``.
    The reversed relation is derived by :meth:`allowed`.
    """

    domains: Tuple[Tuple[Value, ...], ...]
    constraints: Mapping[Edge, FrozenSet[Pair]] = field(default_factory=dict)
    _graph: Graph = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        domains = tuple(sort_values(d) for d in self.domains)
        n = len(domains)
        constraints = {}
        for (u, v), pairs in self.constraints.items():
            if u == v:
                raise InputError(f"Self-loop constraint on variable {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"Constraint ({u}, {v}) uses an unknown variable")
            if u > v:
                raise InputError(f"Constraint ({u}, {v}) is not canonically oriented")
            du, dv = set(domains[u]), set(domains[v])
            pairs = frozenset(pairs)
            for a, b in pairs:
                if a not in du or b not in dv:
                    raise InputError(
                        f"Allowed pair ({a!r}, {b!r}) on ({u}, {v}) leaves the domains"
                    )
            constraints[(u, v)] = pairs
        object.__setattr__(self, "domains", domains)
        object.__setattr__(self, "constraints", dict(sorted(constraints.items())))
        object.__setattr__(self, "_graph", Graph.from_edges(n, constraints.keys()))

    @classmethod
    def build(
        cls,
        domains: Sequence[Iterable[Value]],
        relations: Optional[Mapping[Edge, Iterable[Pair]]] = None,
    ) -> "BinCspInstance":
        """Build an instance from relations given in any orientation.

        Relations on the same edge given in both orientations are intersected.
        """
        merged: Dict[Edge, FrozenSet[Pair]] = {}
        for (u, v), pairs in (relations or {}).items():
            if u < v:
                canon = frozenset(pairs)
                key = (u, v)
            else:
                canon = frozenset((b, a) for a, b in pairs)
                key = (v, u)
            merged[key] = merged[key] & canon if key in merged else canon
        return cls(tuple(tuple(d) for d in domains), merged)

    @property
    def n(self) -> int:
        return len(self.domains)

    @property
    def graph(self) -> Graph:
        """Gaifman graph."""
        return self._graph

    def domain(self, u: int) -> Tuple[Value, ...]:
        return self.domains[u]

    def allowed(self, u: int, v: int) -> FrozenSet[Pair]:
        """Allowed pairs oriented ``u -> v``; the reverse of a stored edge is derived."""
        if u < v:
            return self.constraints[(u, v)]
        return frozenset((b, a) for a, b in self.constraints[(v, u)])

    def compatible(self, u: int, a: Value, v: int, b: Value) -> bool:
        """True if ``u=a, v=b`` violates no constraint (unconstrained pairs are compatible)."""
        if u < v:
            pairs = self.constraints.get((u, v))
            return pairs is None or (a, b) in pairs
        pairs = self.constraints.get((v, u))
        return pairs is None or (b, a) in pairs

    def forbidden(self, u: int, v: int) -> List[Pair]:
        """Pairs of ``D(u) x D(v)`` not allowed on edge ``uv``, in sorted order."""
        allowed = self.allowed(u, v)
        return [
            (a, b)
            for a, b in product(self.domains[u], self.domains[v])
            if (a, b) not in allowed
        ]

    def domain_product(self) -> int:
        total = 1
        for d in self.domains:
            total *= len(d)
        return total

    def with_domains(self, domains: Sequence[Iterable[Value]]) -> "BinCspInstance":
        """Same constraints restricted to new (sub)domains."""
        domains = [sort_values(d) for d in domains]
        restricted = {
            (u, v): frozenset(
                (a, b) for a, b in pairs if a in domains[u] and b in domains[v]
            )
            for (u, v), pairs in self.constraints.items()
        }
        return BinCspInstance(tuple(domains), restricted)

    def with_full_edges(self, edges: Iterable[Edge]) -> "BinCspInstance":
        """Add the given edges (if absent) carrying every pair of their domains."""
        constraints = dict(self.constraints)
        for u, v in edges:
            key = (min(u, v), max(u, v))
            if key not in constraints:
                constraints[key] = frozenset(
                    product(self.domains[key[0]], self.domains[key[1]])
                )
        return BinCspInstance(self.domains, constraints)

    def relabel(self) -> Tuple["BinCspInstance", List[Dict[int, Value]]]:
        """Replace the values of every domain by ``0..|D(u)|-1``.

        Returns:
            The relabelled instance and, per variable, the table new -> old value
        """
        tables = [dict(enumerate(d)) for d in self.domains]
        back = [{a: i for i, a in t.items()} for t in tables]
        constraints = {
            (u, v): frozenset((back[u][a], back[v][b]) for a, b in pairs)
            for (u, v), pairs in self.constraints.items()
        }
        domains = tuple(tuple(range(len(d))) for d in self.domains)
        return BinCspInstance(domains, constraints), tables


@dataclass(frozen=True)
class ListColoringInstance:
    """Graph with a color list per vertex, lists drawn from ``colors``."""

    graph: Graph
    colors: Tuple[Value, ...]
    lists: Mapping[int, Tuple[Value, ...]]

    def __post_init__(self):
        colors = sort_values(self.colors)
        cset = set(colors)
        lists = {}
        for v in self.graph.vertices:
            lst = sort_values(self.lists.get(v, ()))
            stray = [c for c in lst if c not in cset]
            if stray:
                raise InputError(f"List of vertex {v} uses undeclared colors {stray}")
            lists[v] = lst
        extra = set(self.lists) - set(self.graph.vertices)
        if extra:
            raise InputError(f"Lists given for unknown vertices {sorted(extra)}")
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "lists", lists)

    def is_proper(self, coloring: Mapping[int, Value]) -> bool:
        """True iff ``coloring`` picks from every list and no edge is monochromatic."""
        for v in self.graph.vertices:
            if v not in coloring or coloring[v] not in self.lists[v]:
                return False
        return all(coloring[u] != coloring[v] for u, v in self.graph.edges)


@dataclass(frozen=True)
class PrecoloringInstance:
    """Graph, color set and a precoloring ``f`` of the vertex set ``W = dom(f)``."""

    graph: Graph
    colors: Tuple[Value, ...]
    precolored: Mapping[int, Value]

    def __post_init__(self):
        colors = sort_values(self.colors)
        vset = set(self.graph.vertices)
        for v, c in self.precolored.items():
            if v not in vset:
                raise InputError(f"Precolored vertex {v} is not in the graph")
            if c not in colors:
                raise InputError(f"Precolor {c!r} of vertex {v} is not a declared color")
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "precolored", dict(sorted(self.precolored.items())))

    @property
    def W(self) -> FrozenSet[int]:
        return frozenset(self.precolored)

    def is_extension(self, coloring: Mapping[int, Value]) -> bool:
        """True iff ``coloring`` is proper, uses declared colors and extends the precoloring."""
        cset = set(self.colors)
        for v in self.graph.vertices:
            if v not in coloring or coloring[v] not in cset:
                return False
        if any(coloring[v] != c for v, c in self.precolored.items()):
            return False
        return all(coloring[u] != coloring[v] for u, v in self.graph.edges)


def check_assignment(inst: BinCspInstance, a: Mapping[int, Value]) -> bool:
    """
    Check a total assignment against every constraint.

    Args:
        inst: Instance to check against
        a: Map variable -> value, total over ``0..n-1``

    Returns:
        True iff every edge's value pair is allowed

    Raises:
        InputError: If ``a`` is partial or assigns a value outside a domain
    """
    missing = [u for u in range(inst.n) if u not in a]
    if missing:
        raise InputError(f"Assignment is partial; missing variables {missing}")
    for u in range(inst.n):
        if a[u] not in inst.domains[u]:
            raise InputError(f"Value {a[u]!r} is not in the domain of variable {u}")
    return all((a[u], a[v]) in pairs for (u, v), pairs in inst.constraints.items())


def listcoloring_to_bincsp(lc: ListColoringInstance) -> BinCspInstance:
    """Same graph, ``D(v) = L(v)``, disequality on every edge.

    Vertex ids are mapped to ``0..n-1`` in increasing order (identity for
    graphs already on ``0..n-1``).
    """
    index = {v: i for i, v in enumerate(lc.graph.vertices)}
    domains = [lc.lists[v] for v in lc.graph.vertices]
    constraints = {}
    for u, v in lc.graph.edges:
        iu, iv = index[u], index[v]
        constraints[(iu, iv)] = frozenset(
            (a, b) for a in domains[iu] for b in domains[iv] if a != b
        )
    return BinCspInstance(tuple(domains), constraints)


def bincsp_to_listcoloring(inst: BinCspInstance) -> ListColoringInstance:
    """
    Gadget translation to List Coloring.

    Values are tagged ``(u, a)`` so distinct variables have disjoint lists.
    Each forbidden pair ``(a, b)`` on an edge ``uv`` becomes a new vertex
    adjacent to ``u`` and ``v`` with list ``{(u, a), (v, b)}``; the original
    edges are dropped. Gadget ids follow ``n`` in edge order, then pair order.
    """
    lists: Dict[int, Tuple[Value, ...]] = {
        u: tuple((u, a) for a in inst.domains[u]) for u in range(inst.n)
    }
    edges: List[Edge] = []
    next_id = inst.n
    for u, v in inst.constraints:
        for a, b in inst.forbidden(u, v):
            lists[next_id] = ((u, a), (v, b))
            edges.append((u, next_id))
            edges.append((v, next_id))
            next_id += 1
    colors = [c for lst in lists.values() for c in lst]
    graph = Graph.from_edges(next_id, edges)
    return ListColoringInstance(graph, sort_values(colors), lists)


def bincsp_to_listcoloring_forest(inst: BinCspInstance, forest) -> Any:
    """Elimination forest of :func:`bincsp_to_listcoloring` output, one level deeper.

    Each gadget vertex hangs below the deeper endpoint of its edge.

    Args:
        inst: Source instance
        forest: EliminationForest of ``inst.graph``

    Returns:
        EliminationForest of the gadget graph with depth at most ``depth(forest) + 1``
    """
    from .structure.forests import EliminationForest, validate_elimination_forest

    if not validate_elimination_forest(inst.graph, forest):
        raise InputError("Forest is not an elimination forest of the instance")
    parent = dict(forest.parent)
    next_id = inst.n
    for u, v in inst.constraints:
        lower = v if forest.is_ancestor(u, v) else u
        for _ in inst.forbidden(u, v):
            parent[next_id] = lower
            next_id += 1
    return EliminationForest.from_parents(range(next_id), parent)


def random_instance(
    n: int,
    max_dom: int,
    edge_prob: float,
    pair_prob: float,
    seed: SeedLike,
    min_dom: int = 1,
) -> BinCspInstance:
    """
    Seeded random Binary CSP instance.

    Args:
        n: Number of variables (>= 1)
        max_dom: Largest domain size; sizes are uniform in ``[min_dom, max_dom]``
        edge_prob: Probability of each edge
        pair_prob: Probability each value pair of an edge is allowed
        seed: Seed, SeedSequence or Generator
        min_dom: Smallest domain size (0 allows empty domains)

    Returns:
        Instance that is a deterministic function of the arguments
    """
    if n < 1:
        raise InputError("n must be >= 1")
    if not (0.0 <= edge_prob <= 1.0 and 0.0 <= pair_prob <= 1.0):
        raise InputError("Probabilities must lie in [0, 1]")
    if max_dom < min_dom:
        raise InputError("max_dom must be >= min_dom")
    rng = make_rng(seed)
    sizes = rng.integers(min_dom, max_dom + 1, size=n)
    domains = [tuple(range(int(s))) for s in sizes]
    constraints = {}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < edge_prob:
                constraints[(u, v)] = frozenset(
                    (a, b)
                    for a in domains[u]
                    for b in domains[v]
                    if rng.random() < pair_prob
                )
    return BinCspInstance(tuple(domains), constraints)


def random_graph(n: int, edge_prob: float, seed: SeedLike) -> Graph:
    """Seeded G(n, p) graph on ``0..n-1``."""
    rng = make_rng(seed)
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < edge_prob
    ]
    return Graph.from_edges(n, edges)


def random_listcoloring(
    n: int, n_colors: int, edge_prob: float, list_prob: float, seed: SeedLike
) -> ListColoringInstance:
    """Seeded random list-coloring instance over colors ``0..n_colors-1``."""
    rng = make_rng(seed)
    graph = random_graph(n, edge_prob, rng)
    lists = {
        v: tuple(c for c in range(n_colors) if rng.random() < list_prob)
        for v in range(n)
    }
    return ListColoringInstance(graph, tuple(range(n_colors)), lists)


def random_precoloring(
    n: int, n_colors: int, edge_prob: float, pre_prob: float, seed: SeedLike
) -> PrecoloringInstance:
    """Seeded random precoloring-extension instance over colors ``0..n_colors-1``."""
    rng = make_rng(seed)
    graph = random_graph(n, edge_prob, rng)
    pre = {}
    for v in range(n):
        if rng.random() < pre_prob:
            pre[v] = int(rng.integers(0, n_colors))
    return PrecoloringInstance(graph, tuple(range(n_colors)), pre)
