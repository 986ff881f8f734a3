"""Elimination forests, exact treedepth and treedepth modulators."""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from ..config import CapsConfig, get_caps
from ..errors import InputError, ResourceCapError
from ..unitrees import OrderedTree
from .graph import BitGraph, Graph, iter_bits, popcount


@dataclass(frozen=True)
class EliminationForest:
    """Rooted forest over ``nodes`` given by a parent map (roots are unmapped).

    Depth counts vertices on the longest root-to-leaf path; the empty
    forest has depth 0.
    """

    nodes: Tuple[int, ...]
    parent: Mapping[int, int] = field(default_factory=dict)
    _children: Dict[Optional[int], Tuple[int, ...]] = field(
        init=False, repr=False, compare=False
    )
    _depth_of: Dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        nodes = tuple(sorted(set(self.nodes)))
        nset = set(nodes)
        parent = {}
        for v, p in self.parent.items():
            if p is None:
                continue
            if v not in nset or p not in nset:
                raise InputError(f"Parent link {v} -> {p} leaves the node set")
            parent[v] = p
        kids: Dict[Optional[int], List[int]] = {None: []}
        for v in nodes:
            kids.setdefault(v, [])
        for v in nodes:
            kids[parent.get(v)].append(v)
        depth_of: Dict[int, int] = {}
        stack = [(r, 1) for r in kids[None]]
        while stack:
            v, d = stack.pop()
            depth_of[v] = d
            stack.extend((c, d + 1) for c in kids[v])
        if len(depth_of) != len(nodes):
            raise InputError("Parent map contains a cycle")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "parent", dict(sorted(parent.items())))
        object.__setattr__(
            self, "_children", {k: tuple(sorted(v)) for k, v in kids.items()}
        )
        object.__setattr__(self, "_depth_of", depth_of)

    @classmethod
    def from_parents(
        cls, nodes: Iterable[int], parent: Mapping[int, Optional[int]]
    ) -> "EliminationForest":
        return cls(tuple(nodes), {v: p for v, p in parent.items() if p is not None})

    @classmethod
    def chain(cls, order: Iterable[int]) -> "EliminationForest":
        """Path forest: each vertex is the parent of the next one."""
        order = list(order)
        return cls(tuple(order), {order[i + 1]: order[i] for i in range(len(order) - 1)})

    @property
    def roots(self) -> Tuple[int, ...]:
        return self._children[None]

    def children(self, v: int) -> Tuple[int, ...]:
        return self._children[v]

    def depth_of(self, v: int) -> int:
        return self._depth_of[v]

    @property
    def depth(self) -> int:
        return max(self._depth_of.values(), default=0)

    def ancestors(self, v: int) -> List[int]:
        """Strict ancestors of ``v``, nearest first."""
        out = []
        while v in self.parent:
            v = self.parent[v]
            out.append(v)
        return out

    def is_ancestor(self, a: int, b: int) -> bool:
        """True if ``a`` equals ``b`` or lies above it."""
        return a == b or a in self.ancestors(b)

    def subtree(self, v: int) -> List[int]:
        """Nodes below ``v`` (inclusive), preorder."""
        out = []
        stack = [v]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(reversed(self._children[u]))
        return out

    def preorder(self) -> List[int]:
        out = []
        for r in self.roots:
            out.extend(self.subtree(r))
        return out

    def leaves(self) -> List[int]:
        return [v for v in self.preorder() if not self._children[v]]

    def restrict(self, keep: Iterable[int]) -> "EliminationForest":
        """Forest on ``keep``: each kept node hangs below its nearest kept ancestor."""
        keep = set(keep)
        parent = {}
        for v in keep:
            for a in self.ancestors(v):
                if a in keep:
                    parent[v] = a
                    break
        return EliminationForest(tuple(keep), parent)

    def to_ordered_tree(self) -> Tuple[OrderedTree, Dict[int, int]]:
        """
        Ordered tree with children in id order.

        A forest with several roots (or none) gets a fresh root above them,
        reported as ``-1`` in the returned map.

        Returns:
            The ordered tree and the map tree node -> forest node
        """
        roots = list(self.roots)
        kids: List[Tuple[int, ...]] = []
        back: Dict[int, int] = {}

        def visit(v: int) -> int:
            idx = len(kids)
            kids.append(())
            back[idx] = v
            kids[idx] = tuple(visit(c) for c in self._children[v])
            return idx

        if len(roots) == 1:
            visit(roots[0])
        else:
            kids.append(())
            back[0] = -1
            kids[0] = tuple(visit(r) for r in roots)
        return OrderedTree(tuple(kids)), back


def validate_elimination_forest(G: Graph, F: EliminationForest) -> bool:
    """
    Check that ``F`` is an elimination forest of ``G``.

    Returns:
        True iff every edge of G joins an ancestor/descendant pair of F

    Raises:
        InputError: If F's node set differs from V(G)
    """
    if set(F.nodes) != set(G.vertices):
        raise InputError("Forest node set differs from the graph's vertex set")
    return all(F.is_ancestor(u, v) or F.is_ancestor(v, u) for u, v in G.edges)


class _TreedepthSearch:
    """Memoized ``td(S) = 1 + min_v td(S - v)`` on connected subsets, max over components."""

    def __init__(self, graph: Graph):
        self.bg = BitGraph(graph)
        self.memo: Dict[int, Tuple[int, int]] = {}

    def td(self, mask: int) -> int:
        if mask == 0:
            return 0
        comps = self.bg.components(mask)
        if len(comps) > 1:
            return max(self._td_connected(c) for c in comps)
        return self._td_connected(mask)

    def _td_connected(self, mask: int) -> int:
        hit = self.memo.get(mask)
        if hit is not None:
            return hit[0]
        size = popcount(mask)
        if size <= 2:
            best, root = size, (mask & -mask).bit_length() - 1
        else:
            best, root = size + 1, -1
            for i in iter_bits(mask):
                # a connected graph with an edge has treedepth >= 2
                if best == 2:
                    break
                value = 1 + self.td(mask & ~(1 << i))
                if value < best:
                    best, root = value, i
        self.memo[mask] = (best, root)
        return best

    def witness(self, mask: int, parent: Dict[int, int], above: Optional[int]):
        stack = [(mask, above)]
        while stack:
            mask, above = stack.pop()
            if mask == 0:
                continue
            for comp in self.bg.components(mask):
                self._td_connected(comp)
                root = self.memo[comp][1]
                v = self.bg.order[root]
                if above is not None:
                    parent[v] = above
                stack.append((comp & ~(1 << root), v))


def _check_vertex_cap(G: Graph, caps: CapsConfig) -> None:
    if G.n > caps.max_vertices:
        raise ResourceCapError("max_vertices", caps.max_vertices, G.n)


def treedepth_exact(
    G: Graph, caps: Optional[CapsConfig] = None
) -> Tuple[int, EliminationForest]:
    """
    Exact treedepth with a minimum-depth elimination forest.

    Ties between deletion candidates go to the smallest vertex id.

    Args:
        G: Graph with at most ``caps.max_vertices`` vertices
        caps: Resource caps; defaults to the active configuration

    Returns:
        (depth, witness forest)

    Raises:
        ResourceCapError: If G is too large
    """
    caps = get_caps(caps)
    _check_vertex_cap(G, caps)
    search = _TreedepthSearch(G)
    depth = search.td(search.bg.full)
    parent: Dict[int, int] = {}
    search.witness(search.bg.full, parent, None)
    return depth, EliminationForest(G.vertices, parent)


def modulator_to_treedepth(
    G: Graph, d: int, k: int, caps: Optional[CapsConfig] = None
) -> Optional[Tuple[FrozenSet[int], EliminationForest]]:
    """
    Find ``W`` with ``|W| <= k`` and ``td(G - W) <= d``.

    Candidates are tried by size, then lexicographically.

    Returns:
        (W, elimination forest of G - W of depth <= d), or None
    """
    caps = get_caps(caps)
    _check_vertex_cap(G, caps)
    search = _TreedepthSearch(G)
    bg = search.bg
    for size in range(0, min(k, G.n) + 1):
        for W in combinations(G.vertices, size):
            rest = bg.full & ~bg.mask_of(W)
            if search.td(rest) <= d:
                parent: Dict[int, int] = {}
                search.witness(rest, parent, None)
                forest = EliminationForest(
                    tuple(v for v in G.vertices if v not in W), parent
                )
                return frozenset(W), forest
    return None
