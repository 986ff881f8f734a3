"""
Ordered trees, universal trees and order-preserving embeddings.

A universal tree ``U(n, k)`` has depth at most ``k`` and every ordered tree
of depth at most ``k`` with at most ``n`` leaves embeds into it. Depth counts
vertices on a root-to-leaf path.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .config import CapsConfig, get_caps
from .errors import InputError, ResourceCapError

Shape = Tuple["Shape", ...]
Annotation = Tuple[int, int]


@dataclass(frozen=True)
class OrderedTree:
    """Rooted tree whose nodes have totally ordered child lists.

    ``children[i]`` lists the children of node ``i`` in order. Node 0 is
    the root. ``annotations`` is set only on trees produced by
    :func:`build_universal_tree`.
    """

    children: Tuple[Tuple[int, ...], ...]
    annotations: Optional[Tuple[Annotation, ...]] = None

    def __post_init__(self):
        children = tuple(tuple(c) for c in self.children)
        m = len(children)
        if m == 0:
            raise InputError("An ordered tree needs at least one node")
        seen = [False] * m
        seen[0] = True
        count = 1
        for kids in children:
            for c in kids:
                if not 0 <= c < m or seen[c]:
                    raise InputError(f"Node {c} is not a valid unique child")
                seen[c] = True
                count += 1
        if count != m:
            raise InputError("Every non-root node needs exactly one parent")
        if self.annotations is not None and len(self.annotations) != m:
            raise InputError("One annotation per node required")
        object.__setattr__(self, "children", children)
        # all nodes must hang below the root
        if len(self.preorder()) != m:
            raise InputError("Tree is not connected to its root")

    @classmethod
    def from_shape(cls, shape: Shape) -> "OrderedTree":
        """Build from nested tuples; ``()`` is a leaf. Nodes are numbered in preorder."""
        children: List[Optional[Tuple[int, ...]]] = []

        def visit(s: Shape) -> int:
            idx = len(children)
            children.append(None)
            kids = tuple(visit(c) for c in s)
            children[idx] = kids
            return idx

        visit(shape)
        return cls(tuple(children))

    @classmethod
    def single(cls) -> "OrderedTree":
        return cls(((),))

    @property
    def size(self) -> int:
        return len(self.children)

    def preorder(self, node: int = 0) -> List[int]:
        order = []
        stack = [node]
        while stack:
            u = stack.pop()
            order.append(u)
            stack.extend(reversed(self.children[u]))
        return order

    def parents(self) -> Dict[int, Optional[int]]:
        par: Dict[int, Optional[int]] = {0: None}
        for u, kids in enumerate(self.children):
            for c in kids:
                par[c] = u
        return par

    def leaves(self, node: int = 0) -> List[int]:
        """Leaves below ``node`` in preorder."""
        return [u for u in self.preorder(node) if not self.children[u]]

    def depth(self, node: int = 0) -> int:
        best = 0
        stack = [(node, 1)]
        while stack:
            u, d = stack.pop()
            best = max(best, d)
            stack.extend((c, d + 1) for c in self.children[u])
        return best

    def shape(self, node: int = 0) -> Shape:
        return tuple(self.shape(c) for c in self.children[node])


@dataclass(frozen=True)
class TreeEmbedding:
    """Node map from a pattern tree into a host tree."""

    mapping: Dict[int, int]


@lru_cache(maxsize=None)
def _universal_children(n: int, k: int) -> Tuple[tuple, ...]:
    # nodes are (n, k, children)
    if n == 0 or k == 1:
        return ()
    half = n // 2
    return (
        _universal_children(half, k)
        + (_universal_node(n, k - 1),)
        + _universal_children(n - 1 - half, k)
    )


@lru_cache(maxsize=None)
def _universal_node(n: int, k: int) -> tuple:
    return (n, k, _universal_children(n, k))


def build_universal_tree(n: int, k: int) -> OrderedTree:
    """
    Build the universal ordered tree ``U(n, k)``.

    The root's children are the root-children of ``U(n//2, k)``, then a
    child carrying ``U(n, k-1)``, then the root-children of
    ``U(n-1-n//2, k)``. Every node is annotated with the ``(n', k')`` of
    the universal tree its subtree realizes.

    Args:
        n: Leaf budget, ``n >= 0``
        k: Depth budget, ``k >= 1``

    Returns:
        Annotated OrderedTree of depth at most ``k``
    """
    if n < 0 or k < 1:
        raise InputError("build_universal_tree needs n >= 0 and k >= 1")
    children: List[Optional[Tuple[int, ...]]] = []
    annotations: List[Annotation] = []

    def flatten(node: tuple) -> int:
        idx = len(children)
        children.append(None)
        annotations.append((node[0], node[1]))
        children[idx] = tuple(flatten(c) for c in node[2])
        return idx

    flatten(_universal_node(n, k))
    return OrderedTree(tuple(children), tuple(annotations))


def annotate_subtrees(U: OrderedTree) -> Dict[int, Annotation]:
    """Map node -> (n', k') of the universal subtree rooted there."""
    if U.annotations is None:
        raise InputError("Tree was not produced by build_universal_tree")
    return dict(enumerate(U.annotations))


def find_embedding(S: OrderedTree, T: OrderedTree) -> Optional[TreeEmbedding]:
    """
    Find an order-preserving embedding of ``S`` into ``T``, root to root.

    Children of a pattern node are matched to host children left to right,
    always taking the earliest host child that can absorb the pattern
    subtree; this greedy subsequence matching is exact.
    """
    memo: Dict[Tuple[int, int], bool] = {}

    def fits(s: int, t: int) -> bool:
        key = (s, t)
        if key not in memo:
            memo[key] = _match_children(s, t) is not None
        return memo[key]

    def _match_children(s: int, t: int) -> Optional[List[int]]:
        hosts = T.children[t]
        chosen = []
        pos = 0
        for sc in S.children[s]:
            while pos < len(hosts) and not fits(sc, hosts[pos]):
                pos += 1
            if pos == len(hosts):
                return None
            chosen.append(hosts[pos])
            pos += 1
        return chosen

    if not fits(0, 0):
        return None
    mapping = {0: 0}
    stack = [0]
    while stack:
        s = stack.pop()
        targets = _match_children(s, mapping[s])
        for sc, tc in zip(S.children[s], targets):
            mapping[sc] = tc
            stack.append(sc)
    return TreeEmbedding(mapping)


def validate_embedding(S: OrderedTree, T: OrderedTree, emb: TreeEmbedding) -> bool:
    """Root maps to root and children map to distinct children in increasing order."""
    phi = emb.mapping
    if set(phi) != set(range(S.size)) or phi.get(0) != 0:
        return False
    if len(set(phi.values())) != len(phi):
        return False
    for s in range(S.size):
        host_kids = T.children[phi[s]]
        positions = []
        for sc in S.children[s]:
            if phi[sc] not in host_kids:
                return False
            positions.append(host_kids.index(phi[sc]))
        if positions != sorted(set(positions)):
            return False
    return True


def enumerate_ordered_trees(
    max_leaves: int, max_depth: int, caps: Optional[CapsConfig] = None
) -> List[OrderedTree]:
    """
    All ordered trees with at most ``max_leaves`` leaves and depth at most
    ``max_depth``, one per ordered-isomorphism class.

    Raises:
        ResourceCapError: If the arguments exceed ``max_enum_leaves`` / ``max_enum_depth``
    """
    caps = get_caps(caps)
    if max_leaves > caps.max_enum_leaves:
        raise ResourceCapError("max_enum_leaves", caps.max_enum_leaves, max_leaves)
    if max_depth > caps.max_enum_depth:
        raise ResourceCapError("max_enum_depth", caps.max_enum_depth, max_depth)
    if max_leaves < 1 or max_depth < 1:
        return []

    @lru_cache(maxsize=None)
    def trees(depth: int, budget: int) -> Tuple[Tuple[Shape, int], ...]:
        # (shape, leaf count) with depth <= depth, leaves <= budget
        if budget < 1:
            return ()
        out = [((), 1)]
        if depth > 1:
            for seq, leaves in forests(depth - 1, budget):
                if seq:
                    out.append((seq, leaves))
        return tuple(out)

    @lru_cache(maxsize=None)
    def forests(depth: int, budget: int) -> Tuple[Tuple[Shape, int], ...]:
        # ordered sequences of trees, total leaves <= budget
        out = [((), 0)]
        for first, used in trees(depth, budget):
            for rest, more in forests(depth, budget - used):
                out.append(((first,) + rest, used + more))
        return tuple(out)

    shapes = sorted({s for s, _ in trees(max_depth, max_leaves)}, key=_shape_key)
    return [OrderedTree.from_shape(s) for s in shapes]


def _shape_key(shape: Shape) -> Tuple:
    return (_shape_size(shape), repr(shape))


def _shape_size(shape: Shape) -> int:
    return 1 + sum(_shape_size(c) for c in shape)


def select_children(
    U: OrderedTree, demands: Sequence[int], node: int = 0
) -> Optional[List[int]]:
    """
    Greedily pick children ``v_1 < ... < v_p`` of ``node`` with capacities
    ``n'_i >= demands[i]``.

    Returns:
        The chosen children in order, or None when the demands cannot be met
    """
    notes = annotate_subtrees(U)
    _, k = notes[node]
    chosen: List[int] = []
    pos = 0
    kids = U.children[node]
    for need in demands:
        while pos < len(kids):
            n_child, k_child = notes[kids[pos]]
            if k_child == k - 1 and n_child >= need:
                break
            pos += 1
        if pos == len(kids):
            return None
        chosen.append(kids[pos])
        pos += 1
    return chosen
