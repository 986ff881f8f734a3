"""Branch labeling of ordered trees by binary strings.

Leaves get their preorder index as a ``p``-bit string, ``p = ceil(log2 N)``.
A node's name is the longest common prefix of the names of its leftmost and
rightmost leaf; an edge is labelled by what the child's name adds to the
parent's. Concatenating labels down a branch spells the leaf's index.
"""

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from ..unitrees import OrderedTree


@dataclass(frozen=True)
class EdgeLabeling:
    """Labels ``(parent, child) -> bit string`` and the index width ``p``."""

    labels: Dict[Tuple[int, int], str]
    width: int

    def child_by_label(self, tree: OrderedTree, node: int, label: str) -> Optional[int]:
        for c in tree.children[node]:
            if self.labels[(node, c)] == label:
                return c
        return None

    def branch_string(self, tree: OrderedTree, leaf: int) -> str:
        parents = tree.parents()
        parts = []
        v = leaf
        while parents[v] is not None:
            parts.append(self.labels[(parents[v], v)])
            v = parents[v]
        return "".join(reversed(parts))


def _common_prefix(a: str, b: str) -> str:
    i = 0
    while i < len(a) and i < len(b) and a[i] == b[i]:
        i += 1
    return a[:i]


def leaf_index_width(leaf_count: int) -> int:
    """``ceil(log2 N)`` for ``N >= 1``."""
    return (leaf_count - 1).bit_length() if leaf_count > 1 else 0


def tree_edge_labeling(T: OrderedTree) -> EdgeLabeling:
    """
    Label every edge of ``T``.

    Args:
        T: Nonempty ordered tree

    Returns:
        EdgeLabeling with pairwise distinct sibling labels and branch length
        ``ceil(log2 N)``
    """
    leaves = T.leaves()
    p = leaf_index_width(len(leaves))
    alpha = {leaf: format(i, f"0{p}b") if p else "" for i, leaf in enumerate(leaves)}
    name: Dict[int, str] = {}

    def visit(u: int) -> Tuple[int, int]:
        # returns (leftmost leaf, rightmost leaf)
        kids = T.children[u]
        if not kids:
            name[u] = alpha[u]
            return u, u
        spans = [visit(c) for c in kids]
        left, right = spans[0][0], spans[-1][1]
        name[u] = _common_prefix(alpha[left], alpha[right])
        return left, right

    visit(0)
    labels = {
        (u, c): name[c][len(name[u]) :]
        for u in range(T.size)
        for c in T.children[u]
    }
    return EdgeLabeling(labels, p)
