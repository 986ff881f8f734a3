"""
Graph and witness formats: ``.graph``, ``.set`` and ``.tree``.

``.tree`` lists ``tree <n>`` then one ``node <id> parent <pid|->`` per node.
Fat elimination trees add ``bag <id> <v1> ...``; ordered trees take their
child order from the order of the ``node`` lines and may carry
``label <u> <v> <bits|->`` edge labels and ``ut <id> <n'> <k'>`` universal
tree annotations.
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from ..errors import FormatError, InputError
from ..structure import EdgeLabeling, EliminationForest, FatEliminationTree, Graph
from ..structure.labeling import leaf_index_width
from ..unitrees import OrderedTree
from .lines import directives, expect_args, header, to_int, to_ints


def parse_graph(text: str, source: Optional[str] = None) -> Graph:
    _, args = header(text, "graph", source)
    if len(args) != 1:
        raise FormatError("'graph' takes the vertex count", 1, source)
    n = to_int(args[0], 1, source)
    edges = []
    for lineno, head, rest in list(directives(text))[1:]:
        if head != "edge":
            raise FormatError(f"Unknown directive '{head}'", lineno, source)
        expect_args(head, rest, 2, lineno, source)
        u, v = to_ints(rest, lineno, source)
        if u >= n or v >= n or u == v:
            raise FormatError(f"Bad edge {u} {v} for {n} vertices", lineno, source)
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def format_graph(G: Graph) -> str:
    lines = [f"graph {G.n}"] + [f"edge {u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


def parse_set(text: str, source: Optional[str] = None) -> FrozenSet[int]:
    found = list(directives(text))
    if len(found) != 1 or found[0][1] != "set":
        raise FormatError("Expected a single 'set <v1> ...' line", None, source)
    lineno, _, rest = found[0]
    values = to_ints(rest, lineno, source)
    if len(set(values)) != len(values):
        raise FormatError("Vertex listed twice", lineno, source)
    return frozenset(values)


def format_set(S: Iterable[int]) -> str:
    return " ".join(["set"] + [str(v) for v in sorted(S)]) + "\n"


@dataclass
class _TreeDoc:
    order: List[int] = field(default_factory=list)
    parent: Dict[int, Optional[int]] = field(default_factory=dict)
    bags: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    labels: Dict[Tuple[int, int], str] = field(default_factory=dict)
    annotations: Dict[int, Tuple[int, int]] = field(default_factory=dict)


def _parse_tree_doc(text: str, source: Optional[str]) -> _TreeDoc:
    _, args = header(text, "tree", source)
    if len(args) != 1:
        raise FormatError("'tree' takes the node count", 1, source)
    n = to_int(args[0], 1, source)
    doc = _TreeDoc()
    for lineno, head, rest in list(directives(text))[1:]:
        if head == "node":
            if len(rest) != 3 or rest[1] != "parent":
                raise FormatError("Expected 'node <id> parent <pid|->'", lineno, source)
            v = to_int(rest[0], lineno, source)
            if v in doc.parent:
                raise FormatError(f"Node {v} listed twice", lineno, source)
            doc.order.append(v)
            doc.parent[v] = None if rest[2] == "-" else to_int(rest[2], lineno, source)
        elif head == "bag":
            if not rest:
                raise FormatError("'bag' needs a node id", lineno, source)
            t = to_int(rest[0], lineno, source)
            if t in doc.bags:
                raise FormatError(f"Bag of node {t} given twice", lineno, source)
            doc.bags[t] = tuple(to_ints(rest[1:], lineno, source))
        elif head == "label":
            expect_args(head, rest, 3, lineno, source)
            u, v = to_ints(rest[:2], lineno, source)
            bits = "" if rest[2] == "-" else rest[2]
            if set(bits) - {"0", "1"}:
                raise FormatError(f"Label {rest[2]!r} is not a bit string", lineno, source)
            doc.labels[(u, v)] = bits
        elif head == "ut":
            expect_args(head, rest, 3, lineno, source)
            v, n2, k2 = to_ints(rest, lineno, source)
            doc.annotations[v] = (n2, k2)
        else:
            raise FormatError(f"Unknown directive '{head}'", lineno, source)
    if len(doc.order) != n:
        raise FormatError(f"Header announces {n} nodes, found {len(doc.order)}", None, source)
    for v, p in doc.parent.items():
        if p is not None and p not in doc.parent:
            raise FormatError(f"Node {v} has unknown parent {p}", None, source)
    return doc


def parse_forest(text: str, source: Optional[str] = None) -> EliminationForest:
    """Elimination forest over the listed node ids (bags and labels are ignored)."""
    doc = _parse_tree_doc(text, source)
    try:
        return EliminationForest.from_parents(doc.order, doc.parent)
    except InputError as e:
        raise FormatError(str(e), None, source) from e


def parse_fat_tree(text: str, source: Optional[str] = None) -> FatEliminationTree:
    """Fat elimination tree; nodes must be ``0..n-1`` and a missing ``bag`` line means an empty bag."""
    doc = _parse_tree_doc(text, source)
    if sorted(doc.order) != list(range(len(doc.order))):
        raise FormatError("Fat tree nodes must be numbered 0..n-1", None, source)
    stray = set(doc.bags) - set(doc.order)
    if stray:
        raise FormatError(f"Bags for unknown nodes {sorted(stray)}", None, source)
    try:
        tree = EliminationForest.from_parents(doc.order, doc.parent)
    except InputError as e:
        raise FormatError(str(e), None, source) from e
    return FatEliminationTree(tree, tuple(doc.bags.get(t, ()) for t in range(len(doc.order))))


def parse_ordered_tree(
    text: str, source: Optional[str] = None
) -> Tuple[OrderedTree, Optional[EdgeLabeling]]:
    """
    Ordered tree with node 0 as root, plus its edge labeling if ``label`` lines are present.

    Raises:
        FormatError: If the nodes are not ``0..n-1`` rooted at 0, annotations
            are partial, or labels do not cover exactly the tree edges
    """
    doc = _parse_tree_doc(text, source)
    m = len(doc.order)
    if sorted(doc.order) != list(range(m)) or doc.parent.get(0, 0) is not None:
        raise FormatError("Ordered tree nodes must be 0..n-1 with root 0", None, source)
    kids: Dict[int, List[int]] = {v: [] for v in range(m)}
    for v in doc.order:
        if doc.parent[v] is not None:
            kids[doc.parent[v]].append(v)
    annotations = None
    if doc.annotations:
        if set(doc.annotations) != set(range(m)):
            raise FormatError("'ut' annotations must cover every node", None, source)
        annotations = tuple(doc.annotations[v] for v in range(m))
    try:
        T = OrderedTree(tuple(tuple(kids[v]) for v in range(m)), annotations)
    except InputError as e:
        raise FormatError(str(e), None, source) from e
    if not doc.labels:
        return T, None
    edges = {(p, v) for v, p in doc.parent.items() if p is not None}
    if set(doc.labels) != edges:
        raise FormatError("'label' lines must cover exactly the tree edges", None, source)
    return T, EdgeLabeling(dict(doc.labels), leaf_index_width(len(T.leaves())))


def format_forest(F: EliminationForest) -> str:
    lines = [f"tree {len(F.nodes)}"]
    for v in F.preorder():
        p = F.parent.get(v)
        lines.append(f"node {v} parent {'-' if p is None else p}")
    return "\n".join(lines) + "\n"


def format_fat_tree(W: FatEliminationTree) -> str:
    lines = format_forest(W.tree).splitlines()
    for t, bag in enumerate(W.bags):
        lines.append(" ".join(["bag", str(t)] + [str(v) for v in bag]))
    return "\n".join(lines) + "\n"


def format_ordered_tree(T: OrderedTree, labeling: Optional[EdgeLabeling] = None) -> str:
    parents = T.parents()
    lines = [f"tree {T.size}"]
    for v in T.preorder():
        p = parents[v]
        lines.append(f"node {v} parent {'-' if p is None else p}")
    if T.annotations is not None:
        lines.extend(f"ut {v} {a} {b}" for v, (a, b) in enumerate(T.annotations))
    if labeling is not None:
        for (u, v), bits in sorted(labeling.labels.items()):
            lines.append(f"label {u} {v} {bits or '-'}")
    return "\n".join(lines) + "\n"
