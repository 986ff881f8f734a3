"""
Binary CSP instances as relational structures with model-checking sentences.

Both encodings give every variable and every (variable, value) pair its own
element, so domains are disjoint by construction. Variables appended for
padding get the singleton domain ``(0,)`` and no constraints.
"""

from typing import Dict, List, Sequence, Tuple

import networkx as nx

from ..core import BinCspInstance
from ..errors import InputError
from ..structure import (
    EliminationForest,
    FatEliminationTree,
    validate_elimination_forest,
    validate_fat_tree,
)
from .syntax import (
    Atom,
    Conj,
    Equals,
    Formula,
    GuidedSentence,
    Not,
    PrenexSentence,
    RelationalStructure,
    implies,
)

PAD_DOMAIN = (0,)


class _Universe:
    """Element allocator with display labels."""

    def __init__(self):
        self.labels: List[str] = []

    def add(self, label: str) -> int:
        self.labels.append(label)
        return len(self.labels) - 1

    def structure(self, relations: Dict[str, Tuple[int, set]]) -> RelationalStructure:
        return RelationalStructure(
            len(self.labels),
            {name: (arity, frozenset(ts)) for name, (arity, ts) in relations.items()},
            tuple(self.labels),
        )


def _value_elements(
    U: _Universe, domains: Sequence[Sequence], var_element: Sequence[int]
) -> Tuple[Dict[Tuple[int, object], int], set]:
    values: Dict[Tuple[int, object], int] = {}
    domain_rel = set()
    for u, dom in enumerate(domains):
        for a in dom:
            e = U.add(f"v{u}={a}")
            values[(u, a)] = e
            domain_rel.add((var_element[u], e))
    return values, domain_rel


def _forbidden_relation(inst: BinCspInstance, values: Dict[Tuple[int, object], int]) -> set:
    rel = set()
    for u, v in inst.constraints:
        for a, b in inst.forbidden(u, v):
            rel.add((values[(u, a)], values[(v, b)]))
            rel.add((values[(v, b)], values[(u, a)]))
    return rel


def _pad_forest(F: EliminationForest, n: int, depth: int) -> Tuple[EliminationForest, int]:
    """Hang dummy chains below shallow leaves so every leaf sits at ``depth``."""
    parent = dict(F.parent)
    nodes = list(F.nodes)
    nxt = n
    for leaf in F.leaves():
        above = leaf
        for _ in range(depth - F.depth_of(leaf)):
            parent[nxt] = above
            nodes.append(nxt)
            above = nxt
            nxt += 1
    return EliminationForest(tuple(nodes), parent), nxt - n


def bincsp_td_to_structure(
    inst: BinCspInstance, F: EliminationForest
) -> Tuple[RelationalStructure, GuidedSentence]:
    """
    Forest-shaped structure and guided sentence that holds iff ``inst`` is satisfiable.

    The universe holds the variables (forming ``F``, padded so all leaves
    are at depth ``k = depth(F)``) and one element per domain value; value
    elements are isolated roots. Relations: ``forest`` (variables),
    ``parent``, ``root``, ``domain(u, a)`` and the symmetric
    ``forbidden(a, b)`` over constraint edges. The matrix is
    ``forest(x1) -> (and_i domain(x_i, y_i) and and_{i<j} not forbidden(y_i, y_j))``.

    Raises:
        InputError: If ``F`` is not an elimination forest of the instance
    """
    if not validate_elimination_forest(inst.graph, F):
        raise InputError("Not an elimination forest of the instance's graph")
    k = max(1, F.depth)
    padded, extra = _pad_forest(F, inst.n, k)
    domains = list(inst.domains) + [PAD_DOMAIN] * extra

    U = _Universe()
    var_element = [U.add(f"v{u}") for u in range(len(domains))]
    values, domain_rel = _value_elements(U, domains, var_element)
    relations = {
        "forest": (1, {(e,) for e in var_element}),
        "parent": (2, {(var_element[p], var_element[v]) for v, p in padded.parent.items()}),
        "root": (1, {(var_element[r],) for r in padded.roots} | {(e,) for e in values.values()}),
        "domain": (2, domain_rel),
        "forbidden": (2, _forbidden_relation(inst, values)),
    }

    parts: List[Formula] = [Atom("domain", (f"x{i}", f"y{i}")) for i in range(1, k + 1)]
    parts += [
        Not(Atom("forbidden", (f"y{i}", f"y{j}")))
        for i in range(1, k + 1)
        for j in range(i + 1, k + 1)
    ]
    # value elements are isolated roots too; paths starting there hold vacuously
    matrix = implies(Atom("forest", ("x1",)), Conj(tuple(parts)))
    return U.structure(relations), GuidedSentence(k, matrix)


def is_forest_shaped(A: RelationalStructure) -> bool:
    """``parent`` is a rooted forest over the whole universe whose roots are exactly ``root``."""
    D = nx.DiGraph()
    D.add_nodes_from(range(A.size))
    D.add_edges_from(A.relations["parent"][1])
    if not nx.is_branching(D):
        return False
    return {v for v in D.nodes if D.in_degree(v) == 0} == set(A.members("root"))


def _merge_blocks(blocks: List[Tuple[str, Tuple[str, ...]]]) -> Tuple:
    out: List[Tuple[str, Tuple[str, ...]]] = []
    for kind, names in blocks:
        if not names:
            continue
        if out and out[-1][0] == kind:
            out[-1] = (kind, out[-1][1] + names)
        else:
            out.append((kind, names))
    return tuple(out)


def bincsp_dfold_to_prenex(
    inst: BinCspInstance, W: FatEliminationTree
) -> Tuple[RelationalStructure, PrenexSentence]:
    """
    Structure and prenex sentence with ``2d - 1`` quantifier blocks (``d = W.depth``)
    that holds iff ``inst`` is satisfiable.

    Every bag is padded to exactly ``k = W.width`` variables and every leaf
    bag to depth ``d``. Tree variable ``x_j`` walks a root-to-leaf branch;
    at level ``j`` the pairs ``(y_j^i, z_j^i)`` pick the ``k`` distinct bag
    members and their values.

    Raises:
        InputError: If ``W`` is not a fat elimination tree of the instance
            or has more than one root
    """
    d, k = W.depth, W.width
    if not validate_fat_tree(inst.graph, W, d, k):
        raise InputError("Not a fat elimination tree of the instance's graph")
    if len(W.tree.roots) != 1:
        raise InputError("The fat elimination tree must have exactly one root")

    domains: List[Sequence] = list(inst.domains)

    def dummy() -> int:
        domains.append(PAD_DOMAIN)
        return len(domains) - 1

    bags: List[List[int]] = [list(b) + [dummy() for _ in range(k - len(b))] for b in W.bags]
    parent: Dict[int, int] = dict(W.tree.parent)
    for leaf in W.tree.leaves():
        above = leaf
        for _ in range(d - W.tree.depth_of(leaf)):
            bags.append([dummy() for _ in range(k)])
            parent[len(bags) - 1] = above
            above = len(bags) - 1

    U = _Universe()
    node_element = [U.add(f"t{t}") for t in range(len(bags))]
    var_element = [U.add(f"v{u}") for u in range(len(domains))]
    values, domain_rel = _value_elements(U, domains, var_element)
    relations = {
        "root": (1, {(node_element[W.tree.roots[0]],)}),
        "parent": (2, {(node_element[p], node_element[t]) for t, p in parent.items()}),
        "bag": (2, {(node_element[t], var_element[v]) for t, bag in enumerate(bags) for v in bag}),
        "domain": (2, domain_rel),
        "forbidden": (2, _forbidden_relation(inst, values)),
    }

    def y(j: int, i: int) -> str:
        return f"y{j}_{i}"

    def z(j: int, i: int) -> str:
        return f"z{j}_{i}"

    slots = [(j, i) for j in range(1, d + 1) for i in range(1, k + 1)]
    body: List[Formula] = []
    for j, i in slots:
        body.append(Atom("bag", (f"x{j}", y(j, i))))
        body.append(Atom("domain", (y(j, i), z(j, i))))
    for j in range(1, d + 1):
        for i in range(1, k + 1):
            for i2 in range(i + 1, k + 1):
                body.append(Not(Equals(y(j, i), y(j, i2))))
    for a, (j, i) in enumerate(slots):
        for j2, i2 in slots[a + 1:]:
            body.append(Not(Atom("forbidden", (z(j, i), z(j2, i2)))))
    guard = Conj(tuple(Atom("parent", (f"x{j - 1}", f"x{j}")) for j in range(2, d + 1)))
    matrix = Conj((Atom("root", ("x1",)), implies(guard, Conj(tuple(body)))))

    def level(j: int) -> Tuple[str, ...]:
        return tuple(name for i in range(1, k + 1) for name in (y(j, i), z(j, i)))

    blocks = [("E", ("x1",) + level(1))]
    for j in range(2, d + 1):
        blocks += [("A", (f"x{j}",)), ("E", level(j))]
    return U.structure(relations), PrenexSentence(_merge_blocks(blocks), matrix)
