"""
Exact Binary CSP solvers, one per structural parameter.

Every solver returns the lexicographically least satisfying assignment
(variables in id order, values in domain order) or None. The structured
solvers decide satisfiability under domain restrictions and build the
least witness by fixing variables one at a time.

Every solver takes an optional ``stats`` dict that accumulates its
resource counters:

- ``nodes``: backtracking search nodes (brute force and the coloring oracles)
- ``decisions``: satisfiability checks made while building the least witness
- ``memo_entries``: (node, ancestor values) entries stored by the forest DP
- ``cover_assignments``: consistent assignments of the cover or modulator tried
"""

import warnings
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .config import CapsConfig, get_caps
from .core import (
    Assignment,
    BinCspInstance,
    ListColoringInstance,
    PrecoloringInstance,
    Value,
)
from .errors import InputError, ResourceCapError
from .structure.covers import is_vertex_cover, vertex_cover_exact
from .structure.forests import (
    EliminationForest,
    modulator_to_treedepth,
    treedepth_exact,
    validate_elimination_forest,
)

Domains = List[Tuple[Value, ...]]
Stats = Optional[Dict[str, int]]


def _count(stats: Stats, key: str, amount: int = 1) -> None:
    if stats is not None:
        stats[key] = stats.get(key, 0) + amount


def _least_witness(
    inst: BinCspInstance, decide: Callable[[Domains], bool], stats: Stats = None
) -> Optional[Assignment]:
    """Self-reduction: fix variables in id order to their smallest feasible value."""

    def check(domains: Domains) -> bool:
        _count(stats, "decisions")
        return decide(domains)

    domains: Domains = list(inst.domains)
    if not check(domains):
        return None
    for v in range(inst.n):
        for a in domains[v]:
            trial = list(domains)
            trial[v] = (a,)
            if check(trial):
                domains = trial
                break
    return {v: domains[v][0] for v in range(inst.n)}


def solve_bruteforce(
    inst: BinCspInstance, caps: Optional[CapsConfig] = None, stats: Stats = None
) -> Optional[Assignment]:
    """
    Backtracking over variables in id order and values in domain order.

    Raises:
        ResourceCapError: If the product of domain sizes exceeds ``caps.max_assignments``
    """
    caps = get_caps(caps)
    total = inst.domain_product()
    if total > caps.max_assignments:
        raise ResourceCapError("max_assignments", caps.max_assignments, total)
    earlier: List[List[int]] = [
        [u for u in inst.graph.neighbors(v) if u < v] for v in range(inst.n)
    ]
    values: List[Value] = []

    def extend(v: int) -> bool:
        _count(stats, "nodes")
        if v == inst.n:
            return True
        for a in inst.domains[v]:
            if all(inst.compatible(u, values[u], v, a) for u in earlier[v]):
                values.append(a)
                if extend(v + 1):
                    return True
                values.pop()
        return False

    if not extend(0):
        return None
    return dict(enumerate(values))


def _forest_feasible(
    inst: BinCspInstance,
    forest: EliminationForest,
    domains: Mapping[int, Sequence[Value]],
    stats: Stats = None,
) -> bool:
    """Decide the instance induced on ``forest.nodes`` under ``domains``.

    The subtree of ``v`` depends only on the values of its strict ancestors
    that are adjacent to some vertex of the subtree; results are memoized on
    (node, those values).
    """
    graph = inst.graph
    nodes = set(forest.nodes)
    anc_nbrs: Dict[int, List[int]] = {}
    for v in forest.nodes:
        anc = forest.ancestors(v)
        anc_nbrs[v] = sorted(a for a in anc if graph.has_edge(a, v))
    relevant: Dict[int, Tuple[int, ...]] = {}
    for v in reversed(forest.preorder()):
        anc = set(forest.ancestors(v))
        need = set(anc_nbrs[v])
        for c in forest.children(v):
            need |= set(relevant[c])
        need.discard(v)
        relevant[v] = tuple(sorted(need & anc))
    memo: Dict[Tuple[int, Tuple[Value, ...]], bool] = {}
    assign: Dict[int, Value] = {}

    def ok(v: int) -> bool:
        key = (v, tuple(assign[a] for a in relevant[v]))
        hit = memo.get(key)
        if hit is not None:
            return hit
        result = False
        for a in domains[v]:
            if all(inst.compatible(u, assign[u], v, a) for u in anc_nbrs[v]):
                assign[v] = a
                feasible = all(ok(c) for c in forest.children(v))
                del assign[v]
                if feasible:
                    result = True
                    break
        memo[key] = result
        return result

    if not nodes:
        return True
    feasible = all(ok(r) for r in forest.roots)
    _count(stats, "memo_entries", len(memo))
    return feasible


def solve_by_elimination_forest(
    inst: BinCspInstance, F: EliminationForest, stats: Stats = None
) -> Optional[Assignment]:
    """
    Dynamic programming along an elimination forest of the Gaifman graph.

    Raises:
        InputError: If F is not an elimination forest of the instance
    """
    if not validate_elimination_forest(inst.graph, F):
        raise InputError("Forest is not an elimination forest of the instance")
    return _least_witness(
        inst, lambda doms: _forest_feasible(inst, F, dict(enumerate(doms)), stats), stats
    )


def decide_by_elimination_forest(inst: BinCspInstance, F: EliminationForest) -> bool:
    """Satisfiability only, without building a witness."""
    if not validate_elimination_forest(inst.graph, F):
        raise InputError("Forest is not an elimination forest of the instance")
    return _forest_feasible(inst, F, dict(enumerate(inst.domains)))


def _w_assignments(
    inst: BinCspInstance, W: Sequence[int], domains: Domains, stats: Stats = None
) -> Iterable[Dict[int, Value]]:
    """Consistent assignments of ``W`` (ascending ids) in lexicographic order."""
    partial: Dict[int, Value] = {}

    def rec(i: int):
        if i == len(W):
            _count(stats, "cover_assignments")
            yield dict(partial)
            return
        w = W[i]
        for a in domains[w]:
            if all(inst.compatible(u, partial[u], w, a) for u in W[:i]):
                partial[w] = a
                yield from rec(i + 1)
                del partial[w]

    return rec(0)


def _filter_outside(
    inst: BinCspInstance, fixed: Mapping[int, Value], v: int, domain: Sequence[Value]
) -> Tuple[Value, ...]:
    return tuple(
        b
        for b in domain
        if all(
            inst.compatible(w, a, v, b)
            for w, a in fixed.items()
            if inst.graph.has_edge(w, v)
        )
    )


def solve_by_vertex_cover(
    inst: BinCspInstance, W: Iterable[int], stats: Stats = None
) -> Optional[Assignment]:
    """
    Enumerate consistent assignments of the cover ``W``; every other variable
    only has to find one value compatible with its cover neighbours.

    Raises:
        InputError: If W is not a vertex cover
    """
    W = sorted(set(W))
    if not is_vertex_cover(inst.graph, W):
        raise InputError("W is not a vertex cover of the instance")
    outside = [v for v in range(inst.n) if v not in set(W)]

    def decide(domains: Domains) -> bool:
        for fixed in _w_assignments(inst, W, domains, stats):
            if all(_filter_outside(inst, fixed, v, domains[v]) for v in outside):
                return True
        return False

    return _least_witness(inst, decide, stats)


def solve_by_modulator(
    inst: BinCspInstance, W: Iterable[int], F: EliminationForest, stats: Stats = None
) -> Optional[Assignment]:
    """
    For each consistent assignment of the modulator ``W``, turn the
    constraints towards ``W`` into domain filters on ``G - W`` and run the
    elimination-forest DP there.

    Raises:
        InputError: If F is not an elimination forest of ``G - W``
    """
    W = sorted(set(W))
    rest_graph = inst.graph.without(W)
    if not validate_elimination_forest(rest_graph, F):
        raise InputError("Forest is not an elimination forest of G - W")
    outside = list(rest_graph.vertices)

    def decide(domains: Domains) -> bool:
        for fixed in _w_assignments(inst, W, domains, stats):
            filtered = {v: _filter_outside(inst, fixed, v, domains[v]) for v in outside}
            if _forest_feasible(inst, F, filtered, stats):
                return True
        return False

    return _least_witness(inst, decide, stats)


def solve_listcoloring_bruteforce(
    lc: ListColoringInstance, stats: Stats = None
) -> Optional[Dict[int, Value]]:
    """Backtracking list coloring in vertex order, or None."""
    order = list(lc.graph.vertices)
    coloring: Dict[int, Value] = {}

    def extend(i: int) -> bool:
        _count(stats, "nodes")
        if i == len(order):
            return True
        v = order[i]
        for c in lc.lists[v]:
            if all(coloring.get(u) != c for u in lc.graph.neighbors(v)):
                coloring[v] = c
                if extend(i + 1):
                    return True
                del coloring[v]
        return False

    return dict(coloring) if extend(0) else None


def solve_precoloring_bruteforce(
    pre: PrecoloringInstance, stats: Stats = None
) -> Optional[Dict[int, Value]]:
    """Backtracking extension of the precoloring, or None."""
    lists = {
        v: (pre.precolored[v],) if v in pre.precolored else pre.colors
        for v in pre.graph.vertices
    }
    return solve_listcoloring_bruteforce(
        ListColoringInstance(pre.graph, pre.colors, lists), stats
    )


def solve(
    inst: BinCspInstance,
    method: str = "brute",
    forest: Optional[EliminationForest] = None,
    cover: Optional[Iterable[int]] = None,
    caps: Optional[CapsConfig] = None,
    stats: Stats = None,
) -> Optional[Assignment]:
    """
    Solve with a named method, computing missing witnesses exactly.

    Args:
        inst: Instance to solve
        method: One of ``brute``, ``dp``, ``vc``, ``modulator``
        forest: Elimination forest (``dp``) or forest of ``G - W`` (``modulator``)
        cover: Vertex cover (``vc``) or modulator (``modulator``)
        caps: Resource caps
        stats: If given, accumulates the resource counters of the chosen method

    Returns:
        Least satisfying assignment, or None
    """
    if method not in SOLVERS:
        raise InputError(f"Unknown method '{method}'. Available: {', '.join(SOLVERS)}")
    if method == "brute":
        return solve_bruteforce(inst, caps, stats)
    if method == "dp":
        if forest is None:
            warnings.warn("No forest given; computing a minimum-depth one", stacklevel=2)
            _, forest = treedepth_exact(inst.graph, caps)
        return solve_by_elimination_forest(inst, forest, stats)
    if method == "vc":
        if cover is None:
            warnings.warn("No cover given; computing a minimum one", stacklevel=2)
            cover = vertex_cover_exact(inst.graph, inst.n)
        return solve_by_vertex_cover(inst, cover, stats)
    if cover is None:
        warnings.warn("No modulator given; using W = {} with a minimum forest", stacklevel=2)
        cover = frozenset()
    if forest is None:
        found = modulator_to_treedepth(inst.graph.without(cover), inst.n, 0, caps)
        forest = found[1]
    return solve_by_modulator(inst, cover, forest, stats)


SOLVERS: Dict[str, str] = {
    "brute": "backtracking over all variables",
    "dp": "elimination-forest dynamic programming",
    "vc": "vertex-cover enumeration",
    "modulator": "modulator enumeration plus forest DP",
}
