"""
List Coloring and Precoloring Extension transformations.

Colors are ordered by their token order (``value_key``) wherever an order
on colors is needed.
"""

from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Tuple

from ..core import (
    ListColoringInstance,
    PrecoloringInstance,
    Value,
    listcoloring_to_bincsp,
)
from ..errors import InputError
from ..formulas import NormalizedFormula, Or, WeightedSatInstance, neg, pos
from ..formulas.normalized import And, Node
from ..solvers import solve_by_elimination_forest, solve_listcoloring_bruteforce
from ..structure import EliminationForest, Graph, is_vertex_cover, validate_elimination_forest

Slot = Tuple[str, int, int]
Check = Callable[[Value, Value], bool]


def _modulator_of(graph: Graph, W: Iterable[int]) -> List[int]:
    W = sorted(set(W))
    stray = set(W) - set(graph.vertices)
    if stray:
        raise InputError(f"Modulator vertices {sorted(stray)} are not in the graph")
    return W


def _interval_members(colors: Tuple[Value, ...], a: Value, b: Value, wraps: bool) -> List[Value]:
    """Colors strictly between ``a`` and ``b``, or outside ``[b, a]`` for the wrapping gap."""
    rank = {c: i for i, c in enumerate(colors)}
    ra, rb = rank[a], rank[b]
    if wraps:
        return [c for c in colors if rank[c] > ra or rank[c] < rb]
    return [c for c in colors if ra < rank[c] < rb]


def listcoloring_vc_to_wsat2(
    lc: ListColoringInstance, W: Iterable[int]
) -> WeightedSatInstance:
    """
    List Coloring with a vertex cover to 2-normalized weighted satisfiability.

    Vertices outside ``W`` are grouped by their neighbourhood ``N`` in ``W``.
    Each group with ``m = |N|`` gets ``m`` copies of ``N`` plus ``3m``
    auxiliary slots: sorted copy colors, the copy each sorted color came
    from, and the gaps between consecutive sorted colors (the last gap wraps
    around). A vertex of the group is colorable iff one of its colors lies
    in some gap. The weight is ``k + 4 * sum(m)``.

    Raises:
        InputError: If W is not a vertex cover
    """
    graph, colors = lc.graph, lc.colors
    W = _modulator_of(graph, W)
    if not is_vertex_cover(graph, W):
        raise InputError("W is not a vertex cover of the graph")
    Wset = set(W)
    groups: Dict[Tuple[int, ...], List[int]] = {}
    for v in graph.vertices:
        if v not in Wset:
            groups.setdefault(tuple(sorted(graph.neighbors(v))), []).append(v)

    ordered = {c: i for i, c in enumerate(colors)}
    ascending = tuple((a, b) for a in colors for b in colors if ordered[a] <= ordered[b])
    descending = tuple((a, b) for a in colors for b in colors if ordered[a] >= ordered[b])
    picks_of = lambda m: tuple((j, c) for j in range(m) for c in colors)  # noqa: E731

    values: Dict[Slot, Tuple[Value, ...]] = {}
    layers: Dict[str, List[Slot]] = {"gap": [], "sorted": [], "pick": [], "copy": [], "main": []}
    checks: List[Tuple[Slot, Slot, Check]] = []

    def slot(kind: str, group: int, i: int, vals: Tuple[Value, ...]) -> Slot:
        key = (kind, group, i)
        values[key] = vals
        layers[kind].append(key)
        return key

    main = {w: slot("main", -1, w, lc.lists[w]) for w in W}
    for u, v in graph.edges:
        if u in Wset and v in Wset:
            checks.append((main[u], main[v], lambda a, b: a != b))

    clauses: List[Node] = []
    gap_members: List[Tuple[int, List[Tuple[Slot, bool]]]] = []
    for g, (N, members) in enumerate(groups.items()):
        m = len(N)
        if m == 0:
            if any(not lc.lists[v] for v in members):
                clauses.append(Or(()))
            continue
        copy = [slot("copy", g, i, lc.lists[w]) for i, w in enumerate(N)]
        srt = [slot("sorted", g, i, colors) for i in range(m)]
        pick = [slot("pick", g, i, picks_of(m)) for i in range(m)]
        gap = [
            slot("gap", g, i, ascending if i < m - 1 else descending) for i in range(m)
        ]
        for i, w in enumerate(N):
            checks.append((copy[i], main[w], lambda a, b: a == b))
            for i2 in range(i + 1, m):
                if graph.has_edge(w, N[i2]):
                    checks.append((copy[i], copy[i2], lambda a, b: a != b))
            for i2 in range(m):
                checks.append(
                    (copy[i], pick[i2], lambda a, p, i=i: p[0] != i or a == p[1])
                )
                if i2 > i:
                    checks.append((pick[i], pick[i2], lambda p, q: p[0] != q[0]))
            checks.append((srt[i], pick[i], lambda a, p: a == p[1]))
        for i in range(m - 1):
            checks.append((srt[i], gap[i], lambda a, e: a == e[0]))
            checks.append((srt[i + 1], gap[i], lambda b, e: b == e[1]))
        checks.append((srt[m - 1], gap[m - 1], lambda a, e: a == e[0]))
        checks.append((srt[0], gap[m - 1], lambda b, e: b == e[1]))
        gap_members.append((g, [(gap[i], i == m - 1) for i in range(m)]))

    var: Dict[Tuple[Slot, Value], int] = {}
    names: Dict[int, str] = {}
    for kind in ("gap", "sorted", "pick", "copy", "main"):
        for key in layers[kind]:
            for c in values[key]:
                names[len(var)] = f"{key[0]}[{key[1]},{key[2]}={c}]"
                var[(key, c)] = len(var)

    slots = [key for kind in ("main", "copy", "pick", "sorted", "gap") for key in layers[kind]]
    clauses = [Or(tuple(pos(var[(key, c)]) for c in values[key])) for key in slots] + clauses
    seen = set()
    for s1, s2, ok in checks:
        for a in values[s1]:
            for b in values[s2]:
                if ok(a, b):
                    continue
                pair = (var[(s1, a)], var[(s2, b)])
                if pair not in seen:
                    seen.add(pair)
                    clauses.append(Or((neg(pair[0]), neg(pair[1]))))

    group_list = list(groups.values())
    for g, gaps in gap_members:
        for v in group_list[g]:
            hits: Dict[int, None] = {}
            for c in lc.lists[v]:
                for key, wraps in gaps:
                    for a, b in values[key]:
                        if c in _interval_members(colors, a, b, wraps):
                            hits[var[(key, (a, b))]] = None
            clauses.append(Or(tuple(pos(x) for x in hits)))

    weight = len(W) + 4 * sum(len(N) for N in groups)
    return WeightedSatInstance(NormalizedFormula(And(tuple(clauses)), len(var)), weight, names)


def listcoloring_to_precolext(
    lc: ListColoringInstance, W: Iterable[int], forest: EliminationForest
) -> Tuple[PrecoloringInstance, FrozenSet[int], EliminationForest]:
    """
    List Coloring to Precoloring Extension.

    Every missing color ``c`` of ``v`` becomes a pendant vertex precolored
    ``c``. Pendants hang below ``v`` in the forest, or form singleton roots
    when ``v`` is in the modulator, so the depth grows by at most one.

    Raises:
        InputError: If the forest does not fit ``G - W``
    """
    graph = lc.graph
    W = _modulator_of(graph, W)
    if not validate_elimination_forest(graph.without(W), forest):
        raise InputError("Forest is not an elimination forest of G - W")
    Wset = set(W)
    next_id = max(graph.vertices, default=-1) + 1
    pendants: List[int] = []
    edges = list(graph.edges)
    precolored: Dict[int, Value] = {}
    parent = dict(forest.parent)
    for v in graph.vertices:
        present = set(lc.lists[v])
        for c in lc.colors:
            if c in present:
                continue
            pendants.append(next_id)
            edges.append((v, next_id))
            precolored[next_id] = c
            if v not in Wset:
                parent[next_id] = v
            next_id += 1
    out = PrecoloringInstance(Graph(graph.vertices + tuple(pendants), tuple(edges)), lc.colors, precolored)
    return out, frozenset(W), EliminationForest(forest.nodes + tuple(pendants), parent)


@dataclass(frozen=True)
class ColoringKernel:
    """
    Outcome of a precoloring kernelization.

    ``verdict`` is set when the instance was decided outright; otherwise
    ``kernel`` is an equivalent list-coloring instance with modulator
    ``modulator`` and (for the treedepth variant) forest ``forest``.
    """

    verdict: Optional[bool]
    kernel: Optional[ListColoringInstance] = None
    modulator: FrozenSet[int] = frozenset()
    forest: Optional[EliminationForest] = None

    def resolve(self) -> bool:
        if self.verdict is not None:
            return self.verdict
        return solve_listcoloring_bruteforce(self.kernel) is not None


def _precoloring_is_proper(pre: PrecoloringInstance) -> bool:
    f = pre.precolored
    return all(
        f[u] != f[v] for u, v in pre.graph.edges if u in f and v in f
    )


def _solve_below_chain(
    pre: PrecoloringInstance, S: List[int], forest: Optional[EliminationForest]
) -> bool:
    """Decide by forest DP on ``S`` chained above ``forest`` (or above all other vertices)."""
    lists = {
        v: (pre.precolored[v],) if v in pre.precolored else pre.colors
        for v in pre.graph.vertices
    }
    inst = listcoloring_to_bincsp(ListColoringInstance(pre.graph, pre.colors, lists))
    index = {v: i for i, v in enumerate(pre.graph.vertices)}
    parent: Dict[int, int] = {index[S[i + 1]]: index[S[i]] for i in range(len(S) - 1)}
    below = forest.parent if forest is not None else {}
    in_chain = set(S)
    for v in pre.graph.vertices:
        if v in in_chain:
            continue
        if v in below:
            parent[index[v]] = index[below[v]]
        elif S:
            parent[index[v]] = index[S[-1]]
    chain = EliminationForest.from_parents(range(inst.n), parent)
    return solve_by_elimination_forest(inst, chain) is not None


def _filtered_lists(pre: PrecoloringInstance, keep: Iterable[int]) -> Dict[int, Tuple[Value, ...]]:
    f = pre.precolored
    return {
        v: tuple(
            c
            for c in pre.colors
            if all(f.get(u) != c for u in pre.graph.neighbors(v) if u in f)
        )
        for v in keep
    }


def precolext_vc_kernel(pre: PrecoloringInstance, S: Iterable[int]) -> ColoringKernel:
    """
    Polynomial kernel for Precoloring Extension with a vertex cover ``S``.

    With at most ``|S|`` colors the instance is solved outright. Otherwise
    only uncolored cover vertices whose filtered list is shorter than
    ``|S|`` remain; everything else can always be colored afterwards.

    Raises:
        InputError: If S is not a vertex cover
    """
    graph = pre.graph
    S = _modulator_of(graph, S)
    if not is_vertex_cover(graph, S):
        raise InputError("S is not a vertex cover of the graph")
    if not _precoloring_is_proper(pre):
        return ColoringKernel(False)
    k = len(S)
    if len(pre.colors) <= k:
        return ColoringKernel(_solve_below_chain(pre, S, None))
    lists = _filtered_lists(pre, (v for v in S if v not in pre.precolored))
    keep = [v for v, lst in lists.items() if len(lst) < k]
    kernel = ListColoringInstance(
        graph.subgraph(keep), pre.colors, {v: lists[v] for v in keep}
    )
    return ColoringKernel(True if not keep else None, kernel, frozenset(keep))


def precolext_modtd_strip(
    pre: PrecoloringInstance, S: Iterable[int], forest: EliminationForest
) -> ColoringKernel:
    """
    Precoloring Extension with a modulator ``S`` to treedepth ``d`` to
    List Coloring with modulator ``S - W`` to treedepth ``d - 1``.

    With at most ``d + |S|`` colors the instance is solved outright.
    Otherwise uncolored leaves are stripped repeatedly, which keeps exactly
    the forest vertices with a precolored descendant; precolored vertices
    then turn into list filters on their neighbours.

    Raises:
        InputError: If the forest does not fit ``G - S``
    """
    graph = pre.graph
    S = _modulator_of(graph, S)
    if not validate_elimination_forest(graph.without(S), forest):
        raise InputError("Forest is not an elimination forest of G - S")
    if not _precoloring_is_proper(pre):
        return ColoringKernel(False)
    if len(pre.colors) <= forest.depth + len(S):
        return ColoringKernel(_solve_below_chain(pre, S, forest))
    f = pre.precolored
    marked = set()
    for v in reversed(forest.preorder()):
        if v in f or any(c in marked for c in forest.children(v)):
            marked.add(v)
    rest = sorted(v for v in marked if v not in f)
    modulator = [v for v in S if v not in f]
    keep = sorted(rest + modulator)
    lists = _filtered_lists(pre, keep)
    kernel = ListColoringInstance(graph.subgraph(keep), pre.colors, lists)
    return ColoringKernel(
        True if not keep else None, kernel, frozenset(modulator), forest.restrict(rest)
    )
