"""
Binary CSP with a modulator to weighted satisfiability.

Variable ``x[w=c]`` says that modulator vertex ``w`` takes value ``c``;
the weight budget is ``|W|``, so at-least-one clauses per vertex force
exactly one value each.
"""

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from ..config import CapsConfig, get_caps
from ..core import BinCspInstance, Value, value_key
from ..errors import InputError, ResourceCapError
from ..formulas import (
    And,
    BooleanCircuit,
    CircuitBuilder,
    NormalizedFormula,
    Or,
    WeightedSatInstance,
    neg,
    pad_to_level,
    pos,
)
from ..formulas.normalized import Lit, Node
from ..structure import (
    EliminationForest,
    is_feedback_vertex_set,
    is_vertex_cover,
    validate_elimination_forest,
)

VarIndex = Dict[Tuple[int, Value], int]


def _pair_key(pair: Tuple[Value, Value]) -> Tuple:
    return value_key(pair[0]), value_key(pair[1])


def _value_variables(inst: BinCspInstance, W: Sequence[int]) -> Tuple[VarIndex, Dict[int, str]]:
    index: VarIndex = {}
    names: Dict[int, str] = {}
    for w in W:
        for c in inst.domain(w):
            names[len(index)] = f"x[{w}={c}]"
            index[(w, c)] = len(index)
    return index, names


def _selection_clauses(inst: BinCspInstance, W: Sequence[int], var: VarIndex) -> List[Node]:
    """At least one value per ``w``, and an allowed pair on every edge inside ``W``."""
    clauses: List[Node] = [
        Or(tuple(And((pos(var[(w, c)]),)) for c in inst.domain(w))) for w in W
    ]
    Wset = set(W)
    for u, v in inst.graph.edges:
        if u in Wset and v in Wset:
            clauses.append(
                Or(
                    tuple(
                        And((pos(var[(u, a)]), pos(var[(v, b)])))
                        for a, b in sorted(inst.allowed(u, v), key=_pair_key)
                    )
                )
            )
    return clauses


def _conflict_literals(
    inst: BinCspInstance, W: Sequence[int], var: VarIndex, x: int, a: Value
) -> List[Lit]:
    """``not x[w=c]`` for every W-neighbour value conflicting with ``x = a``."""
    return [
        neg(var[(w, c)])
        for w in W
        if inst.graph.has_edge(x, w)
        for c in inst.domain(w)
        if not inst.compatible(x, a, w, c)
    ]


def _modulator(inst: BinCspInstance, W: Iterable[int]) -> List[int]:
    W = sorted(set(W))
    stray = [w for w in W if not 0 <= w < inst.n]
    if stray:
        raise InputError(f"Modulator vertices {stray} are not variables")
    return W


def bincsp_vc_to_wsat3(inst: BinCspInstance, W: Iterable[int]) -> WeightedSatInstance:
    """
    Binary CSP with a vertex cover to 3-normalized weighted satisfiability.

    Every vertex outside the cover contributes one disjunction over its
    values of the conflicts that value has with cover values.

    Raises:
        InputError: If W is not a vertex cover
    """
    W = _modulator(inst, W)
    if not is_vertex_cover(inst.graph, W):
        raise InputError("W is not a vertex cover of the instance")
    var, names = _value_variables(inst, W)
    clauses = _selection_clauses(inst, W, var)
    Wset = set(W)
    for v in range(inst.n):
        if v in Wset:
            continue
        clauses.append(
            Or(tuple(And(tuple(_conflict_literals(inst, W, var, v, b))) for b in inst.domain(v)))
        )
    root = pad_to_level(And(tuple(clauses)), 3)
    return WeightedSatInstance(NormalizedFormula(root, len(var)), len(W), names)


def bincsp_modtd_to_wsat2d1(
    inst: BinCspInstance,
    W: Iterable[int],
    forest: EliminationForest,
    caps: Optional[CapsConfig] = None,
) -> WeightedSatInstance:
    """
    Binary CSP with a modulator to treedepth ``d`` to (2d+1)-normalized
    weighted satisfiability.

    Forest parent links missing from the Gaifman graph are added with full
    constraints first. For every forest vertex ``v`` and every conflict-free
    assignment ``f`` of ``v`` and its ancestors, a conjunction states that
    ``f`` agrees with the modulator values and extends to each child subtree;
    roots take a disjunction over their own families.

    Args:
        inst: Source instance
        W: Modulator
        forest: Elimination forest of ``G - W``
        caps: Resource caps (``max_families``)

    Raises:
        InputError: If the forest does not fit ``G - W``
        ResourceCapError: If more than ``caps.max_families`` families are built
    """
    caps = get_caps(caps)
    W = _modulator(inst, W)
    if not validate_elimination_forest(inst.graph.without(W), forest):
        raise InputError("Forest is not an elimination forest of G - W")
    inst = inst.with_full_edges(forest.parent.items())
    var, names = _value_variables(inst, W)
    clauses = _selection_clauses(inst, W, var)
    literal_cache: Dict[Tuple[int, Value], List[Lit]] = {}
    built = 0

    def literals(x: int, a: Value) -> List[Lit]:
        key = (x, a)
        if key not in literal_cache:
            literal_cache[key] = _conflict_literals(inst, W, var, x, a)
        return literal_cache[key]

    def family(v: int, chain: Tuple[Tuple[int, Value], ...]) -> And:
        nonlocal built
        built += 1
        if built > caps.max_families:
            raise ResourceCapError("max_families", caps.max_families, built)
        parts: List[Node] = list(
            dict.fromkeys(lit for x, a in chain for lit in literals(x, a))
        )
        for y in forest.children(v):
            options = [
                family(y, chain + ((y, c),))
                for c in inst.domain(y)
                if all(inst.compatible(x, a, y, c) for x, a in chain)
            ]
            parts.append(Or(tuple(options)))
        return And(tuple(parts))

    for r in forest.roots:
        clauses.append(Or(tuple(family(r, ((r, a),)) for a in inst.domain(r))))
    level = 2 * max(forest.depth, 1) + 1
    root = pad_to_level(And(tuple(clauses)), level)
    return WeightedSatInstance(NormalizedFormula(root, len(var)), len(W), names)


def bincsp_fvs_to_circuit(
    inst: BinCspInstance, W: Iterable[int]
) -> Tuple[BooleanCircuit, int]:
    """
    Binary CSP with a feedback vertex set to weighted circuit satisfiability.

    The forest ``G - W`` is rooted at the lowest id of each tree. Gate
    ``y[v=c]`` is true iff the subtree of ``v`` extends the modulator values
    with ``v = c``; each such gate is built once and shared by every parent
    value that is compatible with it.

    Returns:
        (circuit, weight budget ``|W|``)

    Raises:
        InputError: If W is not a feedback vertex set
    """
    W = _modulator(inst, W)
    if not is_feedback_vertex_set(inst.graph, W):
        raise InputError("W is not a feedback vertex set of the instance")
    var, _ = _value_variables(inst, W)
    b = CircuitBuilder(len(var))
    x = {key: b.input(i) for key, i in var.items()}
    Wset = set(W)

    checks: List[int] = []
    for w in W:
        dom = inst.domain(w)
        checks.append(b.or_(x[(w, c)] for c in dom))
        for i, c in enumerate(dom):
            for c2 in dom[i + 1:]:
                checks.append(b.not_(b.and_((x[(w, c)], x[(w, c2)]))))
    for u, v in inst.graph.edges:
        if u in Wset and v in Wset:
            allowed = sorted(inst.allowed(u, v), key=_pair_key)
            checks.append(b.or_(b.and_((x[(u, a)], x[(v, c)])) for a, c in allowed))

    rest = inst.graph.without(W)
    g = rest.to_networkx()
    y: Dict[Tuple[int, Value], int] = {}
    for component in rest.components():
        root = min(component)
        tree = nx.bfs_tree(g, root)
        for v in reversed(list(tree)):
            kids = sorted(tree.successors(v))
            for c in inst.domain(v):
                terms = [
                    b.or_(x[(w, c2)] for c2 in inst.domain(w) if inst.compatible(v, c, w, c2))
                    for w in W
                    if inst.graph.has_edge(v, w)
                ]
                terms += [
                    b.or_(y[(kid, c2)] for c2 in inst.domain(kid) if inst.compatible(v, c, kid, c2))
                    for kid in kids
                ]
                y[(v, c)] = b.and_(terms)
        checks.append(b.or_(y[(root, c)] for c in inst.domain(root)))
    return b.build(b.and_(checks)), len(W)
