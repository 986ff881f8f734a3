"""Boolean circuits with structural gate sharing, evaluation and weighted satisfiability."""

from dataclasses import dataclass
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx

from ..config import CapsConfig, get_caps
from ..errors import InputError, ResourceCapError
from .normalized import And, Lit, NormalizedFormula, Node, colex_subsets

GATE_KINDS = ("IN", "AND", "OR", "NOT")


@dataclass(frozen=True)
class Gate:
    """``IN`` reads variable ``var``; the others combine earlier gate ids in ``inputs``."""

    kind: str
    inputs: Tuple[int, ...] = ()
    var: Optional[int] = None


@dataclass(frozen=True)
class BooleanCircuit:
    gates: Tuple[Gate, ...]
    output: int
    n: int

    def __post_init__(self):
        m = len(self.gates)
        if not 0 <= self.output < m:
            raise InputError(f"Output gate g{self.output} does not exist")
        for gid, g in enumerate(self.gates):
            if g.kind not in GATE_KINDS:
                raise InputError(f"g{gid}: unknown gate kind {g.kind!r}")
            if g.kind == "IN":
                if g.var is None or not 0 <= g.var < self.n:
                    raise InputError(f"g{gid}: input variable out of range")
            elif g.kind == "NOT" and len(g.inputs) != 1:
                raise InputError(f"g{gid}: NOT takes exactly one input")
            for i in g.inputs:
                if not 0 <= i < m:
                    raise InputError(f"g{gid}: references missing gate g{i}")

    def topological_order(self) -> List[int]:
        """Gate ids, inputs before users.

        Raises:
            InputError: If the gate graph has a cycle
        """
        dag = nx.DiGraph()
        dag.add_nodes_from(range(len(self.gates)))
        dag.add_edges_from(
            (i, gid) for gid, g in enumerate(self.gates) for i in g.inputs
        )
        if not nx.is_directed_acyclic_graph(dag):
            raise InputError("Circuit contains a cycle")
        return list(nx.lexicographical_topological_sort(dag))


class CircuitBuilder:
    """Incremental construction; identical gates are created once and shared."""

    def __init__(self, n: int):
        self.n = n
        self._gates: List[Gate] = []
        self._index: Dict[Gate, int] = {}

    def _add(self, gate: Gate) -> int:
        gid = self._index.get(gate)
        if gid is None:
            gid = len(self._gates)
            self._gates.append(gate)
            self._index[gate] = gid
        return gid

    def input(self, var: int) -> int:
        return self._add(Gate("IN", (), var))

    def and_(self, inputs: Iterable[int]) -> int:
        return self._add(Gate("AND", tuple(inputs)))

    def or_(self, inputs: Iterable[int]) -> int:
        return self._add(Gate("OR", tuple(inputs)))

    def not_(self, gid: int) -> int:
        return self._add(Gate("NOT", (gid,)))

    def true(self) -> int:
        return self.and_(())

    def build(self, output: int) -> BooleanCircuit:
        return BooleanCircuit(tuple(self._gates), output, self.n)

    @property
    def size(self) -> int:
        return len(self._gates)


def _evaluate(C: BooleanCircuit, order: List[int], truth) -> bool:
    val: List[bool] = [False] * len(C.gates)
    for gid in order:
        g = C.gates[gid]
        if g.kind == "IN":
            val[gid] = g.var in truth
        elif g.kind == "AND":
            val[gid] = all(val[i] for i in g.inputs)
        elif g.kind == "OR":
            val[gid] = any(val[i] for i in g.inputs)
        else:
            val[gid] = not val[g.inputs[0]]
    return val[C.output]


def eval_circuit(C: BooleanCircuit, truth: Iterable[int]) -> bool:
    """Evaluate gate by gate in topological order. Raises: InputError on a cycle"""
    return _evaluate(C, C.topological_order(), set(truth))


def weighted_circuit_sat_bruteforce(
    C: BooleanCircuit, k: int, caps: Optional[CapsConfig] = None
) -> Optional[FrozenSet[int]]:
    """
    First weight-``k`` accepting input in colexicographic order, or None.

    Raises:
        ResourceCapError: If ``binom(n, k)`` exceeds ``caps.max_subsets``
    """
    caps = get_caps(caps)
    if k < 0 or k > C.n:
        return None
    count = comb(C.n, k)
    if count > caps.max_subsets:
        raise ResourceCapError("max_subsets", caps.max_subsets, count)
    order = C.topological_order()
    for subset in colex_subsets(C.n, k):
        if _evaluate(C, order, set(subset)):
            return frozenset(subset)
    return None


def formula_to_circuit(F: NormalizedFormula) -> BooleanCircuit:
    """Transliterate a formula gate for gate (negative literals become NOT over IN)."""
    b = CircuitBuilder(F.n)

    def emit(node: Node) -> int:
        if isinstance(node, Lit):
            gid = b.input(node.var)
            return gid if node.positive else b.not_(gid)
        kids = [emit(c) for c in node.children]
        return b.and_(kids) if isinstance(node, And) else b.or_(kids)

    return b.build(emit(F.root))
