"""
Reduction reports: the produced artifact plus the declared parameters and
witnesses that make the reduction parameterized.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from ..core import BinCspInstance, ListColoringInstance, PrecoloringInstance
from ..errors import InputError
from ..formulas import BooleanCircuit, WeightedSatInstance, is_normalized
from ..logic import GuidedSentence, PrenexSentence, RelationalStructure, is_forest_shaped
from ..structure import (
    EliminationForest,
    Graph,
    is_feedback_vertex_set,
    is_vertex_cover,
    validate_elimination_forest,
)


@dataclass
class ReductionReport:
    """
    Output of a registered reduction rule.

    ``parameters`` holds declared numbers (``k``, ``depth``, ``level``,
    ``weight``); ``witnesses`` holds structures on the output (``cover``,
    ``fvs``, ``modulator``, ``forest``).
    """

    rule: str
    output: Any
    parameters: Dict[str, Any] = field(default_factory=dict)
    witnesses: Dict[str, Any] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    def validate(self) -> Dict[str, bool]:
        """Run the structure validator matching every declared parameter."""
        return validate_parameters(self.output, self.parameters, self.witnesses)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rule": self.rule,
            "parameters": dict(self.parameters),
            "witnesses": {k: _plain(v) for k, v in self.witnesses.items()},
            "notes": list(self.notes),
            "checks": self.validate(),
        }


def _plain(value: Any) -> Any:
    if isinstance(value, EliminationForest):
        return {"nodes": list(value.nodes), "parent": dict(value.parent)}
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    return value


def _graph_of(output: Any) -> Optional[Graph]:
    if isinstance(output, (BinCspInstance, ListColoringInstance, PrecoloringInstance)):
        return output.graph
    kernel = getattr(output, "kernel", None)
    if kernel is not None:
        return kernel.graph
    return None


def validate_parameters(
    output: Any, parameters: Dict[str, Any], witnesses: Dict[str, Any]
) -> Dict[str, bool]:
    """
    Check declared witnesses and parameters against the output artifact.

    Returns:
        Map check name -> passed
    """
    checks: Dict[str, bool] = {}
    graph = _graph_of(output)
    k = parameters.get("k")
    if "cover" in witnesses and graph is not None:
        W = set(witnesses["cover"])
        checks["cover"] = is_vertex_cover(graph, W) and (k is None or len(W) <= k)
    if "fvs" in witnesses and graph is not None:
        W = set(witnesses["fvs"])
        checks["fvs"] = is_feedback_vertex_set(graph, W) and (k is None or len(W) <= k)
    if "forest" in witnesses and graph is not None:
        W = set(witnesses.get("modulator", ()))
        forest = witnesses["forest"]
        try:
            ok = validate_elimination_forest(graph.without(W), forest)
        except InputError:
            ok = False
        depth = parameters.get("depth")
        checks["forest"] = ok and (depth is None or forest.depth <= depth)
        if "modulator" in witnesses:
            checks["modulator"] = k is None or len(W) <= k
    if isinstance(output, WeightedSatInstance):
        if "level" in parameters:
            checks["level"] = is_normalized(output.formula, parameters["level"])
        if "weight" in parameters:
            checks["weight"] = output.k == parameters["weight"]
    if isinstance(output, tuple) and output and isinstance(output[0], BooleanCircuit):
        try:
            output[0].topological_order()
            checks["acyclic"] = True
        except InputError:
            checks["acyclic"] = False
        if "weight" in parameters:
            checks["weight"] = output[1] == parameters["weight"]
    if isinstance(output, tuple) and len(output) == 2 and isinstance(output[0], RelationalStructure):
        A, s = output
        if isinstance(s, GuidedSentence):
            checks["forest_shaped"] = is_forest_shaped(A)
            if "k" in parameters:
                checks["k"] = s.k == parameters["k"]
        elif isinstance(s, PrenexSentence) and "blocks" in parameters:
            checks["blocks"] = s.alternation_level <= max(parameters["blocks"], 1)
        checks["signature"] = all(
            name in A.relations and A.relations[name][0] == arity for name, arity in s.signature()
        )
    return checks
