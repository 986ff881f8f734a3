"""
Registry of reduction rules.

Every rule maps a source artifact (plus optional witnesses) to a
:class:`~tdcsp.reductions.ReductionReport`. Missing witnesses are computed
exactly, with a warning.
"""

import warnings
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Optional, Tuple

from ..config import CapsConfig, get_caps
from ..core import (
    BinCspInstance,
    ListColoringInstance,
    PrecoloringInstance,
    bincsp_to_listcoloring,
    bincsp_to_listcoloring_forest,
    listcoloring_to_bincsp,
)
from ..errors import InputError
from ..formulas import WeightedSatInstance
from ..logic import bincsp_dfold_to_prenex, bincsp_td_to_structure
from ..machine import ToyMachine, compile_bincsp_td, compile_regular_arosm_to_bincsp
from ..reductions import (
    ReductionReport,
    bincsp_fvs_to_circuit,
    bincsp_modtd_to_wsat2d1,
    bincsp_vc_to_wsat3,
    fvs_formula_depth,
    listcoloring_to_precolext,
    listcoloring_vc_to_wsat2,
    precolext_modtd_strip,
    precolext_vc_kernel,
    wsat2d1am_to_bincsp_forest_modulator,
    wsat3am_to_bincsp_vc,
    wsatam_to_bincsp_fvs,
)
from ..structure import (
    EliminationForest,
    FatEliminationTree,
    Graph,
    d_fold_vc_number,
    fat_elimination_tree,
    feedback_vertex_set_exact,
    modulator_to_treedepth,
    treedepth_exact,
    vertex_cover_exact,
)


@dataclass(frozen=True)
class Rule:
    """A registered reduction: source and target kinds plus the witnesses it reads."""

    name: str
    source: str
    target: str
    witnesses: Tuple[str, ...]
    description: str
    apply: Callable[..., ReductionReport]


def _cover(G: Graph, cover: Optional[Iterable[int]]) -> FrozenSet[int]:
    if cover is not None:
        return frozenset(cover)
    warnings.warn("No vertex cover given; computing a minimum one", stacklevel=3)
    return vertex_cover_exact(G, G.n)


def _fvs(G: Graph, cover: Optional[Iterable[int]], caps: CapsConfig) -> FrozenSet[int]:
    if cover is not None:
        return frozenset(cover)
    warnings.warn("No feedback vertex set given; computing a minimum one", stacklevel=3)
    return feedback_vertex_set_exact(G, G.n, caps)


def _modulator(
    G: Graph,
    cover: Optional[Iterable[int]],
    forest: Optional[EliminationForest],
    d: Optional[int],
    caps: CapsConfig,
) -> Tuple[FrozenSet[int], EliminationForest]:
    if forest is not None:
        return frozenset(cover or ()), forest
    if cover is not None:
        warnings.warn("No forest given; computing a minimum-depth one for G - W", stacklevel=3)
        _, forest = treedepth_exact(G.without(cover), caps)
        return frozenset(cover), forest
    depth = d if d is not None else 1
    warnings.warn(f"No modulator given; computing a minimum one to treedepth {depth}", stacklevel=3)
    found = modulator_to_treedepth(G, depth, G.n, caps)
    return found


def _forest(G: Graph, forest: Optional[EliminationForest], caps: CapsConfig) -> EliminationForest:
    if forest is not None:
        return forest
    warnings.warn("No elimination forest given; computing a minimum-depth one", stacklevel=3)
    return treedepth_exact(G, caps)[1]


def _fat_tree(
    G: Graph, tree: Optional[FatEliminationTree], d: Optional[int], caps: CapsConfig
) -> FatEliminationTree:
    if tree is not None:
        return tree
    d = d if d is not None else 2
    warnings.warn(f"No fat elimination tree given; computing one of depth {d}", stacklevel=3)
    return fat_elimination_tree(G, d, d_fold_vc_number(G, d, caps), caps)


def _expect(source: Any, kind: type, rule: str) -> None:
    if not isinstance(source, kind):
        raise InputError(f"Rule '{rule}' takes a {kind.__name__}, got {type(source).__name__}")


def _w3hard(source: WeightedSatInstance, **_: Any) -> ReductionReport:
    _expect(source, WeightedSatInstance, "w3hard")
    inst, W = wsat3am_to_bincsp_vc(source.formula, source.k)
    return ReductionReport("w3hard", inst, {"k": source.k}, {"cover": W})


def _vc_to_wsat3(source: BinCspInstance, cover=None, **_: Any) -> ReductionReport:
    _expect(source, BinCspInstance, "vc-to-wsat3")
    W = _cover(source.graph, cover)
    out = bincsp_vc_to_wsat3(source, W)
    return ReductionReport("vc-to-wsat3", out, {"level": 3, "weight": len(W)}, {}, [f"cover size {len(W)}"])


def _w2d1hard(source: WeightedSatInstance, d=None, **_: Any) -> ReductionReport:
    _expect(source, WeightedSatInstance, "w2d1hard")
    d = d if d is not None else fvs_formula_depth(source.formula)
    inst, W, forest = wsat2d1am_to_bincsp_forest_modulator(source.formula, source.k, d)
    return ReductionReport(
        "w2d1hard", inst, {"k": source.k, "depth": d}, {"modulator": W, "forest": forest}
    )


def _modtd_to_wsat(
    source: BinCspInstance, cover=None, forest=None, d=None, caps=None, **_: Any
) -> ReductionReport:
    _expect(source, BinCspInstance, "modtd-to-wsat")
    W, forest = _modulator(source.graph, cover, forest, d, caps)
    out = bincsp_modtd_to_wsat2d1(source, W, forest, caps)
    level = 2 * max(forest.depth, 1) + 1
    return ReductionReport("modtd-to-wsat", out, {"level": level, "weight": len(W)})


def _fvs_hard(source: WeightedSatInstance, **_: Any) -> ReductionReport:
    _expect(source, WeightedSatInstance, "fvs-hard")
    inst, W = wsatam_to_bincsp_fvs(source.formula, source.k)
    return ReductionReport("fvs-hard", inst, {"k": source.k}, {"fvs": W})


def _fvs_to_circuit(source: BinCspInstance, cover=None, caps=None, **_: Any) -> ReductionReport:
    _expect(source, BinCspInstance, "fvs-to-circuit")
    W = _fvs(source.graph, cover, caps)
    C, weight = bincsp_fvs_to_circuit(source, W)
    return ReductionReport("fvs-to-circuit", (C, weight), {"weight": weight})


def _listcol_vc_to_wsat2(source: ListColoringInstance, cover=None, **_: Any) -> ReductionReport:
    _expect(source, ListColoringInstance, "listcol-vc-to-wsat2")
    W = _cover(source.graph, cover)
    out = listcoloring_vc_to_wsat2(source, W)
    return ReductionReport("listcol-vc-to-wsat2", out, {"level": 2, "weight": out.k})


def _listcol_to_precol(
    source: ListColoringInstance, cover=None, forest=None, d=None, caps=None, **_: Any
) -> ReductionReport:
    _expect(source, ListColoringInstance, "listcol-to-precol")
    W, forest = _modulator(source.graph, cover, forest, d, caps)
    pre, W2, forest2 = listcoloring_to_precolext(source, W, forest)
    return ReductionReport(
        "listcol-to-precol",
        pre,
        {"k": len(W2), "depth": forest.depth + 1},
        {"modulator": W2, "forest": forest2},
    )


def _precol_vc_kernel(source: PrecoloringInstance, cover=None, **_: Any) -> ReductionReport:
    _expect(source, PrecoloringInstance, "precol-vc-kernel")
    S = _cover(source.graph, cover)
    kernel = precolext_vc_kernel(source, S)
    witnesses = {"cover": kernel.modulator} if kernel.kernel is not None else {}
    return ReductionReport("precol-vc-kernel", kernel, {"k": len(S)}, witnesses)


def _precol_modtd_strip(
    source: PrecoloringInstance, cover=None, forest=None, d=None, caps=None, **_: Any
) -> ReductionReport:
    _expect(source, PrecoloringInstance, "precol-modtd-strip")
    S, forest = _modulator(source.graph, cover, forest, d, caps)
    kernel = precolext_modtd_strip(source, S, forest)
    witnesses: Dict[str, Any] = {}
    if kernel.kernel is not None:
        witnesses = {"modulator": kernel.modulator, "forest": kernel.forest}
    return ReductionReport(
        "precol-modtd-strip", kernel, {"k": len(S), "depth": max(forest.depth - 1, 0)}, witnesses
    )


def _bincsp_to_listcol(source: BinCspInstance, forest=None, **_: Any) -> ReductionReport:
    _expect(source, BinCspInstance, "bincsp-to-listcol")
    lc = bincsp_to_listcoloring(source)
    if forest is None:
        return ReductionReport("bincsp-to-listcol", lc)
    lifted = bincsp_to_listcoloring_forest(source, forest)
    return ReductionReport("bincsp-to-listcol", lc, {"depth": forest.depth + 1}, {"forest": lifted})


def _listcol_to_bincsp(source: ListColoringInstance, **_: Any) -> ReductionReport:
    _expect(source, ListColoringInstance, "listcol-to-bincsp")
    return ReductionReport("listcol-to-bincsp", listcoloring_to_bincsp(source))


def _td_to_arosm(source: BinCspInstance, forest=None, caps=None, **_: Any) -> ReductionReport:
    _expect(source, BinCspInstance, "td-to-arosm")
    forest = _forest(source.graph, forest, caps)
    M, bits = compile_bincsp_td(source, forest)
    bounds = asdict(M.resource_bounds(bits))
    return ReductionReport("td-to-arosm", (M, bits), {"depth": forest.depth, **bounds})


def _regular_arosm(source: ToyMachine, caps=None, **_: Any) -> ReductionReport:
    _expect(source, ToyMachine, "regular-arosm")
    inst, S = compile_regular_arosm_to_bincsp(
        source.machine,
        source.tree,
        (),
        source.A,
        source.B,
        source.K,
        chunk=source.chunk,
        stack_budget=source.stack,
        caps=caps,
    )
    depth = 3 * source.K**2 + source.K
    return ReductionReport("regular-arosm", inst, {"depth": depth}, {"forest": S})


def _td_to_guided(source: BinCspInstance, forest=None, caps=None, **_: Any) -> ReductionReport:
    _expect(source, BinCspInstance, "td-to-guided")
    forest = _forest(source.graph, forest, caps)
    A, s = bincsp_td_to_structure(source, forest)
    return ReductionReport("td-to-guided", (A, s), {"k": s.k})


def _dfold_to_prenex(
    source: BinCspInstance, tree=None, d=None, caps=None, **_: Any
) -> ReductionReport:
    _expect(source, BinCspInstance, "dfold-to-prenex")
    W = _fat_tree(source.graph, tree, d, caps)
    A, s = bincsp_dfold_to_prenex(source, W)
    return ReductionReport(
        "dfold-to-prenex", (A, s), {"depth": W.depth, "width": W.width, "blocks": 2 * W.depth - 1}
    )


RULES: Dict[str, Rule] = {
    r.name: r
    for r in (
        Rule("w3hard", "wsat", "bincsp", (), "anti-monotone 3-normalized WSat to BinCSP with a vertex cover", _w3hard),
        Rule("vc-to-wsat3", "bincsp", "wsat", ("cover",), "BinCSP with a vertex cover to 3-normalized WSat", _vc_to_wsat3),
        Rule("w2d1hard", "wsat", "bincsp", (), "anti-monotone (2d+1)-normalized WSat to BinCSP with a modulator to depth d", _w2d1hard),
        Rule("modtd-to-wsat", "bincsp", "wsat", ("cover", "forest"), "BinCSP with a modulator to treedepth d to (2d+1)-normalized WSat", _modtd_to_wsat),
        Rule("fvs-hard", "wsat", "bincsp", (), "anti-monotone normalized WSat to BinCSP with a feedback vertex set", _fvs_hard),
        Rule("fvs-to-circuit", "bincsp", "circ", ("cover",), "BinCSP with a feedback vertex set to weighted circuit SAT", _fvs_to_circuit),
        Rule("listcol-vc-to-wsat2", "lcol", "wsat", ("cover",), "List Coloring with a vertex cover to 2-normalized WSat", _listcol_vc_to_wsat2),
        Rule("listcol-to-precol", "lcol", "pcol", ("cover", "forest"), "List Coloring to Precoloring Extension", _listcol_to_precol),
        Rule("precol-vc-kernel", "pcol", "lcol", ("cover",), "Precoloring Extension kernel for a vertex cover", _precol_vc_kernel),
        Rule("precol-modtd-strip", "pcol", "lcol", ("cover", "forest"), "Precoloring Extension to List Coloring, one level shallower", _precol_modtd_strip),
        Rule("bincsp-to-listcol", "bincsp", "lcol", ("forest",), "BinCSP to List Coloring by forbidden-pair gadgets", _bincsp_to_listcol),
        Rule("listcol-to-bincsp", "lcol", "bincsp", (), "List Coloring to BinCSP with non-equality constraints", _listcol_to_bincsp),
        Rule("td-to-arosm", "bincsp", "bits", ("forest",), "BinCSP on an elimination forest to a stack machine input", _td_to_arosm),
        Rule("regular-arosm", "toy", "bincsp", (), "regular stack machine to BinCSP on its contraction tree", _regular_arosm),
        Rule("td-to-guided", "bincsp", "struct", ("forest",), "BinCSP on an elimination forest to guided model checking", _td_to_guided),
        Rule("dfold-to-prenex", "bincsp", "struct", ("tree",), "BinCSP on a fat elimination tree to prenex model checking", _dfold_to_prenex),
    )
}

# campaign-only checks without a reduction output
CHECKS: Dict[str, str] = {
    "solvers": "brute force, forest DP, vertex cover and modulator solvers agree",
}


def list_rules(include_checks: bool = True) -> List[str]:
    """Registered rule names, optionally followed by the campaign-only checks."""
    names = list(RULES)
    return names + list(CHECKS) if include_checks else names


def get_rule(name: str) -> Rule:
    if name not in RULES:
        raise InputError(f"Unknown rule '{name}'. Available: {', '.join(RULES)}")
    return RULES[name]


def apply_rule(
    name: str,
    source: Any,
    cover: Optional[Iterable[int]] = None,
    forest: Optional[EliminationForest] = None,
    tree: Optional[FatEliminationTree] = None,
    d: Optional[int] = None,
    caps: Optional[CapsConfig] = None,
) -> ReductionReport:
    """
    Run a registered reduction.

    Args:
        name: Rule name (see :func:`list_rules`)
        source: Source artifact of the rule's source kind
        cover: Vertex cover, feedback vertex set or modulator, depending on the rule
        forest: Elimination forest (of ``G`` or of ``G - cover``)
        tree: Fat elimination tree (``dfold-to-prenex``)
        d: Depth for rules that compute a missing witness or take a level
        caps: Resource caps

    Returns:
        ReductionReport with declared parameters and witnesses

    Raises:
        InputError: On unknown rules, wrong source kinds or failed preconditions
    """
    rule = get_rule(name)
    return rule.apply(source, cover=cover, forest=forest, tree=tree, d=d, caps=get_caps(caps))


def get_rule_info(name: str) -> Dict[str, Any]:
    """Source/target kinds, witnesses and description of a rule or check."""
    if name in CHECKS:
        return {"name": name, "source": "bincsp", "target": None, "witnesses": [], "description": CHECKS[name]}
    rule = get_rule(name)
    return {
        "name": rule.name,
        "source": rule.source,
        "target": rule.target,
        "witnesses": list(rule.witnesses),
        "description": rule.description,
    }
