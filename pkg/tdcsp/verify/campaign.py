"""
Seeded verification campaigns.

A campaign runs ``trials`` independent trials of one registered rule. Each
trial draws a random source artifact, applies the rule, decides source and
output with two independent oracles and validates the declared parameters.
Trial ``i`` draws from the ``i``-th child of ``SeedSequence(seed)``, so a
failing trial can be replayed on its own.
"""

import os
import time
import warnings
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
import yaml

from ..config import CampaignConfig, CapsConfig, get_caps, validate_campaign
from ..core import (
    BinCspInstance,
    random_instance,
    random_listcoloring,
    random_precoloring,
)
from ..errors import InputError, ResourceCapError
from ..formulas import (
    WeightedSatInstance,
    random_normalized_formula,
    weighted_circuit_sat_bruteforce,
    weighted_sat_bruteforce,
)
from ..logic import eval_guided, eval_prenex
from ..machine import ResourceLimits, decide, load_toy_machines
from ..registry import apply_rule
from ..solvers import (
    decide_by_elimination_forest,
    solve_bruteforce,
    solve_by_elimination_forest,
    solve_by_modulator,
    solve_by_vertex_cover,
    solve_listcoloring_bruteforce,
    solve_precoloring_bruteforce,
)
from ..structure import (
    d_fold_vc_number,
    fat_elimination_tree,
    feedback_vertex_set_exact,
    modulator_to_treedepth,
    treedepth_exact,
    vertex_cover_exact,
)

# (expected verdict, verdict on the output, parameter checks)
Outcome = Tuple[bool, bool, Dict[str, bool]]


@dataclass
class TrialRecord:
    """Result of one campaign trial."""

    index: int
    status: str
    expected: Optional[bool] = None
    actual: Optional[bool] = None
    checks: Dict[str, bool] = field(default_factory=dict)
    seconds: float = 0.0
    note: str = ""

    @property
    def parameters_ok(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "index": self.index,
            "status": self.status,
            "expected": self.expected,
            "actual": self.actual,
            "checks": dict(self.checks),
            "seconds": round(self.seconds, 6),
            "note": self.note,
        }


class _Draw:
    """Size draws for one trial, bounded by the campaign caps."""

    def __init__(self, rng: np.random.Generator, campaign: CampaignConfig):
        self.rng = rng
        self.campaign = campaign

    def between(self, low: int, high: int) -> int:
        return int(self.rng.integers(low, max(low, high) + 1))

    def n(self, limit: Optional[int] = None) -> int:
        top = self.campaign.max_n if limit is None else min(limit, self.campaign.max_n)
        return self.between(1, top)

    def k(self) -> int:
        return self.between(0, self.campaign.max_k)

    def d(self) -> int:
        return self.between(1, self.campaign.max_d)

    def instance(self, limit: Optional[int] = None) -> BinCspInstance:
        return random_instance(self.n(limit), self.campaign.max_dom, 0.5, 0.6, self.rng)

    def listcoloring(self):
        return random_listcoloring(self.n(), self.between(1, 4), 0.5, 0.6, self.rng)

    def precoloring(self):
        return random_precoloring(self.n(), self.between(1, 4), 0.5, 0.3, self.rng)

    def formula(self, t: int, top: int, width: int) -> WeightedSatInstance:
        F = random_normalized_formula(
            self.rng, self.between(1, max(self.campaign.max_n, 1) + 2), t,
            max_children=width, top_children=self.between(1, top),
        )
        return WeightedSatInstance(F, self.k())


def _sat(assignment: Any) -> bool:
    return assignment is not None


def _trial_w3hard(draw: _Draw, caps: CapsConfig) -> Outcome:
    w = draw.formula(3, 4, 3)
    report = apply_rule("w3hard", w, caps=caps)
    return (
        _sat(weighted_sat_bruteforce(w, caps)),
        _sat(solve_bruteforce(report.output, caps)),
        report.validate(),
    )


def _trial_vc_to_wsat3(draw: _Draw, caps: CapsConfig) -> Outcome:
    inst = draw.instance()
    W = vertex_cover_exact(inst.graph, inst.n)
    report = apply_rule("vc-to-wsat3", inst, cover=W, caps=caps)
    return (
        _sat(solve_bruteforce(inst, caps)),
        _sat(weighted_sat_bruteforce(report.output, caps)),
        report.validate(),
    )


def _trial_w2d1hard(draw: _Draw, caps: CapsConfig) -> Outcome:
    d = draw.d()
    w = draw.formula(2 * d + 1, 3, 2)
    report = apply_rule("w2d1hard", w, d=d, caps=caps)
    W, forest = report.witnesses["modulator"], report.witnesses["forest"]
    return (
        _sat(weighted_sat_bruteforce(w, caps)),
        _sat(solve_by_modulator(report.output, W, forest)),
        report.validate(),
    )


def _trial_modtd_to_wsat(draw: _Draw, caps: CapsConfig) -> Outcome:
    inst = draw.instance()
    W, forest = modulator_to_treedepth(inst.graph, draw.d(), inst.n, caps)
    report = apply_rule("modtd-to-wsat", inst, cover=W, forest=forest, caps=caps)
    return (
        _sat(solve_bruteforce(inst, caps)),
        _sat(weighted_sat_bruteforce(report.output, caps)),
        report.validate(),
    )


def _trial_fvs_hard(draw: _Draw, caps: CapsConfig) -> Outcome:
    w = draw.formula(2 * draw.d() + 1, 3, 2)
    report = apply_rule("fvs-hard", w, caps=caps)
    return (
        _sat(weighted_sat_bruteforce(w, caps)),
        _sat(solve_bruteforce(report.output, caps)),
        report.validate(),
    )


def _trial_fvs_to_circuit(draw: _Draw, caps: CapsConfig) -> Outcome:
    inst = draw.instance()
    W = feedback_vertex_set_exact(inst.graph, inst.n, caps)
    report = apply_rule("fvs-to-circuit", inst, cover=W, caps=caps)
    C, weight = report.output
    return (
        _sat(solve_bruteforce(inst, caps)),
        _sat(weighted_circuit_sat_bruteforce(C, weight, caps)),
        report.validate(),
    )


def _trial_listcol_vc_to_wsat2(draw: _Draw, caps: CapsConfig) -> Outcome:
    lc = draw.listcoloring()
    W = vertex_cover_exact(lc.graph, lc.graph.n)
    report = apply_rule("listcol-vc-to-wsat2", lc, cover=W, caps=caps)
    return (
        _sat(solve_listcoloring_bruteforce(lc)),
        _sat(weighted_sat_bruteforce(report.output, caps)),
        report.validate(),
    )


def _trial_listcol_to_precol(draw: _Draw, caps: CapsConfig) -> Outcome:
    lc = draw.listcoloring()
    W, forest = modulator_to_treedepth(lc.graph, draw.d(), lc.graph.n, caps)
    report = apply_rule("listcol-to-precol", lc, cover=W, forest=forest, caps=caps)
    return (
        _sat(solve_listcoloring_bruteforce(lc)),
        _sat(solve_precoloring_bruteforce(report.output)),
        report.validate(),
    )


def _trial_precol_vc_kernel(draw: _Draw, caps: CapsConfig) -> Outcome:
    pre = draw.precoloring()
    S = vertex_cover_exact(pre.graph, pre.graph.n)
    report = apply_rule("precol-vc-kernel", pre, cover=S, caps=caps)
    return _sat(solve_precoloring_bruteforce(pre)), report.output.resolve(), report.validate()


def _trial_precol_modtd_strip(draw: _Draw, caps: CapsConfig) -> Outcome:
    pre = draw.precoloring()
    S, forest = modulator_to_treedepth(pre.graph, draw.d(), pre.graph.n, caps)
    report = apply_rule("precol-modtd-strip", pre, cover=S, forest=forest, caps=caps)
    return _sat(solve_precoloring_bruteforce(pre)), report.output.resolve(), report.validate()


def _trial_bincsp_to_listcol(draw: _Draw, caps: CapsConfig) -> Outcome:
    inst = draw.instance()
    _, forest = treedepth_exact(inst.graph, caps)
    report = apply_rule("bincsp-to-listcol", inst, forest=forest, caps=caps)
    return (
        _sat(solve_bruteforce(inst, caps)),
        _sat(solve_listcoloring_bruteforce(report.output)),
        report.validate(),
    )


def _trial_listcol_to_bincsp(draw: _Draw, caps: CapsConfig) -> Outcome:
    lc = draw.listcoloring()
    report = apply_rule("listcol-to-bincsp", lc, caps=caps)
    return (
        _sat(solve_listcoloring_bruteforce(lc)),
        _sat(solve_bruteforce(report.output, caps)),
        report.validate(),
    )


def _trial_td_to_arosm(draw: _Draw, caps: CapsConfig) -> Outcome:
    inst = draw.instance(limit=5)
    _, forest = treedepth_exact(inst.graph, caps)
    report = apply_rule("td-to-arosm", inst, forest=forest, caps=caps)
    M, bits = report.output
    accepted, _ = decide(M, bits, M.resource_bounds(bits), caps)
    return _sat(solve_bruteforce(inst, caps)), accepted, report.validate()


def _trial_td_to_guided(draw: _Draw, caps: CapsConfig) -> Outcome:
    inst = draw.instance()
    _, forest = treedepth_exact(inst.graph, caps)
    report = apply_rule("td-to-guided", inst, forest=forest, caps=caps)
    A, s = report.output
    return _sat(solve_bruteforce(inst, caps)), eval_guided(A, s), report.validate()


def _trial_dfold_to_prenex(draw: _Draw, caps: CapsConfig) -> Outcome:
    inst = draw.instance(limit=5)
    d = draw.d()
    tree = fat_elimination_tree(inst.graph, d, d_fold_vc_number(inst.graph, d, caps), caps)
    report = apply_rule("dfold-to-prenex", inst, tree=tree, caps=caps)
    A, s = report.output
    return _sat(solve_bruteforce(inst, caps)), eval_prenex(A, s), report.validate()


def _trial_solvers(draw: _Draw, caps: CapsConfig) -> Outcome:
    inst = draw.instance()
    graph = inst.graph
    brute = solve_bruteforce(inst, caps)
    _, forest = treedepth_exact(graph, caps)
    W, rest = modulator_to_treedepth(graph, 1, graph.n, caps)
    others = [
        solve_by_elimination_forest(inst, forest),
        solve_by_vertex_cover(inst, vertex_cover_exact(graph, graph.n)),
        solve_by_modulator(inst, W, rest),
    ]
    checks = {"witnesses": all(o == brute for o in others)}
    return _sat(brute), all(_sat(o) == _sat(brute) for o in others), checks


_TRIALS: Dict[str, Callable[[_Draw, CapsConfig], Outcome]] = {
    "w3hard": _trial_w3hard,
    "vc-to-wsat3": _trial_vc_to_wsat3,
    "w2d1hard": _trial_w2d1hard,
    "modtd-to-wsat": _trial_modtd_to_wsat,
    "fvs-hard": _trial_fvs_hard,
    "fvs-to-circuit": _trial_fvs_to_circuit,
    "listcol-vc-to-wsat2": _trial_listcol_vc_to_wsat2,
    "listcol-to-precol": _trial_listcol_to_precol,
    "precol-vc-kernel": _trial_precol_vc_kernel,
    "precol-modtd-strip": _trial_precol_modtd_strip,
    "bincsp-to-listcol": _trial_bincsp_to_listcol,
    "listcol-to-bincsp": _trial_listcol_to_bincsp,
    "td-to-arosm": _trial_td_to_arosm,
    "td-to-guided": _trial_td_to_guided,
    "dfold-to-prenex": _trial_dfold_to_prenex,
    "solvers": _trial_solvers,
}


def _regular_trial(index: int, caps: CapsConfig) -> Outcome:
    toys = load_toy_machines()
    toy = toys[index % len(toys)]
    report = apply_rule("regular-arosm", toy, caps=caps)
    inst = report.output
    S = report.witnesses["forest"]
    limits = ResourceLimits(stack=toy.stack, nondeterminism=toy.A, conondeterminism=toy.B)
    checks = report.validate()
    checks["decide"] = decide(toy.machine, (), limits, caps)[0] == toy.accepts
    return toy.accepts, decide_by_elimination_forest(inst, S), checks


def run_trial(
    rule: str, index: int, campaign: CampaignConfig, caps: Optional[CapsConfig] = None
) -> TrialRecord:
    """
    Run trial ``index`` of a campaign. Cap breaches skip the trial with a warning.
    """
    caps = get_caps(caps)
    seed = np.random.SeedSequence(campaign.seed).spawn(index + 1)[index]
    start = time.perf_counter()
    try:
        if rule == "regular-arosm":
            expected, actual, checks = _regular_trial(index, caps)
        else:
            draw = _Draw(np.random.default_rng(seed), campaign)
            expected, actual, checks = _TRIALS[rule](draw, caps)
    except ResourceCapError as e:
        warnings.warn(f"Trial {index} of {rule} skipped: {e}", stacklevel=2)
        return TrialRecord(index, "skipped", seconds=time.perf_counter() - start, note=str(e))
    status = "match" if expected == actual else "mismatch"
    return TrialRecord(index, status, expected, actual, checks, time.perf_counter() - start)


def _generate_campaign_summary(
    campaign: CampaignConfig, records: List[TrialRecord]
) -> Dict[str, Any]:
    """Counts and timing percentiles over the trial records."""
    ran = [r for r in records if r.status != "skipped"]
    seconds = np.array([r.seconds for r in ran]) if ran else np.zeros(1)
    return {
        "rule": campaign.rule,
        "seed": campaign.seed,
        "trials": len(records),
        "matches": sum(r.status == "match" for r in records),
        "mismatches": sum(r.status == "mismatch" for r in records),
        "skipped": len(records) - len(ran),
        "parameter_failures": sum(not r.parameters_ok for r in ran),
        "timing": {
            "p50": float(np.percentile(seconds, 50)),
            "p90": float(np.percentile(seconds, 90)),
            "max": float(seconds.max()),
        },
    }


@dataclass
class CampaignResult:
    summary: Dict[str, Any]
    records: List[TrialRecord]
    path: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.summary["mismatches"] == 0 and self.summary["parameter_failures"] == 0


def run_campaign(
    campaign: CampaignConfig, caps: Optional[CapsConfig] = None
) -> CampaignResult:
    """
    Run a seeded verification campaign.

    Args:
        campaign: Rule, trial count, seed, size caps and output directory
        caps: Resource caps (defaults to the active configuration)

    Returns:
        CampaignResult with per-trial records in trial order and the summary;
        when ``campaign.out_dir`` is set the report is written there as YAML

    Raises:
        ValueError: If the campaign settings are invalid
    """
    validate_campaign(campaign)
    if campaign.rule not in _TRIALS and campaign.rule != "regular-arosm":
        raise InputError(f"No campaign trials for rule '{campaign.rule}'")
    caps = get_caps(caps)
    records = [run_trial(campaign.rule, i, campaign, caps) for i in range(campaign.trials)]
    result = CampaignResult(_generate_campaign_summary(campaign, records), records)
    if campaign.out_dir:
        os.makedirs(campaign.out_dir, exist_ok=True)
        result.path = os.path.join(
            campaign.out_dir, f"campaign-{campaign.rule}-{campaign.seed}.yaml"
        )
        with open(result.path, "w", encoding="utf-8") as f:
            yaml.dump(
                {"summary": result.summary, "trials": [r.to_dict() for r in records]},
                f,
                default_flow_style=False,
                sort_keys=False,
            )
    return result
