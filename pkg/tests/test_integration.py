"""Integration tests for tdcsp: seeded campaigns where generators, reductions and oracles work together"""

import math

import networkx as nx
import pytest

from tdcsp.config import CampaignConfig
from tdcsp.verify import run_campaign


def campaign(rule, trials, seed=7, **sizes):
    settings = dict(max_n=6, max_dom=3, max_d=2, max_k=3)
    settings.update(sizes)
    result = run_campaign(CampaignConfig(rule=rule, trials=trials, seed=seed, **settings))
    summary = result.summary
    assert summary["trials"] == trials
    assert summary["mismatches"] == 0, [r.to_dict() for r in result.records if r.status == "mismatch"]
    assert summary["parameter_failures"] == 0
    return summary


class TestWeightedSatRoundTrips:
    """Weighted satisfiability against Binary CSP parameterized by vertex cover"""

    @pytest.mark.integration
    def test_w3hard(self):
        """Anti-monotone 3-normalized formulas with weight up to 3"""
        summary = campaign("w3hard", 200, max_n=6, max_k=3)
        assert summary["matches"] + summary["skipped"] == 200

    @pytest.mark.integration
    def test_vc_to_wsat3(self):
        campaign("vc-to-wsat3", 200, max_n=6, max_dom=3)


class TestModulatorRoundTrips:
    """Modulators to treedepth d against (2d+1)-normalized formulas"""

    @pytest.mark.integration
    @pytest.mark.parametrize("d", [1, 2])
    def test_w2d1hard(self, d):
        campaign("w2d1hard", 100, seed=d, max_d=d, max_n=4, max_k=2)

    @pytest.mark.integration
    @pytest.mark.parametrize("d", [1, 2])
    def test_modtd_to_wsat(self, d):
        campaign("modtd-to-wsat", 100, seed=d, max_d=d, max_n=5, max_dom=2)


class TestFeedbackVertexSetRoundTrips:
    """Feedback vertex sets against weighted circuit satisfiability"""

    @pytest.mark.integration
    def test_fvs_hard(self):
        campaign("fvs-hard", 100, max_n=4, max_k=2)

    @pytest.mark.integration
    def test_fvs_to_circuit(self):
        campaign("fvs-to-circuit", 100, max_n=5, max_dom=2)


class TestColoringRoundTrips:
    """List Coloring and Precoloring Extension transformations"""

    @pytest.mark.integration
    @pytest.mark.parametrize(
        "rule",
        [
            "listcol-vc-to-wsat2",
            "bincsp-to-listcol",
            "listcol-to-bincsp",
            "listcol-to-precol",
            "precol-vc-kernel",
            "precol-modtd-strip",
        ],
    )
    def test_rule(self, rule):
        campaign(rule, 100, max_n=6, max_dom=2)


class TestStructuralFacts:
    """Treedepth and d-fold vertex cover relations"""

    @pytest.mark.integration
    def test_treedepth_of_paths(self):
        from tdcsp.structure import Graph, treedepth_exact

        for n in range(1, 16):
            G = Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
            assert treedepth_exact(G)[0] == math.ceil(math.log2(n + 1))

    @pytest.mark.integration
    def test_dfold_relations_on_connected_graphs(self):
        """td(G) <= d * vc_d(G) and vc_d(G) <= smallest modulator to treedepth d - 1"""
        from tdcsp.structure import Graph, d_fold_vc_number, modulator_to_treedepth, treedepth_exact

        checked = 0
        for g in nx.graph_atlas_g():
            if g.number_of_nodes() == 0 or not nx.is_connected(g):
                continue
            G = Graph.from_networkx(g)
            td = treedepth_exact(G)[0]
            for d in (1, 2, 3):
                vc_d = d_fold_vc_number(G, d)
                assert td <= d * vc_d
                W, _ = modulator_to_treedepth(G, d - 1, G.n)
                assert vc_d <= len(W)
            checked += 1
        assert checked > 800


class TestMachineCharacterization:
    """Binary CSP on elimination forests against stack machines"""

    @pytest.mark.integration
    def test_forward_direction(self):
        from tdcsp.core import random_instance
        from tdcsp.machine import compile_bincsp_td, decide
        from tdcsp.solvers import solve_bruteforce
        from tdcsp.structure import treedepth_exact

        tried = 0
        seed = 0
        while tried < 30:
            inst = random_instance(1 + seed % 5, 3, 0.5, 0.6, seed)
            seed += 1
            depth, forest = treedepth_exact(inst.graph)
            if depth > 3:
                continue
            M, bits = compile_bincsp_td(inst, forest)
            limits = M.resource_bounds(bits)
            accepted, usage = decide(M, bits, limits)
            assert accepted == (solve_bruteforce(inst) is not None), seed - 1
            if accepted:
                assert usage.within(limits)
                assert usage.alternation <= 2 * depth + 3
            tried += 1

    @pytest.mark.integration
    def test_td_to_arosm_campaign(self):
        campaign("td-to-arosm", 30, max_n=5, max_dom=3)

    @pytest.mark.integration
    def test_regular_machines(self):
        """Every bundled toy machine, satisfiability against its own verdict"""
        summary = campaign("regular-arosm", 5)
        assert summary["matches"] == 5


class TestLogicEncodings:
    """Model checking encodings against brute force"""

    @pytest.mark.integration
    def test_guided(self):
        campaign("td-to-guided", 100, max_n=6, max_dom=3)

    @pytest.mark.integration
    def test_prenex(self):
        campaign("dfold-to-prenex", 50, max_n=4, max_dom=2)


class TestSolverAgreement:
    """Brute force, forest DP, vertex cover and modulator solvers"""

    @pytest.mark.integration
    def test_cross_agreement(self):
        summary = campaign("solvers", 500, max_n=6, max_dom=3)
        assert summary["skipped"] == 0
