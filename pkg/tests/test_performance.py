"""Performance tests (Benchmark) for tdcsp: timing of the exact procedures and campaigns"""

import time

import numpy as np
import pytest

from tdcsp.config import CampaignConfig


class TestExactProcedurePerformance:
    """Timing of the exact structural searches and solvers"""

    @pytest.mark.slow
    def test_treedepth_of_paths(self):
        """Benchmark: treedepth of paths up to 15 vertices"""
        from tdcsp.structure import Graph, treedepth_exact

        start = time.time()
        for n in range(1, 16):
            treedepth_exact(Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)]))
        elapsed = time.time() - start

        print(f"\n[BENCHMARK] treedepth of P_1..P_15: {elapsed:.2f} s")
        assert elapsed < 60

    @pytest.mark.slow
    def test_solver_agreement_throughput(self):
        """Benchmark: four solvers on 100 random instances"""
        from tdcsp.core import random_instance
        from tdcsp.solvers import solve_bruteforce, solve_by_elimination_forest, solve_by_vertex_cover
        from tdcsp.structure import treedepth_exact, vertex_cover_exact

        start = time.time()
        for seed in range(100):
            inst = random_instance(6, 3, 0.5, 0.6, seed)
            _, forest = treedepth_exact(inst.graph)
            W = vertex_cover_exact(inst.graph, inst.n)
            brute = solve_bruteforce(inst)
            assert solve_by_elimination_forest(inst, forest) == brute
            assert solve_by_vertex_cover(inst, W) == brute
        elapsed = time.time() - start

        print(f"\n[BENCHMARK] solver agreement: {elapsed * 10:.2f} ms per instance")
        assert elapsed < 60

    @pytest.mark.slow
    def test_weighted_sat_search(self):
        """Benchmark: pruned weighted search on 3-normalized formulas"""
        from tdcsp.formulas import WeightedSatInstance, random_normalized_formula, weighted_sat_bruteforce

        rng = np.random.default_rng(0)
        formulas = [random_normalized_formula(rng, 12, 3) for _ in range(20)]

        start = time.time()
        for F in formulas:
            weighted_sat_bruteforce(WeightedSatInstance(F, 4))
        elapsed = time.time() - start

        print(f"\n[BENCHMARK] weighted search (n=12, k=4): {elapsed / 20 * 1000:.2f} ms per formula")
        assert elapsed < 60

    @pytest.mark.slow
    def test_universal_tree_construction(self):
        """Benchmark: universal trees up to n=8, k=3"""
        from tdcsp.unitrees import build_universal_tree

        start = time.time()
        sizes = [build_universal_tree(n, k).size for n in range(1, 9) for k in range(1, 4)]
        elapsed = time.time() - start

        print(f"\n[BENCHMARK] universal trees: {sum(sizes)} nodes in {elapsed * 1000:.2f} ms")
        assert elapsed < 10


class TestCampaignPerformance:
    """Campaign runtimes against their budgets"""

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "rule, trials, budget",
        [
            ("w3hard", 200, 120),
            ("vc-to-wsat3", 200, 120),
            ("td-to-guided", 100, 180),
            ("solvers", 500, 180),
        ],
    )
    def test_campaign_budget(self, rule, trials, budget):
        """Benchmark: seeded campaign within its time budget"""
        from tdcsp.verify import run_campaign

        start = time.time()
        result = run_campaign(CampaignConfig(rule=rule, trials=trials, seed=7))
        elapsed = time.time() - start

        timing = result.summary["timing"]
        print(
            f"\n[BENCHMARK] {rule} x{trials}: {elapsed:.2f} s "
            f"(p50={timing['p50'] * 1000:.2f} ms, p90={timing['p90'] * 1000:.2f} ms)"
        )
        assert result.passed
        assert elapsed < budget
