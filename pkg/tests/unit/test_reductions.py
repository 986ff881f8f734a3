"""Unit tests for tdcsp.reductions, each checked against brute-force oracles"""

import numpy as np
import pytest

from tdcsp.config import CapsConfig
from tdcsp.core import (
    BinCspInstance,
    ListColoringInstance,
    PrecoloringInstance,
    bincsp_to_listcoloring,
    listcoloring_to_bincsp,
    random_instance,
    random_listcoloring,
    random_precoloring,
)
from tdcsp.errors import InputError, ResourceCapError
from tdcsp.formulas import (
    NormalizedFormula,
    WeightedSatInstance,
    conj,
    disj,
    is_normalized,
    neg,
    pos,
    random_normalized_formula,
    weighted_circuit_sat_bruteforce,
    weighted_sat_bruteforce,
)
from tdcsp.reductions import (
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
from tdcsp.solvers import (
    solve_bruteforce,
    solve_by_modulator,
    solve_listcoloring_bruteforce,
    solve_precoloring_bruteforce,
)
from tdcsp.structure import (
    EliminationForest,
    Graph,
    feedback_vertex_set_exact,
    is_feedback_vertex_set,
    is_vertex_cover,
    modulator_to_treedepth,
    treedepth_exact,
    validate_elimination_forest,
    vertex_cover_exact,
)


def sat(x):
    return x is not None


def antimonotone(seed, t, n=4, width=3, top=None):
    rng = np.random.default_rng(seed)
    return random_normalized_formula(rng, n, t, max_children=width, top_children=top)


class TestWeightedSatToBinCsp:
    """Test the hardness reductions from anti-monotone weighted satisfiability"""

    @pytest.mark.parametrize("seed", range(12))
    def test_vertex_cover_reduction_preserves_answer(self, seed):
        F = antimonotone(seed, 3)
        for k in range(4):
            inst, W = wsat3am_to_bincsp_vc(F, k)
            assert W == frozenset(range(k))
            assert is_vertex_cover(inst.graph, W)
            expected = sat(weighted_sat_bruteforce(WeightedSatInstance(F, k)))
            assert sat(solve_bruteforce(inst)) == expected

    def test_one_vertex_per_disjunction(self):
        F = NormalizedFormula(conj(disj(conj(neg(0)), conj(neg(1))), disj(conj(neg(2)))), 3)
        inst, W = wsat3am_to_bincsp_vc(F, 1)
        assert inst.n == 1 + 2
        assert inst.domains[1] == (1, 2)
        assert inst.domains[2] == (1,)

    def test_weight_above_variables_is_canonical_unsat(self):
        F = antimonotone(0, 3, n=2)
        with pytest.warns(UserWarning, match="canonical unsatisfiable"):
            inst, W = wsat3am_to_bincsp_vc(F, 3)
        assert inst.domains == ((),)
        assert W == frozenset()
        assert solve_bruteforce(inst) is None

    def test_positive_literals_rejected(self):
        F = NormalizedFormula(conj(disj(conj(pos(0)))), 1)
        with pytest.raises(InputError, match="anti-monotone"):
            wsat3am_to_bincsp_vc(F, 1)

    def test_wrong_level_rejected(self):
        with pytest.raises(InputError, match="3-normalized"):
            wsat3am_to_bincsp_vc(antimonotone(0, 5), 1)

    @pytest.mark.parametrize("seed", range(10))
    def test_forest_modulator_reduction(self, seed):
        F = antimonotone(seed, 5, width=2, top=2)
        for k in range(3):
            inst, W, forest = wsat2d1am_to_bincsp_forest_modulator(F, k, 2)
            rest = inst.graph.without(W)
            assert validate_elimination_forest(rest, forest)
            assert forest.depth <= 2
            assert len(W) == k
            expected = sat(weighted_sat_bruteforce(WeightedSatInstance(F, k)))
            assert sat(solve_by_modulator(inst, W, forest)) == expected

    def test_depth_one_matches_vertex_cover_reduction(self):
        F = antimonotone(3, 3)
        inst, W, _ = wsat2d1am_to_bincsp_forest_modulator(F, 2, 1)
        assert (inst, W) == wsat3am_to_bincsp_vc(F, 2)

    def test_depth_zero_rejected(self):
        with pytest.raises(InputError):
            wsat2d1am_to_bincsp_forest_modulator(antimonotone(0, 3), 1, 0)

    def test_fvs_formula_depth(self):
        assert fvs_formula_depth(antimonotone(0, 5)) == 2
        assert fvs_formula_depth(antimonotone(0, 3)) == 1
        assert fvs_formula_depth(NormalizedFormula(conj(), 0)) == 1
        with pytest.raises(InputError, match="odd level"):
            fvs_formula_depth(antimonotone(0, 4))

    def test_fvs_reduction(self):
        F = antimonotone(5, 7, width=2, top=2)
        inst, W = wsatam_to_bincsp_fvs(F, 2)
        assert is_feedback_vertex_set(inst.graph, W)
        assert (inst, W) == wsat2d1am_to_bincsp_forest_modulator(F, 2, 3)[:2]


class TestBinCspToWeightedSat:
    """Test the membership reductions"""

    @pytest.mark.parametrize("seed", range(15))
    def test_vertex_cover_to_wsat3(self, seed):
        inst = random_instance(5, 3, 0.5, 0.6, seed)
        W = vertex_cover_exact(inst.graph, inst.n)
        w = bincsp_vc_to_wsat3(inst, W)
        assert w.k == len(W)
        assert is_normalized(w.formula, 3)
        assert sat(weighted_sat_bruteforce(w)) == sat(solve_bruteforce(inst))

    def test_vertex_cover_to_wsat3_variable_names(self, triangle_2col):
        w = bincsp_vc_to_wsat3(triangle_2col, {0, 1})
        assert w.names == {0: "x[0=0]", 1: "x[0=1]", 2: "x[1=0]", 3: "x[1=1]"}
        assert weighted_sat_bruteforce(w) is None

    def test_vertex_cover_to_wsat3_rejects_non_cover(self, triangle_3col):
        with pytest.raises(InputError, match="vertex cover"):
            bincsp_vc_to_wsat3(triangle_3col, {0})

    @pytest.mark.parametrize("seed", range(15))
    @pytest.mark.parametrize("d", [1, 2])
    def test_modulator_to_wsat(self, seed, d):
        inst = random_instance(5, 2, 0.6, 0.6, seed)
        W, forest = modulator_to_treedepth(inst.graph, d, inst.n)
        w = bincsp_modtd_to_wsat2d1(inst, W, forest)
        assert w.k == len(W)
        assert is_normalized(w.formula, 2 * max(forest.depth, 1) + 1)
        assert sat(weighted_sat_bruteforce(w)) == sat(solve_bruteforce(inst))

    def test_modulator_family_cap(self, path5):
        inst = BinCspInstance.build(
            [(0, 1)] * 5, {(i, i + 1): {(0, 1), (1, 0)} for i in range(4)}
        )
        _, forest = treedepth_exact(path5)
        with pytest.raises(ResourceCapError) as info:
            bincsp_modtd_to_wsat2d1(inst, (), forest, CapsConfig(max_families=1))
        assert info.value.cap == "max_families"

    def test_modulator_bad_forest(self, triangle_3col):
        with pytest.raises(InputError):
            bincsp_modtd_to_wsat2d1(triangle_3col, {0}, EliminationForest((1, 2)))

    @pytest.mark.parametrize("seed", range(15))
    def test_fvs_to_circuit(self, seed):
        inst = random_instance(5, 3, 0.6, 0.6, seed)
        W = feedback_vertex_set_exact(inst.graph, inst.n)
        C, k = bincsp_fvs_to_circuit(inst, W)
        assert k == len(W)
        assert sat(weighted_circuit_sat_bruteforce(C, k)) == sat(solve_bruteforce(inst))

    def test_fvs_to_circuit_rejects_non_fvs(self, triangle_3col):
        with pytest.raises(InputError, match="feedback vertex set"):
            bincsp_fvs_to_circuit(triangle_3col, ())


class TestListColoringToWeightedSat:
    """Test the List Coloring to weighted satisfiability reduction"""

    def test_weight(self, path_listcoloring):
        w = listcoloring_vc_to_wsat2(path_listcoloring, {1, 3})
        # neighbourhoods {1}, {1, 3} and {3}
        assert w.k == 2 + 4 * (1 + 2 + 1)
        assert is_normalized(w.formula, 2)

    def test_satisfiable(self, path_listcoloring):
        w = listcoloring_vc_to_wsat2(path_listcoloring, {1, 3})
        assert sat(weighted_sat_bruteforce(w))

    def test_star_unsat(self):
        star = Graph.from_edges(3, [(0, 1), (0, 2)])
        lc = ListColoringInstance(star, (0, 1), {0: (0, 1), 1: (0,), 2: (1,)})
        w = listcoloring_vc_to_wsat2(lc, {0})
        assert w.k == 1 + 4
        assert weighted_sat_bruteforce(w) is None

    @pytest.mark.parametrize("seed", range(10))
    def test_random(self, seed):
        lc = random_listcoloring(4, 3, 0.5, 0.6, seed)
        W = vertex_cover_exact(lc.graph, lc.graph.n)
        w = listcoloring_vc_to_wsat2(lc, W)
        assert sat(weighted_sat_bruteforce(w)) == sat(solve_listcoloring_bruteforce(lc))

    def test_rejects_non_cover(self, path_listcoloring):
        with pytest.raises(InputError):
            listcoloring_vc_to_wsat2(path_listcoloring, {1})


class TestColoringTransformations:
    """Test List Coloring to Precoloring Extension and the two kernels"""

    def test_pendants(self, path_listcoloring):
        W, forest = modulator_to_treedepth(path_listcoloring.graph, 1, 5)
        pre, W2, lifted = listcoloring_to_precolext(path_listcoloring, W, forest)
        # one pendant per missing color
        assert pre.graph.n == 5 + 7
        assert len(pre.precolored) == 7
        assert W2 == W
        assert validate_elimination_forest(pre.graph.without(W2), lifted)
        assert lifted.depth <= forest.depth + 1
        assert sat(solve_precoloring_bruteforce(pre))

    @pytest.mark.parametrize("seed", range(12))
    def test_precolext_preserves_answer(self, seed):
        lc = random_listcoloring(5, 3, 0.5, 0.6, seed)
        W, forest = modulator_to_treedepth(lc.graph, 1, lc.graph.n)
        pre, _, _ = listcoloring_to_precolext(lc, W, forest)
        assert sat(solve_precoloring_bruteforce(pre)) == sat(solve_listcoloring_bruteforce(lc))

    def test_vc_kernel_star(self, star_precoloring):
        result = precolext_vc_kernel(star_precoloring, {0})
        assert result.verdict is None
        assert result.kernel.lists == {0: ()}
        assert result.resolve() is False

    def test_vc_kernel_spare_color(self, star_precoloring):
        pre = PrecoloringInstance(star_precoloring.graph, (0, 1, 2, 3), star_precoloring.precolored)
        result = precolext_vc_kernel(pre, {0})
        assert result.verdict is True

    def test_vc_kernel_few_colors_solved_outright(self, path5):
        assert precolext_vc_kernel(PrecoloringInstance(path5, (0, 1), {0: 0, 4: 1}), {1, 3}).verdict is False
        assert precolext_vc_kernel(PrecoloringInstance(path5, (0, 1), {0: 0, 4: 0}), {1, 3}).verdict is True

    def test_vc_kernel_conflicting_precoloring(self, path5):
        pre = PrecoloringInstance(path5, (0, 1, 2, 3), {0: 1, 1: 1})
        assert precolext_vc_kernel(pre, {1, 3}).verdict is False

    def test_vc_kernel_rejects_non_cover(self, star_precoloring):
        with pytest.raises(InputError):
            precolext_vc_kernel(star_precoloring, {1})

    @pytest.mark.parametrize("seed", range(15))
    def test_vc_kernel_random(self, seed):
        pre = random_precoloring(6, 4, 0.5, 0.3, seed)
        S = vertex_cover_exact(pre.graph, pre.graph.n)
        result = precolext_vc_kernel(pre, S)
        assert result.resolve() == sat(solve_precoloring_bruteforce(pre))
        if result.verdict is None:
            assert len(result.modulator) <= len(S)

    def test_strip_star(self, star_precoloring):
        forest = EliminationForest((0, 1, 2, 3), {1: 0, 2: 0, 3: 0})
        result = precolext_modtd_strip(star_precoloring, (), forest)
        assert result.verdict is None
        assert result.forest.nodes == (0,)
        assert result.forest.depth == 1
        assert result.resolve() is False

    @pytest.mark.parametrize("seed", range(15))
    @pytest.mark.parametrize("d", [1, 2])
    def test_strip_random(self, seed, d):
        pre = random_precoloring(6, 4, 0.5, 0.3, seed)
        S, forest = modulator_to_treedepth(pre.graph, d, pre.graph.n)
        result = precolext_modtd_strip(pre, S, forest)
        assert result.resolve() == sat(solve_precoloring_bruteforce(pre))
        if result.verdict is None:
            kernel = result.kernel
            assert validate_elimination_forest(kernel.graph.without(result.modulator), result.forest)
            assert result.forest.depth <= max(forest.depth - 1, 0)

    def test_strip_rejects_bad_forest(self, star_precoloring):
        with pytest.raises(InputError):
            precolext_modtd_strip(star_precoloring, (), EliminationForest((0, 1, 2, 3)))


class TestReductionReport:
    """Test parameter validation on reports"""

    def test_cover_within_budget(self, triangle_3col):
        report = ReductionReport("x", triangle_3col, {"k": 2}, {"cover": frozenset({0, 1})})
        assert report.validate() == {"cover": True}

    def test_cover_over_budget(self, triangle_3col):
        report = ReductionReport("x", triangle_3col, {"k": 1}, {"cover": frozenset({0, 1})})
        assert report.validate() == {"cover": False}

    def test_mismatched_forest_fails_quietly(self, triangle_3col):
        report = ReductionReport(
            "x", triangle_3col, {"depth": 1}, {"forest": EliminationForest((0,))}
        )
        assert report.validate() == {"forest": False}

    def test_to_dict(self, triangle_3col):
        forest = EliminationForest.chain([0, 1, 2])
        report = ReductionReport("x", triangle_3col, {"depth": 3}, {"forest": forest})
        data = report.to_dict()
        assert data["witnesses"]["forest"] == {"nodes": [0, 1, 2], "parent": {1: 0, 2: 1}}
        assert data["checks"] == {"forest": True}

    def test_weighted_sat_checks(self):
        w = WeightedSatInstance(NormalizedFormula(conj(disj(neg(0))), 1), 1)
        report = ReductionReport("x", w, {"level": 2, "weight": 1})
        assert report.validate() == {"level": True, "weight": True}


def single_literal_formula(m: int) -> NormalizedFormula:
    """``m`` disjunctions, each one term holding the negative literal of its own variable."""
    return NormalizedFormula(conj(*[disj(conj(neg(i))) for i in range(m)]), m)


def path_disequality(n: int, colors: int) -> BinCspInstance:
    pairs = {(a, b) for a in range(colors) for b in range(colors) if a != b}
    return BinCspInstance.build([tuple(range(colors))] * n, {(i, i + 1): pairs for i in range(n - 1)})


class TestOutputSizes:
    """Output sizes against recorded curves"""

    # m disjunctions, weight k: k + m variables, a k-clique plus every W-leaf edge
    @pytest.mark.parametrize(
        "m, k, variables, edges",
        [(1, 1, 2, 1), (2, 1, 3, 2), (3, 2, 5, 7), (4, 3, 7, 15), (5, 0, 5, 0)],
    )
    def test_vertex_cover_reduction(self, m, k, variables, edges):
        inst, W = wsat3am_to_bincsp_vc(single_literal_formula(m), k)
        assert inst.n == variables
        assert len(inst.graph.edges) == edges
        assert len(W) == k
        assert inst.domain_product() == m**k

    # a path on n vertices with c colors forbids c diagonal pairs per edge
    @pytest.mark.parametrize(
        "n, colors, vertices, edges",
        [(2, 2, 4, 4), (3, 2, 7, 8), (5, 3, 17, 24), (4, 4, 16, 24)],
    )
    def test_forbidden_pair_gadgets(self, n, colors, vertices, edges):
        lc = bincsp_to_listcoloring(path_disequality(n, colors))
        assert lc.graph.n == vertices
        assert len(lc.graph.edges) == edges
        assert all(len(lc.lists[v]) == 2 for v in lc.graph.vertices if v >= n)

    @pytest.mark.parametrize("n, colors", [(2, 2), (4, 3), (6, 2)])
    def test_disequality_keeps_the_graph(self, n, colors):
        lists = {v: tuple(range(colors)) for v in range(n)}
        lc = ListColoringInstance(Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)]), tuple(range(colors)), lists)
        inst = listcoloring_to_bincsp(lc)
        assert inst.n == n
        assert len(inst.constraints) == n - 1
        assert all(len(r) == colors * (colors - 1) for r in inst.constraints.values())

    def test_one_pendant_per_missing_color(self):
        # lists of sizes 1, 2 and 3 out of 3 colors
        lc = ListColoringInstance(
            Graph.from_edges(3, [(0, 1), (1, 2)]), (0, 1, 2), {0: (0,), 1: (0, 1), 2: (0, 1, 2)}
        )
        pre, _, _ = listcoloring_to_precolext(lc, {1}, EliminationForest((0, 2)))
        assert pre.graph.n == 3 + 2 + 1
        assert len(pre.graph.edges) == 2 + 3
