"""Unit tests for tdcsp.structure: graphs, elimination forests, covers and fat trees"""

import math

import networkx as nx
import pytest

from tdcsp.config import CapsConfig
from tdcsp.errors import InputError, ResourceCapError
from tdcsp.structure import (
    EliminationForest,
    FatEliminationTree,
    Graph,
    d_fold_vc_number,
    fat_elimination_tree,
    fat_tree_to_elimination_forest,
    feedback_vertex_set_exact,
    is_feedback_vertex_set,
    is_vertex_cover,
    modulator_to_treedepth,
    treedepth_exact,
    validate_elimination_forest,
    validate_fat_tree,
    vertex_cover_exact,
)


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves):
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


class TestGraph:
    """Test the Graph value type"""

    def test_edges_canonical_and_sorted(self):
        G = Graph.from_edges(3, [(2, 1), (1, 0), (0, 1)])
        assert G.edges == ((0, 1), (1, 2))

    def test_self_loop_rejected(self):
        with pytest.raises(InputError, match="Self-loop"):
            Graph.from_edges(2, [(1, 1)])

    def test_unknown_vertex_rejected(self):
        with pytest.raises(InputError):
            Graph.from_edges(2, [(0, 5)])

    def test_without_keeps_ids(self):
        G = path(4).without([1])
        assert G.vertices == (0, 2, 3)
        assert G.edges == ((2, 3),)

    def test_components(self):
        G = Graph.from_edges(5, [(3, 4), (0, 1)])
        assert G.components() == [(0, 1), (2,), (3, 4)]

    def test_is_forest(self, triangle):
        assert path(5).is_forest()
        assert not triangle.is_forest()
        assert Graph((), ()).is_forest()

    def test_networkx_roundtrip(self):
        G = star(3)
        assert Graph.from_networkx(G.to_networkx()) == G


class TestEliminationForest:
    """Test forest navigation"""

    def test_chain(self):
        F = EliminationForest.chain([2, 0, 1])
        assert F.roots == (2,)
        assert F.depth == 3
        assert F.ancestors(1) == [0, 2]

    def test_cycle_rejected(self):
        with pytest.raises(InputError, match="cycle"):
            EliminationForest((0, 1), {0: 1, 1: 0})

    def test_empty_forest_depth(self):
        assert EliminationForest(()).depth == 0

    def test_is_ancestor_reflexive(self):
        F = EliminationForest.chain([0, 1])
        assert F.is_ancestor(1, 1)
        assert F.is_ancestor(0, 1)
        assert not F.is_ancestor(1, 0)

    def test_preorder_and_leaves(self):
        F = EliminationForest((0, 1, 2, 3), {1: 0, 2: 0, 3: 1})
        assert F.preorder() == [0, 1, 3, 2]
        assert F.leaves() == [3, 2]
        assert F.children(0) == (1, 2)

    def test_restrict(self):
        F = EliminationForest.chain([0, 1, 2, 3])
        R = F.restrict([0, 2, 3])
        assert R.parent == {2: 0, 3: 2}

    def test_to_ordered_tree_adds_root_for_several_roots(self):
        F = EliminationForest((0, 1, 2), {1: 0})
        T, back = F.to_ordered_tree()
        assert back[0] == -1
        assert T.size == 4
        assert T.depth() == 3


class TestValidateEliminationForest:
    """Test validate_elimination_forest"""

    def test_chain_is_valid_for_any_graph(self, triangle):
        assert validate_elimination_forest(triangle, EliminationForest.chain([1, 0, 2]))

    def test_star_with_leaf_root_invalid(self):
        F = EliminationForest((0, 1, 2, 3), {0: 1, 2: 1, 3: 1})
        assert not validate_elimination_forest(star(3), F)

    def test_node_mismatch_raises(self):
        with pytest.raises(InputError):
            validate_elimination_forest(path(3), EliminationForest.chain([0, 1]))


class TestTreedepth:
    """Test treedepth_exact"""

    @pytest.mark.parametrize("n", range(1, 16))
    def test_paths(self, n):
        """td(P_n) = ceil(log2(n + 1))"""
        depth, forest = treedepth_exact(path(n))
        assert depth == math.ceil(math.log2(n + 1))
        assert forest.depth == depth
        assert validate_elimination_forest(path(n), forest)

    @pytest.mark.parametrize(
        "graph, expected",
        [
            (Graph((), ()), 0),
            (Graph.from_edges(3, []), 1),
            (star(5), 2),
            (Graph.from_edges(4, [(u, v) for u in range(4) for v in range(u + 1, 4)]), 4),
        ],
    )
    def test_small_graphs(self, graph, expected):
        depth, forest = treedepth_exact(graph)
        assert depth == expected
        assert forest.depth == expected

    def test_triangle(self, triangle):
        assert treedepth_exact(triangle)[0] == 3

    def test_vertex_cap(self):
        with pytest.raises(ResourceCapError) as info:
            treedepth_exact(path(21))
        assert info.value.cap == "max_vertices"

    def test_custom_caps(self):
        with pytest.raises(ResourceCapError):
            treedepth_exact(path(6), CapsConfig(max_vertices=5))


class TestCovers:
    """Test vertex cover, feedback vertex set and modulator searches"""

    def test_vertex_cover_triangle(self, triangle):
        assert vertex_cover_exact(triangle, 3) == frozenset({0, 1})

    def test_vertex_cover_none_within_bound(self):
        assert vertex_cover_exact(Graph.from_edges(2, [(0, 1)]), 0) is None

    def test_vertex_cover_star(self):
        assert vertex_cover_exact(star(6), 6) == frozenset({0})

    def test_is_vertex_cover(self, triangle):
        assert is_vertex_cover(triangle, [0, 2])
        assert not is_vertex_cover(triangle, [0])

    def test_fvs_triangle(self, triangle):
        W = feedback_vertex_set_exact(triangle, 3)
        assert W == frozenset({0})
        assert is_feedback_vertex_set(triangle, W)

    def test_fvs_forest_is_empty(self):
        assert feedback_vertex_set_exact(path(6), 6) == frozenset()

    def test_fvs_bound_too_small(self, triangle):
        assert feedback_vertex_set_exact(triangle, 0) is None

    def test_fvs_bowtie_shares_its_center(self):
        bowtie = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])
        assert feedback_vertex_set_exact(bowtie, 5) == frozenset({0})

    def test_fvs_complete_graph(self):
        K4 = Graph.from_networkx(nx.complete_graph(4))
        assert feedback_vertex_set_exact(K4, 4) == frozenset({0, 1})

    @pytest.mark.parametrize("seed", range(10))
    def test_fvs_is_minimum(self, seed):
        G = Graph.from_networkx(nx.gnp_random_graph(7, 0.4, seed=seed))
        S = feedback_vertex_set_exact(G, G.n)
        rest = G.without(S)
        assert rest.n == 0 or nx.is_forest(rest.to_networkx())
        smaller = feedback_vertex_set_exact(G, len(S) - 1) if S else None
        assert smaller is None

    def test_modulator_triangle(self, triangle):
        W, forest = modulator_to_treedepth(triangle, 1, 3)
        assert W == frozenset({0, 1})
        assert forest.nodes == (2,)

    def test_modulator_zero_depth_is_vertex_set(self):
        W, forest = modulator_to_treedepth(path(3), 0, 3)
        assert W == frozenset({0, 1, 2})
        assert forest.depth == 0

    def test_modulator_none(self, triangle):
        assert modulator_to_treedepth(triangle, 1, 1) is None


class TestFatTrees:
    """Test k-fat elimination trees and the d-fold vertex cover number"""

    def test_star_dfold_two(self):
        assert d_fold_vc_number(star(6), 2) == 1

    def test_dfold_one_is_vertex_count(self, triangle):
        assert d_fold_vc_number(triangle, 1) == 3

    def test_dfold_rejects_zero_depth(self, triangle):
        with pytest.raises(InputError):
            d_fold_vc_number(triangle, 0)

    def test_fat_tree_is_valid_with_single_root(self):
        G = star(4)
        T = fat_elimination_tree(G, 2, 1)
        assert T is not None
        assert T.tree.roots == (0,)
        assert T.bags[0] == (0,)
        assert validate_fat_tree(G, T, 2, 1)

    def test_fat_tree_none_when_too_thin(self, triangle):
        assert fat_elimination_tree(triangle, 2, 1) is None

    def test_validate_rejects_wrong_bags(self, triangle):
        T = FatEliminationTree(EliminationForest((0,)), ((0, 1),))
        assert not validate_fat_tree(triangle, T, 1, 3)

    def test_chained_bags_form_elimination_forest(self):
        G = nx.petersen_graph()
        G = Graph.from_networkx(G)
        d = 2
        k = d_fold_vc_number(G, d)
        T = fat_elimination_tree(G, d, k)
        F = fat_tree_to_elimination_forest(T)
        assert validate_elimination_forest(G, F)
        assert F.depth <= d * k
