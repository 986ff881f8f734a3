"""Unit tests for tdcsp.unitrees and the tree edge labeling"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tdcsp.config import CapsConfig
from tdcsp.errors import InputError, ResourceCapError
from tdcsp.structure import leaf_index_width, tree_edge_labeling
from tdcsp.unitrees import (
    OrderedTree,
    TreeEmbedding,
    annotate_subtrees,
    build_universal_tree,
    enumerate_ordered_trees,
    find_embedding,
    select_children,
    validate_embedding,
)


def star_tree(leaves):
    return OrderedTree.from_shape(tuple(() for _ in range(leaves)))


class TestOrderedTree:
    """Test the OrderedTree value type"""

    def test_from_shape_preorder_numbering(self):
        T = OrderedTree.from_shape(((), ((),)))
        assert T.children == ((1, 2), (), (3,), ())
        assert T.leaves() == [1, 3]
        assert T.depth() == 3
        assert T.shape() == ((), ((),))

    def test_single(self):
        T = OrderedTree.single()
        assert T.size == 1
        assert T.depth() == 1
        assert T.leaves() == [0]

    def test_parents(self):
        assert star_tree(2).parents() == {0: None, 1: 0, 2: 0}

    def test_empty_rejected(self):
        with pytest.raises(InputError):
            OrderedTree(())

    def test_two_parents_rejected(self):
        with pytest.raises(InputError):
            OrderedTree(((1, 2), (2,), ()))

    def test_detached_cycle_rejected(self):
        with pytest.raises(InputError, match="connected"):
            OrderedTree(((), (2,), (1,)))


class TestUniversalTrees:
    """Test build_universal_tree and its annotations"""

    def test_depth_one_is_single_node(self):
        assert build_universal_tree(1, 1).size == 1

    def test_small_tree_shape(self):
        U = build_universal_tree(2, 2)
        assert U.shape() == ((), ())

    def test_invalid_arguments(self):
        with pytest.raises(InputError):
            build_universal_tree(-1, 2)
        with pytest.raises(InputError):
            build_universal_tree(2, 0)

    @pytest.mark.parametrize("n", range(0, 9))
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_depth_bound(self, n, k):
        assert build_universal_tree(n, k).depth() <= k

    @pytest.mark.parametrize("n", range(1, 9))
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_leaf_bound(self, n, k):
        """leaves <= 2n * binom(ceil(log2 n) + k + 1, k)"""
        U = build_universal_tree(n, k)
        log_n = math.ceil(math.log2(n)) if n > 1 else 0
        assert len(U.leaves()) <= 2 * n * math.comb(log_n + k + 1, k)

    @pytest.mark.parametrize("n", range(1, 5))
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_universality(self, n, k):
        """Every small ordered tree embeds"""
        U = build_universal_tree(n, k)
        for S in enumerate_ordered_trees(n, k):
            emb = find_embedding(S, U)
            assert emb is not None, S.shape()
            assert validate_embedding(S, U, emb)

    def test_annotations(self):
        U = build_universal_tree(4, 3)
        notes = annotate_subtrees(U)
        assert notes[0] == (4, 3)
        for leaf in U.leaves():
            assert notes[leaf][1] == 1
            assert notes[leaf][0] >= 1
        for u in range(U.size):
            for c in U.children[u]:
                assert notes[c][1] == notes[u][1] - 1

    def test_annotations_need_universal_tree(self):
        with pytest.raises(InputError):
            annotate_subtrees(star_tree(2))


class TestEmbeddings:
    """Test find_embedding and validate_embedding"""

    def test_single_node_embeds_anywhere(self):
        emb = find_embedding(OrderedTree.single(), star_tree(3))
        assert emb.mapping == {0: 0}

    def test_pigeonhole(self):
        assert find_embedding(star_tree(3), star_tree(2)) is None

    def test_leaf_then_path_into_universal(self):
        S = OrderedTree.from_shape(((), ((),)))
        U = build_universal_tree(3, 3)
        emb = find_embedding(S, U)
        assert emb is not None
        assert validate_embedding(S, U, emb)

    def test_order_matters(self):
        S = OrderedTree.from_shape((((),), ()))
        T = OrderedTree.from_shape(((), ((),)))
        assert find_embedding(S, T) is None

    def test_validator_rejects_swapped_children(self):
        S = star_tree(2)
        T = star_tree(2)
        assert validate_embedding(S, T, TreeEmbedding({0: 0, 1: 1, 2: 2}))
        assert not validate_embedding(S, T, TreeEmbedding({0: 0, 1: 2, 2: 1}))
        assert not validate_embedding(S, T, TreeEmbedding({0: 0, 1: 1, 2: 1}))


class TestEnumeration:
    """Test enumerate_ordered_trees"""

    def test_one_leaf_depth_one(self):
        assert [T.shape() for T in enumerate_ordered_trees(1, 1)] == [()]

    def test_two_leaves_depth_two(self):
        shapes = {T.shape() for T in enumerate_ordered_trees(2, 2)}
        assert shapes == {(), ((),), ((), ())}

    def test_two_leaves_depth_three(self):
        assert len(enumerate_ordered_trees(2, 3)) == 8

    def test_monotone_counts(self):
        counts = [[len(enumerate_ordered_trees(n, k)) for k in range(1, 4)] for n in range(1, 4)]
        for row in counts:
            assert row == sorted(row)
        for col in zip(*counts):
            assert list(col) == sorted(col)

    def test_caps(self):
        with pytest.raises(ResourceCapError):
            enumerate_ordered_trees(6, 2)
        with pytest.raises(ResourceCapError) as info:
            enumerate_ordered_trees(2, 3, CapsConfig(max_enum_depth=2))
        assert info.value.cap == "max_enum_depth"


class TestSelectChildren:
    """Test the greedy child selection"""

    def test_no_demands(self):
        assert select_children(build_universal_tree(3, 2), []) == []

    def test_two_unit_demands(self):
        U = build_universal_tree(2, 2)
        assert select_children(U, [1, 1]) == [1, 2]

    def test_full_demand(self):
        U = build_universal_tree(4, 3)
        notes = annotate_subtrees(U)
        chosen = select_children(U, [4])
        assert len(chosen) == 1
        assert notes[chosen[0]][0] >= 4

    def test_capacities_respected(self):
        U = build_universal_tree(4, 3)
        notes = annotate_subtrees(U)
        demands = [1, 2, 1]
        chosen = select_children(U, demands)
        assert chosen == sorted(chosen)
        assert all(notes[c][0] >= need for c, need in zip(chosen, demands))

    def test_unsatisfiable(self):
        assert select_children(build_universal_tree(2, 2), [3]) is None


class TestEdgeLabeling:
    """Test tree_edge_labeling"""

    def test_single_root(self):
        labeling = tree_edge_labeling(OrderedTree.single())
        assert labeling.labels == {}
        assert labeling.width == 0

    def test_two_leaves(self):
        labeling = tree_edge_labeling(star_tree(2))
        assert set(labeling.labels.values()) == {"0", "1"}

    def test_four_leaves(self):
        labeling = tree_edge_labeling(star_tree(4))
        assert set(labeling.labels.values()) == {"00", "01", "10", "11"}

    def test_child_by_label(self):
        T = star_tree(4)
        labeling = tree_edge_labeling(T)
        assert labeling.child_by_label(T, 0, "10") == 3
        assert labeling.child_by_label(T, 0, "1") is None

    def test_index_width(self):
        assert [leaf_index_width(n) for n in (1, 2, 3, 4, 5, 64)] == [0, 1, 2, 2, 3, 6]


@st.composite
def random_trees(draw):
    """Ordered trees given by a parent choice per non-root node"""
    size = draw(st.integers(min_value=1, max_value=90))
    children = [[] for _ in range(size)]
    for v in range(1, size):
        children[draw(st.integers(min_value=0, max_value=v - 1))].append(v)
    return OrderedTree(tuple(tuple(c) for c in children))


@pytest.mark.property_based
class TestEdgeLabelingProperties:
    """Properties of the labeling on random trees"""

    @given(T=random_trees())
    @settings(max_examples=500, deadline=None)
    def test_branch_spells_leaf_index(self, T):
        labeling = tree_edge_labeling(T)
        p = labeling.width
        for i, leaf in enumerate(T.leaves()):
            expected = format(i, f"0{p}b") if p else ""
            assert labeling.branch_string(T, leaf) == expected

    @given(T=random_trees())
    @settings(max_examples=200, deadline=None)
    def test_sibling_labels_distinct(self, T):
        labeling = tree_edge_labeling(T)
        for u in range(T.size):
            labels = [labeling.labels[(u, c)] for c in T.children[u]]
            assert len(set(labels)) == len(labels)
            assert all(len(lab) <= labeling.width for lab in labels)
