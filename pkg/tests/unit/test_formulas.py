"""Unit tests for tdcsp.formulas: normalized formulas, circuits and weight oracles"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tdcsp.config import CapsConfig
from tdcsp.errors import InputError, ResourceCapError
from tdcsp.formulas import (
    And,
    BooleanCircuit,
    CircuitBuilder,
    Gate,
    Lit,
    NormalizedFormula,
    Or,
    WeightedSatInstance,
    colex_subsets,
    conj,
    disj,
    eval_circuit,
    eval_formula,
    formula_to_circuit,
    is_antimonotone,
    is_monotone,
    is_normalized,
    neg,
    normalization_level,
    pad_to_level,
    pos,
    random_normalized_formula,
    weighted_circuit_sat_bruteforce,
    weighted_sat_bruteforce,
    weighted_sat_naive,
)


class TestFormulaShape:
    """Test construction and the normalization level"""

    def test_empty_connectives(self):
        assert eval_formula(conj(), [])
        assert not eval_formula(conj(disj()), [])

    def test_evaluation(self):
        F = conj(disj(neg(0), pos(1)))
        assert eval_formula(F, {1})
        assert not eval_formula(F, {0})

    def test_level_two(self):
        assert normalization_level(conj(disj(neg(0)), disj(neg(1)))) == 2

    def test_level_three(self):
        assert normalization_level(conj(disj(conj(pos(0), pos(1))))) == 3

    def test_mixed_depths_rejected(self):
        with pytest.raises(InputError, match="mixed depths"):
            normalization_level(conj(disj(neg(0)), disj(conj(neg(1)))))

    def test_literal_below_root_rejected(self):
        with pytest.raises(InputError, match="below the root"):
            normalization_level(conj(pos(0)))

    def test_broken_alternation(self):
        with pytest.raises(InputError, match="alternation"):
            normalization_level(conj(conj(neg(0))))

    def test_is_normalized(self):
        F = conj(disj(neg(0)))
        assert is_normalized(F, 2)
        assert not is_normalized(F, 3)
        assert not is_normalized(conj(pos(0)), 2)

    def test_pad_to_level(self):
        padded = pad_to_level(conj(disj(neg(0))), 4)
        assert normalization_level(padded) == 4
        assert padded == And((Or((And((Or((neg(0),)),)),)),))

    def test_root_must_be_and(self):
        with pytest.raises(InputError, match="AND root"):
            NormalizedFormula(Or(()), 1)

    def test_literal_out_of_range(self):
        with pytest.raises(InputError):
            NormalizedFormula(conj(disj(Lit(3))), 2)

    def test_negative_weight(self):
        with pytest.raises(InputError):
            WeightedSatInstance(NormalizedFormula(conj(), 1), -1)


class TestRandomFormulas:
    """Test the seeded formula generator"""

    @pytest.mark.parametrize("t", [2, 3, 4, 5])
    def test_level_and_sign(self, t):
        rng = np.random.default_rng(t)
        F = random_normalized_formula(rng, 5, t)
        assert is_normalized(F, t)
        assert is_antimonotone(F)

    def test_positive_sign(self):
        F = random_normalized_formula(np.random.default_rng(1), 4, 3, sign="positive")
        assert is_monotone(F)

    def test_top_children(self):
        F = random_normalized_formula(np.random.default_rng(0), 4, 2, top_children=6)
        assert len(F.root.children) == 6

    def test_level_one_rejected(self):
        with pytest.raises(InputError):
            random_normalized_formula(np.random.default_rng(0), 3, 1)


class TestWeightedSat:
    """Test the exact-weight satisfiability oracles"""

    def test_colex_order(self):
        assert list(colex_subsets(4, 2)) == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]

    def test_colex_empty(self):
        assert list(colex_subsets(3, 0)) == [()]

    def test_simple_model(self):
        # x0 and x1 not both true, x2 true
        F = NormalizedFormula(conj(disj(neg(0), neg(1)), disj(pos(2))), 4)
        assert weighted_sat_bruteforce(WeightedSatInstance(F, 2)) == frozenset({0, 2})

    def test_weight_too_large(self):
        F = NormalizedFormula(conj(), 2)
        assert weighted_sat_bruteforce(WeightedSatInstance(F, 3)) is None

    def test_empty_formula_takes_lowest_variables(self):
        F = NormalizedFormula(conj(), 5)
        assert weighted_sat_bruteforce(WeightedSatInstance(F, 2)) == frozenset({0, 1})

    def test_search_node_cap(self):
        F = NormalizedFormula(conj(*(disj(neg(i)) for i in range(10))), 10)
        with pytest.raises(ResourceCapError) as info:
            weighted_sat_bruteforce(WeightedSatInstance(F, 5), CapsConfig(max_search_nodes=3))
        assert info.value.cap == "max_search_nodes"

    @pytest.mark.parametrize("seed", range(20))
    def test_agrees_with_naive(self, seed):
        rng = np.random.default_rng(seed)
        t = 2 + seed % 3
        F = random_normalized_formula(rng, 6, t, sign="mixed")
        for k in range(7):
            w = WeightedSatInstance(F, k)
            assert weighted_sat_bruteforce(w) == weighted_sat_naive(w)


@pytest.mark.property_based
class TestWeightedSatProperties:
    """Property tests for the pruned search"""

    @given(
        seed=st.integers(min_value=0, max_value=10_000),
        n=st.integers(min_value=1, max_value=7),
        k=st.integers(min_value=0, max_value=7),
        sign=st.sampled_from(["negative", "positive", "mixed"]),
    )
    @settings(max_examples=60, deadline=None)
    def test_pruned_search_matches_naive(self, seed, n, k, sign):
        F = random_normalized_formula(np.random.default_rng(seed), n, 2, sign=sign)
        w = WeightedSatInstance(F, k)
        found = weighted_sat_bruteforce(w)
        assert found == weighted_sat_naive(w)
        if found is not None:
            assert len(found) == k
            assert eval_formula(F, found)


class TestCircuits:
    """Test Boolean circuits"""

    def test_builder_shares_gates(self):
        b = CircuitBuilder(2)
        assert b.input(0) == b.input(0)
        b.and_([b.input(0), b.input(1)])
        b.and_([b.input(0), b.input(1)])
        assert b.size == 3

    def test_weighted_circuit_sat(self):
        b = CircuitBuilder(3)
        out = b.and_([b.input(2), b.not_(b.input(0))])
        C = b.build(out)
        assert weighted_circuit_sat_bruteforce(C, 2) == frozenset({1, 2})
        assert weighted_circuit_sat_bruteforce(C, 3) is None
        assert weighted_circuit_sat_bruteforce(C, 4) is None

    def test_cycle_rejected(self):
        C = BooleanCircuit((Gate("AND", (1,)), Gate("AND", (0,))), 0, 0)
        with pytest.raises(InputError, match="cycle"):
            eval_circuit(C, [])

    def test_bad_gates_rejected(self):
        with pytest.raises(InputError):
            BooleanCircuit((Gate("XOR", ()),), 0, 0)
        with pytest.raises(InputError):
            BooleanCircuit((Gate("IN", (), 4),), 0, 2)
        with pytest.raises(InputError):
            BooleanCircuit((Gate("IN", (), 0),), 3, 1)

    def test_subset_cap(self):
        b = CircuitBuilder(30)
        C = b.build(b.true())
        with pytest.raises(ResourceCapError):
            weighted_circuit_sat_bruteforce(C, 15)

    @pytest.mark.parametrize("seed", range(10))
    def test_formula_to_circuit_agrees(self, seed):
        F = random_normalized_formula(np.random.default_rng(seed), 5, 3, sign="mixed")
        C = formula_to_circuit(F)
        for k in range(6):
            for subset in colex_subsets(5, k):
                assert eval_circuit(C, subset) == eval_formula(F, subset)
