"""
Tests for witness recording, decision trees and overlap decay.
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.core.exceptions import DepthLimitError, ValidationError, WitnessNotReadyError
from src.services.hilbert.gates import gate, haar_state, haar_unitary
from src.services.hilbert.operators import Projector, ProjectiveFamily
from src.services.hilbert.state import basis_state, inner, plus_state, tensor, zero_state
from src.services.witness.decisions import (
    Splitter,
    WitnessLayout,
    biased_splitters,
    build_decision_tree,
    coarse_boundary_chains,
    jump_history,
    overlap_decay,
    path_uniqueness,
    record_decision,
    witness_excitation,
    witness_unitary,
)

Z_BASIS = ProjectiveFamily.computational([0])
seeds = st.integers(min_value=0, max_value=2**32 - 1)


def hadamard_splitters(depth: int) -> list[Splitter]:
    return [Splitter(gate("H", 0), Z_BASIS, 1 + j) for j in range(depth)]


class TestRecordDecision:
    def test_plus_state_becomes_bell_pair(self):
        psi = tensor(plus_state(), zero_state(1))
        out = record_decision(psi, Z_BASIS, 1)
        expected = np.array([1, 0, 0, 1]) / np.sqrt(2.0)
        np.testing.assert_allclose(out.amps, expected, atol=1e-15)

    def test_zero_state_unchanged(self):
        out = record_decision(zero_state(2), Z_BASIS, 1)
        np.testing.assert_allclose(out.amps, zero_state(2).amps)

    def test_excited_witness_rejected(self):
        with pytest.raises(WitnessNotReadyError):
            record_decision(basis_state(2, 2), Z_BASIS, 1)

    def test_witness_cannot_be_the_system(self):
        with pytest.raises(ValidationError):
            witness_unitary(Z_BASIS, 0)

    def test_only_binary_single_qubit_decisions(self):
        with pytest.raises(ValidationError):
            witness_unitary(ProjectiveFamily.computational([0, 1]), 2)

    @settings(max_examples=80, deadline=None)
    @given(seed=seeds)
    def test_norm_preserved_in_any_basis(self, seed):
        rng = np.random.default_rng(seed)
        psi = tensor(haar_state(2, rng), zero_state(1))
        vec = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        basis = ProjectiveFamily.binary(Projector.onto(vec, [0]), ("a", "b"))
        out = record_decision(psi, basis, 2)
        assert abs(out.norm() - 1.0) <= 1e-12

    def test_branches_carry_distinct_witness_patterns(self, rng):
        psi = tensor(haar_state(1, rng), zero_state(1))
        out = record_decision(psi, Z_BASIS, 1)
        assert witness_excitation(out, 1) == pytest.approx(abs(psi.amps[1]) ** 2)


class TestWitnessLayout:
    def test_default_assignment_in_order(self):
        layout = WitnessLayout((0,), (3, 1))
        assert layout.witness_for(0) == 3
        assert layout.witness_for(1) == 1

    def test_witness_reuse_rejected(self):
        with pytest.raises(ValidationError):
            WitnessLayout((0,), (1, 1))

    def test_system_overlap_rejected(self):
        with pytest.raises(ValidationError):
            WitnessLayout((0, 1), (1,))

    def test_reused_witness_in_tree(self):
        splitters = [Splitter(gate("H", 0), Z_BASIS, 1), Splitter(gate("H", 0), Z_BASIS, 1)]
        with pytest.raises(ValidationError):
            build_decision_tree(zero_state(2), splitters)


class TestDecisionTree:
    def test_depth_zero_has_single_leaf(self, rng):
        psi = haar_state(1, rng)
        tree = build_decision_tree(psi, [])
        assert tree.depth == 0
        leaves = list(tree.leaves())
        assert [label for label, _ in leaves] == [""]
        np.testing.assert_allclose(leaves[0][1].amps, psi.amps)

    def test_single_hadamard_split(self):
        tree = build_decision_tree(zero_state(2), hadamard_splitters(1))
        np.testing.assert_allclose(tree.leaf_weights(), [0.5, 0.5])

    def test_three_hadamard_splits(self):
        tree = build_decision_tree(zero_state(4), hadamard_splitters(3))
        weights = tree.leaf_weights()
        np.testing.assert_allclose(weights, np.full(8, 1 / 8), atol=1e-14)
        leaves = [leaf for _, leaf in tree.leaves()]
        for i, a in enumerate(leaves):
            for b in leaves[i + 1:]:
                assert abs(inner(a, b)) <= 1e-14

    def test_leaves_sum_to_evolved_state(self, rng):
        splitters = [Splitter(haar_unitary((0,), rng), Z_BASIS, 1 + j) for j in range(4)]
        tree = build_decision_tree(zero_state(5), splitters)
        total = sum(leaf.amps for _, leaf in tree.leaves())
        np.testing.assert_allclose(total, tree.evolved.amps, atol=1e-14)

    def test_label_character_is_decision_outcome(self):
        # first decision always 1, second always 0
        splitters = [
            Splitter(gate("X", 0), Z_BASIS, 1),
            Splitter(gate("X", 0), Z_BASIS, 2),
        ]
        tree = build_decision_tree(zero_state(3), splitters)
        assert tree.leaf("10").norm() == pytest.approx(1.0)
        assert tree.leaf("01").norm() == 0.0

    def test_bad_leaf_label(self):
        tree = build_decision_tree(zero_state(3), hadamard_splitters(2))
        with pytest.raises(ValidationError):
            tree.leaf("012")

    def test_depth_cap(self):
        with pytest.raises(DepthLimitError):
            build_decision_tree(zero_state(1), hadamard_splitters(25))

    def test_schedule_has_one_event_per_decision(self):
        tree = build_decision_tree(zero_state(4), hadamard_splitters(3))
        assert len(tree.schedule().events) == 3

    @pytest.mark.parametrize("label", ["000", "011", "101", "110"])
    def test_leaf_matches_collapsed_history(self, label):
        splitters = biased_splitters(3, 0.6, seed=4)
        tree = build_decision_tree(zero_state(4), splitters)
        jumped = jump_history(tree.initial, splitters, label)
        np.testing.assert_allclose(tree.leaf(label).normalize().amps, jumped.amps, atol=1e-12)


class TestOverlapDecay:
    def test_single_decision(self):
        report = overlap_decay(1, 0.5, seed=0)
        np.testing.assert_allclose(report.squared, [0.5, 0.5], atol=1e-12)

    def test_ten_decisions(self):
        report = overlap_decay(10, 0.5, seed=1)
        assert len(report.labels) == 1024
        np.testing.assert_allclose(report.squared, np.full(1024, 2.0**-10), atol=1e-9)
        assert report.explicit

    def test_biased_majority_leaf(self):
        report = overlap_decay(4, 0.9, seed=2)
        assert report.labels[0] == "0000"
        assert report.squared[0] == pytest.approx(0.9**4, abs=1e-12)
        assert report.overlaps[0] == pytest.approx(0.9**2, abs=1e-12)

    def test_explicit_and_marginal_agree(self):
        explicit = overlap_decay(6, 0.7, seed=3, explicit=True)
        marginal = overlap_decay(6, 0.7, seed=3, explicit=False)
        np.testing.assert_allclose(explicit.overlaps, marginal.overlaps, atol=1e-12)

    def test_large_depth_uses_marginals(self):
        report = overlap_decay(12, 0.5, seed=5)
        assert not report.explicit
        assert report.squared.max() == pytest.approx(2.0**-12, abs=1e-12)

    def test_depth_cap(self):
        with pytest.raises(DepthLimitError):
            overlap_decay(25)

    @pytest.mark.parametrize("build", [overlap_decay, lambda d: path_uniqueness(d, seed=0)])
    def test_negative_depth(self, build):
        with pytest.raises(ValidationError, match="non-negative"):
            build(-1)

    def test_bias_must_be_probability(self):
        with pytest.raises(ValidationError):
            biased_splitters(2, 1.5, seed=0)


class TestBoundaryOnLeaves:
    @pytest.mark.parametrize("d,seed", [(1, 0), (3, 1), (5, 2)])
    def test_exact_leaf_leaves_one_chain(self, d, seed):
        report = path_uniqueness(d, seed)
        assert report.support == 1
        assert report.top_label == report.chosen
        assert report.top_probability == pytest.approx(1.0, abs=1e-12)

    def test_coarse_boundary_spreads_over_chosen_leaves(self):
        tree = build_decision_tree(zero_state(4), biased_splitters(3, 0.7, seed=6))
        report = coarse_boundary_chains(tree, ["000", "011", "101"], seed=7)
        assert set(report.probabilities) == {"000", "011", "101"}
        for label, p in report.probabilities.items():
            assert p == pytest.approx(report.expected[label], abs=1e-12)

    def test_coarse_boundary_rejects_empty_leaf(self):
        splitters = [Splitter(gate("X", 0), Z_BASIS, 1)]
        tree = build_decision_tree(zero_state(2), splitters)
        with pytest.raises(ValidationError):
            coarse_boundary_chains(tree, ["0"], seed=0)
