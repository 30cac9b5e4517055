"""
Tests for the two-boundary engine.
"""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.core.exceptions import (
    CombinatorialLimitError,
    DimensionMismatchError,
    NullProjectionError,
    UnresolvedEventError,
    ValidationError,
    ZeroDenominatorError,
)
from src.experiments import oracles
from src.services.boundary.engine import (
    abl_distribution,
    chain_distribution,
    defer_projection,
    forward_distribution,
    open_final_distribution,
    propagate_ket,
    quantum_jump,
    two_boundary_amplitude,
)
from src.services.boundary.schedule import (
    BoundaryPair,
    Event,
    FixedProjection,
    Schedule,
    Segment,
)
from src.services.hilbert.gates import (
    H,
    gate,
    haar_state,
    haar_unitary,
    identity,
    ket_projector,
    rx,
)
from src.services.hilbert.operators import Projector, ProjectiveFamily, UnitaryOp
from src.services.hilbert.state import StateVector, basis_state, plus_state, zero_state

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def _pair(initial: StateVector, final: StateVector) -> BoundaryPair:
    return BoundaryPair(initial, final)


class TestBoundaryPair:
    def test_register_sizes_must_match(self):
        with pytest.raises(DimensionMismatchError):
            BoundaryPair(zero_state(1), zero_state(2))

    def test_boundaries_must_be_normalized(self):
        with pytest.raises(ValidationError):
            BoundaryPair(StateVector(1, [1.0, 1.0]), zero_state(1))

    def test_swapped(self):
        b = BoundaryPair(zero_state(1), plus_state())
        assert b.swapped().initial is b.final


class TestTwoBoundaryAmplitude:
    def test_identity_between_equal_boundaries(self):
        b = _pair(zero_state(1), zero_state(1))
        assert two_boundary_amplitude(b, Schedule.of(identity(0))) == pytest.approx(1.0)

    def test_hadamard_projection_hadamard(self):
        b = _pair(zero_state(1), zero_state(1))
        s = Schedule.of(gate("H", 0), ket_projector(0, (0,)), gate("H", 0))
        assert two_boundary_amplitude(b, s) == pytest.approx(0.5)

    def test_orthogonal_boundaries(self):
        b = _pair(basis_state(1, 0), basis_state(1, 1))
        assert two_boundary_amplitude(b, Schedule()) == 0.0

    def test_literal_order_is_bra_order(self, rng):
        b = _pair(haar_state(2, rng), haar_state(2, rng))
        u1, u2 = haar_unitary((0, 1), rng), haar_unitary((1,), rng)
        p = ket_projector(1, (0,))
        dense_u2 = np.kron(u2.matrix, np.eye(2))
        dense_p = np.kron(np.eye(2), p.matrix)
        expected = b.initial.amps.conj() @ u1.matrix @ dense_p @ dense_u2 @ b.final.amps
        assert two_boundary_amplitude(b, Schedule.of(u1, p, u2)) == pytest.approx(expected)

    def test_forward_schedule_matches_forward_circuit(self, rng):
        initial, final = haar_state(1, rng), haar_state(1, rng)
        u = rx(0.7, 0)
        evolved = u.matrix @ initial.amps
        amp = two_boundary_amplitude(_pair(initial, final), Schedule.forward([u]))
        assert abs(amp) == pytest.approx(abs(np.vdot(final.amps, evolved)))

    def test_open_event_rejected(self):
        s = Schedule.of(ProjectiveFamily.computational((0,)))
        with pytest.raises(UnresolvedEventError):
            two_boundary_amplitude(_pair(zero_state(1), zero_state(1)), s)

    def test_schedule_outside_register(self):
        with pytest.raises(DimensionMismatchError):
            two_boundary_amplitude(_pair(zero_state(1), zero_state(1)), Schedule.of(gate("X", 2)))

    def test_resolve_replaces_events(self):
        family = ProjectiveFamily.computational((0,))
        s = Schedule.of(gate("H", 0), family).resolve([1])
        assert s.is_resolved
        assert isinstance(s.items[1], FixedProjection)

    def test_resolve_needs_one_outcome_per_event(self):
        s = Schedule.of(ProjectiveFamily.computational((0,)))
        with pytest.raises(ValidationError):
            s.resolve([])


class TestABL:
    def test_three_box_certainty(self):
        assert oracles.three_box_probability() == pytest.approx(1.0, abs=1e-12)

    def test_incompatible_boundaries(self):
        b = _pair(basis_state(1, 0), basis_state(1, 1))
        with pytest.raises(ZeroDenominatorError):
            abl_distribution(b, Schedule(), ProjectiveFamily.computational((0,)), Schedule())

    def test_before_must_be_unitary(self):
        b = _pair(zero_state(1), zero_state(1))
        family = ProjectiveFamily.computational((0,))
        with pytest.raises(ValidationError):
            abl_distribution(b, Schedule.of(ket_projector(0, (0,))), family, Schedule())

    def test_sideward_spin_between_up_boundaries(self):
        # pre- and post-selected on |+>, a z-measurement is unbiased
        b = _pair(plus_state(), plus_state())
        dist = dict(abl_distribution(b, Schedule(), ProjectiveFamily.computational((0,)), Schedule()))
        assert dist["0"] == pytest.approx(0.5)
        assert dist["1"] == pytest.approx(0.5)

    def test_deterministic_evolution_reduces_to_born(self, rng):
        initial = zero_state(2)
        before = Schedule.forward([gate("X", 1)])
        evolved = propagate_ket(initial, (Segment(gate("X", 1)),))
        family = ProjectiveFamily.computational((1,))
        dist = dict(abl_distribution(_pair(initial, evolved), before, family, Schedule()))
        born = dict(forward_distribution(initial, before, family))
        assert dist == pytest.approx(born)
        assert dist["1"] == pytest.approx(1.0)

    def test_open_final_boundary_gives_born(self, rng):
        initial = haar_state(3, rng)
        before = Schedule.forward([haar_unitary((0, 1, 2), rng)])
        after = Schedule.forward([haar_unitary((1, 2), rng)])
        family = ProjectiveFamily.computational((0, 2))
        open_final = dict(open_final_distribution(initial, before, family, after))
        born = dict(forward_distribution(initial, before, family))
        assert open_final == pytest.approx(born, abs=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(seed=seeds)
    def test_normalization(self, seed):
        assert oracles.abl_normalization_deviation(np.random.default_rng(seed)) <= 1e-12


class TestChainDistribution:
    def test_no_events_single_chain(self, random_pair):
        dist = chain_distribution(random_pair(2), Schedule.of(gate("H", 0)))
        assert len(dist) == 1
        assert dist[0][1] == pytest.approx(1.0)
        assert dist[0][0].labels == ()

    def test_single_event_matches_abl(self, rng, random_pair):
        b = random_pair(2)
        u1, u2 = haar_unitary((0, 1), rng), haar_unitary((0, 1), rng)
        family = ProjectiveFamily.computational((1,))
        chains = chain_distribution(b, Schedule.of(u1, family, u2))
        abl = abl_distribution(b, Schedule.of(u1), family, Schedule.of(u2))
        assert [p for _, p in chains] == pytest.approx([p for _, p in abl], abs=1e-12)

    def test_two_events_against_dense_products(self, rng, random_pair):
        b = random_pair(1)
        us = [haar_unitary((0,), rng) for _ in range(3)]
        family = ProjectiveFamily.computational((0,))
        s = Schedule.of(us[0], family, us[1], family, us[2])
        dist = chain_distribution(b, s)

        amps = {}
        for j, k in itertools.product(range(2), range(2)):
            pj, pk = family.members[j].matrix, family.members[k].matrix
            chain = us[0].matrix @ pj @ us[1].matrix @ pk @ us[2].matrix
            amps[(str(j), str(k))] = b.initial.amps.conj() @ chain @ b.final.amps
        total = sum(abs(a) ** 2 for a in amps.values())
        for chain, p in dist:
            assert p == pytest.approx(abs(amps[chain.labels]) ** 2 / total, abs=1e-12)
        assert [c.key for c, _ in dist] == ["0/0", "0/1", "1/0", "1/1"]

    def test_enumeration_cap(self, random_pair):
        family = ProjectiveFamily.computational((0,))
        s = Schedule.of(family, family, family)
        with pytest.raises(CombinatorialLimitError):
            chain_distribution(random_pair(1), s, max_chains=4)

    @settings(max_examples=30, deadline=None)
    @given(seed=seeds)
    def test_matches_brute_force(self, seed):
        assert oracles.chain_consistency_deviation(np.random.default_rng(seed)) <= 1e-12

    @settings(max_examples=30, deadline=None)
    @given(seed=seeds)
    def test_jump_consistency(self, seed):
        assert oracles.jump_consistency_deviation(np.random.default_rng(seed)) <= 1e-12


class TestDeferral:
    def test_identity_unitary_leaves_projector(self):
        p = ket_projector(0, (0,))
        deferred = defer_projection(p, identity(0))
        np.testing.assert_allclose(deferred.matrix, p.matrix, atol=1e-15)

    def test_hadamard_turns_z_into_x_projector(self):
        deferred = defer_projection(ket_projector(0, (0,)), UnitaryOp(H, (0,)))
        np.testing.assert_allclose(deferred.matrix, np.full((2, 2), 0.5), atol=1e-15)

    def test_union_register(self, rng):
        deferred = defer_projection(ket_projector(1, (2,)), haar_unitary((0, 2), rng))
        assert deferred.targets == (2, 0)

    def test_register_check(self, rng):
        with pytest.raises(DimensionMismatchError):
            defer_projection(ket_projector(0, (0,)), haar_unitary((3,), rng), n_qubits=2)

    @settings(max_examples=60, deadline=None)
    @given(seed=seeds)
    def test_amplitude_identity(self, seed):
        assert oracles.deferral_deviation(np.random.default_rng(seed)) <= 1e-12


class TestQuantumJump:
    def test_collapse_onto_zero(self):
        out = quantum_jump(plus_state(), ket_projector(0, (0,)))
        np.testing.assert_allclose(out.amps, [1.0, 0.0])
        assert out.normalized

    def test_identity_projection_is_noop(self, rng):
        psi = haar_state(2, rng)
        out = quantum_jump(psi, Projector(np.eye(4), (0, 1)))
        np.testing.assert_allclose(out.amps, psi.amps, atol=1e-14)

    def test_impossible_outcome(self):
        with pytest.raises(NullProjectionError):
            quantum_jump(zero_state(1), ket_projector(1, (0,)))

    def test_needs_normalized_input(self):
        with pytest.raises(ValidationError):
            quantum_jump(StateVector(1, [2.0, 0.0]), ket_projector(0, (0,)))


class TestTimeSymmetry:
    @settings(max_examples=30, deadline=None)
    @given(seed=seeds)
    def test_reversed_schedule_between_swapped_boundaries(self, seed):
        assert oracles.time_symmetry_deviation(np.random.default_rng(seed)) <= 1e-12

    def test_reversed_is_involution(self, rng):
        s = Schedule.of(haar_unitary((0,), rng), ket_projector(0, (1,)), haar_unitary((0, 1), rng))
        twice = s.reversed().reversed()
        for a, b in zip(s.items, twice.items):
            assert type(a) is type(b)
            m_a = a.op.matrix if isinstance(a, Segment) else a.projector.matrix
            m_b = b.op.matrix if isinstance(b, Segment) else b.projector.matrix
            np.testing.assert_allclose(m_a, m_b)

    def test_event_survives_reversal(self):
        family = ProjectiveFamily.computational((0,))
        s = Schedule.of(gate("H", 0), family)
        assert isinstance(s.reversed().items[0], Event)
