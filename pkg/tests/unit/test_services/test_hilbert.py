"""
Tests for states, operators and the dense kernels.
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.core.exceptions import (
    CapacityError,
    DimensionMismatchError,
    TargetOutOfRangeError,
    ValidationError,
)
from src.services.hilbert.gates import (
    CNOT,
    H,
    SWAP,
    X,
    gate,
    haar_state,
    haar_unitary,
    haar_unitary_matrix,
    ket_projector,
    random_projector,
    rx,
    ry,
    rz,
)
from src.services.hilbert.kernels import apply_matrix, full_matrix, qubit_marginals
from src.services.hilbert.operators import (
    Projector,
    ProjectiveFamily,
    UnitaryOp,
    apply_projector,
    apply_unitary,
)
from src.services.hilbert.state import (
    StateVector,
    basis_state,
    inner,
    plus_state,
    product_state,
    spin_state,
    tensor,
    zero_state,
)

I2 = np.eye(2)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


class TestStateVector:
    def test_basis_state_places_single_amplitude(self):
        psi = basis_state(3, 5)
        assert psi.amps[5] == 1.0
        assert psi.norm_squared() == 1.0

    def test_basis_index_out_of_range(self):
        with pytest.raises(ValidationError):
            basis_state(2, 4)

    def test_wrong_amplitude_count(self):
        with pytest.raises(ValidationError):
            StateVector(2, np.ones(3))

    def test_false_normalized_claim_rejected(self):
        with pytest.raises(ValidationError):
            StateVector(1, [1.0, 1.0], normalized=True)

    def test_amplitudes_are_read_only(self):
        psi = zero_state(2)
        with pytest.raises(ValueError):
            psi.amps[0] = 0.0

    def test_from_amplitudes_infers_register(self):
        psi = StateVector.from_amplitudes(np.array([3.0, 4.0]), normalize=True)
        assert psi.n_qubits == 1
        assert psi.normalized
        np.testing.assert_allclose(psi.amps, [0.6, 0.8])

    def test_normalize_zero_vector(self):
        with pytest.raises(ValidationError):
            StateVector(1, [0.0, 0.0]).normalize()

    def test_capacity_checked_before_allocation(self):
        with pytest.raises(CapacityError):
            basis_state(40, 0)

    def test_spin_state_sideward(self):
        psi = spin_state(np.pi / 2)
        np.testing.assert_allclose(psi.probabilities(), [0.5, 0.5])


class TestTensorAndInner:
    def test_first_factor_takes_low_qubits(self):
        psi = tensor(basis_state(1, 0), basis_state(1, 1))
        assert psi.n_qubits == 2
        assert psi.amps[2] == 1.0

    def test_plus_plus_is_uniform(self):
        psi = tensor(plus_state(), plus_state())
        np.testing.assert_allclose(psi.amps, np.full(4, 0.5))

    def test_norms_multiply(self):
        a = StateVector(1, [1.0, 1.0])
        b = StateVector(1, [2.0, 0.0])
        assert tensor(a, b).norm() == pytest.approx(a.norm() * b.norm())

    def test_capacity_cap(self):
        with pytest.raises(CapacityError):
            tensor(zero_state(3), zero_state(3), max_qubits=4)

    def test_product_state_matches_tensor_chain(self):
        a, b, c = basis_state(1, 1), basis_state(1, 0), basis_state(1, 1)
        assert product_state([a, b, c]).amps[0b101] == 1.0

    def test_inner_conjugate_symmetry(self, rng):
        a, b = haar_state(3, rng), haar_state(3, rng)
        assert inner(a, b) == pytest.approx(np.conj(inner(b, a)))

    def test_inner_conjugate_linear_in_bra(self):
        a = StateVector(1, [1j, 0.0])
        assert inner(a, basis_state(1, 0)) == pytest.approx(-1j)

    def test_inner_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            inner(zero_state(1), zero_state(2))


class TestOperators:
    @pytest.mark.parametrize("name", ["I", "X", "Y", "Z", "H", "S", "T"])
    def test_fixed_gates_are_unitary(self, name):
        u = gate(name, 0)
        np.testing.assert_allclose(u.matrix.conj().T @ u.matrix, I2, atol=1e-14)

    @pytest.mark.parametrize("factory", [rx, ry, rz])
    @pytest.mark.parametrize("theta", [0.0, 0.3, np.pi / 2, np.pi, 5.0])
    def test_rotations_are_unitary(self, factory, theta):
        u = factory(theta, 0)
        np.testing.assert_allclose(u.matrix.conj().T @ u.matrix, I2, atol=1e-14)

    def test_non_unitary_rejected(self):
        with pytest.raises(ValidationError):
            UnitaryOp(np.array([[1, 1], [0, 1]]), (0,))

    def test_duplicate_targets_rejected(self):
        with pytest.raises(ValidationError):
            UnitaryOp(CNOT, (1, 1))

    def test_matrix_size_must_match_targets(self):
        with pytest.raises(ValidationError):
            UnitaryOp(CNOT, (0,))

    def test_target_outside_register(self):
        with pytest.raises(TargetOutOfRangeError):
            apply_unitary(gate("X", 2), zero_state(2))

    def test_x_on_high_qubit(self):
        out = apply_unitary(gate("X", 1), zero_state(2))
        assert out.amps[2] == pytest.approx(1.0)

    def test_cnot_control_is_first_target(self):
        out = apply_unitary(UnitaryOp(CNOT, (0, 1)), basis_state(2, 1))
        assert out.amps[3] == pytest.approx(1.0)

    def test_dagger_inverts(self, rng):
        u = haar_unitary((0, 2), rng)
        psi = haar_state(3, rng)
        back = apply_unitary(u.dagger(), apply_unitary(u, psi))
        np.testing.assert_allclose(back.amps, psi.amps, atol=1e-13)

    def test_non_projector_rejected(self):
        with pytest.raises(ValidationError):
            Projector(np.array([[1, 1], [0, 0]]), (0,))

    def test_projector_complement(self):
        p = ket_projector(0, (0,))
        np.testing.assert_allclose(p.complement().matrix, np.diag([0, 1]))

    def test_projector_onto_normalizes(self):
        p = Projector.onto(np.array([1.0, 1.0]), (0,))
        np.testing.assert_allclose(p.matrix, np.full((2, 2), 0.5))

    def test_apply_projector_may_vanish(self):
        out = apply_projector(ket_projector(1, (0,)), zero_state(1))
        assert out.norm() == 0.0

    def test_random_projector_rank(self, rng):
        p = random_projector((0, 1), 3, rng)
        assert np.trace(p.matrix).real == pytest.approx(3.0)


class TestProjectiveFamily:
    def test_computational_labels(self):
        family = ProjectiveFamily.computational((0, 1))
        assert family.labels == ("00", "01", "10", "11")
        assert len(family) == 4

    def test_binary_family_is_complete(self):
        family = ProjectiveFamily.binary(ket_projector(0, (0,)), ("up", "down"))
        total = family["up"].matrix + family["down"].matrix
        np.testing.assert_allclose(total, I2)

    def test_incomplete_family_rejected(self):
        with pytest.raises(ValidationError):
            ProjectiveFamily((ket_projector(0, (0,)),), ("only",))

    def test_overlapping_members_rejected(self):
        p = ket_projector(0, (0,))
        plus = Projector.onto(np.array([1.0, 1.0]), (0,))
        with pytest.raises(ValidationError):
            ProjectiveFamily((p, plus), ("a", "b"))

    def test_duplicate_labels_rejected(self):
        p = ket_projector(0, (0,))
        with pytest.raises(ValidationError):
            ProjectiveFamily((p, p.complement()), ("a", "a"))

    def test_mismatched_targets_rejected(self):
        with pytest.raises(ValidationError):
            ProjectiveFamily((ket_projector(0, (0,)), ket_projector(1, (1,))), ("a", "b"))


class TestKernels:
    def test_single_qubit_gate_matches_kron(self, rng):
        u = haar_unitary_matrix(2, rng)
        psi = haar_state(3, rng)
        expected = np.kron(I2, np.kron(u, I2)) @ psi.amps
        np.testing.assert_allclose(apply_matrix(psi.amps, 3, u, (1,)), expected, atol=1e-13)

    def test_two_qubit_gate_low_bit_first(self, rng):
        m = haar_unitary_matrix(4, rng)
        psi = haar_state(3, rng)
        expected = np.kron(I2, m) @ psi.amps
        np.testing.assert_allclose(apply_matrix(psi.amps, 3, m, (0, 1)), expected, atol=1e-13)

    def test_reversed_targets_conjugate_by_swap(self, rng):
        m = haar_unitary_matrix(4, rng)
        psi = haar_state(3, rng)
        expected = np.kron(I2, SWAP @ m @ SWAP) @ psi.amps
        np.testing.assert_allclose(apply_matrix(psi.amps, 3, m, (1, 0)), expected, atol=1e-13)

    def test_full_matrix_of_hadamard(self):
        np.testing.assert_allclose(full_matrix(H, (0,), 2), np.kron(I2, H), atol=1e-15)

    def test_input_array_untouched(self, rng):
        psi = haar_state(2, rng)
        before = psi.amps.copy()
        apply_matrix(psi.amps, 2, X, (0,))
        np.testing.assert_array_equal(psi.amps, before)

    def test_marginals_follow_requested_order(self, rng):
        psi = haar_state(3, rng)
        probs = psi.probabilities()
        marg = qubit_marginals(psi.amps, 3, (2, 0))
        for pattern in range(4):
            q2, q0 = pattern & 1, pattern >> 1
            expected = sum(probs[i] for i in range(8) if (i >> 2) & 1 == q2 and i & 1 == q0)
            assert marg[pattern] == pytest.approx(expected)


class TestProperties:
    @settings(max_examples=60, deadline=None)
    @given(seed=seeds, n=st.integers(min_value=1, max_value=6))
    def test_unitaries_preserve_norm(self, seed, n):
        rng = np.random.default_rng(seed)
        k = int(rng.integers(1, min(3, n) + 1))
        targets = tuple(int(t) for t in rng.choice(n, size=k, replace=False))
        psi = haar_state(n, rng)
        out = apply_unitary(haar_unitary(targets, rng), psi)
        assert abs(out.norm() - 1.0) <= 1e-12

    @settings(max_examples=40, deadline=None)
    @given(seed=seeds, n=st.integers(min_value=1, max_value=5))
    def test_family_weights_sum_to_norm(self, seed, n):
        rng = np.random.default_rng(seed)
        k = int(rng.integers(1, min(2, n) + 1))
        targets = tuple(int(t) for t in rng.choice(n, size=k, replace=False))
        psi = haar_state(n, rng)
        family = ProjectiveFamily.computational(targets)
        total = sum(apply_projector(p, psi).norm_squared() for p in family.members)
        assert total == pytest.approx(1.0, abs=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(seed=seeds)
    def test_kernel_matches_dense_operator(self, seed):
        rng = np.random.default_rng(seed)
        m = haar_unitary_matrix(4, rng)
        psi = haar_state(4, rng)
        out = apply_matrix(psi.amps, 4, m, (2, 3))
        expected = np.kron(m, np.eye(4)) @ psi.amps
        np.testing.assert_allclose(out, expected, atol=1e-12)
