"""
Dense statevector kernels.

Qubit ordering is little-endian: qubit ``q`` is bit ``q`` of the basis index.
A C-ordered reshape of an n-qubit amplitude array to ``(2,) * n`` therefore
puts qubit ``q`` on axis ``n - 1 - q``.

A k-qubit matrix uses the same convention on its own index: for targets
``(t0, t1, ...)`` target ``t0`` is the least-significant bit of the matrix
row/column index.

Every output amplitude is produced by exactly one contraction, so results do
not depend on how many BLAS threads numpy happens to use.
"""

from collections.abc import Sequence

import numpy as np

from src.core.exceptions import TargetOutOfRangeError, ValidationError


def check_targets(targets: Sequence[int], n_qubits: int) -> tuple[int, ...]:
    """
    Validate target indices against a register size.

    Args:
        targets: Target qubit indices
        n_qubits: Register size

    Returns:
        Targets as a tuple

    Raises:
        ValidationError: If targets repeat
        TargetOutOfRangeError: If any target is outside the register
    """
    targets = tuple(int(t) for t in targets)
    if len(set(targets)) != len(targets):
        raise ValidationError(
            f"Target indices must be distinct: {targets}",
            details={"targets": list(targets)},
        )
    if any(t < 0 or t >= n_qubits for t in targets):
        raise TargetOutOfRangeError(targets, n_qubits)
    return targets


def _apply_single(amps: np.ndarray, n_qubits: int, matrix: np.ndarray, target: int) -> np.ndarray:
    # (high bits, target bit, low bits) stride view
    view = amps.reshape(1 << (n_qubits - target - 1), 2, 1 << target)
    out = np.einsum("ij,ajb->aib", matrix, view, optimize=False)
    return out.reshape(-1)


def apply_matrix(
    amps: np.ndarray,
    n_qubits: int,
    matrix: np.ndarray,
    targets: Sequence[int],
) -> np.ndarray:
    """
    Apply a k-qubit matrix to the given targets of a statevector.

    Args:
        amps: Amplitude array of length 2^n_qubits (left untouched)
        n_qubits: Register size
        matrix: 2^k x 2^k complex matrix
        targets: k distinct target qubits, little-endian within the matrix

    Returns:
        New amplitude array
    """
    targets = check_targets(targets, n_qubits)
    k = len(targets)
    if k == 0:
        return amps.copy()
    if k == 1:
        return _apply_single(amps, n_qubits, matrix, targets[0])

    psi = amps.reshape((2,) * n_qubits)
    gate = matrix.reshape((2,) * (2 * k))
    # gate axes are (out_{k-1}, ..., out_0, in_{k-1}, ..., in_0)
    state_axes = [n_qubits - 1 - t for t in reversed(targets)]
    contracted = np.tensordot(gate, psi, axes=(list(range(k, 2 * k)), state_axes))
    restored = np.moveaxis(contracted, list(range(k)), state_axes)
    return np.ascontiguousarray(restored).reshape(-1)


def embed_matrix(
    matrix: np.ndarray,
    targets: Sequence[int],
    register: Sequence[int],
) -> np.ndarray:
    """
    Express an operator on ``targets`` as a matrix over a larger ``register``.

    The register order follows the same little-endian rule, so the result can be
    used as an operator with targets ``register``.

    Args:
        matrix: Operator on ``targets``
        targets: Qubits the operator acts on (subset of register)
        register: Qubits of the enlarged operator

    Returns:
        2^len(register) square matrix
    """
    register = tuple(register)
    positions = [register.index(t) for t in targets]
    size = len(register)
    identity = np.eye(1 << size, dtype=np.complex128)
    columns = [apply_matrix(identity[:, j], size, matrix, positions) for j in range(1 << size)]
    return np.stack(columns, axis=1)


def full_matrix(matrix: np.ndarray, targets: Sequence[int], n_qubits: int) -> np.ndarray:
    """Operator on ``targets`` expanded over the whole n-qubit register."""
    return embed_matrix(matrix, targets, range(n_qubits))


def qubit_marginals(amps: np.ndarray, n_qubits: int, qubits: Sequence[int]) -> np.ndarray:
    """
    Probability weight of every bit pattern on ``qubits``.

    Args:
        amps: Amplitude array
        n_qubits: Register size
        qubits: Qubits to keep; qubits[0] is the least-significant bit of the result index

    Returns:
        Array of length 2^len(qubits) with summed |amp|^2
    """
    qubits = check_targets(qubits, n_qubits)
    weights = (np.abs(amps) ** 2).reshape((2,) * n_qubits)
    keep_axes = [n_qubits - 1 - q for q in reversed(qubits)]
    drop_axes = tuple(a for a in range(n_qubits) if a not in keep_axes)
    summed = weights.sum(axis=drop_axes) if drop_axes else weights
    # remaining axes are in increasing axis order; reorder to keep_axes order
    remaining = sorted(keep_axes)
    order = [remaining.index(a) for a in keep_axes]
    return np.transpose(summed, order).reshape(-1)
