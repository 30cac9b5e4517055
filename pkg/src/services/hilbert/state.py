"""
Dense statevector type and the state-level operations.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from src.config import settings
from src.core.exceptions import CapacityError, DimensionMismatchError, ValidationError


def check_capacity(n_qubits: int, max_qubits: Optional[int] = None) -> None:
    limit = max_qubits if max_qubits is not None else settings.max_qubits
    if n_qubits > limit:
        raise CapacityError(n_qubits, limit)


@dataclass(frozen=True, eq=False)
class StateVector:
    """
    Complex amplitudes over the 2^n computational basis.

    Vectors may be unnormalized; ``normalized=True`` is a checked claim that the
    norm is 1 within the validation tolerance. The amplitude array is read-only.
    """

    n_qubits: int
    amps: np.ndarray = field(repr=False)
    normalized: bool = False

    def __post_init__(self) -> None:
        amps = np.array(self.amps, dtype=np.complex128, copy=True).reshape(-1)
        if self.n_qubits < 0:
            raise ValidationError("n_qubits must be non-negative")
        check_capacity(self.n_qubits)
        if amps.shape[0] != 1 << self.n_qubits:
            raise ValidationError(
                f"Expected {1 << self.n_qubits} amplitudes, got {amps.shape[0]}",
                details={"n_qubits": self.n_qubits, "length": int(amps.shape[0])},
            )
        if self.normalized:
            norm_sq = float(np.vdot(amps, amps).real)
            if abs(norm_sq - 1.0) > settings.validation_tolerance:
                raise ValidationError(
                    "State flagged normalized has norm^2 != 1",
                    details={"norm_squared": norm_sq},
                )
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @classmethod
    def from_amplitudes(cls, amps: np.ndarray, normalize: bool = False) -> "StateVector":
        """
        Build a state from a flat amplitude array whose length is a power of two.

        Args:
            amps: Amplitudes
            normalize: Rescale to unit norm and flag as normalized

        Returns:
            StateVector
        """
        amps = np.asarray(amps, dtype=np.complex128).reshape(-1)
        n_qubits = int(amps.shape[0]).bit_length() - 1
        if amps.shape[0] != 1 << n_qubits:
            raise ValidationError(
                f"Amplitude count {amps.shape[0]} is not a power of two",
            )
        if normalize:
            nrm = float(np.linalg.norm(amps))
            if nrm == 0.0:
                raise ValidationError("Cannot normalize the zero vector")
            return cls(n_qubits, amps / nrm, normalized=True)
        return cls(n_qubits, amps)

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def norm_squared(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    def normalize(self) -> "StateVector":
        """Return the unit vector along this state; explicit, never implicit."""
        nrm = self.norm()
        if nrm == 0.0:
            raise ValidationError("Cannot normalize the zero vector")
        return StateVector(self.n_qubits, self.amps / nrm, normalized=True)

    def with_global_phase(self, phi: float) -> "StateVector":
        return StateVector(self.n_qubits, self.amps * np.exp(1j * phi), self.normalized)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def __repr__(self) -> str:
        return f"StateVector(n_qubits={self.n_qubits}, norm={self.norm():.6g}, normalized={self.normalized})"


def basis_state(n_qubits: int, index: int) -> StateVector:
    """Computational basis state |index> on n qubits (little-endian bits)."""
    check_capacity(n_qubits)
    if not 0 <= index < (1 << n_qubits):
        raise ValidationError(
            f"Basis index {index} out of range for {n_qubits} qubits",
            details={"index": index, "n_qubits": n_qubits},
        )
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(n_qubits, amps, normalized=True)


def zero_state(n_qubits: int) -> StateVector:
    return basis_state(n_qubits, 0)


def plus_state(n_qubits: int = 1) -> StateVector:
    """Uniform superposition over all basis states."""
    dim = 1 << n_qubits
    return StateVector(n_qubits, np.full(dim, 1.0 / np.sqrt(dim), dtype=np.complex128), True)


def spin_state(theta: float, phi: float = 0.0) -> StateVector:
    """
    Single spin pointing along polar angle ``theta`` and azimuth ``phi``.

    |0> is spin up along the measurement axis; theta = pi/2 is a sideward spin.
    """
    amps = np.array([np.cos(theta / 2.0), np.exp(1j * phi) * np.sin(theta / 2.0)])
    return StateVector(1, amps, normalized=True)


def product_state(factors: list[StateVector]) -> StateVector:
    """Tensor product of factors; factors[0] occupies the lowest qubits."""
    if not factors:
        return StateVector(0, np.ones(1, dtype=np.complex128), normalized=True)
    result = factors[0]
    for factor in factors[1:]:
        result = tensor(result, factor)
    return result


def tensor(a: StateVector, b: StateVector, max_qubits: Optional[int] = None) -> StateVector:
    """
    Tensor product with ``a`` on the low qubits and ``b`` on the high qubits.

    Args:
        a: Low-qubit factor
        b: High-qubit factor
        max_qubits: Capacity override (defaults to settings.max_qubits)

    Returns:
        State on a.n_qubits + b.n_qubits qubits with amp(i + 2^a.n * j) = a_i * b_j

    Raises:
        CapacityError: If the combined register exceeds the cap
    """
    n_qubits = a.n_qubits + b.n_qubits
    check_capacity(n_qubits, max_qubits)
    amps = np.kron(b.amps, a.amps)
    normalized = a.normalized and b.normalized
    if normalized:
        normalized = abs(float(np.vdot(amps, amps).real) - 1.0) <= settings.validation_tolerance
    return StateVector(n_qubits, amps, normalized=normalized)


def inner(a: StateVector, b: StateVector) -> complex:
    """
    Inner product <a|b>, conjugate-linear in the first argument.

    Raises:
        DimensionMismatchError: If the registers differ in size
    """
    if a.n_qubits != b.n_qubits:
        raise DimensionMismatchError(a.n_qubits, b.n_qubits)
    return complex(np.vdot(a.amps, b.amps))
