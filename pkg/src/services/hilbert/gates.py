"""
Named gate library and random operator helpers.
"""

import numpy as np

from src.services.hilbert.operators import Projector, UnitaryOp
from src.services.hilbert.state import StateVector

_SQRT2 = np.sqrt(2.0)

I2 = np.eye(2, dtype=np.complex128)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / _SQRT2
S = np.diag([1, 1j]).astype(np.complex128)
T = np.diag([1, np.exp(1j * np.pi / 4)]).astype(np.complex128)

# two-qubit matrices for targets (control, target): control is the low bit
CNOT = np.array(
    [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]],
    dtype=np.complex128,
)
CZ = np.diag([1, 1, 1, -1]).astype(np.complex128)
SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
    dtype=np.complex128,
)

_FIXED = {"I": I2, "X": X, "Y": Y, "Z": Z, "H": H, "S": S, "T": T}


def gate(name: str, *targets: int) -> UnitaryOp:
    """Named fixed gate (I, X, Y, Z, H, S, T, CNOT, CZ, SWAP) on the given targets."""
    upper = name.upper()
    if upper in _FIXED:
        return UnitaryOp(_FIXED[upper], targets, upper)
    two_qubit = {"CNOT": CNOT, "CZ": CZ, "SWAP": SWAP}
    if upper in two_qubit:
        return UnitaryOp(two_qubit[upper], targets, upper)
    raise KeyError(f"Unknown gate {name!r}")


def identity(*targets: int) -> UnitaryOp:
    return UnitaryOp(np.eye(1 << len(targets), dtype=np.complex128), targets, "I")


def phase(phi: float, target: int) -> UnitaryOp:
    return UnitaryOp(np.diag([1.0, np.exp(1j * phi)]), (target,), "phase")


def rx(theta: float, target: int) -> UnitaryOp:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return UnitaryOp(np.array([[c, -1j * s], [-1j * s, c]]), (target,), "Rx")


def ry(theta: float, target: int) -> UnitaryOp:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return UnitaryOp(np.array([[c, -s], [s, c]]), (target,), "Ry")


def rz(theta: float, target: int) -> UnitaryOp:
    return UnitaryOp(np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)]), (target,), "Rz")


def beamsplitter_matrix(theta: float) -> np.ndarray:
    """Symmetric two-mode coupler; theta = pi/4 is balanced."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, 1j * s], [1j * s, c]], dtype=np.complex128)


def haar_unitary_matrix(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix with phase fix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / _SQRT2
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def haar_unitary(targets: tuple[int, ...], rng: np.random.Generator) -> UnitaryOp:
    return UnitaryOp(haar_unitary_matrix(1 << len(targets), rng), targets, "Haar")


def random_projector(targets: tuple[int, ...], rank: int, rng: np.random.Generator) -> Projector:
    """Projector onto a Haar-random rank-``rank`` subspace of the target space."""
    basis = haar_unitary_matrix(1 << len(targets), rng)[:, :rank]
    mat = basis @ basis.conj().T
    # symmetrize away rounding so the projector checks see exact hermiticity
    mat = 0.5 * (mat + mat.conj().T)
    return Projector(mat, targets, f"rank{rank}")


def ket_projector(index: int, targets: tuple[int, ...]) -> Projector:
    """Projector onto the computational pattern ``index`` of ``targets``."""
    dim = 1 << len(targets)
    mat = np.zeros((dim, dim), dtype=np.complex128)
    mat[index, index] = 1.0
    return Projector(mat, targets, f"|{index}><{index}|")


def haar_state(n_qubits: int, rng: np.random.Generator) -> StateVector:
    """Haar-random normalized state from a complex Gaussian vector."""
    dim = 1 << n_qubits
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return StateVector(n_qubits, z / np.linalg.norm(z), normalized=True)
