"""
Random final-boundary ensembles.

Samples are pure functions of (master seed, sample index).
"""

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

import numpy as np

from src.core.exceptions import ValidationError
from src.services.hilbert.state import StateVector, check_capacity, product_state
from src.services.sampling.seeding import sample_rng

EnsembleKind = Literal["haar", "product"]


@dataclass(frozen=True)
class FinalEnsemble:
    """
    Distribution of normalized final states on ``n_qubits`` qubits.

    ``haar`` is the unitarily invariant distribution over the full space;
    ``product`` draws every qubit independently with a Haar-random direction
    and a uniform random phase.
    """

    kind: EnsembleKind
    n_qubits: int
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("haar", "product"):
            raise ValidationError(f"Unknown ensemble kind {self.kind!r}")
        if self.n_qubits < 1:
            raise ValidationError("Ensemble needs at least one qubit")
        check_capacity(self.n_qubits)

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits


def _complex_gaussian(rng: np.random.Generator, size: int) -> np.ndarray:
    return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / np.sqrt(2.0)


def _product_factors(rng: np.random.Generator, n_qubits: int) -> np.ndarray:
    # row q is the single-qubit state of qubit q
    directions = _complex_gaussian(rng, 2 * n_qubits).reshape(n_qubits, 2)
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    phases = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, n_qubits))
    return directions * phases[:, None]


def sample_final(e: FinalEnsemble, index: int) -> StateVector:
    """
    Draw sample ``index`` of the ensemble.

    Returns:
        Normalized StateVector; bitwise identical for repeated calls
    """
    rng = sample_rng(e.seed, index)
    if e.kind == "haar":
        z = _complex_gaussian(rng, e.dim)
        return StateVector(e.n_qubits, z / np.linalg.norm(z), normalized=True)
    factors = _product_factors(rng, e.n_qubits)
    return product_state([StateVector(1, f, normalized=True) for f in factors])


def sample_components(e: FinalEnsemble, index: int, basis_indices: Sequence[int]) -> np.ndarray:
    """
    Selected amplitudes of sample ``index`` without building the product state.

    Draws the same random numbers as ``sample_final``; for the haar ensemble the
    full vector is still needed for the norm.
    """
    rng = sample_rng(e.seed, index)
    basis_indices = np.asarray(basis_indices, dtype=np.int64)
    if e.kind == "haar":
        z = _complex_gaussian(rng, e.dim)
        return z[basis_indices] / np.linalg.norm(z)
    factors = _product_factors(rng, e.n_qubits)
    bits = (basis_indices[:, None] >> np.arange(e.n_qubits)[None, :]) & 1
    picked = factors[np.arange(e.n_qubits)[None, :], bits]
    return np.prod(picked, axis=1)
