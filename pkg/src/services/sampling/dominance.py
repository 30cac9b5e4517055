"""
Branch dominance over random final boundaries.

Toy model of a spin prepared at angle ``theta`` to the measured axis whose
up/down decision is recorded in ``w`` witnesses. Qubit 0 is the spin (up = |0>),
qubits 1..w are the witnesses. The up branch carries the readout pattern
(up, 1...1) and the down branch (down, 0...0), so the two branches stay
orthogonal for every theta.
"""

import functools
import time
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np

from src.config import settings
from src.core.exceptions import (
    BothZeroError,
    DimensionMismatchError,
    InsufficientWitnessesError,
    ValidationError,
)
from src.core.logging import get_logger
from src.services.hilbert.state import StateVector
from src.services.sampling.ensembles import EnsembleKind, FinalEnsemble, sample_components
from src.services.sampling.parallel import Threads, map_chunks

logger = get_logger(__name__)

Winner = Literal["up", "down"]

WINNER_DOWN = 0
WINNER_UP = 1
WINNER_NONE = -1


@dataclass(frozen=True)
class CrunchToyConfig:
    """Spin angle, witness count, sample count, ensemble kind and master seed."""

    theta: float
    w: int
    N: int
    ensemble: EnsembleKind = "haar"
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta <= np.pi + 1e-12:
            raise ValidationError(f"theta={self.theta} outside [0, pi]")
        if self.w < 0:
            raise ValidationError(f"Witness count must be non-negative, got {self.w}")
        if self.N < 1:
            raise ValidationError(f"Sample count must be positive, got {self.N}")

    @property
    def n_qubits(self) -> int:
        return 1 + self.w

    @property
    def final_ensemble(self) -> FinalEnsemble:
        return FinalEnsemble(self.ensemble, self.n_qubits, self.seed)

    @property
    def up_index(self) -> int:
        # (up, 1...1): witnesses on bits 1..w set, spin bit clear
        return (1 << (self.w + 1)) - 2

    @property
    def down_index(self) -> int:
        return 1

    @property
    def expected_freq_up(self) -> float:
        return float(np.cos(self.theta / 2.0) ** 2)


@dataclass
class DominanceReport:
    """Tallies and per-sample values of a dominance run, in sample order."""

    config: CrunchToyConfig
    up_count: int
    down_count: int
    ties: int
    both_zero: int
    one_sided: int
    log10_amp_up: np.ndarray = field(repr=False)
    log10_amp_down: np.ndarray = field(repr=False)
    winners: np.ndarray = field(repr=False)
    elapsed: float = 0.0

    @property
    def decided(self) -> int:
        return self.up_count + self.down_count

    @property
    def freq_up(self) -> float:
        return self.up_count / self.decided if self.decided else float("nan")

    @property
    def log10_gaps(self) -> np.ndarray:
        """log10|A_up/A_down| for samples where both amplitudes are nonzero."""
        finite = np.isfinite(self.log10_amp_up) & np.isfinite(self.log10_amp_down)
        return (self.log10_amp_up - self.log10_amp_down)[finite]

    @property
    def spread(self) -> Optional[float]:
        gaps = self.log10_gaps
        if gaps.size < 2:
            return None
        return float(gaps.std(ddof=1))


def _spin_weights(theta: float) -> tuple[float, float]:
    return float(np.cos(theta / 2.0)), float(np.sin(theta / 2.0))


def branch_amplitudes(c: CrunchToyConfig, final: StateVector) -> tuple[complex, complex]:
    """
    Matched amplitudes of the up and down branches against a final boundary.

    A_up = cos(theta/2) <up,1...1|final>, A_down = sin(theta/2) <down,0...0|final>.

    Raises:
        DimensionMismatchError: If final is not a (1 + w)-qubit state
    """
    if final.n_qubits != c.n_qubits:
        raise DimensionMismatchError(c.n_qubits, final.n_qubits)
    cos_half, sin_half = _spin_weights(c.theta)
    # <basis|final> is the plain component
    return (
        complex(cos_half * final.amps[c.up_index]),
        complex(sin_half * final.amps[c.down_index]),
    )


def is_tie(a_up: complex, a_down: complex) -> bool:
    return abs(abs(a_up) - abs(a_down)) < settings.tie_threshold


def select_dominant(a_up: complex, a_down: complex) -> Winner:
    """
    The branch with the larger matched amplitude; exact ties go to up.

    Raises:
        BothZeroError: If both magnitudes are below the tie threshold
    """
    threshold = settings.tie_threshold
    if abs(a_up) < threshold and abs(a_down) < threshold:
        raise BothZeroError(a_up, a_down)
    if is_tie(a_up, a_down):
        return "up"
    return "up" if abs(a_up) > abs(a_down) else "down"


def _log10_abs(values: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log10(np.abs(values))


def _evaluate_chunk(c: CrunchToyConfig, chunk: range) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    ensemble = c.final_ensemble
    cos_half, sin_half = _spin_weights(c.theta)
    picks = [c.up_index, c.down_index]
    up = np.empty(len(chunk), dtype=np.complex128)
    down = np.empty(len(chunk), dtype=np.complex128)
    winners = np.empty(len(chunk), dtype=np.int8)
    ties = np.zeros(len(chunk), dtype=bool)
    for k, index in enumerate(chunk):
        comp = sample_components(ensemble, index, picks)
        a_up, a_down = cos_half * comp[0], sin_half * comp[1]
        up[k], down[k] = a_up, a_down
        try:
            winners[k] = WINNER_UP if select_dominant(a_up, a_down) == "up" else WINNER_DOWN
            ties[k] = is_tie(a_up, a_down)
        except BothZeroError:
            winners[k] = WINNER_NONE
    return up, down, winners, ties


def _run(c: CrunchToyConfig, threads: Threads) -> DominanceReport:
    start = time.perf_counter()
    parts = map_chunks(functools.partial(_evaluate_chunk, c), c.N, threads)
    up = np.concatenate([p[0] for p in parts])
    down = np.concatenate([p[1] for p in parts])
    winners = np.concatenate([p[2] for p in parts])
    ties = np.concatenate([p[3] for p in parts])
    one_sided = int(np.count_nonzero((np.abs(up) == 0.0) ^ (np.abs(down) == 0.0)))
    report = DominanceReport(
        config=c,
        up_count=int(np.count_nonzero(winners == WINNER_UP)),
        down_count=int(np.count_nonzero(winners == WINNER_DOWN)),
        ties=int(np.count_nonzero(ties)),
        both_zero=int(np.count_nonzero(winners == WINNER_NONE)),
        one_sided=one_sided,
        log10_amp_up=_log10_abs(up),
        log10_amp_down=_log10_abs(down),
        winners=winners,
        elapsed=time.perf_counter() - start,
    )
    if report.both_zero:
        logger.warning("Samples with both amplitudes zero excluded", count=report.both_zero)
    return report


def born_emergence(c: CrunchToyConfig, threads: Threads = None) -> DominanceReport:
    """
    Fraction of random final boundaries in which the up branch dominates.

    For the haar ensemble this approaches cos^2(theta/2).

    Raises:
        InsufficientWitnessesError: If w = 0
    """
    if c.w < 1:
        raise InsufficientWitnessesError(c.w, 1)
    logger.info("Born emergence run", theta=c.theta, w=c.w, N=c.N, ensemble=c.ensemble, seed=c.seed)
    report = _run(c, threads)
    logger.info("Born emergence done", freq_up=report.freq_up, ties=report.ties, elapsed=report.elapsed)
    return report


def dominance_gap_stats(c: CrunchToyConfig, threads: Threads = None) -> DominanceReport:
    """
    Spread of log10|A_up/A_down| under the product ensemble.

    The log-magnitudes are sums of independent per-qubit terms, so the spread
    grows like the square root of the witness count. At theta = 0 every sample
    is one-sided and the spread is None.

    Raises:
        InsufficientWitnessesError: If w < 2
        ValidationError: If the ensemble is not the product ensemble
    """
    if c.w < 2:
        raise InsufficientWitnessesError(c.w, 2)
    if c.ensemble != "product":
        raise ValidationError("Dominance gap statistics use the product ensemble")
    logger.info("Dominance gap run", theta=c.theta, w=c.w, N=c.N, seed=c.seed)
    return _run(c, threads)
