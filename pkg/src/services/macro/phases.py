"""
Averaging over uncontrolled relative phases.
"""

import functools
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from src.core.exceptions import ValidationError
from src.services.sampling.parallel import Threads, map_chunks
from src.services.sampling.seeding import sample_rng
from src.services.sampling.statistics import mean_and_stderr


@dataclass
class PhaseAverage:
    mean: float
    stderr: float
    samples: int
    seed: int


def sample_phase(seed: int, index: int) -> float:
    """Uniform phase in [0, 2 pi) for sample ``index``."""
    return float(sample_rng(seed, index).uniform(0.0, 2.0 * np.pi))


def _evaluate_phases(f: Callable[[float], object], seed: int, chunk: range) -> np.ndarray:
    return np.array([f(sample_phase(seed, k)) for k in chunk], dtype=float)


def phase_samples(
    f: Callable[[float], object],
    M: int,
    seed: int = 0,
    threads: Threads = None,
) -> np.ndarray:
    """
    Values of f at M seeded uniform phases, in sample order.

    ``f`` may return a scalar or a fixed-length sequence; the result then has
    one row per phase.
    """
    if M < 2:
        raise ValidationError(f"Phase average needs at least two samples, got {M}")
    return np.concatenate(map_chunks(functools.partial(_evaluate_phases, f, seed), M, threads))


def phase_average(
    f: Callable[[float], float],
    M: int,
    seed: int = 0,
    threads: Threads = None,
) -> PhaseAverage:
    """
    Mean and standard error of f(phi) over M uniform random phases.

    Raises:
        ValidationError: If M < 2
    """
    mean, stderr = mean_and_stderr(phase_samples(f, M, seed, threads))
    return PhaseAverage(mean, stderr, M, seed)
