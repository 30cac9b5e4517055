"""
Two antennas facing each other across a focusing mirror.

Register (6 qubits):
    0: antenna A excited (will emit / has absorbed)
    1: antenna B excited
    2-3: photon number of field mode p, the positive-interference point
    4-5: photon number of field mode q, its orthogonal complement

The mirror is a lossless 50/50 coupler, p = (a_A + a_B)/sqrt(2) and
q = (a_A - a_B)/sqrt(2), where a_A and a_B are the modes the antennas radiate
into. In-phase emission therefore lands entirely on p. When both antennas emit,
the two photons bunch into (|2_p> - |2_q>)/sqrt(2); photon numbers up to two
per mode are kept so that term is represented exactly.

Emitters start in sqrt(1 - eps^2)|0> + eps e^{i phase}|1>, with the relative
phase phi on B. The absorbers at the final boundary are prepared the same way
with a fixed reflection phase pi on B; for matched amplitudes the returning
single-photon wave lies in q, so darkness at p acts through the two-photon
component only.
"""

import functools
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from src.core.exceptions import PerturbativeRangeError
from src.core.logging import get_logger
from src.services.boundary.engine import chain_distribution
from src.services.boundary.schedule import BoundaryPair, Event, FixedProjection, Schedule, Segment
from src.services.hilbert.gates import ket_projector
from src.services.hilbert.operators import ProjectiveFamily, UnitaryOp
from src.services.hilbert.state import StateVector, product_state, zero_state
from src.services.macro.phases import phase_samples
from src.services.sampling.parallel import Threads
from src.services.sampling.statistics import mean_and_stderr, power_law_exponent

logger = get_logger(__name__)

FLAG_A, FLAG_B = 0, 1
MODE_P = (2, 3)
MODE_Q = (4, 5)
N_QUBITS = 6

EMITTED = "emitted"
NOT_EMITTED = "not_emitted"

# the absorbers' fixed relative phase
REFLECTION_PHASE = np.pi


@dataclass(frozen=True)
class AntennaConfig:
    """
    Emission amplitudes, relative phase handling and conditioning.

    ``average_samples`` switches from the fixed phase ``phi`` to an average over
    that many uniform random phases.
    """

    epsilon_a: float = 0.1
    epsilon_b: float = 0.1
    phi: float = 0.0
    average_samples: Optional[int] = None
    conditioning: Literal["none", "dark"] = "dark"
    seed: int = 0

    def __post_init__(self) -> None:
        for eps in (self.epsilon_a, self.epsilon_b):
            if eps < 0.0 or eps**2 > 0.25:
                raise PerturbativeRangeError(eps)


@dataclass
class AntennaResult:
    p_emit_unconditioned: float
    p_emit_conditioned: float
    ratio: float
    ratio_stderr: float = 0.0


def fock_index(a: int, b: int, n_p: int, n_q: int) -> int:
    """Basis index for antenna flags ``a``, ``b`` and photon numbers ``n_p``, ``n_q``."""
    return a | (b << FLAG_B) | (n_p << MODE_P[0]) | (n_q << MODE_Q[0])


def _ket(*entries: tuple[tuple[int, int, int, int], complex]) -> np.ndarray:
    vec = np.zeros(1 << N_QUBITS, dtype=np.complex128)
    for config, amp in entries:
        vec[fock_index(*config)] += amp
    return vec


def _coupler_map() -> list[tuple[np.ndarray, np.ndarray]]:
    r = 1.0 / np.sqrt(2.0)
    return [
        (_ket(((1, 0, 0, 0), 1.0)), _ket(((0, 0, 1, 0), r), ((0, 0, 0, 1), r))),
        (_ket(((0, 1, 0, 0), 1.0)), _ket(((0, 0, 1, 0), r), ((0, 0, 0, 1), -r))),
        (_ket(((1, 1, 0, 0), 1.0)), _ket(((0, 0, 2, 0), r), ((0, 0, 0, 2), -r))),
    ]


@functools.lru_cache(maxsize=1)
def coupler_unitary() -> UnitaryOp:
    """
    Exchange between antenna excitations and the mirror modes.

    Maps each excited configuration with an empty field onto its radiated
    photon state and back; every other basis state is left alone. The matrix
    is Hermitian, so the same operator serves as emission and, read backwards,
    as absorption.
    """
    dim = 1 << N_QUBITS
    isometry = np.zeros((dim, dim), dtype=np.complex128)
    untouched = np.eye(dim, dtype=np.complex128)
    for source, image in _coupler_map():
        isometry += np.outer(image, source.conj())
        untouched -= np.outer(source, source.conj()) + np.outer(image, image.conj())
    return UnitaryOp(isometry + isometry.conj().T + untouched, tuple(range(N_QUBITS)), "mirror")


def _flag(eps: float, phase: float = 0.0) -> StateVector:
    return StateVector(1, [np.sqrt(1.0 - eps**2), eps * np.exp(1j * phase)], normalized=True)


def antenna_boundaries(cfg: AntennaConfig, phi: float) -> BoundaryPair:
    field = zero_state(4)
    initial = product_state([_flag(cfg.epsilon_a), _flag(cfg.epsilon_b, phi), field])
    final = product_state([_flag(cfg.epsilon_a), _flag(cfg.epsilon_b, REFLECTION_PHASE), field])
    return BoundaryPair(initial, final)


@functools.lru_cache(maxsize=2)
def antenna_schedule(dark: bool) -> Schedule:
    """Forward-time schedule: emission decision on A, emission, optional dark mirror point, absorption."""
    excited = ket_projector(1, (FLAG_A,))
    items = [
        Event(ProjectiveFamily.binary(excited, (EMITTED, NOT_EMITTED))),
        Segment(coupler_unitary()),
    ]
    if dark:
        items.append(FixedProjection(ket_projector(0, MODE_P)))
    items.append(Segment(coupler_unitary()))
    return Schedule.forward(items)


def point_mode_lit(cfg: AntennaConfig, phi: float) -> float:
    """Born probability that mode p holds at least one photon right after emission."""
    initial = antenna_boundaries(cfg, phi).initial
    radiated = coupler_unitary().matrix @ initial.amps
    lit = np.array([((idx >> MODE_P[0]) & 0b11) != 0 for idx in range(1 << N_QUBITS)])
    return float(np.sum(np.abs(radiated[lit]) ** 2))


def emission_probability(cfg: AntennaConfig, phi: float, dark: bool) -> float:
    """Two-boundary probability that antenna A emitted."""
    dist = chain_distribution(antenna_boundaries(cfg, phi), antenna_schedule(dark))
    return next(p for chain, p in dist if chain.labels == (EMITTED,))


def _ratio(conditioned: float, unconditioned: float) -> float:
    # a silent antenna A stays silent under any conditioning
    return conditioned / unconditioned if unconditioned > 0.0 else 1.0


def enhancement_ratio(cfg: AntennaConfig, phi: float) -> float:
    if cfg.conditioning == "none":
        return 1.0
    return _ratio(emission_probability(cfg, phi, True), emission_probability(cfg, phi, False))


def _fixed(cfg: AntennaConfig, phi: float) -> AntennaResult:
    unconditioned = emission_probability(cfg, phi, False)
    conditioned = (
        emission_probability(cfg, phi, True) if cfg.conditioning == "dark" else unconditioned
    )
    return AntennaResult(unconditioned, conditioned, _ratio(conditioned, unconditioned))


def _row(cfg: AntennaConfig, phi: float) -> tuple[float, float, float]:
    result = _fixed(cfg, phi)
    return result.p_emit_unconditioned, result.p_emit_conditioned, result.ratio


def antenna_experiment(cfg: AntennaConfig, threads: Threads = None) -> AntennaResult:
    """
    Emission probability of antenna A with and without a dark positive-interference point.

    With matched amplitudes and a fixed phase the enhancement ratio deviates
    from 1 at second order in the emission amplitude, with a leading cos(phi)
    term carried by the bunched two-photon component. Averaged over random
    phases the deviation washes out.
    """
    if cfg.average_samples is None:
        result = _fixed(cfg, cfg.phi)
        logger.debug("Antenna experiment", phi=cfg.phi, ratio=result.ratio)
        return result

    M = cfg.average_samples
    rows = phase_samples(functools.partial(_row, cfg), M, cfg.seed, threads)
    ratio_mean, ratio_stderr = mean_and_stderr(rows[:, 2])
    logger.info("Phase-averaged antenna experiment", samples=M, ratio=ratio_mean, stderr=ratio_stderr)
    return AntennaResult(float(rows[:, 0].mean()), float(rows[:, 1].mean()), ratio_mean, ratio_stderr)


@dataclass
class AntennaScaling:
    epsilons: list[float]
    deviations: list[float]
    exponent: float


def antenna_scaling(
    epsilons: Sequence[float] = (0.05, 0.1, 0.2),
    phi: float = 0.0,
) -> AntennaScaling:
    """|ratio - 1| at fixed phase for several emission amplitudes and its power-law exponent."""
    deviations = [
        abs(enhancement_ratio(AntennaConfig(eps, eps, phi), phi) - 1.0) for eps in epsilons
    ]
    return AntennaScaling(list(epsilons), deviations, power_law_exponent(epsilons, deviations))


def phase_curve(cfg: AntennaConfig, phis: Sequence[float]) -> np.ndarray:
    """Enhancement ratio across a grid of fixed phases."""
    return np.array([enhancement_ratio(cfg, float(phi)) for phi in phis])
