"""Macroscopic transition rules: optical mode networks and the two-antenna experiment."""

from src.services.macro.antenna import AntennaConfig, AntennaResult, antenna_experiment, antenna_scaling
from src.services.macro.network import (
    Beamsplitter,
    Block,
    ModeNetwork,
    ModeUnitary,
    PhaseShift,
    mach_zehnder,
    run_network,
    single_photon,
)
from src.services.macro.phases import PhaseAverage, phase_average

__all__ = [
    "AntennaConfig",
    "AntennaResult",
    "Beamsplitter",
    "Block",
    "ModeNetwork",
    "ModeUnitary",
    "PhaseAverage",
    "PhaseShift",
    "antenna_experiment",
    "antenna_scaling",
    "mach_zehnder",
    "phase_average",
    "run_network",
    "single_photon",
]
