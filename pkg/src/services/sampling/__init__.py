"""Random final boundaries and Born-rule emergence by amplitude dominance."""

from src.services.sampling.dominance import (
    CrunchToyConfig,
    DominanceReport,
    born_emergence,
    branch_amplitudes,
    dominance_gap_stats,
    select_dominant,
)
from src.services.sampling.ensembles import FinalEnsemble, sample_components, sample_final
from src.services.sampling.seeding import derive_seed, splitmix64

__all__ = [
    "CrunchToyConfig",
    "DominanceReport",
    "FinalEnsemble",
    "born_emergence",
    "branch_amplitudes",
    "derive_seed",
    "dominance_gap_stats",
    "sample_components",
    "sample_final",
    "select_dominant",
    "splitmix64",
]
