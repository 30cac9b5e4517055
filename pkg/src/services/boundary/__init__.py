"""Two-boundary (pre- and post-selected) amplitude engine."""

from src.services.boundary.engine import (
    abl_amplitudes,
    abl_distribution,
    chain_distribution,
    defer_projection,
    forward_distribution,
    open_final_distribution,
    quantum_jump,
    two_boundary_amplitude,
)
from src.services.boundary.schedule import (
    BoundaryPair,
    Event,
    FixedProjection,
    HistoryChain,
    Schedule,
    Segment,
)

__all__ = [
    "BoundaryPair",
    "Event",
    "FixedProjection",
    "HistoryChain",
    "Schedule",
    "Segment",
    "abl_amplitudes",
    "abl_distribution",
    "chain_distribution",
    "defer_projection",
    "forward_distribution",
    "open_final_distribution",
    "quantum_jump",
    "two_boundary_amplitude",
]
