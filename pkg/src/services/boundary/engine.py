"""
Two-boundary engine: amplitudes, ABL distributions and outcome-chain
enumeration for histories pinned between an initial and a final state.
"""

import math
from typing import Optional

import numpy as np

from src.config import settings
from src.core.exceptions import (
    CombinatorialLimitError,
    DimensionMismatchError,
    NullProjectionError,
    UnresolvedEventError,
    ValidationError,
    ZeroDenominatorError,
)
from src.core.logging import get_logger
from src.services.boundary.schedule import (
    BoundaryPair,
    Event,
    FixedProjection,
    HistoryChain,
    Schedule,
    ScheduleItem,
    Segment,
)
from src.services.hilbert.kernels import embed_matrix
from src.services.hilbert.operators import (
    Projector,
    ProjectiveFamily,
    UnitaryOp,
    apply_projector,
    apply_unitary,
)
from src.services.hilbert.state import StateVector, basis_state, inner

logger = get_logger(__name__)


def _bra_step(item: ScheduleItem, chi: StateVector) -> StateVector:
    # <chi| M  ==  (M^dagger |chi>)^dagger
    if isinstance(item, Segment):
        return apply_unitary(item.op.dagger(), chi)
    if isinstance(item, FixedProjection):
        return apply_projector(item.projector, chi)
    raise UnresolvedEventError(
        "Schedule contains an unresolved event",
        details={"family": list(item.family.labels)},
    )


def _ket_step(item: ScheduleItem, psi: StateVector) -> StateVector:
    if isinstance(item, Segment):
        return apply_unitary(item.op, psi)
    if isinstance(item, FixedProjection):
        return apply_projector(item.projector, psi)
    raise UnresolvedEventError("Schedule contains an unresolved event")


def propagate_bra(state: StateVector, items: tuple[ScheduleItem, ...]) -> StateVector:
    """Ket whose bra is <state| M1 ... Mm."""
    for item in items:
        state = _bra_step(item, state)
    return state


def propagate_ket(state: StateVector, items: tuple[ScheduleItem, ...]) -> StateVector:
    """M1 ... Mm |state>, applying Mm first."""
    for item in reversed(items):
        state = _ket_step(item, state)
    return state


def two_boundary_amplitude(b: BoundaryPair, s: Schedule) -> complex:
    """
    Amplitude <initial| M1 M2 ... Mm |final> of a fully resolved schedule.

    Args:
        b: Boundary pair
        s: Schedule with no open events

    Returns:
        Complex amplitude

    Raises:
        UnresolvedEventError: If the schedule still contains an Event
        DimensionMismatchError: If the schedule touches qubits outside the boundaries
    """
    if not s.is_resolved:
        raise UnresolvedEventError("two_boundary_amplitude needs a resolved schedule")
    b.check_schedule(s)
    chi = propagate_bra(b.initial, s.items)
    return inner(chi, b.final)


def _normalize_weights(weights: np.ndarray) -> np.ndarray:
    total = float(weights.sum())
    if total < settings.zero_denominator_threshold:
        raise ZeroDenominatorError(total)
    return weights / total


def abl_amplitudes(
    b: BoundaryPair,
    before: Schedule,
    family: ProjectiveFamily,
    after: Schedule,
) -> list[complex]:
    """Unnormalized outcome amplitudes <initial| before P_k after |final>."""
    if not (before.is_unitary and after.is_unitary):
        raise ValidationError("before/after schedules may contain only unitary segments")
    b.check_schedule(before + after + Schedule((Event(family),)))
    chi = propagate_bra(b.initial, before.items)
    phi = propagate_ket(b.final, after.items)
    return [inner(chi, apply_projector(p, phi)) for p in family.members]


def abl_distribution(
    b: BoundaryPair,
    before: Schedule,
    family: ProjectiveFamily,
    after: Schedule,
) -> list[tuple[str, float]]:
    """
    Conditional outcome probabilities of an intermediate event between two boundaries.

    P(k) = |<initial| before P_k after |final>|^2 / sum_j |<initial| before P_j after |final>|^2

    Args:
        b: Boundary pair
        before: Unitary segments between the initial boundary and the event
        family: Projective family of the event
        after: Unitary segments between the event and the final boundary

    Returns:
        (label, probability) pairs in family order

    Raises:
        ZeroDenominatorError: If every outcome amplitude vanishes
    """
    amps = np.array(abl_amplitudes(b, before, family, after))
    probs = _normalize_weights(np.abs(amps) ** 2)
    return list(zip(family.labels, (float(p) for p in probs)))


def forward_distribution(
    initial: StateVector,
    before: Schedule,
    family: ProjectiveFamily,
) -> list[tuple[str, float]]:
    """
    One-boundary Born distribution of an event with an open final boundary.

    Uses the same bra orientation as the engine, so ``Schedule.forward`` circuits
    evolve ``initial`` in ordinary forward time.
    """
    chi = propagate_bra(initial, before.items)
    weights = np.array([apply_projector(p, chi).norm_squared() for p in family.members])
    return list(zip(family.labels, (float(w) for w in _normalize_weights(weights))))


def open_final_distribution(
    initial: StateVector,
    before: Schedule,
    family: ProjectiveFamily,
    after: Schedule,
) -> list[tuple[str, float]]:
    """
    ABL probabilities averaged over an unknown final boundary.

    Each computational final state f is weighted by its own occurrence
    probability sum_k |amp_k(f)|^2. The average collapses to the Born
    distribution of the event.
    """
    n_qubits = initial.n_qubits
    totals = np.zeros(len(family))
    for index in range(1 << n_qubits):
        final = basis_state(n_qubits, index)
        amps = np.array(abl_amplitudes(BoundaryPair(initial, final), before, family, after))
        weights = np.abs(amps) ** 2
        occurrence = float(weights.sum())
        if occurrence < settings.zero_denominator_threshold:
            continue
        totals += occurrence * (weights / occurrence)
    return list(zip(family.labels, (float(t) for t in _normalize_weights(totals))))


def chain_distribution(
    b: BoundaryPair,
    s: Schedule,
    max_chains: Optional[int] = None,
) -> list[tuple[HistoryChain, float]]:
    """
    Enumerate every outcome chain of a multi-event schedule with its probability.

    Chains are produced in lexicographic order of member indices, event by event.

    Args:
        b: Boundary pair
        s: Schedule that may contain several open events
        max_chains: Enumeration cap (defaults to settings.max_chains)

    Returns:
        (HistoryChain, probability) pairs; probabilities sum to 1

    Raises:
        CombinatorialLimitError: If the chain count exceeds the cap
        ZeroDenominatorError: If every chain amplitude vanishes
    """
    b.check_schedule(s)
    events = s.events
    limit = max_chains if max_chains is not None else settings.max_chains
    count = math.prod(len(event.family) for _, event in events)
    if count > limit:
        raise CombinatorialLimitError(count, limit)

    # split into unitary/fixed blocks around the open events
    cuts = [pos for pos, _ in events]
    blocks: list[tuple[ScheduleItem, ...]] = []
    start = 0
    for pos in cuts:
        blocks.append(s.items[start:pos])
        start = pos + 1
    tail = s.items[start:]
    phi = propagate_ket(b.final, tail)

    logger.debug("Enumerating outcome chains", events=len(events), chains=count)

    chains: list[HistoryChain] = []

    def descend(level: int, chi: StateVector, choices: tuple[tuple[int, str], ...]) -> None:
        chi = propagate_bra(chi, blocks[level]) if level < len(blocks) else chi
        if level == len(events):
            chains.append(HistoryChain(choices, inner(chi, phi)))
            return
        family = events[level][1].family
        for k, projector in enumerate(family.members):
            descend(
                level + 1,
                apply_projector(projector, chi),
                choices + ((level, family.labels[k]),),
            )

    if not events:
        chi = propagate_bra(b.initial, s.items)
        chains.append(HistoryChain((), inner(chi, b.final)))
    else:
        descend(0, b.initial, ())

    weights = np.array([abs(c.amplitude) ** 2 for c in chains])
    probs = _normalize_weights(weights)
    return [(chain, float(p)) for chain, p in zip(chains, probs)]


def defer_projection(p: Projector, u2: UnitaryOp, n_qubits: Optional[int] = None) -> Projector:
    """
    Move a projection past a later unitary: P' = U2^dagger P U2.

    With this P', <initial| U1 P U2 |final> == <initial| U1 U2 P' |final>.
    The result acts on the union of both target sets (P's targets first).

    Args:
        p: Projector applied before u2
        u2: Later unitary segment
        n_qubits: Optional register size to check the targets against

    Returns:
        Deferred projector

    Raises:
        DimensionMismatchError: If a target lies outside ``n_qubits``
    """
    register = p.targets + tuple(t for t in u2.targets if t not in p.targets)
    if n_qubits is not None and max(register) >= n_qubits:
        raise DimensionMismatchError(n_qubits, max(register) + 1, reason="deferral targets")
    p_full = embed_matrix(p.matrix, p.targets, register)
    u_full = embed_matrix(u2.matrix, u2.targets, register)
    deferred = u_full.conj().T @ p_full @ u_full
    deferred = 0.5 * (deferred + deferred.conj().T)
    return Projector(deferred, register, f"{p.name}'")


def quantum_jump(psi: StateVector, p: Projector) -> StateVector:
    """
    Conventional collapse: P psi / ||P psi||.

    Raises:
        ValidationError: If psi is not normalized
        NullProjectionError: If ||P psi|| falls below the null threshold
    """
    if abs(psi.norm_squared() - 1.0) > settings.validation_tolerance:
        raise ValidationError("quantum_jump needs a normalized state")
    projected = apply_projector(p, psi)
    nrm = projected.norm()
    if nrm < settings.null_projection_threshold:
        raise NullProjectionError(nrm)
    return projected.normalize()
