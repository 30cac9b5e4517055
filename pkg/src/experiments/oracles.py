"""
Randomized instances and brute-force references shared by experiments and
the verification suite.

Engine functions are looked up on the module at call time so a replaced
implementation is what gets checked.
"""

import itertools

import numpy as np

from src.services.boundary import engine
from src.services.boundary.schedule import BoundaryPair, Event, FixedProjection, Schedule, Segment
from src.services.hilbert.gates import haar_state, haar_unitary, ket_projector, random_projector
from src.services.hilbert.operators import ProjectiveFamily, apply_projector
from src.services.hilbert.state import StateVector


def random_targets(n_qubits: int, max_arity: int, rng: np.random.Generator) -> tuple[int, ...]:
    k = int(rng.integers(1, min(max_arity, n_qubits) + 1))
    return tuple(int(t) for t in rng.choice(n_qubits, size=k, replace=False))


def random_boundaries(n_qubits: int, rng: np.random.Generator) -> BoundaryPair:
    return BoundaryPair(haar_state(n_qubits, rng), haar_state(n_qubits, rng))


def deferral_deviation(rng: np.random.Generator, max_qubits: int = 8) -> float:
    """
    |<i| U1 P U2 |f> - <i| U1 U2 P' |f>| for one random instance.
    """
    n = int(rng.integers(1, max_qubits + 1))
    b = random_boundaries(n, rng)
    u1 = haar_unitary(random_targets(n, 3, rng), rng)
    u2 = haar_unitary(random_targets(n, 3, rng), rng)
    p_targets = random_targets(n, 2, rng)
    p = random_projector(p_targets, int(rng.integers(1, (1 << len(p_targets)) + 1)), rng)
    deferred = engine.defer_projection(p, u2)
    direct = engine.two_boundary_amplitude(b, Schedule.of(u1, p, u2))
    moved = engine.two_boundary_amplitude(b, Schedule.of(u1, u2, deferred))
    return abs(direct - moved)


def brute_force_chains(b: BoundaryPair, s: Schedule) -> list[float]:
    """Chain probabilities by resolving every outcome tuple and evaluating it directly."""
    sizes = [len(event.family) for _, event in s.events]
    amps = [
        engine.two_boundary_amplitude(b, s.resolve(outcomes))
        for outcomes in itertools.product(*(range(k) for k in sizes))
    ]
    weights = np.abs(np.array(amps)) ** 2
    return list(weights / weights.sum())


def random_event_schedule(n_qubits: int, n_events: int, rng: np.random.Generator) -> Schedule:
    items: list = [Segment(haar_unitary(random_targets(n_qubits, 2, rng), rng))]
    for _ in range(n_events):
        targets = random_targets(n_qubits, 2, rng)
        items.append(Event(ProjectiveFamily.computational(targets)))
        items.append(Segment(haar_unitary(random_targets(n_qubits, 2, rng), rng)))
    return Schedule(tuple(items))


def chain_consistency_deviation(rng: np.random.Generator, n_qubits: int = 3, n_events: int = 2) -> float:
    """Largest gap between enumerated and brute-force chain probabilities."""
    b = random_boundaries(n_qubits, rng)
    s = random_event_schedule(n_qubits, n_events, rng)
    enumerated = [p for _, p in engine.chain_distribution(b, s)]
    return float(np.max(np.abs(np.array(enumerated) - np.array(brute_force_chains(b, s)))))


def abl_normalization_deviation(rng: np.random.Generator, n_qubits: int = 3) -> float:
    b = random_boundaries(n_qubits, rng)
    before = Schedule.of(haar_unitary(random_targets(n_qubits, 3, rng), rng))
    after = Schedule.of(haar_unitary(random_targets(n_qubits, 3, rng), rng))
    family = ProjectiveFamily.computational(random_targets(n_qubits, 2, rng))
    total = sum(p for _, p in engine.abl_distribution(b, before, family, after))
    return abs(total - 1.0)


def time_symmetry_deviation(rng: np.random.Generator, n_qubits: int = 4) -> float:
    """||<i|s|f>| - |<f|reversed(s)|i>|| for a random resolved schedule."""
    b = random_boundaries(n_qubits, rng)
    items: list = []
    for _ in range(4):
        items.append(Segment(haar_unitary(random_targets(n_qubits, 3, rng), rng)))
        targets = random_targets(n_qubits, 2, rng)
        items.append(FixedProjection(random_projector(targets, 1, rng)))
    s = Schedule(tuple(items))
    forward = engine.two_boundary_amplitude(b, s)
    backward = engine.two_boundary_amplitude(b.swapped(), s.reversed())
    return abs(abs(forward) - abs(backward))


def jump_consistency_deviation(rng: np.random.Generator, n_qubits: int = 3) -> float:
    """
    Realize one outcome by collapse, use the fully evolved post-jump state as
    final boundary, and compare the chain probability of that outcome with the
    jump formalism's probability of finding it again.

    The repeat probability ||P_k collapsed||^2 is identically 1, so the
    deviation is |p_chain - 1|: the realized outcome must be certain under the
    two boundaries. The pre-measurement Born probability p_k plays no part.
    """
    initial = haar_state(n_qubits, rng)
    u1 = haar_unitary(tuple(range(n_qubits)), rng)
    u2 = haar_unitary(random_targets(n_qubits, 3, rng), rng)
    family = ProjectiveFamily.computational([0])

    born = engine.forward_distribution(initial, Schedule.forward([u1]), family)
    k = int(rng.choice(len(family), p=np.array([p for _, p in born])))
    evolved = engine.propagate_ket(initial, (Segment(u1),))
    collapsed = engine.quantum_jump(evolved, family.members[k])
    final = engine.propagate_ket(collapsed, (Segment(u2),)).normalize()

    dist = engine.chain_distribution(
        BoundaryPair(initial, final), Schedule.forward([u1, Event(family), u2])
    )
    p_chain = dict((chain.labels[0], p) for chain, p in dist)[family.labels[k]]
    repeat = apply_projector(family.members[k], collapsed).norm_squared()
    return abs(p_chain - repeat)


def three_box_probability() -> float:
    """ABL probability of finding the particle in box 1."""
    initial = StateVector(2, np.array([0, 1, 1, 1]) / np.sqrt(3.0), normalized=True)
    final = StateVector(2, np.array([0, 1, 1, -1]) / np.sqrt(3.0), normalized=True)
    box = ket_projector(1, (0, 1))
    dist = engine.abl_distribution(
        BoundaryPair(initial, final),
        Schedule(),
        ProjectiveFamily.binary(box, ("box1", "elsewhere")),
        Schedule(),
    )
    return dict(dist)["box1"]
