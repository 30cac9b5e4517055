"""
Measurement as unitary entanglement with witness qubits.

A decision on one system qubit is recorded by a controlled copy into a fresh
witness qubit. Branches are never collapsed; they become orthogonal because
their witness patterns differ.
"""

from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from src.config import settings
from src.core.exceptions import DepthLimitError, ValidationError, WitnessNotReadyError
from src.core.logging import get_logger
from src.services.boundary.engine import chain_distribution, quantum_jump
from src.services.boundary.schedule import BoundaryPair, Event, Schedule, ScheduleItem, Segment
from src.services.hilbert.gates import X, haar_unitary, ry, rz
from src.services.hilbert.kernels import qubit_marginals
from src.services.hilbert.operators import ProjectiveFamily, UnitaryOp, apply_unitary
from src.services.hilbert.state import StateVector, inner, zero_state

logger = get_logger(__name__)


@dataclass(frozen=True)
class WitnessLayout:
    """Which qubits are system, which are witnesses, and which decision uses which witness."""

    system_qubits: tuple[int, ...]
    witness_qubits: tuple[int, ...]
    assignments: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        witnesses = tuple(self.witness_qubits)
        if len(set(witnesses)) != len(witnesses):
            raise ValidationError("Witness qubits must be distinct", details={"witnesses": list(witnesses)})
        overlap = set(witnesses) & set(self.system_qubits)
        if overlap:
            raise ValidationError(
                "Witness qubits overlap the system",
                details={"overlap": sorted(overlap)},
            )
        assignments = dict(self.assignments) or dict(enumerate(witnesses))
        if any(w not in witnesses for w in assignments.values()):
            raise ValidationError("Decision assigned to an unknown witness")
        object.__setattr__(self, "witness_qubits", witnesses)
        object.__setattr__(self, "system_qubits", tuple(self.system_qubits))
        object.__setattr__(self, "assignments", assignments)

    def witness_for(self, decision: int) -> int:
        return self.assignments[decision]


@dataclass(frozen=True)
class Splitter:
    """One branching step: evolve, then record the outcome of ``basis`` into ``witness``."""

    unitary: UnitaryOp
    basis: ProjectiveFamily
    witness: int


def witness_unitary(basis: ProjectiveFamily, witness: int) -> UnitaryOp:
    """
    Controlled copy P_0 (x) I + P_1 (x) X on (system qubit, witness).

    Raises:
        ValidationError: If the family is not a two-outcome family on one qubit
    """
    if len(basis) != 2 or len(basis.targets) != 1:
        raise ValidationError(
            "Decisions are binary families on a single system qubit",
            details={"members": len(basis), "targets": list(basis.targets)},
        )
    system = basis.targets[0]
    if system == witness:
        raise ValidationError("Witness and system qubit coincide", details={"qubit": witness})
    p0, p1 = basis.members
    matrix = np.kron(np.eye(2), p0.matrix) + np.kron(X, p1.matrix)
    return UnitaryOp(matrix, (system, witness), f"record->{witness}")


def witness_excitation(psi: StateVector, witness: int) -> float:
    """Weight of the state on witness = |1>."""
    return float(qubit_marginals(psi.amps, psi.n_qubits, [witness])[1])


def record_decision(psi: StateVector, basis: ProjectiveFamily, w: int) -> StateVector:
    """
    Record which member of ``basis`` the system is in, without collapse.

    Args:
        psi: Register state with witness ``w`` in |0>
        basis: Two-member family on one system qubit
        w: Witness qubit

    Returns:
        sum_k (P_k psi) with witness w flipped to |k>

    Raises:
        WitnessNotReadyError: If the witness is not in |0>
    """
    excited = witness_excitation(psi, w)
    if excited > settings.validation_tolerance:
        raise WitnessNotReadyError(w, excited)
    return apply_unitary(witness_unitary(basis, w), psi)


def _label_of(index: int, depth: int) -> str:
    # character j is the outcome of decision j
    return "".join("1" if (index >> j) & 1 else "0" for j in range(depth))


def _index_of(label: str) -> int:
    return sum(1 << j for j, bit in enumerate(label) if bit == "1")


@dataclass(frozen=True, eq=False)
class DecisionTree:
    """
    Fully witnessed branching history.

    Leaves are the components of the evolved register state with one fixed
    witness pattern; they are materialized on demand.
    """

    initial: StateVector
    evolved: StateVector
    splitters: tuple[Splitter, ...]
    layout: WitnessLayout

    @property
    def depth(self) -> int:
        return len(self.splitters)

    def leaf_weights(self) -> np.ndarray:
        """||leaf||^2 for every leaf, indexed by the integer form of the label."""
        if not self.splitters:
            return np.array([self.evolved.norm_squared()])
        witnesses = [s.witness for s in self.splitters]
        return qubit_marginals(self.evolved.amps, self.evolved.n_qubits, witnesses)

    def leaf(self, label: str) -> StateVector:
        """Unnormalized leaf for a decision bitstring such as ``"010"``."""
        if len(label) != self.depth or set(label) - {"0", "1"}:
            raise ValidationError(f"Leaf label {label!r} does not match depth {self.depth}")
        indices = np.arange(self.evolved.dim)
        mask = np.ones(self.evolved.dim, dtype=bool)
        for splitter, bit in zip(self.splitters, label):
            mask &= ((indices >> splitter.witness) & 1) == int(bit)
        return StateVector(self.evolved.n_qubits, np.where(mask, self.evolved.amps, 0.0))

    def leaves(self) -> Iterator[tuple[str, StateVector]]:
        for index in range(1 << self.depth):
            label = _label_of(index, self.depth)
            yield label, self.leaf(label)

    def schedule(self) -> Schedule:
        """Forward-time schedule with an open witness readout event after every decision."""
        items: list[ScheduleItem] = []
        for splitter in self.splitters:
            items.append(Segment(splitter.unitary))
            items.append(Segment(witness_unitary(splitter.basis, splitter.witness)))
            items.append(Event(ProjectiveFamily.computational([splitter.witness])))
        return Schedule.forward(items)


def check_depth(depth: int) -> None:
    """
    Validate a decision tree depth.

    Raises:
        ValidationError: If depth is negative
        DepthLimitError: If depth exceeds settings.max_tree_depth
    """
    if depth < 0:
        raise ValidationError(f"Tree depth must be non-negative, got {depth}", details={"depth": depth})
    if depth > settings.max_tree_depth:
        raise DepthLimitError(depth, settings.max_tree_depth)


def build_decision_tree(initial: StateVector, splitters: Sequence[Splitter]) -> DecisionTree:
    """
    Apply every splitter and record each decision in its own witness.

    Args:
        initial: Register state with all splitter witnesses in |0>
        splitters: Ordered branching steps

    Returns:
        DecisionTree

    Raises:
        DepthLimitError: If more than settings.max_tree_depth splitters are given
        ValidationError: If a witness is reused or also acts as a system qubit
        WitnessNotReadyError: If a witness is not in |0> when its decision is recorded
    """
    splitters = tuple(splitters)
    check_depth(len(splitters))
    witnesses = tuple(s.witness for s in splitters)
    system = tuple(
        sorted({t for s in splitters for t in (*s.unitary.targets, *s.basis.targets)})
    )
    layout = WitnessLayout(system, witnesses, dict(enumerate(witnesses)))

    psi = initial
    for splitter in splitters:
        psi = apply_unitary(splitter.unitary, psi)
        psi = record_decision(psi, splitter.basis, splitter.witness)
    logger.debug("Decision tree built", depth=len(splitters), qubits=initial.n_qubits)
    return DecisionTree(initial, psi, splitters, layout)


def jump_history(initial: StateVector, splitters: Sequence[Splitter], label: str) -> StateVector:
    """
    The same history with conventional collapse after every decision.

    Each witness is still set to its outcome so the result lives on the same
    register as the tree leaves.
    """
    psi = initial
    for splitter, bit in zip(splitters, label):
        psi = apply_unitary(splitter.unitary, psi)
        psi = quantum_jump(psi, splitter.basis.members[int(bit)])
        if bit == "1":
            psi = apply_unitary(UnitaryOp(X, (splitter.witness,), "X"), psi)
    return psi


def _computational(qubit: int) -> ProjectiveFamily:
    return ProjectiveFamily.computational([qubit])


@dataclass
class OverlapDecayReport:
    """Overlap of the evolved state with every normalized leaf."""

    depth: int
    bias: float
    seed: int
    labels: list[str]
    overlaps: np.ndarray
    explicit: bool

    @property
    def squared(self) -> np.ndarray:
        return self.overlaps**2


def check_bias(bias: float) -> None:
    if not 0.0 <= bias <= 1.0:
        raise ValidationError(f"Bias {bias} is not a probability", details={"bias": bias})


def biased_splitters(depth: int, bias: float, seed: int, system: int = 0) -> list[Splitter]:
    """
    Splitters on one system qubit with witnesses ``system + 1 ...``.

    Each step applies a seeded random Rz phase and an Ry rotation that keeps the
    previous outcome with probability ``bias``.
    """
    check_depth(depth)
    check_bias(bias)
    rng = np.random.default_rng(seed)
    theta = 2.0 * np.arccos(np.sqrt(bias))
    splitters = []
    for j in range(depth):
        twist = rz(float(rng.uniform(0.0, 2.0 * np.pi)), system)
        rotate = ry(theta, system)
        step = UnitaryOp(rotate.matrix @ twist.matrix, (system,), "split")
        splitters.append(Splitter(step, _computational(system), system + 1 + j))
    return splitters


def overlap_decay(
    d: int,
    bias: float = 0.5,
    seed: int = 0,
    explicit: Optional[bool] = None,
) -> OverlapDecayReport:
    """
    Overlap |<evolved|leaf>| for every normalized leaf of a d-decision tree.

    Leaves with zero weight report 0. ``explicit`` forces leaf materialization
    and direct inner products (default for d <= 10); otherwise the overlap is
    read off the witness marginals, where it equals ||leaf||.

    Raises:
        ValidationError: If d is negative
        DepthLimitError: If d exceeds settings.max_tree_depth
    """
    check_depth(d)
    explicit = d <= 10 if explicit is None else explicit
    tree = build_decision_tree(zero_state(d + 1), biased_splitters(d, bias, seed))
    labels = [_label_of(index, d) for index in range(1 << d)]

    if explicit:
        overlaps = np.zeros(1 << d)
        for index, (label, leaf) in enumerate(tree.leaves()):
            nrm = leaf.norm()
            if nrm < settings.null_projection_threshold:
                continue
            overlaps[index] = abs(inner(tree.evolved, leaf)) / nrm
    else:
        overlaps = np.sqrt(tree.leaf_weights())

    logger.info("Overlap decay evaluated", depth=d, bias=bias, explicit=explicit)
    return OverlapDecayReport(d, bias, seed, labels, overlaps, explicit)


@dataclass
class PathUniquenessReport:
    depth: int
    seed: int
    chosen: str
    top_label: str
    top_probability: float
    support: int


def _random_tree(depth: int, rng: np.random.Generator) -> DecisionTree:
    check_depth(depth)
    splitters = [
        Splitter(haar_unitary((0,), rng), _computational(0), 1 + j) for j in range(depth)
    ]
    return build_decision_tree(zero_state(depth + 1), splitters)


def path_uniqueness(d: int, seed: int) -> PathUniquenessReport:
    """
    Use one exact leaf of a random witnessed tree as final boundary and
    enumerate the history chains: exactly one of them survives.
    """
    rng = np.random.default_rng(seed)
    tree = _random_tree(d, rng)
    weights = tree.leaf_weights()
    index = int(rng.choice(len(weights), p=weights / weights.sum()))
    chosen = _label_of(index, d)
    final = tree.leaf(chosen).normalize()

    dist = chain_distribution(BoundaryPair(tree.initial, final), tree.schedule())
    top_chain, top_p = max(dist, key=lambda item: item[1])
    support = sum(1 for _, p in dist if p > settings.identity_tolerance)
    return PathUniquenessReport(d, seed, chosen, "".join(top_chain.labels), top_p, support)


@dataclass
class CoarseBoundaryReport:
    """Chain probabilities for a final boundary that only fixes a set of leaves."""

    labels: list[str]
    probabilities: dict[str, float]
    expected: dict[str, float]


def coarse_boundary_chains(
    tree: DecisionTree,
    leaf_labels: Sequence[str],
    seed: int,
) -> CoarseBoundaryReport:
    """
    Final boundary = random-phase superposition of several normalized leaves.

    The chain distribution then spreads over exactly those leaves, weighted like
    the Born weights of the tree restricted to the set.

    Raises:
        ValidationError: If a chosen leaf has zero weight
    """
    rng = np.random.default_rng(seed)
    labels = list(dict.fromkeys(leaf_labels))
    weights = tree.leaf_weights()
    amps = np.zeros(tree.evolved.dim, dtype=np.complex128)
    for label in labels:
        leaf = tree.leaf(label)
        nrm = leaf.norm()
        if nrm < settings.null_projection_threshold:
            raise ValidationError(f"Leaf {label} has zero weight")
        amps += np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)) * leaf.amps / nrm
    final = StateVector(tree.evolved.n_qubits, amps).normalize()

    dist = chain_distribution(BoundaryPair(tree.initial, final), tree.schedule())
    probabilities = {
        "".join(chain.labels): p for chain, p in dist if p > settings.identity_tolerance
    }
    selected = np.array([weights[_index_of(label)] for label in labels])
    expected = dict(zip(labels, (float(x) for x in selected / selected.sum())))
    return CoarseBoundaryReport(labels, probabilities, expected)
