"""
Linear optical mode networks in the single-excitation sector.

A state is a complex amplitude per mode; every element is an n x n unitary on
the mode space. Blocking a mode swaps its amplitude into a dedicated sink mode,
so probability is rerouted, never deleted.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from src.config import settings
from src.core.exceptions import ValidationError
from src.services.hilbert.gates import beamsplitter_matrix, haar_unitary_matrix
from src.services.hilbert.state import StateVector


def _check_modes(modes: Sequence[int], n_modes: int) -> None:
    if len(set(modes)) != len(modes) or any(m < 0 or m >= n_modes for m in modes):
        raise ValidationError(
            f"Invalid modes {tuple(modes)} for a {n_modes}-mode network",
            details={"modes": list(modes), "n_modes": n_modes},
        )


@dataclass(frozen=True)
class Beamsplitter:
    i: int
    j: int
    theta: float = np.pi / 4

    @property
    def modes(self) -> tuple[int, ...]:
        return (self.i, self.j)

    def local_matrix(self) -> np.ndarray:
        return beamsplitter_matrix(self.theta)


@dataclass(frozen=True)
class PhaseShift:
    i: int
    phi: float

    @property
    def modes(self) -> tuple[int, ...]:
        return (self.i,)

    def local_matrix(self) -> np.ndarray:
        return np.array([[np.exp(1j * self.phi)]])


@dataclass(frozen=True)
class Block:
    """Reroute mode ``i`` into ``sink`` (a swap)."""

    i: int
    sink: int

    @property
    def modes(self) -> tuple[int, ...]:
        return (self.i, self.sink)

    def local_matrix(self) -> np.ndarray:
        return np.array([[0, 1], [1, 0]], dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class ModeUnitary:
    """Arbitrary unitary coupling on a set of modes; checked at construction."""

    mode_list: tuple[int, ...]
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        mat = np.asarray(self.matrix, dtype=np.complex128)
        k = len(self.mode_list)
        if mat.shape != (k, k):
            raise ValidationError(f"Coupling on {k} modes needs a {k}x{k} matrix")
        deviation = float(np.max(np.abs(mat.conj().T @ mat - np.eye(k))))
        if deviation > settings.validation_tolerance:
            raise ValidationError("Network element is not unitary", details={"max_deviation": deviation})
        object.__setattr__(self, "mode_list", tuple(self.mode_list))
        object.__setattr__(self, "matrix", mat)

    @property
    def modes(self) -> tuple[int, ...]:
        return self.mode_list

    def local_matrix(self) -> np.ndarray:
        return self.matrix


Element = Union[Beamsplitter, PhaseShift, Block, ModeUnitary]


def element_matrix(element: Element, n_modes: int) -> np.ndarray:
    """The element as an n_modes x n_modes unitary."""
    modes = list(element.modes)
    full = np.eye(n_modes, dtype=np.complex128)
    full[np.ix_(modes, modes)] = element.local_matrix()
    return full


@dataclass(frozen=True, eq=False)
class ModeNetwork:
    """
    Ordered optical elements over ``n_modes`` modes.

    ``source`` holds the (possibly unnormalized) emission amplitude per mode; the
    remaining weight 1 - ||source||^2 is the no-emission (vacuum) amplitude.
    ``sinks`` are the modes reserved for blocked light.
    """

    n_modes: int
    elements: tuple[Element, ...] = ()
    source: Optional[np.ndarray] = field(default=None, repr=False)
    sinks: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "sinks", tuple(self.sinks))
        _check_modes(self.sinks, self.n_modes)
        for element in self.elements:
            _check_modes(element.modes, self.n_modes)
            if isinstance(element, Block) and element.sink not in self.sinks:
                raise ValidationError(f"Block targets mode {element.sink}, which is not a sink")
        if self.source is not None:
            source = np.asarray(self.source, dtype=np.complex128).reshape(-1)
            if source.shape[0] != self.n_modes:
                raise ValidationError("Source needs one amplitude per mode")
            if float(np.vdot(source, source).real) > 1.0 + settings.validation_tolerance:
                raise ValidationError("Source emission probability exceeds 1")
            object.__setattr__(self, "source", source)

    def then(self, *elements: Element) -> "ModeNetwork":
        """Same network with elements appended downstream."""
        return ModeNetwork(self.n_modes, self.elements + elements, self.source, self.sinks)

    def unitary(self) -> np.ndarray:
        u = np.eye(self.n_modes, dtype=np.complex128)
        for element in self.elements:
            u = element_matrix(element, self.n_modes) @ u
        return u


@dataclass
class NetworkOutput:
    mode_probabilities: np.ndarray
    vacuum: float = 0.0

    @property
    def emission(self) -> float:
        """Total probability that a photon entered the network."""
        return float(self.mode_probabilities.sum())

    @property
    def total(self) -> float:
        return self.emission + self.vacuum


def single_photon(n_modes: int, mode: int) -> StateVector:
    """One excitation in ``mode`` as a state over n_modes occupation qubits."""
    amps = np.zeros(1 << n_modes, dtype=np.complex128)
    amps[1 << mode] = 1.0
    return StateVector(n_modes, amps, normalized=True)


def mode_amplitudes(psi: StateVector) -> np.ndarray:
    """
    Per-mode amplitudes of a single-excitation occupation state.

    Raises:
        ValidationError: If psi is not normalized or has weight outside the single-excitation sector
    """
    one_hot = 1 << np.arange(psi.n_qubits)
    vector = psi.amps[one_hot]
    leaked = psi.norm_squared() - float(np.vdot(vector, vector).real)
    if leaked > settings.validation_tolerance:
        raise ValidationError(
            "Input is not in the single-excitation sector",
            details={"weight_outside": leaked},
        )
    if abs(psi.norm_squared() - 1.0) > settings.validation_tolerance:
        raise ValidationError("Network input must be normalized")
    return vector


def run_network(net: ModeNetwork, input: Optional[StateVector] = None) -> NetworkOutput:
    """
    Propagate one excitation through the network.

    Args:
        net: Mode network
        input: Single-excitation state over net.n_modes qubits; defaults to the
            network's own source amplitudes

    Returns:
        Output probability per mode plus the vacuum probability
    """
    if input is not None:
        if input.n_qubits != net.n_modes:
            raise ValidationError(f"Input has {input.n_qubits} modes, network has {net.n_modes}")
        vector = mode_amplitudes(input)
        vacuum = 0.0
    elif net.source is not None:
        vector = net.source
        vacuum = max(0.0, 1.0 - float(np.vdot(vector, vector).real))
    else:
        raise ValidationError("Network has no source and no input state")
    out = net.unitary() @ vector
    return NetworkOutput(np.abs(out) ** 2, vacuum)


def mach_zehnder(phi: float, block_forward: bool = False, block_arm: bool = False) -> ModeNetwork:
    """
    Balanced Mach-Zehnder on modes 0 and 1 with sink mode 2.

    Light enters mode 0; mode 1 is the forward port, lit with probability
    cos^2(phi / 2).
    """
    elements: list[Element] = [Beamsplitter(0, 1), PhaseShift(1, phi)]
    if block_arm:
        elements.append(Block(1, 2))
    elements.append(Beamsplitter(0, 1))
    if block_forward:
        elements.append(Block(1, 2))
    return ModeNetwork(3, tuple(elements), sinks=(2,))


def random_network(
    n_modes: int,
    n_elements: int,
    rng: np.random.Generator,
    n_sinks: int = 1,
) -> ModeNetwork:
    """Random beamsplitters, phases and couplings on the non-sink modes, with a random source."""
    if n_modes - n_sinks < 2:
        raise ValidationError("Need at least two working modes besides the sinks")
    working = n_modes - n_sinks
    elements: list[Element] = []
    for _ in range(n_elements):
        kind = rng.integers(3)
        i, j = (int(m) for m in rng.choice(working, size=2, replace=False))
        if kind == 0:
            elements.append(Beamsplitter(i, j, float(rng.uniform(0.0, np.pi))))
        elif kind == 1:
            elements.append(PhaseShift(i, float(rng.uniform(0.0, 2.0 * np.pi))))
        else:
            elements.append(ModeUnitary((i, j), haar_unitary_matrix(2, rng)))
    direction = rng.standard_normal(working) + 1j * rng.standard_normal(working)
    direction /= np.linalg.norm(direction)
    source = np.zeros(n_modes, dtype=np.complex128)
    source[:working] = np.sqrt(rng.uniform(0.05, 1.0)) * direction
    return ModeNetwork(n_modes, tuple(elements), source, tuple(range(working, n_modes)))


def modify_downstream(net: ModeNetwork, rng: np.random.Generator, n_changes: int = 3) -> ModeNetwork:
    """Append random blocks into the sinks plus extra phases and couplings after the existing elements."""
    working = [m for m in range(net.n_modes) if m not in net.sinks]
    extra: list[Element] = []
    for _ in range(n_changes):
        kind = rng.integers(3)
        i, j = (int(m) for m in rng.choice(working, size=2, replace=False))
        if kind == 0 and net.sinks:
            extra.append(Block(i, int(rng.choice(net.sinks))))
        elif kind == 1:
            extra.append(PhaseShift(i, float(rng.uniform(0.0, 2.0 * np.pi))))
        else:
            extra.append(Beamsplitter(i, j, float(rng.uniform(0.0, np.pi))))
    return net.then(*extra)


@dataclass
class RuleOneTrial:
    emission_before: float
    emission_after: float
    total_before: float
    total_after: float
    sink_after: float

    @property
    def emission_shift(self) -> float:
        return abs(self.emission_after - self.emission_before)


def rule_one_trial(rng: np.random.Generator, n_modes: int = 6, n_elements: int = 12) -> RuleOneTrial:
    """Emission probability of a random source before and after random downstream changes."""
    net = random_network(n_modes, n_elements, rng)
    before = run_network(net)
    changed = modify_downstream(net, rng)
    after = run_network(changed)
    sink = float(after.mode_probabilities[list(changed.sinks)].sum())
    return RuleOneTrial(before.emission, after.emission, before.total, after.total, sink)
