"""
Boundary pairs and schedules of history items.

A schedule is read in bra order: the amplitude of a resolved schedule
``[M1, M2, ..., Mm]`` between boundaries is ``<initial| M1 M2 ... Mm |final>``.
``Schedule.forward`` builds the schedule of a forward-time circuit by taking
adjoints, so that ``|amplitude|`` equals ``|<final| Fm ... F1 |initial>|``.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Union

from src.config import settings
from src.core.exceptions import DimensionMismatchError, ValidationError
from src.services.hilbert.operators import Projector, ProjectiveFamily, UnitaryOp
from src.services.hilbert.state import StateVector


@dataclass(frozen=True)
class Segment:
    """Unitary evolution between events."""

    op: UnitaryOp

    def dagger(self) -> "Segment":
        return Segment(self.op.dagger())

    @property
    def targets(self) -> tuple[int, ...]:
        return self.op.targets


@dataclass(frozen=True)
class Event:
    """An open measurement decision: one outcome per family member."""

    family: ProjectiveFamily

    def dagger(self) -> "Event":
        return self

    @property
    def targets(self) -> tuple[int, ...]:
        return self.family.targets


@dataclass(frozen=True)
class FixedProjection:
    """A measurement decision already fixed to one projector."""

    projector: Projector

    def dagger(self) -> "FixedProjection":
        return self

    @property
    def targets(self) -> tuple[int, ...]:
        return self.projector.targets


ScheduleItem = Union[Segment, Event, FixedProjection]


def as_item(item: "ScheduleItem | UnitaryOp | Projector | ProjectiveFamily") -> ScheduleItem:
    """Wrap bare operators into schedule items."""
    if isinstance(item, (Segment, Event, FixedProjection)):
        return item
    if isinstance(item, UnitaryOp):
        return Segment(item)
    if isinstance(item, Projector):
        return FixedProjection(item)
    if isinstance(item, ProjectiveFamily):
        return Event(item)
    raise ValidationError(f"Unsupported schedule item: {type(item).__name__}")


@dataclass(frozen=True)
class Schedule:
    """Ordered history items in bra order."""

    items: tuple[ScheduleItem, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", tuple(as_item(i) for i in self.items))

    @classmethod
    def of(cls, *items: "ScheduleItem | UnitaryOp | Projector | ProjectiveFamily") -> "Schedule":
        return cls(tuple(items))

    @classmethod
    def forward(cls, items: Iterable["ScheduleItem | UnitaryOp | Projector | ProjectiveFamily"]) -> "Schedule":
        """Schedule for a circuit written in forward time order (adjoints every item)."""
        return cls(tuple(as_item(i).dagger() for i in items))

    def __len__(self) -> int:
        return len(self.items)

    def __add__(self, other: "Schedule") -> "Schedule":
        return Schedule(self.items + other.items)

    @property
    def events(self) -> list[tuple[int, Event]]:
        """Open events with their positions in the schedule."""
        return [(i, item) for i, item in enumerate(self.items) if isinstance(item, Event)]

    @property
    def is_resolved(self) -> bool:
        return not any(isinstance(item, Event) for item in self.items)

    @property
    def is_unitary(self) -> bool:
        return all(isinstance(item, Segment) for item in self.items)

    def max_target(self) -> int:
        return max((max(item.targets, default=-1) for item in self.items), default=-1)

    def reversed(self) -> "Schedule":
        """Time-reversed schedule: adjoint items in reverse order."""
        return Schedule(tuple(item.dagger() for item in reversed(self.items)))

    def resolve(self, outcomes: Sequence[int]) -> "Schedule":
        """
        Replace the open events with the chosen family members.

        Args:
            outcomes: One member index per open event, in schedule order
        """
        events = self.events
        if len(outcomes) != len(events):
            raise ValidationError(
                f"Need {len(events)} outcomes, got {len(outcomes)}",
            )
        items = list(self.items)
        for (pos, event), k in zip(events, outcomes):
            items[pos] = FixedProjection(event.family.members[k])
        return Schedule(tuple(items))


@dataclass(frozen=True)
class BoundaryPair:
    """Normalized initial and final boundary states on the same register."""

    initial: StateVector
    final: StateVector

    def __post_init__(self) -> None:
        if self.initial.n_qubits != self.final.n_qubits:
            raise DimensionMismatchError(self.initial.n_qubits, self.final.n_qubits)
        tol = settings.validation_tolerance
        for name, state in (("initial", self.initial), ("final", self.final)):
            if abs(state.norm_squared() - 1.0) > tol:
                raise ValidationError(
                    f"Boundary state {name} is not normalized",
                    details={"norm_squared": state.norm_squared()},
                )

    @property
    def n_qubits(self) -> int:
        return self.initial.n_qubits

    def swapped(self) -> "BoundaryPair":
        return BoundaryPair(self.final, self.initial)

    def check_schedule(self, schedule: Schedule) -> None:
        """Raise if the schedule touches qubits outside the boundary register."""
        needed = schedule.max_target() + 1
        if needed > self.n_qubits:
            raise DimensionMismatchError(self.n_qubits, needed, reason="schedule targets")


@dataclass(frozen=True)
class HistoryChain:
    """One outcome per open event, in order, with the chain amplitude."""

    choices: tuple[tuple[int, str], ...]
    amplitude: complex

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for _, label in self.choices)

    @property
    def key(self) -> str:
        return "/".join(self.labels)
