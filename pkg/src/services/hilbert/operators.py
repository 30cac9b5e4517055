"""
Validated operator types (unitaries, projectors, projective families) and
their application to statevectors.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from src.config import settings
from src.core.exceptions import ValidationError
from src.services.hilbert.kernels import apply_matrix, check_targets
from src.services.hilbert.state import StateVector


def _as_operator_matrix(matrix: np.ndarray, targets: tuple[int, ...], kind: str) -> np.ndarray:
    mat = np.array(matrix, dtype=np.complex128, copy=True)
    dim = 1 << len(targets)
    if mat.shape != (dim, dim):
        raise ValidationError(
            f"{kind} on {len(targets)} qubit(s) needs a {dim}x{dim} matrix, got {mat.shape}",
            details={"shape": list(mat.shape), "targets": list(targets)},
        )
    mat.setflags(write=False)
    return mat


def _max_deviation(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b))) if a.size else 0.0


@dataclass(frozen=True, eq=False)
class UnitaryOp:
    """A k-qubit unitary acting on an ordered tuple of target qubits."""

    matrix: np.ndarray = field(repr=False)
    targets: tuple[int, ...]
    name: str = "U"
    validate: bool = field(default=True, repr=False)

    def __post_init__(self) -> None:
        targets = check_targets(self.targets, max(self.targets, default=-1) + 1)
        object.__setattr__(self, "targets", targets)
        mat = _as_operator_matrix(self.matrix, targets, "UnitaryOp")
        if self.validate:
            deviation = _max_deviation(mat.conj().T @ mat, np.eye(mat.shape[0]))
            if deviation > settings.validation_tolerance:
                raise ValidationError(
                    f"Matrix for {self.name} is not unitary",
                    details={"max_deviation": deviation},
                )
        object.__setattr__(self, "matrix", mat)

    @property
    def arity(self) -> int:
        return len(self.targets)

    def dagger(self) -> "UnitaryOp":
        return UnitaryOp(self.matrix.conj().T, self.targets, f"{self.name}^dagger", validate=False)

    def on(self, *targets: int) -> "UnitaryOp":
        """Same matrix on different targets."""
        return UnitaryOp(self.matrix, tuple(targets), self.name, validate=False)


@dataclass(frozen=True, eq=False)
class Projector:
    """An orthogonal projector (P^2 = P = P^dagger) on an ordered tuple of targets."""

    matrix: np.ndarray = field(repr=False)
    targets: tuple[int, ...]
    name: str = "P"

    def __post_init__(self) -> None:
        targets = check_targets(self.targets, max(self.targets, default=-1) + 1)
        object.__setattr__(self, "targets", targets)
        mat = _as_operator_matrix(self.matrix, targets, "Projector")
        tol = settings.validation_tolerance
        hermitian = _max_deviation(mat, mat.conj().T)
        idempotent = _max_deviation(mat @ mat, mat)
        if hermitian > tol or idempotent > tol:
            raise ValidationError(
                f"Matrix for {self.name} is not an orthogonal projector",
                details={"hermitian_deviation": hermitian, "idempotent_deviation": idempotent},
            )
        object.__setattr__(self, "matrix", mat)

    @property
    def arity(self) -> int:
        return len(self.targets)

    def dagger(self) -> "Projector":
        return self

    def complement(self, name: Optional[str] = None) -> "Projector":
        return Projector(np.eye(self.matrix.shape[0]) - self.matrix, self.targets, name or f"I-{self.name}")

    @classmethod
    def onto(cls, vector: np.ndarray, targets: Sequence[int], name: str = "P") -> "Projector":
        """Rank-one projector |v><v| for a (normalized internally) vector on ``targets``."""
        vec = np.asarray(vector, dtype=np.complex128).reshape(-1)
        nrm = float(np.linalg.norm(vec))
        if nrm == 0.0:
            raise ValidationError("Cannot project onto the zero vector")
        vec = vec / nrm
        return cls(np.outer(vec, vec.conj()), tuple(targets), name)


@dataclass(frozen=True, eq=False)
class ProjectiveFamily:
    """A complete set of mutually orthogonal projectors on identical targets."""

    members: tuple[Projector, ...]
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        members = tuple(self.members)
        labels = tuple(str(label) for label in self.labels)
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "labels", labels)
        if not members:
            raise ValidationError("A projective family needs at least one member")
        if len(labels) != len(members) or len(set(labels)) != len(labels):
            raise ValidationError(
                "Family labels must be unique and match the members",
                details={"labels": list(labels), "members": len(members)},
            )
        targets = members[0].targets
        if any(p.targets != targets for p in members):
            raise ValidationError("Family members must act on identical targets")
        tol = settings.validation_tolerance
        for i, p in enumerate(members):
            for j in range(i + 1, len(members)):
                overlap = float(np.max(np.abs(p.matrix @ members[j].matrix)))
                if overlap > tol:
                    raise ValidationError(
                        f"Family members {labels[i]} and {labels[j]} are not orthogonal",
                        details={"max_overlap": overlap},
                    )
        total = sum(p.matrix for p in members)
        deviation = _max_deviation(total, np.eye(total.shape[0]))
        if deviation > tol:
            raise ValidationError(
                "Family members do not sum to the identity",
                details={"max_deviation": deviation},
            )

    @property
    def targets(self) -> tuple[int, ...]:
        return self.members[0].targets

    def __len__(self) -> int:
        return len(self.members)

    def __getitem__(self, label: str) -> Projector:
        return self.members[self.labels.index(label)]

    @classmethod
    def computational(cls, targets: Sequence[int], labels: Optional[Sequence[str]] = None) -> "ProjectiveFamily":
        """Projectors onto every computational basis pattern of ``targets``."""
        targets = tuple(targets)
        dim = 1 << len(targets)
        members = []
        for k in range(dim):
            mat = np.zeros((dim, dim), dtype=np.complex128)
            mat[k, k] = 1.0
            members.append(Projector(mat, targets, f"|{k}><{k}|"))
        if labels is None:
            labels = [format(k, f"0{len(targets)}b") if targets else "" for k in range(dim)]
        return cls(tuple(members), tuple(labels))

    @classmethod
    def binary(cls, projector: Projector, labels: Sequence[str] = ("yes", "no")) -> "ProjectiveFamily":
        """Two-outcome family {P, I - P}."""
        return cls((projector, projector.complement()), tuple(labels))


def apply_unitary(u: UnitaryOp, psi: StateVector) -> StateVector:
    """
    Apply a unitary to a state; acts as the identity on non-target qubits.

    Raises:
        TargetOutOfRangeError: If a target is outside the register
    """
    amps = apply_matrix(psi.amps, psi.n_qubits, u.matrix, u.targets)
    return StateVector(psi.n_qubits, amps, normalized=psi.normalized)


def apply_projector(p: Projector, psi: StateVector) -> StateVector:
    """
    Apply a projector and return the unnormalized projected vector.

    A zero result is not an error; callers decide what an impossible outcome means.

    Raises:
        TargetOutOfRangeError: If a target is outside the register
    """
    amps = apply_matrix(psi.amps, psi.n_qubits, p.matrix, p.targets)
    return StateVector(psi.n_qubits, amps)
