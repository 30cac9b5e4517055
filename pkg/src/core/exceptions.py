"""
Custom exception classes for the two-boundary simulator.
Provides specific exception types for different error scenarios.
"""

from typing import Any, Optional


class TwoBoundaryError(Exception):
    """Base exception for all simulator errors."""

    def __init__(
        self,
        message: str,
        code: Optional[str] = None,
        details: Optional[dict[str, Any]] = None,
    ) -> None:
        self.message = message
        self.code = code or self.__class__.__name__
        self.details = details or {}
        super().__init__(self.message)


class ConfigurationError(TwoBoundaryError):
    """Raised when an experiment configuration is invalid."""

    pass


class ValidationError(TwoBoundaryError):
    """Raised when a domain object violates its construction invariants."""

    pass


class DimensionMismatchError(TwoBoundaryError):
    """Raised when operands live in registers of different sizes."""

    def __init__(self, expected: int, actual: int, **kwargs: Any) -> None:
        super().__init__(
            f"Dimension mismatch: expected {expected} qubits, got {actual}",
            code="DimensionMismatch",
            details={"expected": expected, "actual": actual, **kwargs},
        )


class CapacityError(TwoBoundaryError):
    """Raised when a register would exceed the configured qubit cap."""

    def __init__(self, requested: int, limit: int) -> None:
        super().__init__(
            f"Register of {requested} qubits exceeds the limit of {limit}",
            code="CapacityExceeded",
            details={"requested": requested, "limit": limit},
        )


class TargetOutOfRangeError(TwoBoundaryError):
    """Raised when an operator targets a qubit outside the register."""

    def __init__(self, targets: tuple[int, ...], n_qubits: int) -> None:
        super().__init__(
            f"Targets {targets} out of range for {n_qubits} qubits",
            code="TargetOutOfRange",
            details={"targets": list(targets), "n_qubits": n_qubits},
        )


class ZeroDenominatorError(TwoBoundaryError):
    """Raised when every outcome amplitude vanishes between the two boundaries."""

    def __init__(self, denominator: float) -> None:
        super().__init__(
            "Boundaries are incompatible with every outcome of the event",
            code="ZeroDenominator",
            details={"denominator": denominator},
        )


class NullProjectionError(TwoBoundaryError):
    """Raised when a quantum jump targets an impossible outcome."""

    def __init__(self, norm: float) -> None:
        super().__init__(
            f"Projected norm {norm:.3e} is zero: outcome impossible",
            code="NullProjection",
            details={"norm": norm},
        )


class CombinatorialLimitError(TwoBoundaryError):
    """Raised when exhaustive chain enumeration would exceed the cap."""

    def __init__(self, chains: int, limit: int) -> None:
        super().__init__(
            f"{chains} outcome chains exceed the enumeration limit of {limit}",
            code="CombinatorialLimit",
            details={"chains": chains, "limit": limit},
        )


class UnresolvedEventError(TwoBoundaryError):
    """Raised when an amplitude is requested for a schedule with open events."""

    pass


class WitnessNotReadyError(TwoBoundaryError):
    """Raised when a witness qubit is not in |0> before recording."""

    def __init__(self, witness: int, excited_weight: float) -> None:
        super().__init__(
            f"Witness qubit {witness} is not in |0> (weight on |1>: {excited_weight:.3e})",
            code="WitnessNotReady",
            details={"witness": witness, "excited_weight": excited_weight},
        )


class DepthLimitError(TwoBoundaryError):
    """Raised when a decision tree exceeds the configured depth."""

    def __init__(self, depth: int, limit: int) -> None:
        super().__init__(
            f"Decision tree depth {depth} exceeds the limit of {limit}",
            code="DepthLimit",
            details={"depth": depth, "limit": limit},
        )


class BothZeroError(TwoBoundaryError):
    """Raised when neither branch amplitude can dominate."""

    def __init__(self, a_up: complex, a_down: complex) -> None:
        super().__init__(
            "Both branch amplitudes vanish",
            code="BothZero",
            details={"abs_up": abs(a_up), "abs_down": abs(a_down)},
        )


class InsufficientWitnessesError(TwoBoundaryError):
    """Raised when a dominance experiment is asked to run without witnesses."""

    def __init__(self, witnesses: int, required: int) -> None:
        super().__init__(
            f"Experiment needs at least {required} witnesses, got {witnesses}",
            code="InsufficientWitnesses",
            details={"witnesses": witnesses, "required": required},
        )


class PerturbativeRangeError(TwoBoundaryError):
    """Raised when an emission amplitude leaves the perturbative regime."""

    def __init__(self, epsilon: float) -> None:
        super().__init__(
            f"Emission amplitude {epsilon} outside the perturbative range (eps^2 <= 0.25)",
            code="PerturbativeRange",
            details={"epsilon": epsilon},
        )


class VerificationFailure(TwoBoundaryError):
    """Raised when one or more invariant checks fail."""

    def __init__(self, failed: list[str]) -> None:
        super().__init__(
            f"{len(failed)} invariant check(s) failed: {', '.join(failed)}",
            code="VerificationFailure",
            details={"failed": failed},
        )
