"""
Experiment registry: names, parameter defaults and runner callables.
"""

from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from typing import Any, Optional

from src.core.exceptions import ConfigurationError, ValidationError
from src.schemas.experiment import ExperimentListing, ParamValue


@dataclass
class Table:
    """One CSV file: fixed column order, rows in output order."""

    name: str
    columns: list[str]
    rows: Iterable[Iterable[Any]]


@dataclass
class ExperimentOutput:
    results: dict[str, Any]
    tables: list[Table] = field(default_factory=list)


Runner = Callable[[dict[str, ParamValue], int, Any], ExperimentOutput]
ParamCheck = Callable[[dict[str, ParamValue]], None]


@dataclass
class Experiment:
    name: str
    description: str
    defaults: dict[str, ParamValue]
    runner: Runner
    check: Optional[ParamCheck] = None

    def resolve_params(self, params: Mapping[str, Any]) -> dict[str, ParamValue]:
        """
        Defaults overlaid with the given values, coerced to the default's type.

        Raises:
            ConfigurationError: On unknown keys or values of the wrong type
        """
        unknown = sorted(set(params) - set(self.defaults))
        if unknown:
            raise ConfigurationError(
                f"Unknown parameter(s) for {self.name}: {', '.join(unknown)}",
                details={"unknown": unknown, "allowed": sorted(self.defaults)},
            )
        resolved = dict(self.defaults)
        for key, value in params.items():
            resolved[key] = _coerce(self.name, key, value, self.defaults[key])
        return resolved

    def check_params(self, params: dict[str, ParamValue]) -> None:
        """
        Run the experiment's domain check on resolved params.

        Raises:
            ConfigurationError: If a value is outside the domain the experiment accepts
        """
        if self.check is None:
            return
        try:
            self.check(params)
        except ValidationError as e:
            raise ConfigurationError(
                f"Invalid parameters for {self.name}: {e.message}",
                details={**e.details, "experiment": self.name},
            ) from e


def _coerce(experiment: str, key: str, value: Any, default: ParamValue) -> ParamValue:
    bad = ConfigurationError(
        f"Parameter {key} of {experiment} expects {type(default).__name__}, got {value!r}",
        details={"param": key, "value": repr(value)},
    )
    if isinstance(value, bool):
        raise bad
    if isinstance(default, int):
        if isinstance(value, int):
            return value
        if isinstance(value, float) and value.is_integer():
            return int(value)
        raise bad
    if isinstance(default, float):
        if isinstance(value, (int, float)):
            return float(value)
        raise bad
    if not isinstance(value, str):
        raise bad
    return value


class ExperimentRegistry:
    """Named experiments, listed in stable name order."""

    def __init__(self) -> None:
        self._experiments: dict[str, Experiment] = {}

    def register(
        self,
        name: str,
        description: str,
        check: Optional[ParamCheck] = None,
        **defaults: ParamValue,
    ) -> Callable[[Runner], Runner]:
        def decorator(runner: Runner) -> Runner:
            if name in self._experiments:
                raise ConfigurationError(f"Experiment {name} registered twice")
            self._experiments[name] = Experiment(name, description, dict(defaults), runner, check)
            return runner

        return decorator

    def get(self, name: str) -> Experiment:
        try:
            return self._experiments[name]
        except KeyError:
            raise ConfigurationError(
                f"Unknown experiment {name!r}",
                details={"known": self.names()},
            ) from None

    def names(self) -> list[str]:
        return sorted(self._experiments)

    def listing(self) -> list[ExperimentListing]:
        return [
            ExperimentListing(name=e.name, description=e.description, params=e.defaults)
            for e in (self._experiments[n] for n in self.names())
        ]


# Global registry instance
_registry: Optional[ExperimentRegistry] = None


def get_registry() -> ExperimentRegistry:
    """
    Get or create the experiment registry (singleton) with every experiment loaded.

    Returns:
        ExperimentRegistry instance
    """
    global _registry

    if _registry is None:
        _registry = ExperimentRegistry()
        from src.experiments.library import register_all

        register_all(_registry)

    return _registry
