"""
Run one configured experiment and write its report and data files.
"""

import json
import time
from pathlib import Path
from typing import Any, Optional, Union

from pydantic import ValidationError as PydanticValidationError

from src import __version__
from src.core.exceptions import ConfigurationError
from src.core.logging import get_logger
from src.experiments.outputs import to_json_safe, write_csv, write_report
from src.experiments.registry import get_registry
from src.schemas.experiment import ExperimentConfig, RunReport, SeedInfo

logger = get_logger(__name__)

_TOP_LEVEL = set(ExperimentConfig.model_fields)


def parse_config(document: dict[str, Any]) -> ExperimentConfig:
    """
    Build a config from a flat JSON document.

    Keys that are not config fields are treated as experiment parameters, so
    {"experiment": "overlap_decay", "d": 10} and
    {"experiment": "overlap_decay", "params": {"d": 10}} are equivalent.

    Raises:
        ConfigurationError: On invalid fields, unknown experiments, unknown
            parameters or parameter values outside the experiment's domain
    """
    if not isinstance(document, dict):
        raise ConfigurationError("Config must be a JSON object")
    fields = {k: v for k, v in document.items() if k in _TOP_LEVEL}
    params = dict(fields.pop("params", None) or {})
    for key, value in document.items():
        if key not in _TOP_LEVEL:
            if key in params:
                raise ConfigurationError(f"Parameter {key} given twice")
            params[key] = value
    try:
        config = ExperimentConfig(**fields, params=params)
    except PydanticValidationError as e:
        raise ConfigurationError(
            "Invalid experiment configuration",
            details={"errors": [err["msg"] for err in e.errors()]},
        ) from e
    experiment = get_registry().get(config.experiment)
    params = experiment.resolve_params(config.params)
    experiment.check_params(params)
    return config.model_copy(update={"params": params})


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    """Read and validate a config file."""
    try:
        document = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigurationError(f"Cannot read config {path}: {e}") from e
    return parse_config(document)


def run_experiment(config: ExperimentConfig, output_dir: Optional[Union[str, Path]] = None) -> RunReport:
    """
    Run an experiment and write report.json plus its CSV tables.

    Args:
        config: Validated configuration (params already resolved)
        output_dir: Override for config.output_dir

    Returns:
        RunReport as written to report.json
    """
    experiment = get_registry().get(config.experiment)
    params = experiment.resolve_params(config.params)
    experiment.check_params(params)
    config = config.model_copy(update={"params": params})
    if output_dir is not None:
        config = config.model_copy(update={"output_dir": str(output_dir)})
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    logger.info("Running experiment", experiment=config.experiment, seed=config.seed, threads=config.threads)
    start = time.perf_counter()
    output = experiment.runner(params, config.seed, config.threads)

    files = []
    for table in output.tables:
        rows = write_csv(out / table.name, table.columns, table.rows)
        files.append(table.name)
        logger.debug("Wrote table", file=table.name, rows=rows)

    report = RunReport(
        tool_version=__version__,
        experiment=config.experiment,
        config=config,
        results=to_json_safe(output.results),
        seeds=SeedInfo(master=config.seed),
        files=files,
        wall_time=time.perf_counter() - start,
    )
    write_report(out / "report.json", report)
    logger.info("Experiment finished", experiment=config.experiment, elapsed=report.wall_time)
    return report
