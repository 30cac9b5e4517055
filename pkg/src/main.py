"""
Command-line entry point for the two-boundary simulator (`tbsim`).

Commands:
- run: execute one experiment from a JSON config
- list: show registered experiments with their parameter defaults
- verify: run the invariant verification suite

Exit codes: 0 success, 2 config error, 3 runtime error, 4 verification failure.
"""

import json
import sys
from typing import NoReturn, Optional

import click

from src import __version__
from src.config import settings
from src.core.exceptions import ConfigurationError, TwoBoundaryError, VerificationFailure
from src.core.logging import get_logger, setup_logging

logger = get_logger(__name__)

EXIT_CONFIG = 2
EXIT_RUNTIME = 3
EXIT_VERIFY = 4


def _fail(exc: TwoBoundaryError, code: int) -> NoReturn:
    click.echo(f"{exc.code}: {exc.message}", err=True)
    sys.exit(code)


def _parse_threads(value: Optional[str]) -> Optional[object]:
    if value is None or value == "auto":
        return value
    try:
        threads = int(value)
    except ValueError:
        raise ConfigurationError(f"--threads expects a positive integer or 'auto', got {value!r}") from None
    if threads < 1:
        raise ConfigurationError("--threads must be at least 1")
    return threads


@click.group()
@click.version_option(__version__, prog_name=settings.app_name)
@click.option("--log-level", default=None, help="Override TBSIM_LOG_LEVEL")
def cli(log_level: Optional[str]) -> None:
    """Two-boundary quantum dynamics simulator and experiment harness."""
    setup_logging(log_level)


@cli.command()
@click.argument("config_path", type=click.Path(dir_okay=False))
@click.option("--seed", type=int, default=None, help="Override the master seed")
@click.option("--threads", default=None, help="Worker count or 'auto'")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None, help="Output directory")
def run(config_path: str, seed: Optional[int], threads: Optional[str], out_dir: Optional[str]) -> None:
    """Run the experiment described by CONFIG_PATH."""
    from src.experiments.runner import load_config, parse_config, run_experiment

    try:
        config = load_config(config_path)
        overrides: dict[str, object] = {}
        if seed is not None:
            overrides["seed"] = seed
        parsed_threads = _parse_threads(threads)
        if parsed_threads is not None:
            overrides["threads"] = parsed_threads
        if overrides:
            config = parse_config({**config.model_dump(), **overrides})
    except ConfigurationError as e:
        _fail(e, EXIT_CONFIG)
    except TwoBoundaryError as e:
        logger.error("Experiment rejected", config=config_path, code=e.code, details=e.details)
        _fail(e, EXIT_RUNTIME)

    try:
        report = run_experiment(config, out_dir)
    except ConfigurationError as e:
        _fail(e, EXIT_CONFIG)
    except TwoBoundaryError as e:
        logger.error("Experiment failed", experiment=config.experiment, code=e.code, details=e.details)
        _fail(e, EXIT_RUNTIME)

    click.echo(json.dumps(report.results, indent=2))


@cli.command(name="list")
@click.option("--json", "as_json", is_flag=True, help="Print the listing as JSON")
def list_experiments(as_json: bool) -> None:
    """List registered experiments, sorted by name."""
    from src.experiments.registry import get_registry

    listing = get_registry().listing()
    if as_json:
        click.echo(json.dumps([item.model_dump() for item in listing], indent=2))
        return
    for item in listing:
        click.echo(f"{item.name}  {item.description}")
        params = " ".join(f"{k}={v}" for k, v in sorted(item.params.items()))
        click.echo(f"    {params}")


@cli.command()
@click.option("--full", is_flag=True, help="Acceptance-scale checks (minutes)")
def verify(full: bool) -> None:
    """Run the invariant verification suite."""
    from src.experiments.verify import run_checks

    results = run_checks("full" if full else "quick")
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        click.echo(f"{status}  {result.name:<24} {result.elapsed:7.2f}s  {result.detail}")

    failed = [r.name for r in results if not r.passed]
    click.echo(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if failed:
        _fail(VerificationFailure(failed), EXIT_VERIFY)


if __name__ == "__main__":
    cli()
