"""
Registered experiments.

Each runner takes resolved params, the master seed and the worker count, and
returns summary results plus CSV tables.
"""

from typing import Any

import numpy as np

from src.core.exceptions import ConfigurationError, ValidationError
from src.experiments import oracles
from src.experiments.registry import ExperimentOutput, ExperimentRegistry, Table
from src.services.macro.antenna import AntennaConfig, antenna_experiment, antenna_scaling, phase_curve
from src.services.macro.network import rule_one_trial
from src.services.sampling.dominance import CrunchToyConfig, born_emergence, dominance_gap_stats
from src.services.sampling.seeding import sample_rng
from src.services.sampling.statistics import binomial_sigma, power_law_exponent
from src.services.witness.decisions import check_bias, check_depth, overlap_decay, path_uniqueness

BORN_GRID = (0.0, np.pi / 6, np.pi / 4, np.pi / 3, np.pi / 2, 2 * np.pi / 3, np.pi)

WINNER_NAMES = {1: "up", 0: "down", -1: "none"}


def parse_list(name: str, text: Any, kind: type = float) -> list:
    """Comma-separated parameter list such as "4,8,16"."""
    try:
        values = [kind(part) for part in str(text).split(",") if part.strip()]
    except ValueError:
        raise ConfigurationError(f"Parameter {name} must be a comma-separated list, got {text!r}") from None
    if not values:
        raise ConfigurationError(f"Parameter {name} is empty")
    return values


def _crunch(params: dict, seed: int, **overrides: Any) -> CrunchToyConfig:
    values = {
        "theta": params.get("theta", np.pi / 2),
        "w": params.get("w", 3),
        "N": params.get("N", 1000),
        "ensemble": params.get("ensemble", "haar"),
        "seed": seed,
    }
    values.update(overrides)
    if values["ensemble"] not in ("haar", "product"):
        raise ConfigurationError(f"Unknown ensemble {values['ensemble']!r}")
    return CrunchToyConfig(**values)


def _at_least(params: dict, name: str, low: int) -> None:
    if params[name] < low:
        raise ValidationError(
            f"Parameter {name} must be at least {low}, got {params[name]}",
            details={"param": name, "value": params[name]},
        )


def check_crunch(params: dict) -> None:
    _crunch(params, 0)


def check_dominance_gap(params: dict) -> None:
    for w in parse_list("witnesses", params["witnesses"], int):
        _crunch(params, 0, w=w, ensemble="product")


def check_overlap_decay(params: dict) -> None:
    check_depth(params["d"])
    check_bias(params["bias"])


def check_path_uniqueness(params: dict) -> None:
    check_depth(params["d"])


def check_deferred_projection(params: dict) -> None:
    _at_least(params, "instances", 1)
    _at_least(params, "max_qubits", 1)


def check_chain_consistency(params: dict) -> None:
    _at_least(params, "instances", 1)
    _at_least(params, "n_qubits", 1)


def check_fiber_network(params: dict) -> None:
    _at_least(params, "networks", 1)
    # one sink plus two working modes
    _at_least(params, "modes", 3)
    _at_least(params, "elements", 0)


def check_antenna_experiment(params: dict) -> None:
    _at_least(params, "samples", 0)
    _at_least(params, "grid", 1)
    _antenna(params, 0)


def check_antenna_scaling(params: dict) -> None:
    epsilons = parse_list("epsilons", params["epsilons"])
    if len(epsilons) < 2 or min(epsilons) <= 0.0:
        raise ValidationError(
            f"Parameter epsilons needs two or more positive values, got {params['epsilons']!r}",
            details={"param": "epsilons"},
        )
    for eps in epsilons:
        AntennaConfig(eps, eps)

def run_born_emergence(params: dict, seed: int, threads: Any) -> ExperimentOutput:
    c = _crunch(params, seed)
    report = born_emergence(c, threads)
    rows = (
        (k, report.log10_amp_up[k], report.log10_amp_down[k], WINNER_NAMES[int(report.winners[k])])
        for k in range(c.N)
    )
    results = {
        "theta": c.theta,
        "w": c.w,
        "N": c.N,
        "ensemble": c.ensemble,
        "up_count": report.up_count,
        "down_count": report.down_count,
        "ties": report.ties,
        "both_zero": report.both_zero,
        "freq_up": report.freq_up,
        "expected_freq_up": c.expected_freq_up,
        "sigma": binomial_sigma(c.expected_freq_up, report.decided),
        "spread": report.spread,
    }
    columns = ["sample_index", "log10_amp_up", "log10_amp_down", "winner"]
    return ExperimentOutput(results, [Table("born_emergence.csv", columns, rows)])


def run_born_grid(params: dict, seed: int, threads: Any) -> ExperimentOutput:
    rows = []
    worst = 0.0
    for theta in BORN_GRID:
        c = _crunch(params, seed, theta=theta)
        report = born_emergence(c, threads)
        sigma = binomial_sigma(c.expected_freq_up, report.decided)
        deviation = abs(report.freq_up - c.expected_freq_up)
        score = deviation / sigma if sigma > 0 else (0.0 if deviation == 0 else np.inf)
        worst = max(worst, score)
        rows.append((theta, report.freq_up, c.expected_freq_up, sigma, report.up_count, report.down_count))
    results = {"thetas": list(BORN_GRID), "max_sigma_deviation": worst, "within_3_sigma": worst <= 3.0}
    columns = ["theta", "freq_up", "expected_freq_up", "sigma", "up_count", "down_count"]
    return ExperimentOutput(results, [Table("born_grid.csv", columns, rows)])


def run_overlap_decay(params: dict, seed: int, threads: Any) -> ExperimentOutput:
    report = overlap_decay(params["d"], params["bias"], seed)
    squared = report.squared
    results = {
        "depth": report.depth,
        "bias": report.bias,
        "leaves": len(report.labels),
        "min_overlap_squared": float(squared.min()),
        "max_overlap_squared": float(squared.max()),
        "all_majority_overlap_squared": float(squared[0]),
        "explicit_inner_products": report.explicit,
    }
    rows = zip(report.labels, report.overlaps, squared)
    return ExperimentOutput(
        results, [Table("overlap_decay.csv", ["leaf", "overlap", "overlap_squared"], rows)]
    )


def run_dominance_gap(params: dict, seed: int, threads: Any) -> ExperimentOutput:
    witnesses = parse_list("witnesses", params["witnesses"], int)
    rows = []
    spreads = []
    for w in witnesses:
        c = _crunch(params, seed, w=w, ensemble="product")
        report = dominance_gap_stats(c, threads)
        spreads.append(report.spread)
        rows.append((w, report.spread, report.one_sided, report.freq_up))
    defined = all(s is not None and s > 0 for s in spreads)
    results = {
        "witnesses": witnesses,
        "spreads": spreads,
        "spread_ratio": spreads[-1] / spreads[0] if defined else None,
        "fit_exponent": power_law_exponent(witnesses, spreads) if defined and len(witnesses) > 1 else None,
    }
    columns = ["w", "spread", "one_sided", "freq_up"]
    return ExperimentOutput(results, [Table("dominance_gap.csv", columns, rows)])


def run_deferred_projection(params: dict, seed: int, threads: Any) -> ExperimentOutput:
    deviations = [
        oracles.deferral_deviation(sample_rng(seed, k), params["max_qubits"])
        for k in range(params["instances"])
    ]
    results = {
        "instances": params["instances"],
        "max_deviation": float(max(deviations)),
        "passed": max(deviations) <= 1e-12,
    }
    rows = enumerate(deviations)
    return ExperimentOutput(
        results, [Table("deferred_projection.csv", ["instance", "abs_deviation"], rows)]
    )


def run_chain_consistency(params: dict, seed: int, threads: Any) -> ExperimentOutput:
    rows = []
    for k in range(params["instances"]):
        rng = sample_rng(seed, k)
        rows.append(
            (
                k,
                oracles.chain_consistency_deviation(rng, params["n_qubits"]),
                oracles.abl_normalization_deviation(rng, params["n_qubits"]),
                oracles.jump_consistency_deviation(rng, params["n_qubits"]),
                oracles.time_symmetry_deviation(rng, params["n_qubits"]),
            )
        )
    table = np.array([r[1:] for r in rows])
    results = {
        "instances": params["instances"],
        "max_chain_deviation": float(table[:, 0].max()),
        "max_abl_normalization_deviation": float(table[:, 1].max()),
        "max_jump_deviation": float(table[:, 2].max()),
        "max_time_symmetry_deviation": float(table[:, 3].max()),
        "three_box_probability": oracles.three_box_probability(),
    }
    columns = ["instance", "chain_deviation", "abl_normalization_deviation", "jump_deviation", "time_symmetry_deviation"]
    return ExperimentOutput(results, [Table("chain_consistency.csv", columns, rows)])


def run_path_uniqueness(params: dict, seed: int, threads: Any) -> ExperimentOutput:
    report = path_uniqueness(params["d"], seed)
    results = {
        "depth": report.depth,
        "chosen_leaf": report.chosen,
        "top_chain": report.top_label,
        "top_probability": report.top_probability,
        "chains_with_support": report.support,
    }
    return ExperimentOutput(results)


def run_fiber_network(params: dict, seed: int, threads: Any) -> ExperimentOutput:
    trials = [
        rule_one_trial(sample_rng(seed, k), params["modes"], params["elements"])
        for k in range(params["networks"])
    ]
    rows = [
        (k, t.emission_before, t.emission_after, t.total_after, t.sink_after)
        for k, t in enumerate(trials)
    ]
    results = {
        "networks": len(trials),
        "max_emission_shift": max(t.emission_shift for t in trials),
        "max_total_deviation": max(abs(t.total_after - 1.0) for t in trials),
    }
    columns = ["network", "emission_before", "emission_after", "total_after", "sink_after"]
    return ExperimentOutput(results, [Table("fiber_network.csv", columns, rows)])


def _antenna(params: dict, seed: int) -> AntennaConfig:
    if params["conditioning"] not in ("none", "dark"):
        raise ConfigurationError(f"Unknown conditioning {params['conditioning']!r}")
    samples = params["samples"]
    return AntennaConfig(
        epsilon_a=params["epsilon_a"],
        epsilon_b=params["epsilon_b"],
        phi=params["phi"],
        average_samples=samples if samples >= 2 else None,
        conditioning=params["conditioning"],
        seed=seed,
    )


def run_antenna_experiment(params: dict, seed: int, threads: Any) -> ExperimentOutput:
    cfg = _antenna(params, seed)
    result = antenna_experiment(cfg, threads)
    grid = np.linspace(0.0, 2.0 * np.pi, params["grid"], endpoint=False)
    curve = phase_curve(cfg, grid)
    results = {
        "p_emit_unconditioned": result.p_emit_unconditioned,
        "p_emit_conditioned": result.p_emit_conditioned,
        "enhancement_ratio": result.ratio,
        "ratio_stderr": result.ratio_stderr,
        "phase_averaged": cfg.average_samples is not None,
        "curve_peak_to_peak": float(curve.max() - curve.min()),
    }
    rows = zip(grid, curve)
    return ExperimentOutput(results, [Table("antenna_phase_curve.csv", ["phi", "enhancement_ratio"], rows)])


def run_antenna_scaling(params: dict, seed: int, threads: Any) -> ExperimentOutput:
    scaling = antenna_scaling(parse_list("epsilons", params["epsilons"]), params["phi"])
    results = {"epsilons": scaling.epsilons, "deviations": scaling.deviations, "fit_exponent": scaling.exponent}
    rows = zip(scaling.epsilons, scaling.deviations)
    return ExperimentOutput(results, [Table("antenna_scaling.csv", ["epsilon", "abs_ratio_deviation"], rows)])


def register_all(registry: ExperimentRegistry) -> None:
    """Register every experiment on ``registry``."""
    registry.register(
        "born_emergence",
        "Dominance frequency of the up branch over random final boundaries",
        check=check_crunch,
        theta=float(np.pi / 2),
        w=3,
        N=100000,
        ensemble="haar",
    )(run_born_emergence)
    registry.register(
        "born_grid",
        "Born emergence across the theta grid 0..pi with 3-sigma check",
        check=check_crunch,
        w=3,
        N=100000,
        ensemble="haar",
    )(run_born_grid)
    registry.register(
        "overlap_decay",
        "Squared overlap of the evolved state with every leaf of a decision tree",
        check=check_overlap_decay,
        d=10,
        bias=0.5,
    )(run_overlap_decay)
    registry.register(
        "dominance_gap",
        "Spread of log10|A_up/A_down| against witness count (product ensemble)",
        check=check_dominance_gap,
        theta=float(np.pi / 2),
        witnesses="4,8,16",
        N=10000,
    )(run_dominance_gap)
    registry.register(
        "deferred_projection",
        "Amplitude identity for projections moved past a later unitary",
        check=check_deferred_projection,
        instances=1000,
        max_qubits=8,
    )(run_deferred_projection)
    registry.register(
        "chain_consistency",
        "Chain enumeration against brute force, ABL normalization, jump consistency, time symmetry",
        check=check_chain_consistency,
        instances=100,
        n_qubits=3,
    )(run_chain_consistency)
    registry.register(
        "path_uniqueness",
        "One exact leaf as final boundary leaves a single history chain",
        check=check_path_uniqueness,
        d=8,
    )(run_path_uniqueness)
    registry.register(
        "fiber_network",
        "Emission probability under random downstream changes of mode networks",
        check=check_fiber_network,
        networks=200,
        modes=6,
        elements=12,
    )(run_fiber_network)
    registry.register(
        "antenna_experiment",
        "Two-antenna emission probability with a dark positive-interference point",
        check=check_antenna_experiment,
        epsilon_a=0.1,
        epsilon_b=0.1,
        phi=0.0,
        samples=0,
        conditioning="dark",
        grid=64,
    )(run_antenna_experiment)
    registry.register(
        "antenna_scaling",
        "Second-order scaling of the antenna enhancement with emission amplitude",
        check=check_antenna_scaling,
        epsilons="0.05,0.1,0.2",
        phi=0.0,
    )(run_antenna_scaling)
