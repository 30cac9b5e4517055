"""
Invariant verification suite behind `tbsim verify`.

Checks are registered by name. The quick level uses reduced sizes; the full
level runs every check at acceptance scale.
"""

import time
from collections.abc import Callable
from dataclasses import dataclass
from typing import Literal

import numpy as np

from src.core.logging import get_logger
from src.experiments import oracles
from src.experiments.library import BORN_GRID
from src.services.boundary.engine import two_boundary_amplitude
from src.services.boundary.schedule import BoundaryPair, Schedule
from src.services.hilbert.gates import haar_state, haar_unitary, rx, ry, rz
from src.services.hilbert.operators import apply_unitary
from src.services.hilbert.state import zero_state
from src.services.macro.antenna import AntennaConfig, antenna_experiment, antenna_scaling, phase_curve
from src.services.macro.network import mach_zehnder, rule_one_trial, run_network, single_photon
from src.services.sampling.dominance import CrunchToyConfig, born_emergence, dominance_gap_stats
from src.services.sampling.seeding import sample_rng
from src.services.sampling.statistics import binomial_sigma, power_law_exponent
from src.services.witness.decisions import (
    biased_splitters,
    build_decision_tree,
    jump_history,
    overlap_decay,
    path_uniqueness,
)

logger = get_logger(__name__)

Level = Literal["quick", "full"]
Outcome = tuple[bool, str]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed: float


@dataclass
class Check:
    name: str
    fn: Callable[[bool], Outcome]
    full_only: bool = False


_CHECKS: dict[str, Check] = {}


def check(name: str, full_only: bool = False) -> Callable[[Callable[[bool], Outcome]], Callable[[bool], Outcome]]:
    """Register an invariant check; the callable receives ``full``."""

    def decorator(fn: Callable[[bool], Outcome]) -> Callable[[bool], Outcome]:
        _CHECKS[name] = Check(name, fn, full_only)
        return fn

    return decorator


def check_names(level: Level = "quick") -> list[str]:
    return [c.name for c in _CHECKS.values() if level == "full" or not c.full_only]


def _max_over(fn: Callable[[np.random.Generator], float], count: int, seed: int) -> float:
    return max(fn(sample_rng(seed, k)) for k in range(count))


@check("unitarity_preserved")
def unitarity_preserved(full: bool) -> Outcome:
    worst = 0.0
    for k in range(1000 if full else 200):
        rng = sample_rng(11, k)
        n = int(rng.integers(1, 7))
        psi = haar_state(n, rng)
        out = apply_unitary(haar_unitary(oracles.random_targets(n, 3, rng), rng), psi)
        worst = max(worst, abs(out.norm() - 1.0))
    return worst <= 1e-12, f"max norm drift {worst:.3e}"


@check("abl_normalization")
def abl_normalization(full: bool) -> Outcome:
    worst = _max_over(oracles.abl_normalization_deviation, 500 if full else 100, 12)
    return worst <= 1e-12, f"max |sum - 1| {worst:.3e}"


@check("deferral_identity")
def deferral_identity(full: bool) -> Outcome:
    count, max_qubits = (1000, 8) if full else (200, 6)
    worst = _max_over(lambda rng: oracles.deferral_deviation(rng, max_qubits), count, 13)
    return worst <= 1e-12, f"{count} instances, max amplitude gap {worst:.3e}"


@check("chain_brute_force")
def chain_brute_force(full: bool) -> Outcome:
    worst = _max_over(oracles.chain_consistency_deviation, 200 if full else 50, 14)
    return worst <= 1e-12, f"max probability gap {worst:.3e}"


@check("jump_consistency")
def jump_consistency(full: bool) -> Outcome:
    worst = _max_over(oracles.jump_consistency_deviation, 200 if full else 50, 15)
    return worst <= 1e-12, f"max probability gap {worst:.3e}"


@check("time_symmetry")
def time_symmetry(full: bool) -> Outcome:
    worst = _max_over(oracles.time_symmetry_deviation, 200 if full else 50, 16)
    return worst <= 1e-12, f"max |amplitude| gap {worst:.3e}"


@check("three_box")
def three_box(full: bool) -> Outcome:
    p = oracles.three_box_probability()
    return abs(p - 1.0) <= 1e-12, f"P(box 1) = {p:.15f}"


@check("overlap_decay_exact")
def overlap_decay_exact(full: bool) -> Outcome:
    worst = 0.0
    for d in range(1, (20 if full else 12) + 1):
        squared = overlap_decay(d, 0.5, seed=d).squared
        worst = max(worst, float(np.max(np.abs(squared - 0.5**d))))
    return worst <= 1e-9, f"max deviation from 0.5^d {worst:.3e}"


@check("witness_deferral")
def witness_deferral(full: bool) -> Outcome:
    worst = 0.0
    for k in range(20 if full else 5):
        rng = sample_rng(17, k)
        depth = int(rng.integers(1, 7))
        splitters = biased_splitters(depth, float(rng.uniform(0.2, 0.8)), k)
        tree = build_decision_tree(zero_state(depth + 1), splitters)
        label = "".join(str(int(b)) for b in rng.integers(0, 2, depth))
        leaf = tree.leaf(label).normalize()
        jumped = jump_history(tree.initial, splitters, label)
        worst = max(worst, float(np.max(np.abs(leaf.amps - jumped.amps))))
    return worst <= 1e-12, f"max state gap {worst:.3e}"


@check("path_uniqueness")
def path_uniqueness_check(full: bool) -> Outcome:
    report = path_uniqueness(8 if full else 5, seed=18)
    passed = report.support == 1 and abs(report.top_probability - 1.0) <= 1e-12
    return passed, f"support {report.support}, top chain {report.top_label} p={report.top_probability:.15f}"


@check("born_quick")
def born_quick(full: bool) -> Outcome:
    c = CrunchToyConfig(theta=np.pi / 3, w=3, N=20000, ensemble="haar", seed=19)
    report = born_emergence(c, threads=1)
    sigma = binomial_sigma(c.expected_freq_up, report.decided)
    deviation = abs(report.freq_up - c.expected_freq_up)
    return deviation <= 4 * sigma, f"freq_up {report.freq_up:.4f} vs {c.expected_freq_up:.4f} (sigma {sigma:.4f})"


@check("born_theta_grid", full_only=True)
def born_theta_grid(full: bool) -> Outcome:
    worst = 0.0
    for theta in BORN_GRID:
        c = CrunchToyConfig(theta=theta, w=3, N=100000, ensemble="haar", seed=20)
        report = born_emergence(c)
        sigma = binomial_sigma(c.expected_freq_up, report.decided)
        deviation = abs(report.freq_up - c.expected_freq_up)
        if sigma == 0.0:
            if deviation > 0.0:
                return False, f"theta={theta:.4f}: freq_up {report.freq_up} should be exact"
            continue
        worst = max(worst, deviation / sigma)
    return worst <= 3.0, f"worst deviation {worst:.2f} sigma"


@check("dominance_scaling")
def dominance_scaling(full: bool) -> Outcome:
    n = 10000 if full else 2000
    ws = [4, 8, 16]
    spreads = [
        dominance_gap_stats(CrunchToyConfig(np.pi / 2, w, n, "product", seed=21)).spread for w in ws
    ]
    exponent = power_law_exponent(ws, spreads)
    ratio = spreads[-1] / spreads[0]
    passed = 0.35 <= exponent <= 0.65 and abs(ratio - 2.0) <= 0.7
    return passed, f"exponent {exponent:.3f}, s16/s4 {ratio:.3f}"


@check("determinism")
def determinism(full: bool) -> Outcome:
    c = CrunchToyConfig(np.pi / 2, 3, 6000, "haar", seed=22)
    one = born_emergence(c, threads=1)
    two = born_emergence(c, threads=2)
    same = one.up_count == two.up_count and np.array_equal(one.log10_amp_up, two.log10_amp_up)
    return same, f"up_count {one.up_count} vs {two.up_count}"


@check("mach_zehnder")
def mach_zehnder_check(full: bool) -> Outcome:
    worst = 0.0
    for phi in np.linspace(0.0, 2 * np.pi, 9):
        probs = run_network(mach_zehnder(phi), single_photon(3, 0)).mode_probabilities
        worst = max(worst, abs(probs[1] - np.cos(phi / 2) ** 2))
        blocked = run_network(mach_zehnder(phi, block_forward=True), single_photon(3, 0))
        worst = max(worst, abs(blocked.mode_probabilities[1]), abs(blocked.total - 1.0))
    return worst <= 1e-12, f"max deviation {worst:.3e}"


@check("rule_one")
def rule_one(full: bool) -> Outcome:
    trials = [rule_one_trial(sample_rng(23, k)) for k in range(200)]
    shift = max(t.emission_shift for t in trials)
    total = max(abs(t.total_after - 1.0) for t in trials)
    return max(shift, total) <= 1e-12, f"emission shift {shift:.3e}, total drift {total:.3e}"


@check("antenna_single_flat")
def antenna_single_flat(full: bool) -> Outcome:
    curve = phase_curve(AntennaConfig(0.1, 0.0), np.linspace(0.0, 2 * np.pi, 16))
    spread = float(curve.max() - curve.min())
    return spread <= 1e-12, f"ratio spread {spread:.3e}"


@check("antenna_second_order")
def antenna_second_order(full: bool) -> Outcome:
    scaling = antenna_scaling()
    ratio = antenna_experiment(AntennaConfig(0.1, 0.1, phi=0.0)).ratio
    passed = 1.8 <= scaling.exponent <= 2.2 and ratio > 1.0
    return passed, f"exponent {scaling.exponent:.3f}, ratio(phi=0) {ratio:.6f}"


@check("antenna_phase_average")
def antenna_phase_average(full: bool) -> Outcome:
    M = 10000 if full else 2000
    result = antenna_experiment(AntennaConfig(0.1, 0.1, average_samples=M, seed=24))
    bound = 1e-3 if full else 2e-3
    deviation = abs(result.ratio - 1.0)
    return deviation < bound, f"|ratio - 1| {deviation:.2e} (stderr {result.ratio_stderr:.1e})"


@check("performance_20q", full_only=True)
def performance_20q(full: bool) -> Outcome:
    rng = sample_rng(25, 0)
    gates = [rx, ry, rz]
    items = [gates[k % 3](float(rng.uniform(0, 2 * np.pi)), int(rng.integers(20))) for k in range(100)]
    b = BoundaryPair(zero_state(20), haar_state(20, rng))
    start = time.perf_counter()
    two_boundary_amplitude(b, Schedule(tuple(items)))
    elapsed = time.perf_counter() - start
    return elapsed <= 5.0, f"{elapsed:.2f} s"


def run_checks(level: Level = "quick") -> list[CheckResult]:
    """Run every check registered for ``level`` in registration order."""
    results = []
    full = level == "full"
    for name in check_names(level):
        start = time.perf_counter()
        try:
            passed, detail = _CHECKS[name].fn(full)
        except Exception as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        elapsed = time.perf_counter() - start
        logger.debug("Check finished", check=name, passed=passed, elapsed=elapsed)
        results.append(CheckResult(name, passed, detail, elapsed))
    return results
