"""Small statistics helpers shared by the Monte Carlo experiments."""

from collections.abc import Sequence

import numpy as np


def binomial_sigma(p: float, n: int) -> float:
    return float(np.sqrt(p * (1.0 - p) / n))


def power_law_exponent(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Slope of log(y) against log(x) from a least-squares line."""
    slope, _ = np.polyfit(np.log(np.asarray(xs, dtype=float)), np.log(np.asarray(ys, dtype=float)), 1)
    return float(slope)


def mean_and_stderr(values: np.ndarray) -> tuple[float, float]:
    """Sample mean and standard error (ddof=1); needs two or more values."""
    values = np.asarray(values, dtype=float)
    return float(values.mean()), float(values.std(ddof=1) / np.sqrt(values.size))
