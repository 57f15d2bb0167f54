"""Sample statistics used in campaign summaries."""

from typing import Tuple

import numpy as np

from .errors import DomainError, EmptySampleError


def percentile(samples, p: float) -> float:
    """Linear-interpolation percentile of a non-empty sample, 0 <= p <= 100."""
    values = np.asarray(samples, dtype=float).ravel()
    if values.size == 0:
        raise EmptySampleError("percentile of an empty sample")
    if not 0.0 <= p <= 100.0:
        raise DomainError(f"percentile must lie in [0, 100], got {p}")
    return float(np.percentile(values, p, method="linear"))


def empirical_cdf(samples) -> Tuple[np.ndarray, np.ndarray]:
    """Sorted values with cdf_i = (i + 1) / n."""
    values = np.sort(np.asarray(samples, dtype=float).ravel())
    if values.size == 0:
        raise EmptySampleError("CDF of an empty sample")
    cdf = np.arange(1, values.size + 1) / values.size
    return values, cdf


def likely_se(samples, likelihood: float = 95.0) -> float:
    """SE that a user reaches with the given probability (5th percentile for 95%)."""
    return percentile(samples, 100.0 - likelihood)
