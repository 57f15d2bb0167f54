"""Max-min fair uplink power control for fixed combiners."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConvergenceError, DimensionError
from ..utils import debug


@dataclass(frozen=True)
class SinrCoefficients:
    """Decomposition gamma_k(eta) = eta_k A_k / (sum_{k'!=k} eta_k' B_kk' + sum_k' eta_k' C_kk' + D_k).

    The diagonal of ``B`` is ignored.
    """

    A: np.ndarray  # (K,)
    B: np.ndarray  # (K, K)
    C: np.ndarray  # (K, K)
    D: np.ndarray  # (K,)

    def __post_init__(self):
        K = np.shape(self.A)[0]
        if np.shape(self.B) != (K, K) or np.shape(self.C) != (K, K) or np.shape(self.D) != (K,):
            raise DimensionError("SINR coefficients have inconsistent shapes")
        for name in ("A", "B", "C", "D"):
            if np.any(np.asarray(getattr(self, name)) < 0):
                raise DimensionError(f"SINR coefficient {name} must be non-negative")

    @property
    def n_users(self) -> int:
        return len(self.A)

    def interference_matrix(self) -> np.ndarray:
        B = np.array(self.B, dtype=float)
        np.fill_diagonal(B, 0.0)
        return B + self.C

    def sinr(self, eta: np.ndarray) -> np.ndarray:
        eta = np.asarray(eta, dtype=float)
        return eta * self.A / (self.interference_matrix() @ eta + self.D)


@dataclass(frozen=True)
class PowerCoefficients:
    """Per-user power control coefficients, 0 <= eta_k <= 1."""

    eta: np.ndarray
    min_sinr: float
    bisection_steps: int = 0

    def __post_init__(self):
        if np.any(self.eta < 0) or np.any(self.eta > 1 + 1e-12):
            raise ValueError("power coefficients must lie in [0, 1]")


def _feasible_power(
    target: float,
    coefficients: SinrCoefficients,
    max_iterations: int,
) -> Optional[np.ndarray]:
    """Smallest eta meeting ``target`` for every user, or None if infeasible.

    Iterates the standard interference function from eta = 0; the iterates
    increase monotonically, so any component above one proves infeasibility.
    A direct linear solve settles targets where the iteration is too slow.
    """
    F = coefficients.interference_matrix() / coefficients.A[:, None]
    u = coefficients.D / coefficients.A
    eta = np.zeros(coefficients.n_users)
    for _ in range(max_iterations):
        updated = target * (F @ eta + u)
        if np.any(updated > 1.0):
            return None
        if np.max(np.abs(updated - eta)) <= 1e-12 * max(1.0, np.max(updated)):
            return updated
        eta = updated

    system = np.eye(coefficients.n_users) - target * F
    try:
        eta = np.linalg.solve(system, target * u)
    except np.linalg.LinAlgError:
        return None
    if np.all(eta >= 0) and np.all(eta <= 1.0):
        debug(f"power control: fixed point slow at target {target:.4g}, used direct solve")
        return eta
    return None


def maxmin_power_control(
    coefficients: SinrCoefficients,
    tol: float = 1e-4,
    max_bisection: int = 64,
    max_fixed_point: int = 500,
) -> PowerCoefficients:
    """Maximize the smallest SINR subject to 0 <= eta <= 1.

    Bisection on the common SINR target. The upper bracket is the best SINR
    any user reaches alone at full power. The returned coefficients are
    scaled so the largest equals one, which can only raise every SINR.
    """
    A = np.asarray(coefficients.A, dtype=float)
    K = coefficients.n_users
    if np.any(A <= 0):
        eta = np.ones(K)
        return PowerCoefficients(eta=eta, min_sinr=float(coefficients.sinr(eta).min()))

    C_diag = np.diag(coefficients.C)
    upper = float(np.min(A / (C_diag + coefficients.D)))
    lower = 0.0
    best = np.zeros(K)

    steps = 0
    while steps < max_bisection:
        if lower > 0 and upper - lower <= tol * lower:
            break
        target = 0.5 * (lower + upper)
        eta = _feasible_power(target, coefficients, max_fixed_point)
        if eta is None:
            upper = target
        else:
            lower, best = target, eta
        steps += 1

    if lower <= 0 or upper - lower > tol * lower:
        raise ConvergenceError(
            "max-min bisection did not reach the requested tolerance",
            {"lower": lower, "upper": upper, "steps": steps, "tol": tol},
        )

    peak = np.max(best)
    eta = best / peak if peak > 0 else np.ones(K)
    return PowerCoefficients(
        eta=eta, min_sinr=float(coefficients.sinr(eta).min()), bisection_steps=steps
    )
