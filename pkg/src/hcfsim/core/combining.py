"""Centralized and hierarchical receive combiners."""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import LinAlgError, block_diag, cho_factor, cho_solve

from .config import Mode, Scheme
from .errors import (
    DegenerateDropError,
    DimensionError,
    NumericalError,
    UnsupportedConfigurationError,
)

# Gram matrices worse conditioned than this make the drop degenerate.
MAX_CONDITION = 1e12


@dataclass(frozen=True)
class CombinerSet:
    """Detection vectors for all users.

    Centralized sets carry ``d`` of shape (K, M). Hierarchical sets carry one
    (K, N_l) array per node in ``v``; node 0 is the central array when the
    network has one.
    """

    mode: Mode
    scheme: Scheme
    d: Optional[np.ndarray] = None
    v: Optional[Tuple[np.ndarray, ...]] = None

    @property
    def n_users(self) -> int:
        if self.mode is Mode.CENTRALIZED:
            return self.d.shape[0]
        return self.v[0].shape[0]

    def per_node(self, node_sizes: Sequence[int]) -> Tuple[np.ndarray, ...]:
        """Combiners split by node; centralized vectors are cut along M."""
        if self.mode is Mode.HIERARCHICAL:
            return self.v
        edges = np.cumsum(node_sizes)[:-1]
        return tuple(np.split(self.d, edges, axis=1))


def _as_eta(eta, K: int) -> np.ndarray:
    if eta is None:
        return np.ones(K)
    eta = np.broadcast_to(np.asarray(eta, dtype=float), (K,))
    return eta


def zero_forcing(h_hat: np.ndarray) -> np.ndarray:
    """Columns of H (H^H H)^-1 returned as rows, shape (K, N).

    ``h_hat`` holds one estimate per row, shape (K, N).
    """
    K, N = h_hat.shape
    if K > N:
        raise UnsupportedConfigurationError(f"ZF needs K <= N (K = {K}, N = {N})")
    H = h_hat.T
    gram = H.conj().T @ H
    condition = np.linalg.cond(gram)
    if not np.isfinite(condition) or condition > MAX_CONDITION:
        raise DegenerateDropError(
            f"estimate Gram matrix is singular (condition {condition:.3e})", condition
        )
    combiner = H @ np.linalg.solve(gram, np.eye(K))
    return combiner.T


def _regularized_solve(
    h_hat: np.ndarray,
    theta_sum: np.ndarray,
    eta: np.ndarray,
    p_u: float,
    sigma_z2: float,
) -> np.ndarray:
    """Solve [p_u sum eta (h h^H + Theta) + sigma^2 I] d_k = h_k for all k."""
    N = h_hat.shape[1]
    weighted = h_hat.T * eta
    matrix = p_u * (weighted @ h_hat.conj() + theta_sum) + sigma_z2 * np.eye(N)
    matrix = 0.5 * (matrix + matrix.conj().T)
    try:
        factor = cho_factor(matrix, lower=True)
    except LinAlgError as e:
        raise NumericalError("MMSE combining matrix is not positive definite") from e
    return cho_solve(factor, h_hat.T).T


def centralized_combiner(
    h_hat: np.ndarray,
    theta: Sequence[np.ndarray],
    eta,
    p_u: float,
    sigma_z2: float,
    scheme: Scheme,
) -> CombinerSet:
    """Detection vectors over all M antennas.

    ``h_hat`` is (K, M) with nodes concatenated; ``theta`` holds the per-node
    error covariances (K, N_l, N_l) whose block diagonal is Theta_k.
    """
    scheme = Scheme(scheme)
    K, M = h_hat.shape
    if sum(t.shape[1] for t in theta) != M:
        raise DimensionError("error covariance blocks do not add up to M antennas")
    if scheme is Scheme.MR:
        return CombinerSet(Mode.CENTRALIZED, scheme, d=h_hat.copy())
    if scheme is Scheme.ZF:
        return CombinerSet(Mode.CENTRALIZED, scheme, d=zero_forcing(h_hat))

    eta = _as_eta(eta, K)
    theta_sum = block_diag(*[np.tensordot(eta, t, axes=1) for t in theta])
    d = _regularized_solve(h_hat, theta_sum, eta, p_u, sigma_z2)
    return CombinerSet(Mode.CENTRALIZED, scheme, d=d)


def hierarchical_combiners(
    h_hat: Sequence[np.ndarray],
    theta: Sequence[np.ndarray],
    eta,
    p_u: float,
    sigma_z2: float,
    scheme: Scheme,
) -> CombinerSet:
    """Local combiners at every node from that node's estimates only."""
    scheme = Scheme(scheme)
    K = h_hat[0].shape[0]
    eta = _as_eta(eta, K)

    if scheme is Scheme.ZF:
        for node, h in enumerate(h_hat):
            if K > h.shape[1]:
                raise UnsupportedConfigurationError(
                    f"local ZF at node {node} needs K <= {h.shape[1]} antennas (K = {K})"
                )

    v = []
    for h, t in zip(h_hat, theta):
        if scheme is Scheme.MR:
            v.append(h.copy())
        elif scheme is Scheme.ZF:
            v.append(zero_forcing(h))
        else:
            v.append(_regularized_solve(h, np.tensordot(eta, t, axes=1), eta, p_u, sigma_z2))
    return CombinerSet(Mode.HIERARCHICAL, scheme, v=tuple(v))
