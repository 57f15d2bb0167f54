"""Small-scale fading, pilot observations and linear MMSE estimation."""

from dataclasses import dataclass
from typing import FrozenSet, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .config import PilotPolicy, SystemConfig
from .errors import ConfigurationError, DimensionError, NumericalError
from .scenario import Drop

NodeArrays = Tuple[np.ndarray, ...]

# Eigenvalues above -EIG_CLAMP * trace are treated as round-off and zeroed.
EIG_CLAMP = 1e-12


@dataclass(frozen=True)
class PilotAssignment:
    """Which orthogonal pilot each user sends, and who shares it."""

    tau_p: int
    pilot_of: Tuple[int, ...]
    cohorts: Tuple[FrozenSet[int], ...]

    @property
    def n_users(self) -> int:
        return len(self.pilot_of)

    @property
    def pilots_in_use(self) -> Tuple[int, ...]:
        return tuple(sorted(set(self.pilot_of)))

    def cohort(self, k: int) -> FrozenSet[int]:
        return self.cohorts[k]

    def members(self, pilot: int) -> Tuple[int, ...]:
        return tuple(k for k, t in enumerate(self.pilot_of) if t == pilot)


def assign_pilots(
    K: int, tau_p: int, policy: Union[PilotPolicy, str] = PilotPolicy.MODULO
) -> PilotAssignment:
    """Assign pilot ``k mod tau_p`` to user k."""
    if K < 1 or tau_p < 1:
        raise ConfigurationError(f"need K >= 1 and tau_p >= 1 (got K = {K}, tau_p = {tau_p})")
    if PilotPolicy(policy) is not PilotPolicy.MODULO:
        raise ConfigurationError(f"unsupported pilot policy: {policy}")
    pilot_of = tuple(k % tau_p for k in range(K))
    groups = {}
    for k, t in enumerate(pilot_of):
        groups.setdefault(t, set()).add(k)
    cohorts = tuple(frozenset(groups[t]) for t in pilot_of)
    return PilotAssignment(tau_p=tau_p, pilot_of=pilot_of, cohorts=cohorts)


def complex_normal(
    rng: np.random.Generator, shape, variance: float = 1.0
) -> np.ndarray:
    """Circularly-symmetric complex Gaussian samples."""
    scale = np.sqrt(variance / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def correlation_sqrt(R: np.ndarray) -> np.ndarray:
    """Hermitian square root of a PSD correlation matrix.

    Slightly negative eigenvalues from round-off are clamped to zero; a
    genuinely indefinite input raises NumericalError.
    """
    R = np.asarray(R)
    if R.ndim != 2 or R.shape[0] != R.shape[1]:
        raise DimensionError(f"correlation matrix must be square, got shape {R.shape}")
    eigvals, eigvecs = np.linalg.eigh(0.5 * (R + R.conj().T))
    tolerance = EIG_CLAMP * max(float(np.real(np.trace(R))), 0.0)
    if eigvals.size and eigvals.min() < -tolerance:
        raise NumericalError(
            f"correlation matrix is indefinite (min eigenvalue {eigvals.min():.3e})"
        )
    eigvals = np.clip(eigvals, 0.0, None)
    return (eigvecs * np.sqrt(eigvals)) @ eigvecs.conj().T


def sample_channel(
    R: np.ndarray, rng: np.random.Generator, size: Optional[int] = None
) -> np.ndarray:
    """Draw h ~ CN(0, R); with ``size`` returns an array of shape (size, N)."""
    root = correlation_sqrt(R)
    n = root.shape[0]
    if size is None:
        return root @ complex_normal(rng, n)
    return complex_normal(rng, (size, n)) @ root.T


def pilot_observation(
    drop: Drop,
    channels: Sequence[np.ndarray],
    assignment: PilotAssignment,
    p_u: float,
    sigma_z2: float,
    rng: np.random.Generator,
) -> NodeArrays:
    """Despread pilot signal per pilot and node.

    Returns one (tau_p, N_l) array per node; row t is the observation of the
    cohort that sends pilot t. Users sharing a pilot see the same row.
    """
    tau_p = assignment.tau_p
    pilot_index = np.asarray(assignment.pilot_of)
    psi = []
    for node, n_ant in enumerate(drop.node_antennas):
        h = np.asarray(channels[node])
        if h.shape != (drop.n_users, n_ant):
            raise DimensionError(
                f"node {node}: expected channels of shape {(drop.n_users, n_ant)}, got {h.shape}"
            )
        summed = np.zeros((tau_p, n_ant), dtype=complex)
        np.add.at(summed, pilot_index, h)
        noise = complex_normal(rng, (tau_p, n_ant), variance=tau_p * sigma_z2)
        psi.append(np.sqrt(p_u) * tau_p * summed + noise)
    return tuple(psi)


class MmseEstimator:
    """Linear MMSE estimator for one drop.

    The pilot covariance only depends on large-scale statistics, so each
    (pilot, node) covariance is factorized once and reused for every
    realization of the drop.
    """

    def __init__(
        self,
        drop: Drop,
        assignment: PilotAssignment,
        p_u: float,
        tau_p: int,
        sigma_z2: float,
    ):
        if assignment.n_users != drop.n_users:
            raise DimensionError("pilot assignment and drop disagree on the number of users")
        self.drop = drop
        self.assignment = assignment
        self.p_u = p_u
        self.tau_p = tau_p
        self.sigma_z2 = sigma_z2
        self._pilot_index = np.asarray(assignment.pilot_of)

        weights = []
        theta = []
        for node, n_ant in enumerate(drop.node_antennas):
            R = drop.R[node]
            W = np.empty_like(R)
            T = np.empty_like(R)
            for pilot in assignment.pilots_in_use:
                members = assignment.members(pilot)
                gamma = p_u * tau_p * R[list(members)].sum(axis=0) + sigma_z2 * np.eye(n_ant)
                try:
                    factor = cho_factor(gamma, lower=True)
                except LinAlgError as e:
                    raise NumericalError(
                        f"pilot covariance of pilot {pilot} at node {node} is singular"
                    ) from e
                for k in members:
                    gamma_inv_r = cho_solve(factor, R[k])
                    W[k] = np.sqrt(p_u) * gamma_inv_r.conj().T
                    error = R[k] - p_u * tau_p * R[k] @ gamma_inv_r
                    T[k] = 0.5 * (error + error.conj().T)
            weights.append(W)
            theta.append(T)
        self.weights: NodeArrays = tuple(weights)
        self.theta: NodeArrays = tuple(theta)

    def estimate_covariance(self, k: int, node: int) -> np.ndarray:
        """Covariance of the estimate, p_u tau_p R Gamma^-1 R."""
        return self.drop.R[node][k] - self.theta[node][k]

    def estimate(self, psi: Sequence[np.ndarray]) -> NodeArrays:
        """Apply sqrt(p_u) R Gamma^-1 to each user's pilot observation."""
        h_hat = []
        for node, W in enumerate(self.weights):
            observed = np.asarray(psi[node])[self._pilot_index]
            h_hat.append(np.einsum("kij,kj->ki", W, observed))
        return tuple(h_hat)


def mmse_estimate(
    psi: Sequence[np.ndarray],
    drop: Drop,
    assignment: PilotAssignment,
    p_u: float,
    tau_p: int,
    sigma_z2: float,
) -> Tuple[NodeArrays, NodeArrays]:
    """Channel estimates and error covariances for every (user, node)."""
    estimator = MmseEstimator(drop, assignment, p_u, tau_p, sigma_z2)
    return estimator.estimate(psi), estimator.theta


@dataclass(frozen=True)
class ChannelState:
    """One small-scale realization with its pilot phase and estimates."""

    h: NodeArrays
    psi: NodeArrays
    h_hat: NodeArrays
    theta: NodeArrays

    @property
    def node_sizes(self) -> Tuple[int, ...]:
        return tuple(x.shape[1] for x in self.h)

    @property
    def n_users(self) -> int:
        return self.h[0].shape[0]

    def stacked_channels(self) -> np.ndarray:
        """Collective channels, shape (K, M), nodes concatenated in order."""
        return np.concatenate(self.h, axis=1)

    def stacked_estimates(self) -> np.ndarray:
        return np.concatenate(self.h_hat, axis=1)


class ChannelSampler:
    """Draws independent coherence blocks for one drop."""

    def __init__(self, drop: Drop, config: SystemConfig, assignment: PilotAssignment):
        self.drop = drop
        self.config = config
        self.assignment = assignment
        self.estimator = MmseEstimator(
            drop, assignment, config.p_u, config.tau_p, config.noise_power_w
        )
        self._roots = tuple(
            np.stack([correlation_sqrt(R_k) for R_k in R]) for R in drop.R
        )

    def sample_channels(self, rng: np.random.Generator) -> NodeArrays:
        channels = []
        for root in self._roots:
            w = complex_normal(rng, root.shape[:2])
            channels.append(np.einsum("kij,kj->ki", root, w))
        return tuple(channels)

    def realize(self, rng: np.random.Generator) -> ChannelState:
        h = self.sample_channels(rng)
        psi = pilot_observation(
            self.drop,
            h,
            self.assignment,
            self.config.p_u,
            self.config.noise_power_w,
            rng,
        )
        return ChannelState(h=h, psi=psi, h_hat=self.estimator.estimate(psi), theta=self.estimator.theta)
