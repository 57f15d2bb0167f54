"""SINR, spectral efficiency and large-scale fading decoding."""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from .channel import ChannelState, complex_normal
from .combining import CombinerSet
from .config import PrefactorConvention
from .errors import DimensionError, EmptySampleError, InsufficientSamplesError
from .power import SinrCoefficients


@dataclass(frozen=True)
class SinrBreakdown:
    """Per-user SINR with its variance terms (all arrays of shape (K,)).

    Terms are normalized by p_u, so the noise term carries sigma_z^2 / p_u.
    """

    signal: np.ndarray
    est_error_term: np.ndarray
    interference_term: np.ndarray
    noise_term: np.ndarray
    sinr: np.ndarray

    @classmethod
    def from_terms(cls, signal, est_error_term, interference_term, noise_term) -> "SinrBreakdown":
        denominator = est_error_term + interference_term + noise_term
        return cls(
            signal=signal,
            est_error_term=est_error_term,
            interference_term=interference_term,
            noise_term=noise_term,
            sinr=signal / denominator,
        )


@dataclass(frozen=True)
class SEReport:
    """Spectral efficiency per user and its sum (bps/Hz)."""

    per_user_se: np.ndarray
    capacity: float
    prefactor: float


def _theta_quadratics(combiners: Sequence[np.ndarray], theta: Sequence[np.ndarray]) -> np.ndarray:
    """Q[k, k'] = sum over nodes of v_k^H Theta_k' v_k."""
    K = combiners[0].shape[0]
    Q = np.zeros((K, K))
    for v, t in zip(combiners, theta):
        Q += np.einsum("ki,jil,kl->kj", v.conj(), t, v).real
    return Q


def _centralized_terms(d, h_hat, theta):
    gains = d.conj() @ h_hat.T  # gains[k, k'] = d_k^H h_hat_k'
    power = np.abs(gains) ** 2
    node_sizes = [t.shape[1] for t in theta]
    if sum(node_sizes) != d.shape[1] or d.shape != h_hat.shape:
        raise DimensionError("combiners, estimates and error covariances disagree on M")
    d_nodes = np.split(d, np.cumsum(node_sizes)[:-1], axis=1)
    quad = _theta_quadratics(d_nodes, theta)
    norms = np.sum(np.abs(d) ** 2, axis=1)
    return power, quad, norms


def sinr_centralized(
    d: np.ndarray,
    h_hat: np.ndarray,
    theta: Sequence[np.ndarray],
    eta,
    p_u: float,
    sigma_z2: float,
) -> SinrBreakdown:
    """Instantaneous effective SINR of centralized combining.

    Split as desired signal, own estimation error, inter-user interference
    (estimate plus error of the other users) and coloured noise.
    """
    K = d.shape[0]
    eta = np.broadcast_to(np.asarray(eta, dtype=float), (K,))
    power, quad, norms = _centralized_terms(d, h_hat, theta)
    own = np.diag(power)
    own_error = np.diag(quad)
    others = (power + quad) @ eta - eta * (own + own_error)
    return SinrBreakdown.from_terms(
        signal=eta * own,
        est_error_term=eta * own_error,
        interference_term=others,
        noise_term=sigma_z2 / p_u * norms,
    )


def centralized_coefficients(
    d: np.ndarray,
    h_hat: np.ndarray,
    theta: Sequence[np.ndarray],
    p_u: float,
    sigma_z2: float,
) -> SinrCoefficients:
    """Power-control decomposition of the centralized SINR for fixed combiners."""
    power, quad, norms = _centralized_terms(d, h_hat, theta)
    B = power.copy()
    np.fill_diagonal(B, 0.0)
    return SinrCoefficients(A=np.diag(power).copy(), B=B, C=quad, D=sigma_z2 / p_u * norms)


@dataclass(frozen=True)
class HierarchicalMoments:
    """Drop-conditional moments of local combining, as inner-loop sample means.

    gain_mean[k, l]         E[v_kl^H h_hat_kl]
    cross_power[k, k', l]   E[|v_kl^H h_hat_k'l|^2]
    theta_quad[k, k', l]    E[v_kl^H Theta_k'l v_kl]
    norm_sq[k, l]           E[||v_kl||^2]
    """

    gain_mean: np.ndarray
    cross_power: np.ndarray
    theta_quad: np.ndarray
    norm_sq: np.ndarray
    n_samples: int


class MomentAccumulator:
    """Running sums over the small-scale realizations of one drop."""

    def __init__(self, n_users: int, n_nodes: int):
        self.n_users = n_users
        self.n_nodes = n_nodes
        self._gain = np.zeros((n_users, n_nodes), dtype=complex)
        self._cross = np.zeros((n_users, n_users, n_nodes))
        self._theta = np.zeros((n_users, n_users, n_nodes))
        self._norm = np.zeros((n_users, n_nodes))
        self.count = 0

    def add(self, combiners: Union[CombinerSet, Sequence[np.ndarray]], state: ChannelState) -> None:
        v_nodes = combiners.per_node(state.node_sizes) if isinstance(combiners, CombinerSet) else combiners
        if len(v_nodes) != self.n_nodes:
            raise DimensionError(f"expected combiners for {self.n_nodes} nodes, got {len(v_nodes)}")
        for node, (v, h_hat, theta) in enumerate(zip(v_nodes, state.h_hat, state.theta)):
            gains = v.conj() @ h_hat.T
            self._gain[:, node] += np.diag(gains)
            self._cross[:, :, node] += np.abs(gains) ** 2
            self._theta[:, :, node] += np.einsum("ki,jil,kl->kj", v.conj(), theta, v).real
            self._norm[:, node] += np.sum(np.abs(v) ** 2, axis=1)
        self.count += 1

    def moments(self) -> HierarchicalMoments:
        if self.count == 0:
            raise InsufficientSamplesError("no realizations accumulated")
        n = self.count
        return HierarchicalMoments(
            gain_mean=self._gain / n,
            cross_power=self._cross / n,
            theta_quad=self._theta / n,
            norm_sq=self._norm / n,
            n_samples=n,
        )


def _hierarchical_terms(moments: HierarchicalMoments, min_samples: int):
    if moments.n_samples < min_samples:
        raise InsufficientSamplesError(
            f"drop-level moments need at least {min_samples} realizations, "
            f"got {moments.n_samples}"
        )
    coherent = np.abs(moments.gain_mean.sum(axis=1)) ** 2
    cross = moments.cross_power.sum(axis=2)
    coherent_per_node = np.sum(np.abs(moments.gain_mean) ** 2, axis=1)
    quad = moments.theta_quad.sum(axis=2)
    norms = moments.norm_sq.sum(axis=1)
    return coherent, cross, coherent_per_node, quad, norms


def sinr_hierarchical(
    moments: HierarchicalMoments,
    eta,
    p_u: float,
    sigma_z2: float,
    min_samples: int = 50,
) -> SinrBreakdown:
    """Effective SINR of local combining with large-scale fading decoding.

    The interference term is the total second moment over all users minus
    the user's own per-node coherent gains; one value per user per drop.
    """
    coherent, cross, coherent_per_node, quad, norms = _hierarchical_terms(moments, min_samples)
    K = coherent.shape[0]
    eta = np.broadcast_to(np.asarray(eta, dtype=float), (K,))
    interference = cross @ eta - eta * coherent_per_node
    return SinrBreakdown.from_terms(
        signal=eta * coherent,
        est_error_term=quad @ eta,
        interference_term=np.maximum(interference, 0.0),
        noise_term=sigma_z2 / p_u * norms,
    )


def hierarchical_coefficients(
    moments: HierarchicalMoments,
    p_u: float,
    sigma_z2: float,
    min_samples: int = 50,
) -> SinrCoefficients:
    """Power-control decomposition of the hierarchical SINR."""
    coherent, cross, coherent_per_node, quad, norms = _hierarchical_terms(moments, min_samples)
    B = cross.copy()
    np.fill_diagonal(B, 0.0)
    C = quad.copy()
    C[np.diag_indices_from(C)] += np.maximum(np.diag(cross) - coherent_per_node, 0.0)
    return SinrCoefficients(A=coherent, B=B, C=C, D=sigma_z2 / p_u * norms)


def prefactor_for(
    tau_p: int,
    tau_u: int,
    tau_c: Optional[int] = None,
    convention: Union[PrefactorConvention, str] = PrefactorConvention.UPLINK,
) -> float:
    """Pre-log factor; the default convention is 1 - tau_p / tau_u."""
    if PrefactorConvention(convention) is PrefactorConvention.COHERENCE:
        if tau_c is None:
            raise ValueError("the coherence convention needs tau_c")
        return 1.0 - tau_p / tau_c
    return 1.0 - tau_p / tau_u


def se_per_user(
    gamma_samples,
    tau_p: int,
    tau_u: int,
    tau_c: Optional[int] = None,
    convention: Union[PrefactorConvention, str] = PrefactorConvention.UPLINK,
) -> SEReport:
    """Average log2(1 + SINR) over samples, scaled by the pre-log factor.

    ``gamma_samples`` has shape (n_samples, K); a 1-D array is one sample.
    """
    gamma = np.asarray(gamma_samples, dtype=float)
    if gamma.ndim == 1:
        gamma = gamma[None, :]
    if gamma.size == 0:
        raise EmptySampleError("no SINR samples to average")
    prefactor = prefactor_for(tau_p, tau_u, tau_c, convention)
    se = prefactor * np.mean(np.log2(1.0 + gamma), axis=0)
    return SEReport(per_user_se=se, capacity=float(np.sum(se)), prefactor=prefactor)


def synthesize_uplink(
    state: ChannelState,
    eta,
    p_u: float,
    sigma_z2: float,
    symbols: np.ndarray,
    rng: Optional[np.random.Generator] = None,
) -> Tuple[np.ndarray, ...]:
    """Received data signal at every node for one channel use.

    With ``rng`` None the noise is left out.
    """
    K = state.n_users
    eta = np.broadcast_to(np.asarray(eta, dtype=float), (K,))
    transmitted = np.sqrt(p_u * eta) * np.asarray(symbols)
    received = []
    for h in state.h:
        y = h.T @ transmitted
        if rng is not None:
            y = y + complex_normal(rng, h.shape[1], variance=sigma_z2)
        received.append(y)
    return tuple(received)


def lsfd_soft_estimate(
    combiners: Union[CombinerSet, Sequence[np.ndarray]],
    received: Sequence[np.ndarray],
) -> np.ndarray:
    """Sum of local soft estimates v_kl^H y_l over all nodes, shape (K,)."""
    if isinstance(combiners, CombinerSet):
        combiners = combiners.per_node([np.shape(y)[0] for y in received])
    if len(combiners) != len(received):
        raise DimensionError(
            f"{len(combiners)} combiner blocks for {len(received)} received signals"
        )
    estimate = None
    for node, (v, y) in enumerate(zip(combiners, received)):
        if v.shape[1] != np.shape(y)[0]:
            raise DimensionError(
                f"node {node}: combiner length {v.shape[1]} vs signal length {np.shape(y)[0]}"
            )
        local = v.conj() @ y
        estimate = local if estimate is None else estimate + local
    return estimate
