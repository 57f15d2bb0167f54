"""Network layouts and large-scale channel statistics.

A drop fixes node and user positions, shadowing and every spatial
correlation matrix. Node 0 is the central array whenever the configuration
has one; the remaining nodes are the distributed access points.
"""

from dataclasses import dataclass
from typing import List, Tuple, Union

import numpy as np
from scipy.linalg import toeplitz

from .config import SystemConfig
from .errors import DomainError

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class Layout:
    """Node and user placement of one drop."""

    node_positions: np.ndarray  # (n_nodes, 2) metres
    node_orientations: np.ndarray  # (n_nodes,) array broadside, radians
    node_antennas: Tuple[int, ...]
    user_positions: np.ndarray  # (K, 2) metres

    @property
    def n_nodes(self) -> int:
        return len(self.node_antennas)

    @property
    def n_users(self) -> int:
        return self.user_positions.shape[0]

    def distances(self) -> np.ndarray:
        """User-to-node distances, shape (K, n_nodes)."""
        delta = self.user_positions[:, None, :] - self.node_positions[None, :, :]
        return np.hypot(delta[..., 0], delta[..., 1])

    def nominal_angles(self) -> np.ndarray:
        """Azimuth of each user seen from each node's broadside, shape (K, n_nodes)."""
        delta = self.user_positions[:, None, :] - self.node_positions[None, :, :]
        return np.arctan2(delta[..., 1], delta[..., 0]) - self.node_orientations[None, :]


@dataclass(frozen=True)
class Drop:
    """One large-scale realization."""

    layout: Layout
    beta: np.ndarray  # (K, n_nodes) linear
    shadow_db: np.ndarray  # (K, n_nodes)
    R: Tuple[np.ndarray, ...]  # per node, (K, N_l, N_l)

    @property
    def node_positions(self) -> np.ndarray:
        return self.layout.node_positions

    @property
    def user_positions(self) -> np.ndarray:
        return self.layout.user_positions

    @property
    def node_antennas(self) -> Tuple[int, ...]:
        return self.layout.node_antennas

    @property
    def n_nodes(self) -> int:
        return self.layout.n_nodes

    @property
    def n_users(self) -> int:
        return self.layout.n_users

    def correlation(self, k: int, node: int) -> np.ndarray:
        return self.R[node][k]


def _uniform_disc(rng: np.random.Generator, count: int, radius: float) -> np.ndarray:
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, size=count))
    theta = rng.uniform(0.0, 2.0 * np.pi, size=count)
    return np.column_stack((r * np.cos(theta), r * np.sin(theta)))


def build_layout(config: SystemConfig, rng: np.random.Generator) -> Layout:
    """Place the central array, the access points and the users.

    The central array (if any) sits at the origin; access points and users
    are i.i.d. uniform over the disc. Every node gets a random broadside.
    """
    config.validate()
    central = np.zeros((1, 2)) if config.has_cbs else np.zeros((0, 2))
    aps = _uniform_disc(rng, config.L, config.cell_radius_m)
    node_positions = np.vstack((central, aps))
    n_nodes = node_positions.shape[0]
    orientations = rng.uniform(-np.pi, np.pi, size=n_nodes)
    users = _uniform_disc(rng, config.K, config.cell_radius_m)
    return Layout(
        node_positions=node_positions,
        node_orientations=orientations,
        node_antennas=config.node_antennas,
        user_positions=users,
    )


def path_loss_db(
    d: ArrayLike,
    l0_db: float = 140.72,
    d0_m: float = 10.0,
    d1_m: float = 50.0,
) -> ArrayLike:
    """Three-slope path loss in dB (a negative gain).

    Distances enter the logarithms in kilometres, which is the convention
    L0 = 140.72 dB is quoted in.
    """
    d_arr = np.asarray(d, dtype=float)
    if np.any(d_arr <= 0) or np.any(~np.isfinite(d_arr)):
        raise DomainError("path loss is defined for finite distances d > 0 only")
    d_km = d_arr / 1000.0
    d0 = d0_m / 1000.0
    d1 = d1_m / 1000.0
    far = -l0_db - 35.0 * np.log10(np.maximum(d_km, d1))
    mid = -l0_db - 10.0 * np.log10(d1**1.5 * np.clip(d_km, d0, d1) ** 2)
    near = -l0_db - 10.0 * np.log10(d1**1.5 * d0**2)
    value = np.where(d_km > d1, far, np.where(d_km > d0, mid, near))
    if np.ndim(d) == 0:
        return float(value)
    return value


def large_scale_coefficient(
    d: ArrayLike,
    rng: np.random.Generator,
    shadowing_std_db: float = 8.0,
    **path_loss_kwargs,
) -> Tuple[ArrayLike, ArrayLike]:
    """Large-scale gain beta = 10^((PL + X)/10) with log-normal shadowing X."""
    loss = path_loss_db(d, **path_loss_kwargs)
    shadow = rng.normal(0.0, shadowing_std_db, size=np.shape(loss))
    beta = 10.0 ** ((loss + shadow) / 10.0)
    if np.ndim(d) == 0:
        return float(beta), float(shadow)
    return beta, shadow


def local_scattering_covariance(
    beta: float, nominal_angle: float, asd: float, n_ant: int
) -> np.ndarray:
    """Gaussian local scattering correlation for a half-wavelength ULA.

    Entry (m, n) depends on m - n only, so the matrix is built as a
    Hermitian Toeplitz matrix from its first column.
    """
    if n_ant < 1:
        raise DomainError(f"n_ant must be at least 1, got {n_ant}")
    if beta < 0 or asd < 0:
        raise DomainError("beta and asd must be non-negative")
    lag = np.arange(n_ant)
    column = (
        beta
        * np.exp(1j * np.pi * lag * np.sin(nominal_angle))
        * np.exp(-0.5 * asd**2 * (np.pi * lag * np.cos(nominal_angle)) ** 2)
    )
    column[0] = beta
    return toeplitz(column, column.conj())


def generate_drop(config: SystemConfig, rng: np.random.Generator) -> Drop:
    """Draw a layout and all large-scale statistics for one drop."""
    layout = build_layout(config, rng)
    distances = layout.distances()
    beta, shadow = large_scale_coefficient(
        distances,
        rng,
        shadowing_std_db=config.shadowing_std_db,
        l0_db=config.path_loss_l0_db,
        d0_m=config.d0_m,
        d1_m=config.d1_m,
    )
    angles = layout.nominal_angles()
    asd = config.asd_rad

    R: List[np.ndarray] = []
    for node, n_ant in enumerate(layout.node_antennas):
        stack = np.empty((config.K, n_ant, n_ant), dtype=complex)
        for k in range(config.K):
            stack[k] = local_scattering_covariance(beta[k, node], angles[k, node], asd, n_ant)
        R.append(stack)

    return Drop(layout=layout, beta=beta, shadow_db=shadow, R=tuple(R))
