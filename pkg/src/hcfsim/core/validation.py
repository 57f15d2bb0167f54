"""Analytic and property checks run by ``hcfsim validate``."""

from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np
from scipy.linalg import block_diag

from .channel import ChannelSampler, assign_pilots, complex_normal
from .combining import centralized_combiner, zero_forcing
from .config import Architecture, Scheme, SystemConfig
from .cost import MethodType, complexity_table, fronthaul_overhead
from .performance import se_per_user, sinr_centralized
from .power import SinrCoefficients, maxmin_power_control
from .scenario import generate_drop, local_scattering_covariance, path_loss_db

# Published complexity grid at M=384, K=16, N_a=4, N_b=96, L=72, tau_u=192.
EXPECTED_COMPLEXITY = {
    MethodType.CENTRALIZED: {Scheme.MR: 6144, Scheme.ZF: 7189, Scheme.MMSE: 325632},
    MethodType.DISTRIBUTED_CF: {Scheme.MR: 6144, Scheme.ZF: 9216, Scheme.MMSE: 6432},
    MethodType.HCF: {Scheme.MR: 6144, Scheme.ZF: 8726, Scheme.MMSE: 12504},
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _small_system() -> SystemConfig:
    return SystemConfig(
        architecture=Architecture.HCF, M=16, N_b=8, L=2, N_a=4, K=4, tau_p=2, cell_radius_m=300.0
    )


def _realization(seed: int):
    config = _small_system()
    rng = np.random.default_rng(seed)
    drop = generate_drop(config, rng)
    sampler = ChannelSampler(drop, config, assign_pilots(config.K, config.tau_p))
    return config, sampler, sampler.realize(rng)


def check_complexity(seed: int) -> Tuple[bool, str]:
    table = complexity_table()
    mismatches = [
        f"{m.value}/{s.value}: {table[m][s]} != {expected}"
        for m, row in EXPECTED_COMPLEXITY.items()
        for s, expected in row.items()
        if table[m][s] != expected
    ]
    return not mismatches, "; ".join(mismatches) or "9/9 entries match"


def check_fronthaul(seed: int) -> Tuple[bool, str]:
    figures = {
        "HCF centralized": (fronthaul_overhead("HCF", "centralized", 72, 4, 384, 16, 8, 192), 57600),
        "HCF hierarchical": (fronthaul_overhead("HCF", "hierarchical", 72, 4, 384, 16, 8, 192), 221184),
        "CF centralized": (fronthaul_overhead("CF", "centralized", 96, 4, 384, 16, 8, 192), 76800),
    }
    bad = [f"{k}: {got} != {want}" for k, (got, want) in figures.items() if got != want]
    return not bad, "; ".join(bad) or "57600 / 221184 / 76800"


def check_path_loss(seed: int) -> Tuple[bool, str]:
    # The 10 m breakpoint has a 0.87 dB/m slope, so 1e-6 m steps move up to 8.7e-7 dB.
    eps = 1e-6
    jumps = [abs(path_loss_db(d - eps) - path_loss_db(d + eps)) for d in (10.0, 50.0)]
    at_km = path_loss_db(1000.0)
    passed = max(jumps) < 1e-6 and abs(at_km + 140.72) < 1e-9
    return passed, f"breakpoint jumps {max(jumps):.2e} dB, PL(1 km) = {at_km:.2f} dB"


def check_local_scattering(seed: int) -> Tuple[bool, str]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(20):
        beta = 10 ** rng.uniform(-14, -8)
        R = local_scattering_covariance(beta, rng.uniform(-np.pi, np.pi), np.radians(30), 8)
        worst = max(
            worst,
            np.max(np.abs(R - R.conj().T)) / beta,
            abs(np.trace(R).real - 8 * beta) / beta,
        )
    rank = np.linalg.matrix_rank(local_scattering_covariance(1.0, 0.3, 0.0, 8), tol=1e-9)
    return worst < 1e-12 and rank == 1, f"max relative error {worst:.2e}, rank at zero spread {rank}"


def check_estimate_covariance(seed: int) -> Tuple[bool, str]:
    config, sampler, _ = _realization(seed)
    estimator = sampler.estimator
    sigma_z2 = config.noise_power_w
    worst = 0.0
    for node, R in enumerate(sampler.drop.R):
        for k in range(config.K):
            members = sampler.assignment.members(sampler.assignment.pilot_of[k])
            gamma = config.p_u * config.tau_p * R[list(members)].sum(axis=0)
            gamma = gamma + sigma_z2 * np.eye(R.shape[1])
            cov = config.p_u * config.tau_p * R[k] @ np.linalg.solve(gamma, R[k])
            total = cov + estimator.theta[node][k]
            worst = max(worst, np.max(np.abs(total - R[k])) / np.max(np.abs(R[k])))
    return worst < 1e-8, f"max relative error {worst:.2e}"


def check_zero_forcing(seed: int) -> Tuple[bool, str]:
    rng = np.random.default_rng(seed)
    h_hat = complex_normal(rng, (4, 8))
    d = zero_forcing(h_hat)
    error = np.max(np.abs(d.conj() @ h_hat.T - np.eye(4)))
    return error < 1e-10, f"max |D^H H - I| = {error:.2e}"


def check_sinr_decomposition(seed: int) -> Tuple[bool, str]:
    config, _, state = _realization(seed)
    sigma_z2 = config.noise_power_w
    h_hat = state.stacked_estimates()
    d = centralized_combiner(h_hat, state.theta, None, config.p_u, sigma_z2, Scheme.MMSE).d
    eta = np.random.default_rng(seed).uniform(0.2, 1.0, config.K)
    gamma = sinr_centralized(d, h_hat, state.theta, eta, config.p_u, sigma_z2).sinr

    theta_full = [block_diag(*[theta[k] for theta in state.theta]) for k in range(config.K)]
    direct = np.empty(config.K)
    for k in range(config.K):
        matrix = sigma_z2 / config.p_u * np.eye(config.M)
        for j in range(config.K):
            matrix = matrix + eta[j] * theta_full[j]
            if j != k:
                matrix = matrix + eta[j] * np.outer(h_hat[j], h_hat[j].conj())
        direct[k] = eta[k] * abs(d[k].conj() @ h_hat[k]) ** 2 / (d[k].conj() @ matrix @ d[k]).real
    error = np.max(np.abs(gamma - direct) / direct)
    return error < 1e-9, f"max relative deviation {error:.2e}"


def check_mmse_dominance(seed: int) -> Tuple[bool, str]:
    config, _, state = _realization(seed)
    sigma_z2 = config.noise_power_w
    h_hat = state.stacked_estimates()
    gamma = {}
    for scheme in Scheme:
        d = centralized_combiner(h_hat, state.theta, None, config.p_u, sigma_z2, scheme).d
        gamma[scheme] = sinr_centralized(d, h_hat, state.theta, 1.0, config.p_u, sigma_z2).sinr
    slack = min(
        np.min(gamma[Scheme.MMSE] - gamma[s] * (1 - 1e-9)) for s in (Scheme.MR, Scheme.ZF)
    )
    return slack >= 0, f"smallest MMSE margin {slack:.3e}"


def check_maxmin_grid(seed: int) -> Tuple[bool, str]:
    rng = np.random.default_rng(seed)
    coefficients = SinrCoefficients(
        A=rng.uniform(0.5, 2.0, 2),
        B=rng.uniform(0.0, 0.5, (2, 2)),
        C=rng.uniform(0.0, 0.1, (2, 2)),
        D=rng.uniform(0.05, 0.2, 2),
    )
    solved = maxmin_power_control(coefficients, tol=1e-6).min_sinr
    grid = np.linspace(0.0, 1.0, 2001)
    best = 0.0
    for x in grid:
        for eta in ((1.0, x), (x, 1.0)):
            best = max(best, float(coefficients.sinr(np.array(eta)).min()))
    return solved >= best * (1 - 1e-3), f"bisection {solved:.6f} vs grid {best:.6f}"


def check_prefactor(seed: int) -> Tuple[bool, str]:
    report = se_per_user(np.ones(16), tau_p=8, tau_u=192)
    expected = 1.0 - 8 / 192
    error = np.max(np.abs(report.per_user_se - expected))
    return error < 1e-12, f"SE at SINR 1 = {report.per_user_se[0]:.6f}"


CHECKS: List[Tuple[str, Callable[[int], Tuple[bool, str]]]] = [
    ("complexity grid", check_complexity),
    ("fronthaul figures", check_fronthaul),
    ("path-loss continuity", check_path_loss),
    ("local scattering Hermitian and trace", check_local_scattering),
    ("estimate covariance plus error equals R", check_estimate_covariance),
    ("ZF annihilates other users", check_zero_forcing),
    ("SINR matches direct quadratic form", check_sinr_decomposition),
    ("MMSE dominates MR and ZF", check_mmse_dominance),
    ("max-min matches 2-user grid", check_maxmin_grid),
    ("SE pre-log factor", check_prefactor),
]


def run_checks(seed: int = 0) -> List[CheckResult]:
    """Run every check; an exception counts as a failure."""
    results = []
    for name, check in CHECKS:
        try:
            passed, detail = check(seed)
        except Exception as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        results.append(CheckResult(name=name, passed=bool(passed), detail=detail))
    return results
