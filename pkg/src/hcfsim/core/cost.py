"""Computational complexity and fronthaul signaling overhead.

Complexity is counted in complex multiplications per uplink channel use:
combiner construction is amortized over the tau_u data symbols of a
coherence block and detection adds K*M per channel use.

Exact counts are kept as fractions. Reported integers follow two rules:

* a single processing site (centralized rows) reports the exact value
  rounded to the nearest integer;
* distributed rows charge every site the ceiling of its own amortized
  work, since a site cannot spend a fraction of a multiplication per
  channel use, and sum over sites.
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .config import Architecture, Mode, Scheme, SystemConfig
from .errors import ConfigurationError


class MethodType(str, Enum):
    CENTRALIZED = "centralized"
    DISTRIBUTED_CF = "distributed-cf"
    HCF = "hcf"


# Row labels of the complexity grid.
METHOD_LABELS = {
    MethodType.CENTRALIZED: "Centralized HCF/CF & Cellular",
    MethodType.DISTRIBUTED_CF: "Distributed CF",
    MethodType.HCF: "HCF",
}


@dataclass(frozen=True)
class CostReport:
    """Complexity and fronthaul cost of one processing choice."""

    architecture: Architecture
    mode: Mode
    scheme: Scheme
    complexity_exact: Fraction
    complexity_mults: int
    fronthaul_scalars: int

    def __post_init__(self):
        if self.complexity_exact < 0 or self.complexity_mults < 0 or self.fronthaul_scalars < 0:
            raise ValueError("cost figures must be non-negative")

    def to_dict(self) -> Dict[str, Union[str, int, float]]:
        return {
            "architecture": self.architecture.value,
            "mode": self.mode.value,
            "scheme": self.scheme.value,
            "complexity_exact": float(self.complexity_exact),
            "complexity_mults": self.complexity_mults,
            "fronthaul_scalars": self.fronthaul_scalars,
        }


def method_type_for(architecture: Architecture, mode: Mode) -> MethodType:
    """Complexity row that describes an architecture/mode pair."""
    architecture, mode = Architecture(architecture), Mode(mode)
    if mode is Mode.CENTRALIZED or architecture is Architecture.CELLULAR:
        return MethodType.CENTRALIZED
    if architecture is Architecture.CF:
        return MethodType.DISTRIBUTED_CF
    return MethodType.HCF


def _check_positive(**values: int) -> None:
    for name, value in values.items():
        if value is None or value < 1:
            raise ConfigurationError(f"{name} must be a positive integer, got {value}")


def _site_work(
    method_type: MethodType,
    scheme: Scheme,
    M: int,
    K: int,
    N_a: Optional[int],
    N_b: Optional[int],
    L: Optional[int],
    tau_u: int,
) -> List[Tuple[int, Fraction]]:
    """(number of sites, amortized combiner work per site) pairs."""
    if scheme is Scheme.MR:
        return []

    if method_type is MethodType.CENTRALIZED:
        if scheme is Scheme.ZF:
            work = 2 * K**2 * M + K**3
        else:
            work = M**3 + 2 * K * M**2
        return [(1, Fraction(work, tau_u))]

    if method_type is MethodType.DISTRIBUTED_CF:
        _check_positive(N_a=N_a)
        if M % N_a:
            raise ConfigurationError(f"M = {M} is not a multiple of N_a = {N_a}")
        n_sites = M // N_a
        if scheme is Scheme.ZF:
            work = 2 * K**2 * N_a + K**3
        else:
            work = N_a**3 + 2 * K * N_a**2
        return [(n_sites, Fraction(work, tau_u))]

    _check_positive(N_a=N_a, N_b=N_b, L=L)
    if N_b + L * N_a != M:
        raise ConfigurationError(f"N_b + L*N_a = {N_b + L * N_a} does not match M = {M}")
    if scheme is Scheme.ZF:
        edge = 2 * K**2 * N_a + K**3
        central = 2 * K**2 * N_b + K**3
    else:
        edge = N_a**3 + 2 * K * N_a**2
        central = N_b**3 + 2 * K * N_b**2
    return [(1, Fraction(central, tau_u)), (L, Fraction(edge, tau_u))]


def complexity_exact(
    method_type: Union[MethodType, str],
    scheme: Union[Scheme, str],
    M: int,
    K: int,
    N_a: Optional[int] = None,
    N_b: Optional[int] = None,
    L: Optional[int] = None,
    tau_u: int = 192,
) -> Fraction:
    """Exact complex multiplications per channel use."""
    method_type, scheme = _coerce(method_type, scheme)
    _check_positive(M=M, K=K, tau_u=tau_u)
    sites = _site_work(method_type, scheme, M, K, N_a, N_b, L, tau_u)
    return sum((n * work for n, work in sites), Fraction(0)) + K * M


def complexity_count(
    method_type: Union[MethodType, str],
    scheme: Union[Scheme, str],
    M: int,
    K: int,
    N_a: Optional[int] = None,
    N_b: Optional[int] = None,
    L: Optional[int] = None,
    tau_u: int = 192,
) -> int:
    """Reported complex multiplications per channel use.

    >>> complexity_count("centralized", "ZF", M=384, K=16, tau_u=192)
    7189
    """
    method_type, scheme = _coerce(method_type, scheme)
    _check_positive(M=M, K=K, tau_u=tau_u)
    sites = _site_work(method_type, scheme, M, K, N_a, N_b, L, tau_u)
    if method_type is MethodType.CENTRALIZED:
        exact = sum((n * work for n, work in sites), Fraction(0))
        return math.floor(exact + Fraction(1, 2)) + K * M
    return sum(n * math.ceil(work) for n, work in sites) + K * M


def _coerce(method_type, scheme) -> Tuple[MethodType, Scheme]:
    try:
        return MethodType(method_type), Scheme(scheme)
    except ValueError as e:
        raise ConfigurationError(f"unknown complexity row ({method_type}, {scheme})") from e


def fronthaul_overhead(
    architecture: Union[Architecture, str],
    mode: Union[Mode, str],
    L: int,
    N_a: int,
    M: int,
    K: int,
    tau_p: int,
    tau_u: int,
) -> int:
    """Complex scalars sent over the fronthaul per coherence block.

    Centralized processing forwards the raw pilot and data signals of every
    distributed antenna; hierarchical processing forwards one soft estimate
    per user per channel use. Cellular has no fronthaul.
    """
    architecture, mode = Architecture(architecture), Mode(mode)
    if architecture is Architecture.CELLULAR:
        return 0
    if architecture is Architecture.CF:
        if mode is Mode.CENTRALIZED:
            return M * (tau_p + tau_u)
        return M * tau_u
    if mode is Mode.CENTRALIZED:
        return L * N_a * (tau_p + tau_u)
    return K * L * tau_u


def cost_report(
    architecture: Union[Architecture, str],
    mode: Union[Mode, str],
    scheme: Union[Scheme, str],
    config: SystemConfig,
) -> CostReport:
    """Both cost figures for a processing choice on a resolved system."""
    architecture, mode, scheme = Architecture(architecture), Mode(mode), Scheme(scheme)
    method_type = method_type_for(architecture, mode)
    args = dict(
        M=config.M,
        K=config.K,
        N_a=config.N_a,
        N_b=config.N_b,
        L=config.L,
        tau_u=config.tau_u,
    )
    return CostReport(
        architecture=architecture,
        mode=mode,
        scheme=scheme,
        complexity_exact=complexity_exact(method_type, scheme, **args),
        complexity_mults=complexity_count(method_type, scheme, **args),
        fronthaul_scalars=fronthaul_overhead(
            architecture,
            mode,
            L=config.L,
            N_a=config.N_a,
            M=config.M,
            K=config.K,
            tau_p=config.tau_p,
            tau_u=config.tau_u,
        ),
    )


def complexity_table(
    M: int = 384,
    K: int = 16,
    N_a: int = 4,
    N_b: int = 96,
    L: int = 72,
    tau_u: int = 192,
) -> Dict[MethodType, Dict[Scheme, int]]:
    """Reported counts for every method type and scheme."""
    return {
        method_type: {
            scheme: complexity_count(method_type, scheme, M, K, N_a, N_b, L, tau_u)
            for scheme in Scheme
        }
        for method_type in MethodType
    }


def fronthaul_table(
    M: int = 384,
    K: int = 16,
    N_a: int = 4,
    N_b: int = 96,
    L: int = 72,
    tau_p: int = 8,
    tau_u: int = 192,
) -> Dict[str, int]:
    """Fronthaul scalars per block for the deployable architecture/mode pairs."""
    cf_sites = M // N_a
    return {
        "HCF centralized": fronthaul_overhead("HCF", "centralized", L, N_a, M, K, tau_p, tau_u),
        "HCF hierarchical": fronthaul_overhead("HCF", "hierarchical", L, N_a, M, K, tau_p, tau_u),
        "CF centralized": fronthaul_overhead("CF", "centralized", cf_sites, N_a, M, K, tau_p, tau_u),
        "CF local": fronthaul_overhead("CF", "hierarchical", cf_sites, N_a, M, K, tau_p, tau_u),
        "Cellular": fronthaul_overhead("Cellular", "centralized", 0, N_a, M, K, tau_p, tau_u),
    }
