"""Campaign orchestration: seeded drops, parallel execution, reduction."""

import hashlib
import math
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .channel import ChannelSampler, assign_pilots
from .combining import centralized_combiner, hierarchical_combiners
from .config import CampaignSpec, Mode, SePooling, SystemConfig, Variant
from .cost import CostReport, cost_report
from .errors import CampaignError, DegenerateDropError, ExportError, SimulationError
from .export import export_results
from .performance import (
    MomentAccumulator,
    centralized_coefficients,
    hierarchical_coefficients,
    se_per_user,
    sinr_centralized,
    sinr_hierarchical,
)
from .power import maxmin_power_control
from .scenario import generate_drop
from .stats import likely_se, percentile
from ..utils import drop_progress, verbose, warning


def variant_key(name: str) -> int:
    """Stable integer id of a variant name, used to key its seed substream."""
    return int.from_bytes(hashlib.sha256(name.encode("utf-8")).digest()[:8], "big")


def drop_rng(seed: int, name: str, drop_index: int, attempt: int = 0) -> np.random.Generator:
    """Independent generator for one (variant, drop, attempt)."""
    sequence = np.random.SeedSequence([seed, variant_key(name), drop_index, attempt])
    return np.random.default_rng(sequence)


@dataclass(frozen=True)
class DropOutcome:
    """Per-user SE of one drop and how many attempts were discarded.

    ``se_realizations`` holds prefactor * log2(1 + SINR) per realization,
    shape (n_samples, K); hierarchical drops have a single row.
    """

    drop_index: int
    se: np.ndarray
    resampled: int
    se_realizations: Optional[np.ndarray] = None


def _centralized_sinr(sampler, config: SystemConfig, variant: Variant, n_inner, rng) -> np.ndarray:
    sigma_z2 = config.noise_power_w
    gammas = []
    for _ in range(n_inner):
        state = sampler.realize(rng)
        h_hat = state.stacked_estimates()
        combiners = centralized_combiner(h_hat, state.theta, None, config.p_u, sigma_z2, variant.scheme)
        eta = np.ones(config.K)
        if variant.power_control:
            coefficients = centralized_coefficients(
                combiners.d, h_hat, state.theta, config.p_u, sigma_z2
            )
            eta = maxmin_power_control(coefficients).eta
        breakdown = sinr_centralized(combiners.d, h_hat, state.theta, eta, config.p_u, sigma_z2)
        gammas.append(breakdown.sinr)
    return np.asarray(gammas)


def _hierarchical_sinr(sampler, config: SystemConfig, variant: Variant, n_inner, rng) -> np.ndarray:
    sigma_z2 = config.noise_power_w
    accumulator = MomentAccumulator(config.K, sampler.drop.n_nodes)
    for _ in range(n_inner):
        state = sampler.realize(rng)
        combiners = hierarchical_combiners(
            state.h_hat, state.theta, None, config.p_u, sigma_z2, variant.scheme
        )
        accumulator.add(combiners, state)
    moments = accumulator.moments()

    eta = np.ones(config.K)
    if variant.power_control:
        coefficients = hierarchical_coefficients(
            moments, config.p_u, sigma_z2, config.min_moment_samples
        )
        eta = maxmin_power_control(coefficients).eta
    breakdown = sinr_hierarchical(moments, eta, config.p_u, sigma_z2, config.min_moment_samples)
    return breakdown.sinr[None, :]


def simulate_drop(
    config: SystemConfig,
    variant: Variant,
    n_inner: int,
    seed: int,
    drop_index: int,
    max_resamples: int = 0,
) -> DropOutcome:
    """Simulate one drop of one variant.

    A degenerate drop is redrawn from the next attempt substream, at most
    ``max_resamples`` times.
    """
    assignment = assign_pilots(config.K, config.tau_p, config.pilot_policy)
    for attempt in range(max_resamples + 1):
        rng = drop_rng(seed, variant.name, drop_index, attempt)
        try:
            drop = generate_drop(config, rng)
            sampler = ChannelSampler(drop, config, assignment)
            if variant.mode is Mode.HIERARCHICAL:
                gamma = _hierarchical_sinr(sampler, config, variant, n_inner, rng)
            else:
                gamma = _centralized_sinr(sampler, config, variant, n_inner, rng)
        except DegenerateDropError as e:
            if attempt == max_resamples:
                raise
            verbose(f"{variant.name}: drop {drop_index} degenerate ({e}), resampling")
            continue
        report = se_per_user(
            gamma, config.tau_p, config.tau_u, config.tau_c, config.prefactor_convention
        )
        return DropOutcome(
            drop_index=drop_index,
            se=report.per_user_se,
            resampled=attempt,
            se_realizations=report.prefactor * np.log2(1.0 + gamma),
        )
    raise AssertionError("unreachable")


@dataclass
class VariantResult:
    """Samples and headline metrics of one variant."""

    variant: Variant
    config: SystemConfig
    se_samples: np.ndarray  # (K, n_drops), or (K, n_drops * n_inner) pooled per realization
    capacity_samples: np.ndarray  # (n_drops,)
    cost: CostReport
    resampled_drops: int = 0

    @property
    def name(self) -> str:
        return self.variant.name

    @property
    def se_95_likely(self) -> float:
        return likely_se(self.se_samples, 95.0)

    @property
    def median_capacity(self) -> float:
        return percentile(self.capacity_samples, 50.0)

    def summary(self) -> Dict[str, float]:
        return {
            "se_95_likely": self.se_95_likely,
            "median_capacity": self.median_capacity,
            "resampled_drops": self.resampled_drops,
        }


@dataclass
class CampaignResult:
    """Results of every completed variant, in spec order."""

    spec: CampaignSpec
    variants: Dict[str, VariantResult] = field(default_factory=dict)
    runtime_s: float = 0.0

    def summaries(self) -> Dict[str, Dict[str, float]]:
        return {name: result.summary() for name, result in self.variants.items()}


def _reduce(
    variant: Variant,
    config: SystemConfig,
    outcomes: List[DropOutcome],
    pooling: SePooling = SePooling.DROP,
) -> VariantResult:
    outcomes = sorted(outcomes, key=lambda o: o.drop_index)
    se = np.stack([o.se for o in outcomes], axis=1)
    samples = se
    if pooling is SePooling.REALIZATION:
        samples = np.concatenate([o.se_realizations.T for o in outcomes], axis=1)
    return VariantResult(
        variant=variant,
        config=config,
        se_samples=samples,
        capacity_samples=se.sum(axis=0),
        cost=cost_report(config.architecture, variant.mode, variant.scheme, config),
        resampled_drops=sum(o.resampled for o in outcomes),
    )


def _run_tasks(tasks, workers: int, advance) -> Dict[Tuple[str, int], object]:
    """Run (variant, drop) tasks; values are DropOutcome or the raised error."""
    outcomes: Dict[Tuple[str, int], object] = {}
    if workers <= 1:
        for key, args in tasks:
            try:
                outcomes[key] = simulate_drop(*args)
            except SimulationError as e:
                outcomes[key] = e
            advance(1)
        return outcomes

    with ProcessPoolExecutor(max_workers=workers) as executor:
        future_to_key = {executor.submit(simulate_drop, *args): key for key, args in tasks}
        for future in as_completed(future_to_key):
            key = future_to_key[future]
            try:
                outcomes[key] = future.result()
            except SimulationError as e:
                outcomes[key] = e
            advance(1)
    return outcomes


def run_campaign(spec: CampaignSpec, export: bool = True) -> CampaignResult:
    """Simulate every variant of ``spec`` and write results when it has an output directory.

    Output depends only on the spec and its seed, not on ``spec.workers``.
    More degenerate drops than the budget, or any other simulation error,
    aborts with CampaignError carrying the variants that did complete.
    """
    spec.validate()
    started = time.perf_counter()
    budget = math.ceil(spec.degenerate_budget * spec.n_drops)
    configs = {variant.name: variant.resolve(spec.base) for variant in spec.variants}

    tasks = [
        (
            (variant.name, drop_index),
            (configs[variant.name], variant, spec.n_inner, spec.seed, drop_index, budget),
        )
        for variant in spec.variants
        for drop_index in range(spec.n_drops)
    ]
    verbose(
        f"{len(spec.variants)} variant(s) x {spec.n_drops} drop(s), "
        f"{spec.n_inner} realization(s) per drop, {spec.workers} worker(s)"
    )

    with drop_progress("Simulating drops", total=len(tasks)) as advance:
        outcomes = _run_tasks(tasks, spec.workers, advance)

    result = CampaignResult(spec=spec)
    for variant in spec.variants:
        per_drop = [outcomes[(variant.name, d)] for d in range(spec.n_drops)]
        failure: Optional[SimulationError] = next(
            (o for o in per_drop if isinstance(o, SimulationError)), None
        )
        if failure is not None:
            result.runtime_s = time.perf_counter() - started
            raise CampaignError(
                f"variant {variant.name} failed: {type(failure).__name__}: {failure}",
                partial_result=result,
            ) from failure

        variant_result = _reduce(variant, configs[variant.name], per_drop, spec.se_pooling)
        if variant_result.resampled_drops > budget:
            result.runtime_s = time.perf_counter() - started
            raise CampaignError(
                f"variant {variant.name} resampled {variant_result.resampled_drops} degenerate "
                f"drop(s), more than the budget of {budget}",
                partial_result=result,
            )
        if variant_result.resampled_drops:
            warning(f"{variant.name}: resampled {variant_result.resampled_drops} degenerate drop(s)")
        result.variants[variant.name] = variant_result

    result.runtime_s = time.perf_counter() - started
    if export and spec.output_dir is not None:
        try:
            export_results(result, spec.output_dir)
        except ExportError as e:
            raise CampaignError(str(e), partial_result=result) from e
    return result
