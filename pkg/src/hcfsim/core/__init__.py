"""Core simulation modules for hcfsim."""

from .config import (
    Architecture,
    CampaignSpec,
    Mode,
    PilotPolicy,
    PrefactorConvention,
    Scheme,
    SePooling,
    SystemConfig,
    Variant,
    default_campaign,
    default_variants,
    load_config,
    parse_campaign,
)
from .errors import *  # noqa: F401,F403
from .errors import __all__ as _error_names
from .scenario import Drop, Layout, generate_drop, path_loss_db
from .channel import ChannelSampler, ChannelState, assign_pilots, mmse_estimate
from .combining import CombinerSet, centralized_combiner, hierarchical_combiners
from .power import PowerCoefficients, SinrCoefficients, maxmin_power_control
from .performance import SinrBreakdown, SEReport, se_per_user, sinr_centralized, sinr_hierarchical
from .cost import CostReport, MethodType, complexity_count, cost_report, fronthaul_overhead
from .stats import empirical_cdf, percentile
from .export import export_results
from .campaign import CampaignResult, VariantResult, run_campaign, simulate_drop
from .validation import CheckResult, run_checks

__all__ = [
    "Architecture",
    "CampaignSpec",
    "Mode",
    "PilotPolicy",
    "PrefactorConvention",
    "Scheme",
    "SePooling",
    "SystemConfig",
    "Variant",
    "default_campaign",
    "default_variants",
    "load_config",
    "parse_campaign",
    "Drop",
    "Layout",
    "generate_drop",
    "path_loss_db",
    "ChannelSampler",
    "ChannelState",
    "assign_pilots",
    "mmse_estimate",
    "CombinerSet",
    "centralized_combiner",
    "hierarchical_combiners",
    "PowerCoefficients",
    "SinrCoefficients",
    "maxmin_power_control",
    "SinrBreakdown",
    "SEReport",
    "se_per_user",
    "sinr_centralized",
    "sinr_hierarchical",
    "CostReport",
    "MethodType",
    "complexity_count",
    "cost_report",
    "fronthaul_overhead",
    "empirical_cdf",
    "percentile",
    "export_results",
    "CampaignResult",
    "VariantResult",
    "run_campaign",
    "simulate_drop",
    "CheckResult",
    "run_checks",
] + list(_error_names)
