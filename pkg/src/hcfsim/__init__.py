"""hcfsim - uplink simulator for hierarchical cell-free massive MIMO"""

__version__ = "1.0.0"

from .core.config import (
    Architecture,
    CampaignSpec,
    Mode,
    Scheme,
    SystemConfig,
    Variant,
    default_campaign,
    load_config,
)
from .core.env import env
from .core.campaign import CampaignResult, VariantResult, run_campaign
from .core.cost import CostReport, complexity_count, cost_report, fronthaul_overhead

__all__ = [
    "Architecture",
    "CampaignSpec",
    "Mode",
    "Scheme",
    "SystemConfig",
    "Variant",
    "default_campaign",
    "load_config",
    "env",
    # Campaigns
    "CampaignResult",
    "VariantResult",
    "run_campaign",
    # Cost model
    "CostReport",
    "complexity_count",
    "cost_report",
    "fronthaul_overhead",
    "__version__",
]
