"""Configuration management for hcfsim campaigns."""

import dataclasses
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import yaml

from .errors import ConfigurationError, UnsupportedConfigurationError


class Architecture(str, Enum):
    HCF = "HCF"
    CF = "CF"
    CELLULAR = "Cellular"


class Mode(str, Enum):
    CENTRALIZED = "centralized"
    HIERARCHICAL = "hierarchical"


class Scheme(str, Enum):
    MR = "MR"
    ZF = "ZF"
    MMSE = "MMSE"


class PilotPolicy(str, Enum):
    MODULO = "modulo"


class PrefactorConvention(str, Enum):
    UPLINK = "uplink"
    COHERENCE = "coherence"


class SePooling(str, Enum):
    DROP = "drop"
    REALIZATION = "realization"


def _coerce_enum(enum_cls, value, name: str):
    if isinstance(value, enum_cls):
        return value
    for member in enum_cls:
        if str(value).lower() in (member.value.lower(), member.name.lower()):
            return member
    allowed = ", ".join(m.value for m in enum_cls)
    raise ConfigurationError(f"{name} must be one of {allowed}, got {value!r}")


@dataclass(frozen=True)
class SystemConfig:
    """Network, frame and propagation parameters of one system.

    Field names follow the usual notation (``M``, ``N_b``, ``tau_p``...) so
    configuration files read like the system model.
    """

    architecture: Architecture = Architecture.HCF
    M: int = 384
    N_b: int = 96
    L: int = 72
    N_a: int = 4
    K: int = 16
    tau_c: int = 200
    tau_p: int = 8
    tau_u: int = 192
    p_u: float = 0.2
    noise_psd_dbm_hz: float = -174.0
    noise_figure_db: float = 9.0
    bandwidth_hz: float = 5e6
    cell_radius_m: float = 2000.0
    asd_deg: float = 30.0
    shadowing_std_db: float = 8.0
    # Recorded for provenance; the path-loss model takes path_loss_l0_db directly.
    carrier_ghz: float = 1.9
    bs_height_m: float = 15.0
    ue_height_m: float = 1.65
    path_loss_l0_db: float = 140.72
    d0_m: float = 10.0
    d1_m: float = 50.0
    pilot_policy: PilotPolicy = PilotPolicy.MODULO
    prefactor_convention: PrefactorConvention = PrefactorConvention.UPLINK
    min_moment_samples: int = 50
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(
            self, "architecture", _coerce_enum(Architecture, self.architecture, "architecture")
        )
        object.__setattr__(
            self, "pilot_policy", _coerce_enum(PilotPolicy, self.pilot_policy, "pilot_policy")
        )
        object.__setattr__(
            self,
            "prefactor_convention",
            _coerce_enum(PrefactorConvention, self.prefactor_convention, "prefactor_convention"),
        )
        self.validate()

    def validate(self) -> None:
        """Raise ConfigurationError if the parameters are inconsistent."""
        for name in ("M", "K", "tau_c", "tau_p", "tau_u", "N_a", "min_moment_samples"):
            if getattr(self, name) < 1:
                raise ConfigurationError(f"{name} must be positive, got {getattr(self, name)}")
        for name in ("N_b", "L"):
            if getattr(self, name) < 0:
                raise ConfigurationError(f"{name} must be non-negative, got {getattr(self, name)}")
        if self.N_b + self.L * self.N_a != self.M:
            raise ConfigurationError(
                f"antenna split N_b + L*N_a = {self.N_b + self.L * self.N_a} "
                f"does not match M = {self.M}"
            )
        if self.tau_p + self.tau_u > self.tau_c:
            raise ConfigurationError(
                f"tau_p + tau_u = {self.tau_p + self.tau_u} exceeds tau_c = {self.tau_c}"
            )
        if self.architecture is Architecture.CELLULAR and (self.L != 0 or self.N_b != self.M):
            raise ConfigurationError("Cellular architecture requires L = 0 and N_b = M")
        if self.architecture is Architecture.CF and self.N_b != 0:
            raise ConfigurationError("CF architecture requires N_b = 0")
        if self.architecture is Architecture.HCF and (self.N_b == 0 or self.L == 0):
            raise ConfigurationError("HCF architecture requires N_b > 0 and L > 0")
        for name in ("p_u", "bandwidth_hz", "cell_radius_m", "d0_m", "d1_m"):
            if getattr(self, name) <= 0:
                raise ConfigurationError(f"{name} must be positive, got {getattr(self, name)}")
        if self.d0_m >= self.d1_m:
            raise ConfigurationError("path-loss breakpoints require d0_m < d1_m")
        if self.asd_deg < 0 or self.shadowing_std_db < 0:
            raise ConfigurationError("asd_deg and shadowing_std_db must be non-negative")

    @property
    def noise_power_w(self) -> float:
        """Receiver noise power sigma_z^2 in watts."""
        dbm = self.noise_psd_dbm_hz + 10.0 * math.log10(self.bandwidth_hz) + self.noise_figure_db
        return 10.0 ** ((dbm - 30.0) / 10.0)

    @property
    def asd_rad(self) -> float:
        return math.radians(self.asd_deg)

    @property
    def has_cbs(self) -> bool:
        """True when a co-located array sits at the centre of the area."""
        return self.N_b > 0

    @property
    def node_antennas(self) -> Tuple[int, ...]:
        """Antenna count per node; the central array, when present, comes first."""
        central = (self.N_b,) if self.has_cbs else ()
        return central + (self.N_a,) * self.L

    def to_dict(self) -> Dict[str, Any]:
        data = dataclasses.asdict(self)
        for key, value in data.items():
            if isinstance(value, Enum):
                data[key] = value.value
        return data


def default_split(base: SystemConfig, architecture: Architecture) -> Tuple[int, int, int]:
    """Antenna split (N_b, L, N_a) that keeps M fixed for an architecture."""
    if architecture is Architecture.CELLULAR:
        return base.M, 0, base.N_a
    if architecture is Architecture.CF:
        if base.M % base.N_a:
            raise ConfigurationError(
                f"M = {base.M} is not a multiple of N_a = {base.N_a}; cannot build a CF layout"
            )
        return 0, base.M // base.N_a, base.N_a
    if base.has_cbs and base.L > 0:
        return base.N_b, base.L, base.N_a
    n_b = base.M // 4
    return n_b, (base.M - n_b) // base.N_a, base.N_a


@dataclass(frozen=True)
class Variant:
    """One curve of a campaign: architecture, processing and antenna split."""

    name: str
    architecture: Architecture = Architecture.HCF
    mode: Mode = Mode.CENTRALIZED
    scheme: Scheme = Scheme.ZF
    power_control: bool = False
    N_b: Optional[int] = None
    L: Optional[int] = None
    N_a: Optional[int] = None

    def __post_init__(self):
        if not self.name:
            raise ConfigurationError("variant name must not be empty")
        object.__setattr__(
            self, "architecture", _coerce_enum(Architecture, self.architecture, "architecture")
        )
        object.__setattr__(self, "mode", _coerce_enum(Mode, self.mode, "mode"))
        object.__setattr__(self, "scheme", _coerce_enum(Scheme, self.scheme, "scheme"))

    def resolve(self, base: SystemConfig) -> SystemConfig:
        """Return the system configuration this variant simulates."""
        n_b, n_l, n_a = default_split(base, self.architecture)
        n_b = n_b if self.N_b is None else self.N_b
        n_l = n_l if self.L is None else self.L
        n_a = n_a if self.N_a is None else self.N_a
        config = dataclasses.replace(
            base, architecture=self.architecture, N_b=n_b, L=n_l, N_a=n_a
        )
        check_variant_support(config, self.mode, self.scheme)
        return config

    def to_dict(self) -> Dict[str, Any]:
        data = dataclasses.asdict(self)
        for key, value in data.items():
            if isinstance(value, Enum):
                data[key] = value.value
        return data


def check_variant_support(config: SystemConfig, mode: Mode, scheme: Scheme) -> None:
    """Reject processing choices the configuration cannot support."""
    if scheme is Scheme.ZF and config.K > config.M:
        raise UnsupportedConfigurationError(
            f"ZF combining needs K <= M (K = {config.K}, M = {config.M})"
        )
    if mode is Mode.HIERARCHICAL:
        if config.architecture is Architecture.CELLULAR:
            raise UnsupportedConfigurationError(
                "hierarchical combining needs distributed nodes; cellular is centralized only"
            )
        if scheme is Scheme.ZF:
            smallest = min(config.node_antennas)
            if config.K > smallest:
                raise UnsupportedConfigurationError(
                    f"local ZF needs K <= antennas per node (K = {config.K}, "
                    f"smallest node has {smallest})"
                )


@dataclass
class CampaignSpec:
    """A set of variants simulated over common drop and realization counts."""

    base: SystemConfig = field(default_factory=SystemConfig)
    variants: List[Variant] = field(default_factory=list)
    n_drops: int = 500
    n_inner: int = 100
    output_dir: Optional[Path] = Path("results")
    seed: int = 0
    workers: int = 1
    degenerate_budget: float = 0.01
    se_pooling: SePooling = SePooling.DROP

    def __post_init__(self):
        self.se_pooling = _coerce_enum(SePooling, self.se_pooling, "se_pooling")
        if self.output_dir is not None:
            self.output_dir = Path(self.output_dir)

    def validate(self) -> None:
        if self.n_drops < 1:
            raise ConfigurationError(f"n_drops must be at least 1, got {self.n_drops}")
        if self.n_inner < 1:
            raise ConfigurationError(f"n_inner must be at least 1, got {self.n_inner}")
        if self.workers < 1:
            raise ConfigurationError(f"workers must be at least 1, got {self.workers}")
        if not 0 <= self.degenerate_budget <= 1:
            raise ConfigurationError("degenerate_budget must lie in [0, 1]")
        if not self.variants:
            raise ConfigurationError("campaign has no variants")
        names = [v.name for v in self.variants]
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            raise ConfigurationError(f"duplicate variant names: {', '.join(duplicates)}")
        for variant in self.variants:
            variant.resolve(self.base)
            if variant.mode is Mode.HIERARCHICAL and self.n_inner < self.base.min_moment_samples:
                raise ConfigurationError(
                    f"variant {variant.name} needs n_inner >= {self.base.min_moment_samples} "
                    f"to estimate its drop-level moments (got {self.n_inner})"
                )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "base": self.base.to_dict(),
            "variants": [v.to_dict() for v in self.variants],
            "n_drops": self.n_drops,
            "n_inner": self.n_inner,
            "output_dir": None if self.output_dir is None else str(self.output_dir),
            "seed": self.seed,
            "workers": self.workers,
            "degenerate_budget": self.degenerate_budget,
            "se_pooling": self.se_pooling.value,
        }


def default_variants() -> List[Variant]:
    """The comparison set of the reference evaluation."""
    hcf, cf = Architecture.HCF, Architecture.CF
    central, hier = Mode.CENTRALIZED, Mode.HIERARCHICAL
    variants = []
    for architecture in (hcf, cf):
        for scheme in Scheme:
            for power_control in (False, True):
                suffix = "-maxmin" if power_control else ""
                variants.append(
                    Variant(
                        name=f"{architecture.value}-{scheme.value}{suffix}",
                        architecture=architecture,
                        mode=central,
                        scheme=scheme,
                        power_control=power_control,
                    )
                )
    variants += [
        Variant(name="HCF-hier-MR", architecture=hcf, mode=hier, scheme=Scheme.MR),
        Variant(name="HCF-hier-MMSE", architecture=hcf, mode=hier, scheme=Scheme.MMSE),
        Variant(name="CF-local-MMSE", architecture=cf, mode=hier, scheme=Scheme.MMSE),
        Variant(
            name="Cellular-MMSE",
            architecture=Architecture.CELLULAR,
            mode=central,
            scheme=Scheme.MMSE,
        ),
        Variant(
            name="HCF-ZF-50%",
            architecture=hcf,
            mode=central,
            scheme=Scheme.ZF,
            N_b=192,
            L=48,
            N_a=4,
        ),
    ]
    return variants


def default_campaign(**overrides) -> CampaignSpec:
    """Campaign mirroring the reference evaluation set-up."""
    return CampaignSpec(base=SystemConfig(), variants=default_variants(), **overrides)


def _check_keys(data: Dict[str, Any], allowed, where: str) -> None:
    unknown = sorted(set(data) - set(allowed))
    if unknown:
        raise ConfigurationError(f"unknown key(s) in {where}: {', '.join(unknown)}")


def _field_names(cls) -> List[str]:
    return [f.name for f in dataclasses.fields(cls)]


def parse_campaign(data: Dict[str, Any]) -> CampaignSpec:
    """Build a CampaignSpec from a plain mapping, rejecting unknown keys."""
    if not isinstance(data, dict):
        raise ConfigurationError("campaign configuration must be a mapping")
    _check_keys(data, _field_names(CampaignSpec), "campaign")

    base_data = data.get("base") or {}
    if not isinstance(base_data, dict):
        raise ConfigurationError("'base' must be a mapping")
    _check_keys(base_data, _field_names(SystemConfig), "base")
    try:
        base = SystemConfig(**base_data)
    except TypeError as e:
        raise ConfigurationError(f"invalid base configuration: {e}") from e

    variants_data = data.get("variants")
    if variants_data is None:
        variants = default_variants()
    else:
        if not isinstance(variants_data, list):
            raise ConfigurationError("'variants' must be a list")
        variants = []
        for i, entry in enumerate(variants_data):
            if not isinstance(entry, dict):
                raise ConfigurationError(f"variant #{i} must be a mapping")
            _check_keys(entry, _field_names(Variant), f"variant #{i}")
            try:
                variants.append(Variant(**entry))
            except TypeError as e:
                raise ConfigurationError(f"invalid variant #{i}: {e}") from e

    options = {k: v for k, v in data.items() if k not in ("base", "variants")}
    options.setdefault("seed", base.seed)
    spec = CampaignSpec(base=base, variants=variants, **options)
    spec.validate()
    return spec


def load_config(config_path: Path) -> CampaignSpec:
    """Load a campaign from a JSON-compatible (YAML) file."""
    config_path = Path(config_path)
    if not config_path.exists():
        raise ConfigurationError(f"configuration file not found: {config_path}")

    try:
        with open(config_path, "r") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigurationError(f"could not parse {config_path}: {e}") from e

    if data is None:
        data = {}
    return parse_campaign(data)
