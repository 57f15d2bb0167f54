"""Tests for core/config.py."""

import json
import math
import tempfile
from pathlib import Path

import pytest

from hcfsim.core.config import (
    Architecture,
    CampaignSpec,
    Mode,
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
from hcfsim.core.errors import ConfigurationError, UnsupportedConfigurationError
from hcfsim.core.performance import prefactor_for


class TestSystemConfig:
    """Tests for SystemConfig."""

    def test_default_values(self):
        """Defaults should describe the reference HCF system."""
        config = SystemConfig()

        assert config.architecture is Architecture.HCF
        assert (config.M, config.N_b, config.L, config.N_a, config.K) == (384, 96, 72, 4, 16)
        assert (config.tau_c, config.tau_p, config.tau_u) == (200, 8, 192)
        assert config.p_u == 0.2
        assert config.asd_deg == 30.0
        assert config.shadowing_std_db == 8.0

    def test_noise_power(self):
        """Noise power should be -174 dBm/Hz over 5 MHz plus a 9 dB figure."""
        config = SystemConfig()
        expected_dbm = -174 + 10 * math.log10(5e6) + 9

        assert config.noise_power_w == pytest.approx(10 ** ((expected_dbm - 30) / 10))

    def test_node_antennas_put_central_array_first(self):
        """The central array should be node 0 when present."""
        config = SystemConfig()

        assert config.node_antennas[0] == 96
        assert len(config.node_antennas) == 73
        assert sum(config.node_antennas) == 384

    def test_cf_has_no_central_node(self):
        """A CF system should list only access points."""
        config = SystemConfig(architecture="CF", N_b=0, L=96, N_a=4)

        assert not config.has_cbs
        assert config.node_antennas == (4,) * 96

    def test_rejects_inconsistent_split(self):
        """N_b + L*N_a must equal M."""
        with pytest.raises(ConfigurationError, match="antenna split"):
            SystemConfig(N_b=100)

    def test_rejects_overlong_frame(self):
        """tau_p + tau_u must fit in the coherence block."""
        with pytest.raises(ConfigurationError, match="tau_c"):
            SystemConfig(tau_u=195)

    def test_rejects_cellular_with_access_points(self):
        """Cellular systems must put every antenna at the base station."""
        with pytest.raises(ConfigurationError, match="Cellular"):
            SystemConfig(architecture="Cellular")

    def test_prefactor_conventions(self):
        """Both pre-log conventions should be selectable."""
        config = SystemConfig()
        assert config.prefactor_convention is PrefactorConvention.UPLINK
        coherence = SystemConfig(prefactor_convention="coherence")
        assert coherence.prefactor_convention is PrefactorConvention.COHERENCE
        assert prefactor_for(
            coherence.tau_p, coherence.tau_u, coherence.tau_c, coherence.prefactor_convention
        ) == pytest.approx(1 - 8 / 200)

    def test_to_dict_is_json_compatible(self):
        """to_dict() should serialize enums as their values."""
        data = SystemConfig().to_dict()

        assert data["architecture"] == "HCF"
        json.dumps(data)


class TestVariant:
    """Tests for Variant resolution."""

    def test_resolves_cf_split(self):
        """A CF variant should spread all antennas over 4-antenna APs."""
        config = Variant(name="cf", architecture="CF").resolve(SystemConfig())

        assert (config.N_b, config.L, config.N_a) == (0, 96, 4)

    def test_resolves_cellular_split(self):
        """A cellular variant should have a single 384-antenna node."""
        config = Variant(name="cell", architecture="Cellular", scheme="MMSE").resolve(SystemConfig())

        assert config.node_antennas == (384,)

    def test_explicit_split_overrides(self):
        """Explicit N_b/L/N_a should win over the default split."""
        variant = Variant(name="half", architecture="HCF", N_b=192, L=48, N_a=4)
        config = variant.resolve(SystemConfig())

        assert (config.N_b, config.L, config.N_a) == (192, 48, 4)

    def test_hierarchical_zf_needs_enough_local_antennas(self):
        """Local ZF with K > N_a should be unsupported."""
        variant = Variant(name="hz", mode=Mode.HIERARCHICAL, scheme=Scheme.ZF)

        with pytest.raises(UnsupportedConfigurationError):
            variant.resolve(SystemConfig())

    def test_hierarchical_cellular_is_unsupported(self):
        """Cellular has no distributed nodes to combine locally."""
        variant = Variant(name="hc", architecture="Cellular", mode="hierarchical")

        with pytest.raises(UnsupportedConfigurationError):
            variant.resolve(SystemConfig())

    def test_rejects_unknown_scheme(self):
        """Unknown enum values should raise ConfigurationError."""
        with pytest.raises(ConfigurationError, match="scheme"):
            Variant(name="x", scheme="RZF")


class TestCampaignSpec:
    """Tests for CampaignSpec validation and defaults."""

    def test_default_campaign(self):
        """The default campaign should contain the reference variants."""
        spec = default_campaign()
        names = [v.name for v in spec.variants]

        assert spec.n_drops == 500
        assert spec.n_inner == 100
        assert "HCF-ZF" in names
        assert "HCF-ZF-50%" in names
        assert "CF-MMSE-maxmin" in names
        spec.validate()

    def test_default_variants_are_unique(self):
        """Variant names should be unique."""
        names = [v.name for v in default_variants()]

        assert len(names) == len(set(names))

    def test_rejects_zero_drops(self):
        """n_drops must be at least 1."""
        spec = CampaignSpec(variants=[Variant(name="a")], n_drops=0)

        with pytest.raises(ConfigurationError, match="n_drops"):
            spec.validate()

    def test_rejects_duplicate_names(self):
        """Duplicate variant names should be rejected."""
        spec = CampaignSpec(variants=[Variant(name="a"), Variant(name="a")])

        with pytest.raises(ConfigurationError, match="duplicate"):
            spec.validate()

    def test_hierarchical_needs_enough_inner_samples(self):
        """Hierarchical variants need n_inner >= min_moment_samples."""
        spec = CampaignSpec(
            variants=[Variant(name="h", mode="hierarchical", scheme="MR")], n_inner=10
        )

        with pytest.raises(ConfigurationError, match="n_inner"):
            spec.validate()

    def test_se_pooling_defaults_to_drop(self):
        """SE samples should pool per drop unless asked otherwise."""
        assert CampaignSpec().se_pooling is SePooling.DROP
        spec = CampaignSpec(variants=[Variant(name="a")], se_pooling="Realization")

        assert spec.se_pooling is SePooling.REALIZATION
        assert spec.to_dict()["se_pooling"] == "realization"

    def test_rejects_unknown_se_pooling(self):
        """An unknown pooling mode should raise ConfigurationError."""
        with pytest.raises(ConfigurationError, match="se_pooling"):
            CampaignSpec(se_pooling="user")


class TestLoadConfig:
    """Tests for load_config and parse_campaign."""

    def test_load_json_file(self):
        """A JSON campaign file should load through the YAML parser."""
        data = {
            "base": {"K": 8},
            "variants": [{"name": "HCF-ZF", "scheme": "ZF"}],
            "n_drops": 3,
            "n_inner": 2,
            "seed": 11,
        }
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "campaign.json"
            path.write_text(json.dumps(data))
            spec = load_config(path)

        assert spec.base.K == 8
        assert spec.n_drops == 3
        assert spec.seed == 11
        assert [v.name for v in spec.variants] == ["HCF-ZF"]

    def test_load_yaml_file(self):
        """YAML files should be accepted too."""
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "campaign.yaml"
            path.write_text("n_drops: 2\nn_inner: 60\noutput_dir: out\n")
            spec = load_config(path)

        assert spec.n_drops == 2
        assert spec.output_dir == Path("out")
        assert len(spec.variants) == len(default_variants())

    def test_seed_defaults_to_base_seed(self):
        """The campaign seed should fall back to base.seed."""
        spec = parse_campaign({"base": {"seed": 5}, "n_inner": 60})

        assert spec.seed == 5

    def test_rejects_unknown_top_level_key(self):
        """Unknown keys should be reported by name."""
        with pytest.raises(ConfigurationError, match="n_drop"):
            parse_campaign({"n_drop": 3})

    def test_rejects_unknown_base_key(self):
        """Unknown SystemConfig keys should be rejected."""
        with pytest.raises(ConfigurationError, match="antennas"):
            parse_campaign({"base": {"antennas": 3}})

    def test_rejects_unknown_variant_key(self):
        """Unknown Variant keys should be rejected."""
        with pytest.raises(ConfigurationError, match="power"):
            parse_campaign({"variants": [{"name": "a", "power": True}]})

    def test_missing_file(self):
        """A missing file should raise ConfigurationError."""
        with pytest.raises(ConfigurationError, match="not found"):
            load_config(Path("/nonexistent/campaign.json"))

    def test_malformed_file(self):
        """Parse errors should raise ConfigurationError."""
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "bad.yaml"
            path.write_text("n_drops: [1, 2\n")

            with pytest.raises(ConfigurationError, match="could not parse"):
                load_config(path)
