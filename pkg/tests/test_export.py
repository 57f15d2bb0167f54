"""Tests for core/export.py."""

import json
import tempfile
from pathlib import Path

import numpy as np
import pytest

from hcfsim.core.campaign import CampaignResult, VariantResult
from hcfsim.core.config import CampaignSpec, SePooling, SystemConfig, Variant
from hcfsim.core.cost import cost_report
from hcfsim.core.errors import ExportError
from hcfsim.core.export import (
    SUMMARY_FILE,
    build_summary,
    cdf_filename,
    export_results,
    sanitize_name,
)


def make_result(names=("HCF-ZF", "CF-MR"), n_drops=5):
    base = SystemConfig(M=16, N_b=8, L=2, N_a=4, K=4, tau_p=2, cell_radius_m=300.0)
    variants = [Variant(name=name, architecture="HCF", scheme="ZF") for name in names]
    spec = CampaignSpec(base=base, variants=variants, n_drops=n_drops, n_inner=3, output_dir=None, seed=7)
    result = CampaignResult(spec=spec, runtime_s=1.5)
    rng = np.random.default_rng(0)
    for variant in variants:
        config = variant.resolve(base)
        se = rng.uniform(0.0, 5.0, size=(config.K, n_drops))
        result.variants[variant.name] = VariantResult(
            variant=variant,
            config=config,
            se_samples=se,
            capacity_samples=se.sum(axis=0),
            cost=cost_report(config.architecture, variant.mode, variant.scheme, config),
        )
    return result


class TestNames:
    """Tests for file naming."""

    def test_sanitize(self):
        """Unsafe characters should be replaced and trimmed."""
        assert sanitize_name("HCF-ZF-50%") == "HCF-ZF-50"
        assert sanitize_name("CF local/MMSE") == "CF_local_MMSE"
        assert sanitize_name("%%") == "variant"

    def test_cdf_filename(self):
        """CDF files should be named after variant and kind."""
        assert cdf_filename("HCF-ZF", "se") == "cdf_HCF-ZF_se.csv"


class TestSummary:
    """Tests for build_summary()."""

    def test_fields(self):
        """The summary should carry the seed, counts and per-variant metrics."""
        result = make_result()
        summary = build_summary(result)

        assert summary["seed"] == 7
        assert summary["n_drops"] == 5
        entry = summary["variants"]["HCF-ZF"]
        assert entry["n_se_samples"] == 4 * 5
        assert entry["n_capacity_samples"] == 5
        assert entry["se_95_likely"] == result.variants["HCF-ZF"].se_95_likely
        assert entry["cost"]["complexity_mults"] == result.variants["HCF-ZF"].cost.complexity_mults

    def test_excludes_runtime(self):
        """Wall-clock time should not leak into the summary."""
        first = make_result()
        second = make_result()
        second.runtime_s = 99.0

        assert build_summary(first) == build_summary(second)

    def test_excludes_execution_settings(self):
        """Worker count and output directory should not reach the summary."""
        first = make_result()
        second = make_result()
        second.spec.workers = 8
        second.spec.output_dir = Path("elsewhere")

        summary = build_summary(second)
        assert "workers" not in summary["config"]
        assert "output_dir" not in summary["config"]
        assert summary == build_summary(first)

    def test_records_se_sample_kind(self):
        """The metadata should say how SE samples were pooled."""
        result = make_result()
        assert "averaged" in build_summary(result)["metadata"]["se_sample"]

        result.spec.se_pooling = SePooling.REALIZATION
        summary = build_summary(result)
        assert "single realization" in summary["metadata"]["se_sample"]
        assert summary["config"]["se_pooling"] == "realization"


class TestExportResults:
    """Tests for export_results()."""

    def test_writes_summary_and_cdfs(self):
        """One summary plus an SE and a capacity CDF per variant should be written."""
        result = make_result()
        with tempfile.TemporaryDirectory() as tmpdir:
            out = Path(tmpdir) / "out"
            written = export_results(result, out)

            assert len(written) == 1 + 2 * 2
            assert (out / SUMMARY_FILE).exists()
            lines = (out / "cdf_HCF-ZF_se.csv").read_text().splitlines()
            assert lines[0] == "value,cdf"
            assert len(lines) == 1 + 4 * 5
            cdf = [float(line.split(",")[1]) for line in lines[1:]]
            assert cdf == sorted(cdf)
            assert cdf[-1] == 1.0
            capacity = (out / "cdf_CF-MR_capacity.csv").read_text().splitlines()
            assert len(capacity) == 1 + 5

    def test_summary_is_valid_json(self):
        """summary.json should parse back to the built summary."""
        result = make_result()
        with tempfile.TemporaryDirectory() as tmpdir:
            export_results(result, Path(tmpdir))
            loaded = json.loads((Path(tmpdir) / SUMMARY_FILE).read_text())

        assert loaded == json.loads(json.dumps(build_summary(result)))

    def test_byte_identical(self):
        """Exporting the same result twice should give identical files."""
        result = make_result()
        with tempfile.TemporaryDirectory() as tmpdir:
            first = export_results(result, Path(tmpdir) / "a")
            second = export_results(result, Path(tmpdir) / "b")

            for a, b in zip(first, second):
                assert a.name == b.name
                assert a.read_bytes() == b.read_bytes()

    def test_unwritable_path(self):
        """A file in place of the output directory should raise ExportError."""
        with tempfile.TemporaryDirectory() as tmpdir:
            blocker = Path(tmpdir) / "blocker"
            blocker.write_text("not a directory")

            with pytest.raises(ExportError):
                export_results(make_result(), blocker)

    def test_colliding_names(self):
        """Names that sanitize to the same file name should be rejected."""
        with tempfile.TemporaryDirectory() as tmpdir:
            with pytest.raises(ExportError):
                export_results(make_result(names=("a/b", "a%b")), Path(tmpdir))
