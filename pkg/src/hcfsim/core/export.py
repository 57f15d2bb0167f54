"""Persist campaign results as a JSON summary and CDF tables."""

import json
import re
from pathlib import Path
from typing import Any, Dict, List

from .errors import ExportError
from .stats import empirical_cdf

SUMMARY_FILE = "summary.json"

# Execution settings that must not change the persisted bytes.
RUN_ONLY_KEYS = ("workers", "output_dir")

SUMMARY_METADATA = {
    "se_statistic": "5th percentile of the pooled per-user SE (all users, all drops), "
    "linear interpolation",
    "se_sample": {
        "drop": "per-user SE averaged over the realizations of one drop",
        "realization": "per-user SE of a single realization; hierarchical variants keep one per drop",
    },
    "capacity_statistic": "50th percentile of the per-drop sum SE, linear interpolation",
    "se_unit": "bps/Hz",
}


def sanitize_name(name: str) -> str:
    """File-name-safe form of a variant name."""
    return re.sub(r"[^A-Za-z0-9._-]+", "_", name).strip("_") or "variant"


def cdf_filename(variant_name: str, kind: str) -> str:
    return f"cdf_{sanitize_name(variant_name)}_{kind}.csv"


def build_summary(result) -> Dict[str, Any]:
    """JSON-compatible summary; independent of wall-clock time."""
    spec = result.spec
    config = {k: v for k, v in spec.to_dict().items() if k not in RUN_ONLY_KEYS}
    metadata = dict(SUMMARY_METADATA)
    metadata["se_sample"] = SUMMARY_METADATA["se_sample"][spec.se_pooling.value]
    variants = {}
    for name, variant_result in result.variants.items():
        variants[name] = {
            "variant": variant_result.variant.to_dict(),
            "system": variant_result.config.to_dict(),
            "se_95_likely": variant_result.se_95_likely,
            "median_capacity": variant_result.median_capacity,
            "n_se_samples": int(variant_result.se_samples.size),
            "n_capacity_samples": int(variant_result.capacity_samples.size),
            "resampled_drops": variant_result.resampled_drops,
            "cost": variant_result.cost.to_dict(),
        }
    return {
        "seed": spec.seed,
        "n_drops": spec.n_drops,
        "n_inner": spec.n_inner,
        "config": config,
        "metadata": metadata,
        "variants": variants,
    }


def _cdf_lines(samples) -> str:
    values, cdf = empirical_cdf(samples)
    lines = ["value,cdf"]
    lines.extend(f"{float(v)!r},{float(c)!r}" for v, c in zip(values, cdf))
    return "\n".join(lines) + "\n"


def export_results(result, out_dir: Path) -> List[Path]:
    """Write summary.json and the per-variant SE and capacity CDFs.

    Returns the written paths. Identical results give byte-identical files.
    """
    out_dir = Path(out_dir)
    names = [sanitize_name(name) for name in result.variants]
    if len(set(names)) != len(names):
        raise ExportError("variant names collide after sanitizing for file names")

    written = []
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        summary_path = out_dir / SUMMARY_FILE
        summary_path.write_text(json.dumps(build_summary(result), sort_keys=True, indent=2) + "\n")
        written.append(summary_path)

        for name, variant_result in result.variants.items():
            for kind, samples in (
                ("se", variant_result.se_samples),
                ("capacity", variant_result.capacity_samples),
            ):
                path = out_dir / cdf_filename(name, kind)
                path.write_text(_cdf_lines(samples))
                written.append(path)
    except OSError as e:
        raise ExportError(f"could not write results to {out_dir}: {e}") from e
    return written
