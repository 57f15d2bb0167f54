"""Run command for Monte Carlo campaigns."""

import sys
from datetime import datetime
from pathlib import Path

import click

from ..core.campaign import run_campaign
from ..core.config import SePooling, default_campaign, load_config
from ..core.env import env
from ..core.errors import CampaignError, SimulationError
from ..utils import (
    campaign_complete,
    console,
    error_panel,
    header,
    info,
    level_from_flags,
    set_level,
    success,
    verbose,
    warning,
)


@click.command()
@click.option(
    "--config",
    "-c",
    "config_path",
    type=click.Path(dir_okay=False),
    default=None,
    help="Campaign file (JSON or YAML); defaults to the reference set-up",
)
@click.option("--seed", type=click.IntRange(min=0), default=None, help="Campaign seed")
@click.option(
    "--workers",
    "-w",
    type=click.IntRange(min=1),
    default=None,
    help="Worker processes (default: $HCFSIM_WORKERS or the config file)",
)
@click.option("--out", "-o", type=click.Path(file_okay=False), default=None, help="Output directory")
@click.option("--drops", type=click.IntRange(min=1), default=None, help="Number of drops")
@click.option("--inner", type=click.IntRange(min=1), default=None, help="Realizations per drop")
@click.option(
    "--se-pooling",
    type=click.Choice([p.value for p in SePooling]),
    default=None,
    help="Pool SE samples per drop (ergodic) or per realization",
)
@click.option(
    "--verbose", "-v", "verbose_flag", is_flag=True, help="Enable verbose output"
)
@click.option("--quiet", "-q", is_flag=True, help="Only show errors and final summary")
@click.option("--debug", is_flag=True, help="Enable debug mode with full tracebacks")
def run(config_path, seed, workers, out, drops, inner, se_pooling, verbose_flag, quiet, debug):
    """Run a simulation campaign and write its results."""
    set_level(level_from_flags(verbose_flag, quiet, debug))

    try:
        spec = load_config(config_path) if config_path else default_campaign()
        if seed is not None:
            spec.seed = seed
        if drops is not None:
            spec.n_drops = drops
        if inner is not None:
            spec.n_inner = inner
        if se_pooling is not None:
            spec.se_pooling = SePooling(se_pooling)
        if out is not None:
            spec.output_dir = Path(out)
        if workers is None:
            workers = env.workers()
        if workers is not None:
            spec.workers = workers
        spec.validate()

        header("Running campaign...")
        info(f"{len(spec.variants)} variant(s), {spec.n_drops} drop(s), seed {spec.seed}")
        verbose(f"Output directory: {spec.output_dir}")
        start_time = datetime.now()

        result = run_campaign(spec)

        elapsed = (datetime.now() - start_time).total_seconds()
        campaign_complete(result.summaries(), f"{elapsed:.1f}s")
        if spec.output_dir is not None:
            success(f"Results written to {spec.output_dir}")

    except CampaignError as e:
        if e.partial_result is not None and e.partial_result.variants:
            warning(f"{len(e.partial_result.variants)} variant(s) completed before the failure")
        error_panel(type(e).__name__, str(e), file_path=config_path)
        if debug:
            console.print_exception()
        sys.exit(1)
    except SimulationError as e:
        error_panel(
            type(e).__name__,
            str(e),
            file_path=config_path,
            hint="Check the campaign configuration",
        )
        if debug:
            console.print_exception()
        sys.exit(1)
