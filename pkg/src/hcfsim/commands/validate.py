"""Validate command - run the analytic and property checks."""

import sys

import click

from ..core.validation import run_checks
from ..utils import check_report, error, header, level_from_flags, set_level, success


@click.command()
@click.option("--seed", type=click.IntRange(min=0), default=0, help="Seed for randomized checks")
@click.option(
    "--verbose", "-v", "verbose_flag", is_flag=True, help="Show details of passing checks"
)
def validate(seed, verbose_flag):
    """Run the analytic checks of the simulator."""
    set_level(level_from_flags(verbose_flag, False, False))
    header("Validating...")

    results = run_checks(seed)
    check_report(results)

    failed = [r for r in results if not r.passed]
    if failed:
        error(f"{len(failed)} of {len(results)} check(s) failed")
        sys.exit(1)
    success(f"All {len(results)} checks passed")
