"""Cost command - complexity and fronthaul tables for a parameter set."""

import json
import sys

import click

from ..core.config import Scheme, load_config
from ..core.cost import METHOD_LABELS, complexity_table, fronthaul_table
from ..core.errors import SimulationError
from ..utils import console, cost_table, error_panel, header


@click.command()
@click.option("--M", "M", type=click.IntRange(min=1), default=384, show_default=True, help="Total antennas")
@click.option("--K", "K", type=click.IntRange(min=1), default=16, show_default=True, help="Users")
@click.option("--N-a", "N_a", type=click.IntRange(min=1), default=4, show_default=True, help="Antennas per eAP")
@click.option("--N-b", "N_b", type=click.IntRange(min=1), default=96, show_default=True, help="cBS antennas")
@click.option("--L", "L", type=click.IntRange(min=1), default=72, show_default=True, help="Number of eAPs")
@click.option("--tau-p", "tau_p", type=click.IntRange(min=1), default=8, show_default=True, help="Pilot length")
@click.option("--tau-u", "tau_u", type=click.IntRange(min=1), default=192, show_default=True, help="Uplink data symbols")
@click.option(
    "--config",
    "-c",
    "config_path",
    type=click.Path(dir_okay=False),
    default=None,
    help="Take the parameters from a campaign file's base system",
)
@click.option("--json", "as_json", is_flag=True, help="Output as JSON")
def cost(M, K, N_a, N_b, L, tau_p, tau_u, config_path, as_json):
    """Print complexity and fronthaul overhead tables."""
    try:
        if config_path:
            base = load_config(config_path).base
            M, K, N_a, N_b, L = base.M, base.K, base.N_a, base.N_b, base.L
            tau_p, tau_u = base.tau_p, base.tau_u
        complexity = complexity_table(M=M, K=K, N_a=N_a, N_b=N_b, L=L, tau_u=tau_u)
        fronthaul = fronthaul_table(M=M, K=K, N_a=N_a, N_b=N_b, L=L, tau_p=tau_p, tau_u=tau_u)
    except SimulationError as e:
        error_panel(type(e).__name__, str(e), file_path=config_path)
        sys.exit(1)

    if as_json:
        data = {
            "parameters": {
                "M": M, "K": K, "N_a": N_a, "N_b": N_b, "L": L, "tau_p": tau_p, "tau_u": tau_u,
            },
            "complexity": {
                method.value: {scheme.value: count for scheme, count in row.items()}
                for method, row in complexity.items()
            },
            "fronthaul": fronthaul,
        }
        click.echo(json.dumps(data, indent=2))
        return

    header("Cost model")
    console.print(
        f"  [dim]M={M}  K={K}  N_a={N_a}  N_b={N_b}  L={L}  tau_p={tau_p}  tau_u={tau_u}[/]\n"
    )
    cost_table(
        "Complex multiplications per channel use",
        [
            [METHOD_LABELS[method]] + [f"{row[scheme]:,}" for scheme in Scheme]
            for method, row in complexity.items()
        ],
        ["Method type"] + [scheme.value for scheme in Scheme],
    )
    cost_table(
        "Fronthaul scalars per coherence block",
        [[name, f"{value:,}"] for name, value in fronthaul.items()],
        ["System", "Scalars"],
    )
