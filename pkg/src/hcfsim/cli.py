"""Main CLI entry point for hcfsim."""

import click
from rich.console import Console
from rich.table import Table
from rich.text import Text

from . import __version__
from .commands import cost, run, validate

console = Console()


def show_welcome():
    """Display the welcome banner with the available commands."""
    header = Text()
    header.append("\n◆ ", style="bold magenta")
    header.append("hcfsim", style="bold cyan")
    header.append(f" v{__version__}", style="dim")
    header.append(" - hierarchical cell-free massive MIMO uplink\n", style="dim")
    console.print(header)

    table = Table(show_header=False, box=None, padding=(0, 2, 0, 0))
    table.add_column("command", style="cyan")
    table.add_column("description", style="dim")

    table.add_row(" hcfsim run [dim]--config <file>[/dim]", "Run a Monte Carlo campaign")
    table.add_row(" hcfsim cost", "Print complexity and fronthaul tables")
    table.add_row(" hcfsim validate", "Run the analytic checks")

    console.print(" [bold]Commands:[/bold]\n")
    console.print(table)

    footer = Text()
    footer.append("\nRun", style="dim")
    footer.append(" hcfsim <command> --help", style="cyan")
    footer.append(" for more options\n", style="dim")
    console.print(footer)


@click.group(invoke_without_command=True)
@click.version_option(version=__version__, prog_name="hcfsim")
@click.pass_context
def main(ctx):
    """
    hcfsim: spectral efficiency and cost of HCF, CF and cellular uplinks.
    """
    ctx.ensure_object(dict)
    if ctx.invoked_subcommand is None:
        show_welcome()


main.add_command(run)  # type: ignore[arg-type]
main.add_command(cost)  # type: ignore[arg-type]
main.add_command(validate)  # type: ignore[arg-type]


if __name__ == "__main__":
    main()
