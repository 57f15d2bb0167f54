"""Logging utilities for hcfsim."""

from contextlib import contextmanager
from enum import IntEnum
from typing import Callable, Generator, Iterable, Mapping, Optional

from rich.box import ROUNDED
from rich.console import Console
from rich.panel import Panel
from rich.progress import (
    BarColumn,
    MofNCompleteColumn,
    Progress,
    SpinnerColumn,
    TextColumn,
    TimeElapsedColumn,
)
from rich.table import Table
from rich.text import Text


class LogLevel(IntEnum):
    QUIET = 0
    NORMAL = 1
    VERBOSE = 2
    DEBUG = 3


console = Console()
_level = LogLevel.NORMAL


def set_level(level: LogLevel) -> None:
    """Set the global log level."""
    global _level
    _level = level


def get_level() -> LogLevel:
    """Get the current log level."""
    return _level


def level_from_flags(verbose: bool, quiet: bool, debug: bool) -> LogLevel:
    """Map the common command-line flags onto a log level."""
    if debug:
        return LogLevel.DEBUG
    if verbose:
        return LogLevel.VERBOSE
    if quiet:
        return LogLevel.QUIET
    return LogLevel.NORMAL


def success(message: str) -> None:
    """Print a success message."""
    console.print(f"[green]✓[/green] {message}")


def error(message: str) -> None:
    """Print an error message."""
    console.print(f"[bold red]✗[/bold red] {message}")


def warning(message: str) -> None:
    """Print a warning message."""
    if _level >= LogLevel.QUIET:
        console.print(f"[yellow]⚠[/yellow] {message}")


def info(message: str) -> None:
    """Print an info message."""
    if _level >= LogLevel.NORMAL:
        console.print(f"[cyan]ℹ[/cyan] {message}")


def verbose(message: str) -> None:
    """Print a verbose message."""
    if _level >= LogLevel.VERBOSE:
        console.print(f"[dim]· {message}[/dim]")


def debug(message: str) -> None:
    """Print a debug message."""
    if _level >= LogLevel.DEBUG:
        console.print(f"[dim]⋯ [DEBUG] {message}[/dim]")


def error_panel(
    title: str,
    message: str,
    file_path: Optional[str] = None,
    hint: Optional[str] = None,
) -> None:
    """Display a formatted error panel.

    Falls back to simple text output if Rich rendering fails
    (e.g., when running in worker processes without TTY).
    """
    try:
        content = Text()
        content.append(f"\n  {message}\n", style="red")

        if file_path:
            content.append(f"\n  File: {file_path}\n", style="dim")

        if hint:
            content.append(f"\n  Hint: {hint}\n", style="cyan")

        console.print(Panel(content, title=f"[bold red]{title}[/]", border_style="red"))
    except Exception:
        print(f"\n✗ {title}: {message}")
        if file_path:
            print(f"  File: {file_path}")
        if hint:
            print(f"  Hint: {hint}")


def header(action: str) -> None:
    """Display a simple action header."""
    console.print(f"\n[bold magenta]◆[/] [bold]{action}[/]")


@contextmanager
def drop_progress(
    description: str, total: int
) -> Generator[Callable[[int], None], None, None]:
    """Progress bar over the drops of one variant.

    Yields ``advance(n)``. Silent in QUIET mode.
    """
    if _level < LogLevel.NORMAL:
        yield lambda n=1: None
        return
    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        MofNCompleteColumn(),
        TimeElapsedColumn(),
        console=console,
        transient=True,
    ) as progress:
        task = progress.add_task(description, total=total)
        yield lambda n=1: progress.advance(task, n)


def cost_table(
    title: str,
    rows: Iterable[Iterable[str]],
    columns: Iterable[str],
) -> None:
    """Render a small numeric table (complexity or fronthaul counts)."""
    table = Table(box=ROUNDED, title=title, padding=(0, 2), expand=False)
    for i, column in enumerate(columns):
        table.add_column(column, style="dim" if i == 0 else "cyan", justify="left" if i == 0 else "right")
    for row in rows:
        table.add_row(*row)
    console.print(table)


def campaign_complete(summaries: Mapping[str, Mapping[str, float]], elapsed: str) -> None:
    """Display per-variant headline metrics after a campaign."""
    table = Table(box=ROUNDED, padding=(0, 2), expand=False)
    table.add_column("Variant", style="dim")
    table.add_column("95%-likely SE", justify="right", style="cyan")
    table.add_column("Median capacity", justify="right", style="green")
    table.add_column("Resampled", justify="right", style="yellow")
    for name, summary in summaries.items():
        table.add_row(
            name,
            f"{summary['se_95_likely']:.3f}",
            f"{summary['median_capacity']:.2f}",
            str(int(summary.get("resampled_drops", 0))),
        )
    console.print(table)
    console.print(f"\n[green]✓[/] Campaign complete: {len(summaries)} variant(s) ({elapsed})")


def check_report(results: Iterable) -> None:
    """Print validation results as a pass/fail list."""
    for result in results:
        mark = "[green]✓[/]" if result.passed else "[bold red]✗[/]"
        console.print(f"  {mark} {result.name}")
        if not result.passed or _level >= LogLevel.VERBOSE:
            console.print(f"    [dim]{result.detail}[/]")


__all__ = [
    "LogLevel",
    "console",
    "set_level",
    "get_level",
    "level_from_flags",
    "success",
    "error",
    "warning",
    "info",
    "verbose",
    "debug",
    "error_panel",
    "header",
    "drop_progress",
    "cost_table",
    "campaign_complete",
    "check_report",
]
