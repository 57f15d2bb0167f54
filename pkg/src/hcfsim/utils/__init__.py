"""Utility modules for hcfsim."""

from .logger import (
    LogLevel,
    console,
    set_level,
    get_level,
    level_from_flags,
    success,
    error,
    warning,
    info,
    verbose,
    debug,
    error_panel,
    header,
    drop_progress,
    cost_table,
    campaign_complete,
    check_report,
)

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
