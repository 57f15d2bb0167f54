"""Tests for utils/logger.py."""

from collections import namedtuple

from hcfsim import utils
from hcfsim.utils import logger
from hcfsim.utils.logger import (
    LogLevel,
    campaign_complete,
    check_report,
    console,
    cost_table,
    drop_progress,
    get_level,
    level_from_flags,
    set_level,
)

Check = namedtuple("Check", "name passed detail")


class TestLevels:
    """Tests for log level handling."""

    def teardown_method(self):
        set_level(LogLevel.NORMAL)

    def test_level_from_flags(self):
        """Debug should win over verbose, verbose over quiet."""
        assert level_from_flags(False, False, False) is LogLevel.NORMAL
        assert level_from_flags(True, True, False) is LogLevel.VERBOSE
        assert level_from_flags(False, True, False) is LogLevel.QUIET
        assert level_from_flags(True, True, True) is LogLevel.DEBUG

    def test_set_level(self):
        """set_level() should change the global level."""
        set_level(LogLevel.QUIET)

        assert get_level() is LogLevel.QUIET

    def test_verbose_hidden_at_normal(self):
        """verbose() should print nothing at NORMAL."""
        with console.capture() as capture:
            logger.verbose("hidden detail")

        assert "hidden detail" not in capture.get()


class TestExports:
    """Tests for the public helper surface."""

    def test_utils_reexports_every_helper(self):
        """Every logger helper should be importable from hcfsim.utils and exist."""
        assert set(utils.__all__) == set(logger.__all__)
        for name in logger.__all__:
            assert getattr(utils, name) is getattr(logger, name)
        assert {"header", "drop_progress", "error_panel", "check_report"} <= set(logger.__all__)


class TestDropProgress:
    """Tests for drop_progress()."""

    def teardown_method(self):
        set_level(LogLevel.NORMAL)

    def test_yields_advance(self):
        """drop_progress() should yield a callable advance(n)."""
        with drop_progress("Simulating", total=3) as advance:
            advance(1)
            advance(2)

    def test_silent_when_quiet(self):
        """QUIET mode should not render a progress bar."""
        set_level(LogLevel.QUIET)
        with console.capture() as capture:
            with drop_progress("Simulating", total=2) as advance:
                advance()

        assert capture.get() == ""

    def test_propagates_errors(self):
        """Errors raised inside the block should reach the caller unchanged."""
        try:
            with drop_progress("Simulating", total=1):
                raise KeyError("boom")
        except KeyError as e:
            assert "boom" in str(e)
        else:
            raise AssertionError("KeyError was swallowed")


class TestTables:
    """Tests for the domain renderers."""

    def test_cost_table(self):
        """cost_table() should render every cell."""
        with console.capture() as capture:
            cost_table("Costs", [["HCF", "8,726"]], ["Method", "ZF"])

        output = capture.get()
        assert "HCF" in output
        assert "8,726" in output

    def test_campaign_complete(self):
        """campaign_complete() should list every variant."""
        summaries = {"HCF-ZF": {"se_95_likely": 0.8, "median_capacity": 86.15, "resampled_drops": 1}}
        with console.capture() as capture:
            campaign_complete(summaries, "1.0s")

        output = capture.get()
        assert "HCF-ZF" in output
        assert "86.15" in output
        assert "Campaign complete" in output

    def test_check_report_shows_failure_detail(self):
        """Failed checks should print their detail."""
        with console.capture() as capture:
            check_report([Check("ok", True, "fine"), Check("bad", False, "mismatch")])

        output = capture.get()
        assert "bad" in output
        assert "mismatch" in output
        assert "fine" not in output
