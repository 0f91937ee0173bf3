"""Tests for terminal status lines."""

import io

import pytest

from geodkit.progress import CLEAR_LINE, SearchProgress, search_progress, spinner


def test_search_progress_bar():
    """Test the rendered bar at half the candidates."""
    stream = io.StringIO()
    bar = SearchProgress(width=10, stream=stream)
    bar(5, 10)
    assert stream.getvalue() == CLEAR_LINE + "Searching N [█████░░░░░] N 5/10"


def test_disabled_yields_none():
    """Test that disabled indicators write nothing."""
    stream = io.StringIO()
    with search_progress(enabled=False, stream=stream) as bar:
        assert bar is None
    with spinner("Working", enabled=False, stream=stream) as s:
        assert s is None
    assert stream.getvalue() == ""


def test_search_progress_cleared_on_exit():
    """Test that the bar line is cleared when the block ends."""
    stream = io.StringIO()
    with search_progress(stream=stream) as bar:
        bar(1, 4)
    assert stream.getvalue().endswith(CLEAR_LINE)


def test_spinner_reports_failure():
    """Test the failure line when the block raises."""
    stream = io.StringIO()
    with pytest.raises(RuntimeError):
        with spinner("Counting", stream=stream):
            raise RuntimeError("boom")
    assert stream.getvalue().endswith("✗ Counting failed\n")
