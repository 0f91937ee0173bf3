"""Tests for terminal tables."""

from geodkit.iteration import GeodesicModel, IndexSequence
from geodkit.numerics import quadratic
from geodkit.synthetic import synthetic_model_set
from geodkit.tables import (
    Colors,
    format_table,
    paint,
    render_betti,
    render_index_sequence,
    render_verification,
    status,
)
from geodkit.topology import betti_table
from geodkit.verifier import verify_model_set


def test_format_table_alignment():
    """Test column widths and the header rule."""
    text = format_table(["p", "b_p"], [(0, 0), (10, 2)])
    assert text.splitlines() == ["p   b_p", "--  ---", "0   0", "10  2"]


def test_format_table_ignores_color_codes():
    """Test that ANSI codes do not widen columns."""
    plain = format_table(["x"], [["ok"]])
    colored = format_table(["x"], [[status(True, True)]])
    assert colored.replace(Colors.GREEN, "").replace(Colors.RESET, "") == plain


def test_paint_without_color():
    """Test that color=False leaves text unchanged."""
    assert paint("text", Colors.RED, False) == "text"
    assert status(False, False) == "FAIL"
    assert status(False, True, bad="weak") == f"{Colors.RED}weak{Colors.RESET}"


def test_render_betti():
    """Test the Betti table heading and rows."""
    text = render_betti(betti_table(2, 3))
    assert text.splitlines()[0] == "Betti numbers of S^2"
    assert text.splitlines()[-1] == "3  2"


def test_render_index_sequence():
    """Test the iterate table and mean index line."""
    g = GeodesicModel(n=2, initial_index=1, angles=[quadratic(0, 1, 2, 2)], label="c1")
    text = render_index_sequence(IndexSequence.evaluate(g, 2))
    assert "Iterates of c1" in text
    assert "Mean index: √2 ≈ 1.414214" in text


def test_render_verification():
    """Test the verdict line and scope statements."""
    report = verify_model_set(synthetic_model_set(2, 2))
    text = render_verification(report)
    assert "Verdict: consistent, forced multiplicity 2" in text
    assert report.scope in text
    assert report.infinite_case in text
