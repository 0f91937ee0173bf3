"""Tests for the command-line interface."""

import json
import math

import pytest
from click.testing import CliRunner

from geodkit import __version__
from geodkit.cli import cli
from geodkit.files import ModelFile
from geodkit.iteration import GeodesicModel
from geodkit.numerics import quadratic
from geodkit.synthetic import synthetic_model_set

HALF_ROOT_TWO = quadratic(0, 1, 2, 2)


def write_models(path, models, **options):
    text = ModelFile.from_models(models).to_yaml()
    if options:
        text += "options:\n" + "".join(f"  {k}: {v}\n" for k, v in options.items())
    path.write_text(text)
    return str(path)


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def pair_file(tmp_path):
    models = [
        GeodesicModel(n=2, initial_index=1, angles=[HALF_ROOT_TWO], label="c1"),
        GeodesicModel(n=2, initial_index=3, angles=[quadratic(-1, 1, 2)], label="c2"),
    ]
    return write_models(tmp_path / "pair.yaml", models)


@pytest.fixture
def single_file(tmp_path):
    g = GeodesicModel(n=2, initial_index=1, angles=[HALF_ROOT_TWO], label="c1")
    return write_models(tmp_path / "single.yaml", [g])


@pytest.fixture
def matrix_file(tmp_path):
    theta = 2 * math.pi * float(HALF_ROOT_TWO)
    c, s = math.cos(theta), math.sin(theta)
    path = tmp_path / "matrix.yaml"
    path.write_text(
        f"dimension: 2\nentries: [{c!r}, {-s!r}, {s!r}, {c!r}]\n"
        "angles:\n  - {kind: quadratic, p: 0, q: 1, d: 2, r: 2}\n"
    )
    return str(path)


def test_version(runner):
    """Test --version."""
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_schema(runner):
    """Test printing the model-file schema."""
    result = runner.invoke(cli, ["schema", "model"])
    assert result.exit_code == 0
    assert json.loads(result.output)["title"] == "geodkit model file"


class TestDecompose:
    """Test the decompose command."""

    def test_table(self, runner, matrix_file):
        """Test the table output."""
        result = runner.invoke(cli, ["decompose", matrix_file, "--no-color"])
        assert result.exit_code == 0
        assert "Splitting numbers" in result.output
        assert "Irrationally elliptic: yes" in result.output

    def test_json(self, runner, matrix_file):
        """Test the JSON output."""
        result = runner.invoke(cli, ["decompose", matrix_file, "--format", "json"])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["elliptic_height"] == 2
        assert data["irrationally_elliptic"] is True

    def test_not_symplectic(self, runner, tmp_path):
        """Test that a non-symplectic matrix is bad input."""
        path = tmp_path / "bad.yaml"
        path.write_text("dimension: 2\nentries: [2, 0, 0, 1]\n")
        result = runner.invoke(cli, ["decompose", str(path)])
        assert result.exit_code == 2
        assert "Error:" in result.output


class TestIterate:
    """Test the iterate command."""

    def test_json(self, runner, pair_file):
        """Test the iterate sequences in JSON."""
        result = runner.invoke(cli, ["iterate", pair_file, "--max-m", "4", "--format", "json"])
        assert result.exit_code == 0
        sequences = json.loads(result.output)["sequences"]
        assert [seq["values"] for seq in sequences] == [[1, 3, 5, 5], [3, 5, 9, 11]]

    def test_general_formula(self, runner, pair_file):
        """Test --general on one geodesic."""
        result = runner.invoke(
            cli,
            ["iterate", pair_file, "--max-m", "3", "--model-index", "1", "--general",
             "--format", "json"],
        )
        assert result.exit_code == 0
        assert json.loads(result.output)["sequences"][0]["values"] == [3, 5, 9]

    def test_table(self, runner, pair_file):
        """Test the table output."""
        result = runner.invoke(cli, ["iterate", pair_file, "--max-m", "3"])
        assert result.exit_code == 0
        assert "Iterates of c1" in result.output
        assert "Mean index" in result.output

    def test_model_index_out_of_range(self, runner, pair_file):
        """Test that a bad --model-index is bad input."""
        result = runner.invoke(cli, ["iterate", pair_file, "--model-index", "5"])
        assert result.exit_code == 2
        assert "out of range" in result.output

    def test_invalid_file(self, runner, tmp_path):
        """Test that a rational angle is reported with its location."""
        path = tmp_path / "bad.yaml"
        path.write_text(
            "n: 2\ngeodesics:\n  - initial_index: 1\n    angles: [{kind: rational, p: 1, q: 3}]\n"
        )
        result = runner.invoke(cli, ["iterate", str(path)])
        assert result.exit_code == 2
        assert "geodesics.0" in result.output


class TestBettiAndMorse:
    """Test the betti and morse commands."""

    def test_betti(self, runner):
        """Test the Betti table in JSON."""
        result = runner.invoke(cli, ["betti", "2", "--max-degree", "5", "--format", "json"])
        assert result.exit_code == 0
        assert json.loads(result.output)["values"] == [0, 1, 0, 2, 0, 2]

    def test_betti_rejects_small_n(self, runner):
        """Test that n must be at least 2."""
        assert runner.invoke(cli, ["betti", "1"]).exit_code == 2

    def test_morse_violation(self, runner, single_file):
        """Test that a failing inequality exits 1."""
        result = runner.invoke(
            cli, ["morse", single_file, "--max-degree", "5", "--format", "json"]
        )
        assert result.exit_code == 1
        data = json.loads(result.output)
        assert data["morse"]["counts"] == [0, 1, 0, 1, 0, 2]
        assert data["inequalities"]["first_violation"] == 3
        assert data["parity"]["equality_failures"] == [3]

    def test_morse_table(self, runner, single_file):
        """Test the table output."""
        result = runner.invoke(cli, ["morse", single_file, "--max-degree", "5", "--no-color"])
        assert result.exit_code == 1
        assert "First violation at degree 3" in result.output


class TestJump:
    """Test the jump command."""

    def test_json(self, runner, pair_file):
        """Test the pair certificate and its gap report."""
        result = runner.invoke(cli, ["jump", pair_file, "--format", "json"])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["report"]["certificate"]["N"] == 3
        assert data["report"]["certificate"]["iterates"] == [2, 1]
        assert data["gaps"]["upper_gap"] == 2

    def test_threaded(self, runner, pair_file):
        """Test the search with workers."""
        result = runner.invoke(
            cli, ["jump", pair_file, "--n-min", "4", "--workers", "2", "--format", "json"]
        )
        assert result.exit_code == 0
        assert json.loads(result.output)["report"]["certificate"]["N"] == 17

    def test_search_exhausted(self, runner, pair_file):
        """Test that an exhausted search exits 3."""
        result = runner.invoke(cli, ["jump", pair_file, "--n-max", "2"])
        assert result.exit_code == 3
        assert "no certificate" in result.output

    def test_precondition(self, runner, tmp_path):
        """Test that a set without i = n - 1 is bad input."""
        g = GeodesicModel(n=2, initial_index=3, angles=[quadratic(-1, 1, 2)])
        path = write_models(tmp_path / "partner.yaml", [g])
        result = runner.invoke(cli, ["jump", path])
        assert result.exit_code == 2
        assert "n-1" in result.output


class TestVerify:
    """Test the verify command and option precedence."""

    def test_consistent(self, runner, pair_file):
        """Test a consistent set."""
        result = runner.invoke(cli, ["verify", pair_file, "--no-color"])
        assert result.exit_code == 0
        assert "Verdict: consistent, forced multiplicity 2" in result.output

    def test_inconsistent(self, runner, tmp_path):
        """Test three synthetic geodesics on S^2."""
        path = write_models(tmp_path / "three.yaml", synthetic_model_set(2, 3))
        result = runner.invoke(cli, ["verify", path, "--format", "json"])
        assert result.exit_code == 1
        data = json.loads(result.output)
        assert data["verdict"] == "inconsistent"
        assert data["window"]["total"] == 5

    def test_environment_default(self, runner, pair_file):
        """Test that GEODKIT_N_MAX applies when neither file nor flag set n_max."""
        result = runner.invoke(cli, ["verify", pair_file], env={"GEODKIT_N_MAX": "2"})
        assert result.exit_code == 3

    def test_flag_beats_file(self, runner, tmp_path):
        """Test that --n-max overrides the file's options block."""
        models = synthetic_model_set(2, 2)
        path = write_models(tmp_path / "opts.yaml", models, n_max=2)
        assert runner.invoke(cli, ["verify", path]).exit_code == 3
        assert runner.invoke(cli, ["verify", path, "--n-max", "50"]).exit_code == 0

    def test_file_beats_environment(self, runner, tmp_path):
        """Test that the file's options block overrides the environment."""
        path = write_models(tmp_path / "opts.yaml", synthetic_model_set(2, 2), n_max=50)
        result = runner.invoke(cli, ["verify", path], env={"GEODKIT_N_MAX": "2"})
        assert result.exit_code == 0


class TestS3:
    """Test the s3 command."""

    def test_pair_forces_third(self, runner, tmp_path):
        """Test that two geodesics on S^3 force a third."""
        path = write_models(tmp_path / "s3.yaml", synthetic_model_set(3, 2))
        result = runner.invoke(cli, ["s3", path, "--no-color"])
        assert result.exit_code == 0
        assert "a third closed geodesic must exist" in result.output

    def test_wrong_sphere(self, runner, pair_file):
        """Test that the hypotheses are reported."""
        result = runner.invoke(cli, ["s3", pair_file, "--format", "json"])
        assert result.exit_code == 1
        assert json.loads(result.output)["preconditions"] == ["all geodesics must live on S^3"]
