"""Command-line interface for geodkit."""

import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import click
from dotenv import load_dotenv

from . import __version__
from .config import Options, default_options, set_precision_policy
from .errors import (
    BracketError,
    ClassificationError,
    InputFileError,
    JumpSearchError,
    ModelError,
    PreconditionError,
)
from .files import (
    ModelFile,
    load_matrix_file,
    load_model_file,
    matrix_file_schema,
    model_file_schema,
)
from .iteration import GeodesicModel, IndexSequence
from .jump import check_iterate_gaps, distinguished_index, find_common_jump, verify_certificate
from .morse import check_morse_inequalities, check_parity_vanishing, morse_counts
from .progress import search_progress, spinner
from .symplectic import decompose, elliptic_height, is_irrationally_elliptic, spectrum_of
from .tables import (
    render_betti,
    render_certificate,
    render_index_sequence,
    render_morse,
    render_normal_form,
    render_s3,
    render_verification,
)
from .topology import betti_table
from .verifier import UNDETERMINED, check_s3_multiplicity, verify_model_set

EXIT_INCONSISTENT = 1
EXIT_INPUT = 2
EXIT_SEARCH = 3

# Errors reported as bad input (exit 2). pydantic's ValidationError is a ValueError.
INPUT_ERRORS: Tuple[type, ...] = (
    InputFileError,
    ModelError,
    PreconditionError,
    ClassificationError,
    BracketError,
    FileNotFoundError,
    ValueError,
)


def _load_env_files() -> None:
    """Load ``GEODKIT_*`` defaults from a ``.env`` file.

    Uses ``.env`` in the current working directory when present, otherwise the default
    python-dotenv search up the directory tree.
    """
    cwd_env = Path.cwd() / ".env"
    if cwd_env.exists():
        load_dotenv(cwd_env)
    else:
        load_dotenv()


_load_env_files()


def _configure_logging(verbose: int) -> None:
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


def _resolve_options(model_file: Optional[ModelFile] = None, **flags: Any) -> Options:
    """CLI flag > model-file options > environment > default."""
    options = default_options()
    if model_file is not None:
        options = options.with_overrides(**model_file.file_options())
    options = options.with_overrides(**flags)
    set_precision_policy(options.precision)
    return options


def _fail(error: Exception, code: int) -> None:
    click.echo(f"Error: {error}", err=True)
    sys.exit(code)


def _run(action: Callable[[], Optional[int]]) -> None:
    """Run a command body and map geodkit errors to exit codes."""
    try:
        code = action()
    except JumpSearchError as e:
        _fail(e, EXIT_SEARCH)
    except INPUT_ERRORS as e:
        _fail(e, EXIT_INPUT)
    else:
        if code:
            sys.exit(code)


def _echo_json(data: Dict[str, Any]) -> None:
    click.echo(json.dumps(data, indent=2))


def _select(models: List[GeodesicModel], model_index: Optional[int]) -> List[GeodesicModel]:
    if model_index is None:
        return models
    if not 0 <= model_index < len(models):
        raise ValueError(f"--model-index {model_index} out of range for {len(models)} models")
    return [models[model_index]]


def output_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """Add ``--format`` and ``--no-color`` to a command."""
    func = click.option("--no-color", is_flag=True, help="Disable colored output")(func)
    func = click.option(
        "--format",
        "output_format",
        type=click.Choice(["table", "json"]),
        default="table",
        help="Output format (default: table)",
    )(func)
    return func


@click.group()
@click.version_option(version=__version__, prog_name="geodkit")
@click.option("-v", "--verbose", count=True, help="Log progress (-v info, -vv debug)")
def cli(verbose: int) -> None:
    """geodkit - index theory of closed geodesics on Finsler spheres.

    Classify symplectic matrices, iterate Morse indices, tabulate Betti and Morse numbers,
    search common index jumps and run the multiplicity consistency check.

    Examples:

        \b
        # Normal form of a linearized Poincaré map
        geodkit decompose matrix.yaml

        \b
        # Index iteration table of the first geodesic
        geodkit iterate models.yaml --max-m 10 --model-index 0

        \b
        # Full consistency check, machine readable
        geodkit verify models.yaml --format json
    """
    _configure_logging(verbose)


@cli.command("decompose")
@click.argument("matrix_file", type=click.Path(exists=True))
@click.option("--tol", type=float, help="Classification tolerance (default: 1e-9)")
@output_options
def decompose_command(
    matrix_file: str, tol: Optional[float], output_format: str, no_color: bool
) -> None:
    """Classify a symplectic matrix into basic normal forms.

    MATRIX_FILE holds ``dimension``, row-major ``entries`` and optional exact ``angles``.
    """

    def action() -> None:
        options = _resolve_options(tol=tol)
        data = load_matrix_file(matrix_file)
        matrix = data.to_matrix(options.tol)
        nf = decompose(matrix, options.tol, data.exact_turns)
        height = elliptic_height(matrix, options.tol)
        elliptic = is_irrationally_elliptic(nf)
        if output_format == "json":
            _echo_json(
                {
                    "normal_form": nf.to_dict(),
                    "elliptic_height": height,
                    "irrationally_elliptic": elliptic,
                }
            )
        else:
            use_color = not no_color and sys.stdout.isatty()
            spectrum = spectrum_of(matrix, options.tol)
            click.echo(render_normal_form(nf, height, elliptic, spectrum, use_color))

    _run(action)


@cli.command("iterate")
@click.argument("model_file", type=click.Path(exists=True))
@click.option("--max-m", type=int, help="Number of iterates (default: 20)")
@click.option("--model-index", type=int, help="Only this geodesic (0-based)")
@click.option("--general", is_flag=True, help="Use the general splitting-number formula")
@output_options
def iterate_command(
    model_file: str,
    max_m: Optional[int],
    model_index: Optional[int],
    general: bool,
    output_format: str,
    no_color: bool,
) -> None:
    """Tabulate i(c^m), ν(c^m) and i(c^m)/m for each geodesic.

    Examples:

        \b
        geodkit iterate models.yaml --max-m 5
        geodkit iterate models.yaml --model-index 1 --general
    """

    def action() -> None:
        data = load_model_file(model_file)
        options = _resolve_options(data, max_m=max_m)
        models = _select(data.models(model_file), model_index)
        sequences = [IndexSequence.evaluate(g, options.max_m, general) for g in models]
        if output_format == "json":
            _echo_json({"sequences": [seq.to_dict() for seq in sequences]})
        else:
            use_color = not no_color and sys.stdout.isatty()
            click.echo("\n\n".join(render_index_sequence(seq, use_color) for seq in sequences))

    _run(action)


@cli.command("betti")
@click.argument("n", type=click.IntRange(min=2))
@click.option("--max-degree", type=int, help="Degree bound D (default: 20)")
@output_options
def betti_command(n: int, max_degree: Optional[int], output_format: str, no_color: bool) -> None:
    """Print the rational Betti numbers of the loop space of S^N."""

    def action() -> None:
        options = _resolve_options(max_degree=max_degree)
        table = betti_table(n, options.max_degree)
        if output_format == "json":
            _echo_json(table.to_dict())
        else:
            click.echo(render_betti(table, not no_color and sys.stdout.isatty()))

    _run(action)


@cli.command("morse")
@click.argument("model_file", type=click.Path(exists=True))
@click.option("--max-degree", type=int, help="Degree bound D (default: 20)")
@click.option("--workers", type=int, help="Threads, one geodesic each")
@output_options
def morse_command(
    model_file: str,
    max_degree: Optional[int],
    workers: Optional[int],
    output_format: str,
    no_color: bool,
) -> None:
    """Count critical modules per degree and check the Morse inequalities.

    Exits 1 when an inequality fails.
    """

    def action() -> int:
        data = load_model_file(model_file)
        options = _resolve_options(data, max_degree=max_degree, workers=workers)
        models = data.models(model_file)
        degree = options.max_degree
        with spinner("Counting critical modules", enabled=sys.stderr.isatty()):
            morse = morse_counts(models, degree, options.workers)
        betti = betti_table(data.n, degree)
        report = check_morse_inequalities(morse, betti, degree)
        parity = check_parity_vanishing(morse, betti, data.n, degree)
        if output_format == "json":
            _echo_json(
                {
                    "morse": morse.to_dict(),
                    "betti": betti.to_dict(),
                    "inequalities": report.to_dict(),
                    "parity": parity.to_dict(),
                }
            )
        else:
            use_color = not no_color and sys.stdout.isatty()
            click.echo(render_morse(morse, report, parity, use_color))
        return 0 if report.passed else EXIT_INCONSISTENT

    _run(action)


@cli.command("jump")
@click.argument("model_file", type=click.Path(exists=True))
@click.option("--m0", type=int, help="Divisor M0 required of N (default: n - 1)")
@click.option("--n-max", type=int, help="Largest N tried (default: 500)")
@click.option("--n-min", type=int, help="Smallest N tried (default: 1)")
@click.option("--workers", type=int, help="Threads for the search")
@click.option("--m-range", type=int, help="Range of m in the gap check (default: 10)")
@output_options
def jump_command(
    model_file: str,
    m0: Optional[int],
    n_max: Optional[int],
    n_min: Optional[int],
    workers: Optional[int],
    m_range: Optional[int],
    output_format: str,
    no_color: bool,
) -> None:
    """Search the smallest common index jump certificate and check it.

    Exits 3 when no certificate exists below --n-max.

    Examples:

        \b
        geodkit jump models.yaml
        geodkit jump models.yaml --n-max 2000 --workers 4
    """

    def action() -> None:
        data = load_model_file(model_file)
        options = _resolve_options(
            data, m0=m0, n_max=n_max, n_min=n_min, workers=workers, m_range=m_range
        )
        models = data.models(model_file)
        show_progress = sys.stderr.isatty() and output_format == "table"
        with search_progress(enabled=show_progress) as progress:
            certificate = find_common_jump(
                models,
                options.resolve_m0(data.n),
                options.n_max,
                n_min=options.n_min,
                window=options.window,
                workers=options.workers,
                on_progress=progress,
            )
        report = verify_certificate(models, certificate)
        star = distinguished_index(models)
        gaps = check_iterate_gaps(models[star], certificate, options.m_range)
        if output_format == "json":
            _echo_json({"report": report.to_dict(), "gaps": gaps.to_dict()})
        else:
            use_color = not no_color and sys.stdout.isatty()
            click.echo(render_certificate(report, gaps, use_color))

    _run(action)


@cli.command("verify")
@click.argument("model_file", type=click.Path(exists=True))
@click.option("--m0", type=int, help="Divisor M0 required of N (default: n - 1)")
@click.option("--n-max", type=int, help="Largest N tried (default: 500)")
@click.option("--n-min", type=int, help="Smallest N tried (default: 1)")
@click.option("--max-degree", type=int, help="Degree bound for the parity check")
@click.option("--workers", type=int, help="Threads for the search")
@output_options
def verify_command(
    model_file: str,
    m0: Optional[int],
    n_max: Optional[int],
    n_min: Optional[int],
    max_degree: Optional[int],
    workers: Optional[int],
    output_format: str,
    no_color: bool,
) -> None:
    """Run the multiplicity consistency check on a model set.

    Exit status: 0 consistent, 1 inconsistent, 2 bad input, 3 search bound exhausted or
    window still intruded after all escalations.
    """

    def action() -> int:
        data = load_model_file(model_file)
        options = _resolve_options(
            data, m0=m0, n_max=n_max, n_min=n_min, max_degree=max_degree, workers=workers
        )
        models = data.models(model_file)
        with spinner("Verifying model set", enabled=sys.stderr.isatty()):
            report = verify_model_set(models, options)
        if output_format == "json":
            click.echo(report.to_json())
        else:
            click.echo(render_verification(report, not no_color and sys.stdout.isatty()))
        if report.consistent:
            return 0
        return EXIT_SEARCH if report.verdict == UNDETERMINED else EXIT_INCONSISTENT

    _run(action)


@cli.command("s3")
@click.argument("model_file", type=click.Path(exists=True))
@click.option("--n-max", type=int, help="Largest N tried (default: 500)")
@output_options
def s3_command(
    model_file: str, n_max: Optional[int], output_format: str, no_color: bool
) -> None:
    """Check that two irrationally elliptic geodesics on S^3 force a third one.

    Exits 0 when the hypotheses hold and the pair is inconsistent, 1 otherwise.
    """

    def action() -> int:
        data = load_model_file(model_file)
        options = _resolve_options(data, n_max=n_max)
        report = check_s3_multiplicity(data.models(model_file), options)
        if output_format == "json":
            click.echo(report.to_json())
        else:
            click.echo(render_s3(report, not no_color and sys.stdout.isatty()))
        return 0 if report.third_geodesic_required else EXIT_INCONSISTENT

    _run(action)


@cli.command("schema")
@click.argument("kind", type=click.Choice(["model", "matrix"]))
def schema_command(kind: str) -> None:
    """Print the JSON Schema of the model or matrix file format."""
    schema = model_file_schema() if kind == "model" else matrix_file_schema()
    _echo_json(schema)


def main() -> None:
    """Main entry point for the CLI."""
    cli()


if __name__ == "__main__":
    main()
