from pathlib import Path
from typing import Callable, Optional

import typer

from segre_index.config import Settings, configure_logging
from segre_index.core import (
    castelnuovo_report,
    chern_report,
    euler_report,
    local_index_report,
    model_report,
    render_report,
    run_verification,
    segre_index_report,
    sum_indices_report,
)
from segre_index.errors import SchemaError, SegreIndexError
from segre_index.fields import parse_scalar
from segre_index.registry import get_available_formatters, get_available_verifiers
from segre_index.reports import Report
from segre_index.serialization import (
    load_catalog,
    load_line,
    load_model,
    parse_field_option,
    read_json,
)
from segre_index.verifiers.base_verifier import VerifyParams

VERIFICATION_FAILED = 4

app = typer.Typer(
    name="segre",
    help="Quadratically enriched line counts: local indices, Segre indices and conic models.",
    add_completion=False,
)

FORMAT_OPTION = typer.Option(
    "table",
    "--format",
    "-f",
    help="Output format. Choose from: "
    + ", ".join(name for name, _ in get_available_formatters()),
)
OUTPUT_OPTION = typer.Option(
    None,
    "--output",
    "-o",
    file_okay=True,
    dir_okay=False,
    help="Where to write the report. If omitted, writes to stdout.",
)
INPUT_OPTION = typer.Option(
    ...,
    "--input",
    "-i",
    exists=True,
    file_okay=True,
    dir_okay=False,
    readable=True,
    help="UTF-8 JSON input file.",
)
GROUND_OPTION = typer.Option(
    None,
    "--ground",
    "-g",
    help="Ground field, 'Q' or 'fp:P'. Defaults to the field recorded in the input.",
)


def _fail(message: str, code: int) -> None:
    typer.secho(f"Error: {message}", err=True, fg=typer.colors.RED)
    raise typer.Exit(code=code)


def _emit(build: Callable[[], Report], fmt: str, output: Optional[Path]) -> None:
    """
    Build, render and write a report, mapping errors to exit codes.

    Library errors exit with their own code, failed checks with 4, anything
    else with 1.
    """
    try:
        report = build()
        rendered = render_report(report, fmt)
        if output:
            output.write_text(rendered, encoding="utf-8")
        else:
            typer.echo(rendered, nl=False)
    except SegreIndexError as e:
        _fail(str(e), e.exit_code)
    except FileNotFoundError:
        _fail("Cannot save file to a non-existent directory.", 1)
    except Exception as e:
        typer.secho(f"Unexpected error: {e}", err=True, fg=typer.colors.RED)
        raise typer.Exit(code=1)

    if not report.passed:
        raise typer.Exit(code=VERIFICATION_FAILED)


def _ground(text: Optional[str]):
    return parse_field_option(text) if text else None


def _settings() -> Settings:
    try:
        return Settings.from_env()
    except SchemaError as e:
        _fail(str(e), e.exit_code)


@app.command("euler")
def euler(
    n: int = typer.Option(..., "--n", "-n", help="Lines on hypersurfaces of degree 2n-1 in P^(n+1)."),
    fmt: str = FORMAT_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
) -> None:
    """
    Print c(n), the signature (2n-1)!! and the enriched Euler class.
    """
    _emit(lambda: euler_report(n), fmt, output)


@app.command("chern")
def chern(
    n: int = typer.Option(..., "--n", "-n", help="At least 2."),
    fmt: str = FORMAT_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
) -> None:
    """
    Print the top Chern number c(n) with its parity check.
    """
    _emit(lambda: chern_report(n), fmt, output)


@app.command("castelnuovo")
def castelnuovo(
    n: int = typer.Option(..., "--n", "-n", help="At least 3."),
    fmt: str = FORMAT_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
) -> None:
    """
    Print the number of (2n-4)-secant (n-3)-planes and check the Porteous identity.
    """
    _emit(lambda: castelnuovo_report(n), fmt, output)


@app.command("local-index")
def local_index(
    input: Path = INPUT_OPTION,
    ground: Optional[str] = GROUND_OPTION,
    fmt: str = FORMAT_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
) -> None:
    """
    Compute det A, its square class and the local index of one line.
    """

    def build() -> Report:
        line, field = load_line(read_json(input), _ground(ground))
        return local_index_report(line, field)

    _emit(build, fmt, output)


@app.command("segre-index")
def segre_index(
    input: Path = INPUT_OPTION,
    ground: Optional[str] = GROUND_OPTION,
    fmt: str = FORMAT_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
) -> None:
    """
    Compute the Segre index of one line (n = 2 or 3).
    """

    def build() -> Report:
        line, field = load_line(read_json(input), _ground(ground))
        return segre_index_report(line, field)

    _emit(build, fmt, output)


@app.command("sum-indices")
def sum_indices(
    input: Path = INPUT_OPTION,
    ground: Optional[str] = GROUND_OPTION,
    expect_euler: bool = typer.Option(
        False, "--expect-euler", help="Compare the sum with the enriched Euler class."
    ),
    fmt: str = FORMAT_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
) -> None:
    """
    Sum the local indices over a catalog of lines on one hypersurface.
    """
    settings = _settings()

    def build() -> Report:
        document = read_json(input)
        lines, field = load_catalog(document, _ground(ground))
        return sum_indices_report(
            lines, field, document["n"], expect_euler, settings.max_threads
        )

    _emit(build, fmt, output)


@app.command("model")
def model(
    input: Path = INPUT_OPTION,
    ground: Optional[str] = GROUND_OPTION,
    fmt: str = FORMAT_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
) -> None:
    """
    Evaluate A(B,Q), det V_B, R(B,Q) and V(B,Q) for a conic model file.
    """
    _emit(lambda: model_report(load_model(read_json(input), _ground(ground))), fmt, output)


def _parse_values(text: Optional[str]) -> Optional[tuple]:
    if not text:
        return None
    return tuple(parse_scalar(part) for part in text.split(","))


@app.command("verify")
def verify(
    mode: str = typer.Option(
        ...,
        "--mode",
        "-m",
        help="Verification mode. Choose from: "
        + ", ".join(name for name, _ in get_available_verifiers()),
    ),
    n: Optional[int] = typer.Option(None, "--n", "-n", help="Instance size (default 3, or the length of --a)."),
    trials: int = typer.Option(10, "--trials", "-t", help="Number of random trials."),
    seed: int = typer.Option(0, "--seed", "-s", help="Base seed; trial i uses seed XOR i."),
    field: str = typer.Option("Q", "--field", help="'Q' or 'fp:P'."),
    coeff_bound: int = typer.Option(5, "--coeff-bound", "-b", help="Coefficients in [-B, B]."),
    a: Optional[str] = typer.Option(None, "--a", help="Comma-separated values for symmetric-family."),
    fmt: str = FORMAT_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
) -> None:
    """
    Run a seeded verification mode and print a per-trial pass/fail table.
    """
    settings = _settings()

    def build() -> Report:
        values = _parse_values(a)
        size = n if n is not None else (len(values) if values else 3)
        params = VerifyParams(
            n=size,
            trials=trials,
            seed=seed,
            field=parse_field_option(field),
            coeff_bound=coeff_bound,
            a=values,
            max_threads=settings.max_threads,
        )
        return run_verification(mode, params)

    _emit(build, fmt, output)


@app.command("list-formats")
def list_formats() -> None:
    """
    Show all output formats and verification modes,
    listing each primary name with its aliases.
    """
    typer.echo("Output formats:")
    for primary, aliases in get_available_formatters():
        if aliases:
            typer.echo(f"  • {primary} (aliases: {', '.join(aliases)})")
        else:
            typer.echo(f"  • {primary}")

    typer.echo("\nVerification modes:")
    for primary, aliases in get_available_verifiers():
        if aliases:
            typer.echo(f"  • {primary} (aliases: {', '.join(aliases)})")
        else:
            typer.echo(f"  • {primary}")


@app.callback(invoke_without_command=True)
def main(
    ctx: typer.Context,
    version: bool = typer.Option(None, "--version", help="Show version and exit."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log debug output to stderr."),
) -> None:
    """
    segre: quadratically enriched counts of lines on hypersurfaces.
    """
    if version:
        from segre_index import __version__

        typer.echo(f"segre-index version {__version__}")
        raise typer.Exit()

    configure_logging(_settings(), verbose)

    if ctx.invoked_subcommand is None:
        typer.echo(ctx.get_help())
        raise typer.Exit()


if __name__ == "__main__":
    app()
