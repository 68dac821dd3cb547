"""
pybx - command-line entry point of the Poisson bialgebra workbench

Exit status: 0 when every check passes, 1 when a check fails,
2 for unreadable input, missing fields or failed preconditions.
"""

from pathlib import Path
from typing import Optional

import click

from config import config
from modules.workbench import (
    emit_report,
    input_digest,
    parse_spec,
    read_source,
    render_report,
    run_command,
)
from utils.error_handler import AppError, SpecParseError, create_error_summary, handle_error
from utils.run_logger import log_command, log_emit, log_error, log_load


def common_options(func):
    """Options shared by every command"""
    func = click.option("--emit", "emit_path", type=click.Path(dir_okay=False),
                        help="Write the emitted spec (double, convert, induce) to this file")(func)
    func = click.option("--out", "out_path", type=click.Path(dir_okay=False),
                        help="Write the rendered report here instead of stdout")(func)
    func = click.option("--format", "fmt", type=click.Choice(config.REPORT_FORMATS),
                        default=config.DEFAULT_REPORT_FORMAT, show_default=True)(func)
    func = click.option("--weight", default=None, help="Rota-Baxter weight p/q, overrides the spec")(func)
    func = click.option("--in", "in_path", required=True, type=click.Path(exists=True, dir_okay=False),
                        help="Spec file (.pbx), or a saved machine report for 'report'")(func)
    return func


def _execute(command: str, in_path: str, direction: Optional[str], weight: Optional[str],
             fmt: str, out_path: Optional[str], emit_path: Optional[str]) -> None:
    ctx = click.get_current_context()
    source = {"path": in_path}
    try:
        text, _ = read_source(Path(in_path))
        source["digest"] = input_digest(text)
        if command == "report" and Path(in_path).suffix == ".json":
            doc, rendered = render_report(text, fmt)
        else:
            spec = parse_spec(text)
            log_load(source, spec)
            for warning in spec.warnings:
                click.echo(f"warning: {warning}", err=True)
            doc = run_command(command, spec, direction=direction, weight=weight, digest=source["digest"])
            log_command(source, command, doc)
            rendered = emit_report(doc, fmt)
    except (AppError, ValueError) as e:
        handle_error(e, f"pybx {command}")
        log_error(source, create_error_summary(e))
        click.echo(f"error: {e}", err=True)
        if isinstance(e, SpecParseError):
            for d in e.diagnostics:
                click.echo(f"  line {d['line']}, column {d['column']}: {d['reason']}", err=True)
        ctx.exit(config.EXIT_ERROR)

    if out_path:
        Path(out_path).write_text(rendered, encoding="utf-8")
        log_emit(source, fmt, out_path)
    else:
        click.echo(rendered, nl=False)
        log_emit(source, fmt, "stdout")

    if emit_path:
        if doc.emitted_spec is None:
            click.echo(f"warning: '{command}' emits no spec; --emit ignored", err=True)
        else:
            Path(emit_path).write_text(doc.emitted_spec, encoding="utf-8")

    ctx.exit(config.EXIT_PASS if doc.passed else config.EXIT_FAIL)


@click.group(name="pybx")
def cli():
    """Exact verification of Poisson bialgebras, r-matrices and Rota-Baxter operators."""


@cli.command()
@common_options
def check(in_path, weight, fmt, out_path, emit_path):
    """Run every axiom suite that applies to the spec."""
    _execute("check", in_path, None, weight, fmt, out_path, emit_path)


@cli.command()
@common_options
def classify(in_path, weight, fmt, out_path, emit_path):
    """Classify the spec's r-matrix."""
    _execute("classify", in_path, None, weight, fmt, out_path, emit_path)


@cli.command()
@common_options
def double(in_path, weight, fmt, out_path, emit_path):
    """Build the Drinfeld double (Poisson or differential)."""
    _execute("double", in_path, None, weight, fmt, out_path, emit_path)


@cli.command()
@common_options
@click.option("--direction", type=click.Choice(config.CONVERT_DIRECTIONS), required=True)
def convert(in_path, weight, fmt, out_path, emit_path, direction):
    """Convert between factorizable r-matrices and Rota-Baxter operators."""
    _execute("convert", in_path, direction, weight, fmt, out_path, emit_path)


@cli.command()
@common_options
def induce(in_path, weight, fmt, out_path, emit_path):
    """Induce a Poisson bialgebra from a differential ASI bialgebra."""
    _execute("induce", in_path, None, weight, fmt, out_path, emit_path)


@cli.command()
@common_options
def report(in_path, weight, fmt, out_path, emit_path):
    """Full report for a spec, or re-render a saved machine report (.json)."""
    _execute("report", in_path, None, weight, fmt, out_path, emit_path)


if __name__ == "__main__":
    cli()
