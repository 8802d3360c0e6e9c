"""Batch CLI for the moderator: evaluate rounds, sweep epsilon, compare.

Exit codes: 0 success, 2 input validation failure (diagnostics on stderr),
3 I/O failure.  Reports are JSON by default (the machine-readable source
of truth); Markdown and CSV renderings are derived summaries.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from .engine import StopDecision, compare_rounds, what_if_epsilon
from .ingestion import ValidationError, assemble_round
from .report import (
    DEFAULT_SCORE_LABELS,
    REPORT_SCHEMA,
    build_report,
    comparison_to_json,
    dumps,
    report_to_csv,
    report_to_markdown,
    round_result_from_report,
)
from . import engine

EXIT_VALIDATION = 2
EXIT_IO = 3

DEFAULT_MAX_ITERATIONS = 10


def _fail_validation(diagnostics) -> None:
    for line in diagnostics:
        click.echo(f"error: {line}", err=True)
    sys.exit(EXIT_VALIDATION)


def _read_text(path: str | None) -> str | None:
    if path is None:
        return None
    try:
        return Path(path).read_text("utf-8")
    except OSError as exc:
        click.echo(f"error: cannot read {path}: {exc}", err=True)
        sys.exit(EXIT_IO)


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        click.echo(text, nl=False)
        return
    try:
        Path(path).write_text(text, "utf-8")
    except OSError as exc:
        click.echo(f"error: cannot write {path}: {exc}", err=True)
        sys.exit(EXIT_IO)


def _load_report(path: str) -> dict:
    text = _read_text(path)
    try:
        report = json.loads(text)
    except json.JSONDecodeError as exc:
        _fail_validation([f"{path}: not valid JSON ({exc})"])
    if not isinstance(report, dict) or report.get("schema") != REPORT_SCHEMA:
        _fail_validation(
            [f"{path}: expected a {REPORT_SCHEMA!r} report, got schema "
             f"{report.get('schema') if isinstance(report, dict) else None!r}"]
        )
    return report


def _max_iterations() -> int:
    raw = os.environ.get("DELPHI_MAX_ITER", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return DEFAULT_MAX_ITERATIONS


@click.group()
@click.version_option(package_name="fuzzydelphi")
def main() -> None:
    """Consensus content validation of questionnaires."""


@main.command()
@click.option("--responses", required=True, type=click.Path(), help="Responses CSV (mandatory sheet).")
@click.option("--dimensions", type=click.Path(), help="Dimensions CSV (optional; uniform weights otherwise).")
@click.option("--descriptions", type=click.Path(), help="Descriptions CSV (optional; placeholders otherwise).")
@click.option("--round", "round_number", type=int, default=1, show_default=True, help="Round number.")
@click.option("--epsilon", type=float, default=0.75, show_default=True, help="Satisfactory reliance level in [0, 1].")
@click.option("--out", type=click.Path(), help="Output path (stdout if omitted).")
@click.option("--format", "fmt", type=click.Choice(["json", "md", "csv"]), default="json", show_default=True)
@click.option("--labels", "labels_path", type=click.Path(), help="JSON file with 7 reporting-scale label names.")
def evaluate(responses, dimensions, descriptions, round_number, epsilon, out, fmt, labels_path) -> None:
    """Evaluate one round from its CSV sheets and write a report."""
    if not 0.0 <= epsilon <= 1.0:
        _fail_validation([f"epsilon {epsilon} outside [0, 1]"])
    labels = DEFAULT_SCORE_LABELS
    if labels_path:
        try:
            loaded = json.loads(_read_text(labels_path))
        except json.JSONDecodeError as exc:
            _fail_validation([f"{labels_path}: not valid JSON ({exc})"])
        if not isinstance(loaded, list) or len(loaded) != 7:
            _fail_validation([f"{labels_path}: expected a JSON list of 7 label names"])
        labels = tuple(str(x) for x in loaded)
    try:
        round_input = assemble_round(
            round_number,
            responses=_read_text(responses),
            dimensions=_read_text(dimensions),
            descriptions=_read_text(descriptions),
            epsilon=epsilon,
        )
    except ValidationError as exc:
        _fail_validation(exc.diagnostics)
    result = engine.evaluate_round(round_input)
    report = build_report(round_input, result, labels)
    verdict = (
        StopDecision.STOP_CONSENSUS
        if result.all_consensual
        else StopDecision.STOP_BUDGET
        if round_number >= _max_iterations()
        else StopDecision.CONTINUE
    )
    report["stop"] = verdict.value
    report["max_iterations"] = _max_iterations()
    if fmt == "json":
        _write_text(out, dumps(report))
    elif fmt == "md":
        _write_text(out, report_to_markdown(report))
    else:
        _write_text(out, report_to_csv(report))


@main.command()
@click.option("--a", "path_a", required=True, type=click.Path(), help="Earlier round report (JSON).")
@click.option("--b", "path_b", required=True, type=click.Path(), help="Later round report (JSON).")
@click.option("--out", type=click.Path(), help="Output path (stdout if omitted).")
def compare(path_a, path_b, out) -> None:
    """Compare two round reports item by item."""
    result_a = round_result_from_report(_load_report(path_a))
    result_b = round_result_from_report(_load_report(path_b))
    try:
        cmp = compare_rounds(result_a, result_b)
    except ValueError as exc:
        _fail_validation([str(exc)])
    _write_text(out, dumps(comparison_to_json(cmp)))


@main.command()
@click.option("--report", "report_path", required=True, type=click.Path(), help="Round report (JSON).")
@click.option("--epsilon-sweep", "sweep", required=True, help="LO:HI:STEP, all in [0, 1].")
@click.option("--out", type=click.Path(), help="Output CSV path (stdout if omitted).")
def whatif(report_path, sweep, out) -> None:
    """Sweep epsilon over a stored report; emit reliance counts per point."""
    parts = sweep.split(":")
    if len(parts) != 3:
        _fail_validation([f"sweep {sweep!r} is not LO:HI:STEP"])
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        _fail_validation([f"sweep {sweep!r} has non-numeric bounds"])
    if not (0.0 <= lo <= 1.0 and 0.0 <= hi <= 1.0):
        _fail_validation([f"sweep bounds {lo}:{hi} outside [0, 1]"])
    if hi < lo or step < 0 or (step == 0 and hi > lo):
        _fail_validation([f"sweep {sweep!r} cannot advance from {lo} to {hi} by {step}"])
    result = round_result_from_report(_load_report(report_path))
    points = [lo]
    while step > 0 and points[-1] + step <= hi + 1e-9:
        points.append(points[-1] + step)
    lines = ["epsilon,rs_true,all_consensual"]
    for eps in points:
        eps = min(max(eps, 0.0), 1.0)
        shifted = what_if_epsilon(result, eps)
        rs_true = sum(1 for item in shifted.items if item.rs)
        lines.append(f"{eps:.4f},{rs_true},{str(shifted.all_consensual).lower()}")
    _write_text(out, "\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
