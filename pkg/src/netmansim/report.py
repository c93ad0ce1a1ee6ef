"""Cost comparison reports: kilobyte tables and CSV emission.

Costs are carried in bytes; reports render them as kilobytes using the
1000 divisor with half-up rounding to two decimals. Deployment cost is
reported once in the metadata and kept out of the per-polling rows unless
explicitly included.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal, localcontext
from fractions import Fraction
from typing import BinaryIO, TextIO, Union

from .errors import EmptyResult
from .simulation import SimulationResult

__all__ = ["kilobytes", "ReportRow", "CostReport", "compare", "emit_csv", "format_table"]

_KB = Decimal(1000)
_CENT = Decimal("0.01")


def kilobytes(value) -> Decimal:
    """Render a byte count as kilobytes: /1000, 2 decimals, half-up."""
    amount = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = 50
        exact = Decimal(amount.numerator) / Decimal(amount.denominator)
        return (exact / _KB).quantize(_CENT, rounding=ROUND_HALF_UP)


@dataclass(frozen=True)
class ReportRow:
    """One polling count with its per-model cost, in bytes and kilobytes."""

    polls: int
    bytes_by_model: tuple[tuple[str, Fraction], ...]
    kb_by_model: tuple[tuple[str, Decimal], ...]

    def bytes_of(self, model: str) -> Fraction:
        return dict(self.bytes_by_model)[model]

    def kb_of(self, model: str) -> Decimal:
        return dict(self.kb_by_model)[model]


@dataclass(frozen=True)
class CostReport:
    """Comparison table over polling counts, plus deployment metadata."""

    scenario: str
    models: tuple[str, ...]
    include_deploy: bool
    deploy_bytes: tuple[tuple[str, Fraction], ...]
    rows: tuple[ReportRow, ...]

    def deploy_of(self, model: str) -> Fraction:
        return dict(self.deploy_bytes)[model]


def compare(result: SimulationResult, include_deploy: bool = False) -> CostReport:
    """Build the per-polling-count comparison table from a run result.

    Hierarchical deployment cost is listed once in the metadata; with
    ``include_deploy`` it is also added (once, not per poll) to every
    hierarchical-model row.
    """
    if not result.models:
        raise EmptyResult(f"run of {result.scenario!r} evaluated no models")
    rows = []
    for polls in result.polling_counts:
        cells: list[tuple[str, Fraction]] = []
        for model in result.models:
            total = result.total_of(model, polls)
            if include_deploy:
                total += result.deploy_of(model)
            cells.append((model, total))
        rows.append(
            ReportRow(
                polls=polls,
                bytes_by_model=tuple(cells),
                kb_by_model=tuple(
                    (model, kilobytes(value)) for model, value in cells
                ),
            )
        )
    return CostReport(
        scenario=result.scenario,
        models=result.models,
        include_deploy=include_deploy,
        deploy_bytes=result.deploy,
        rows=tuple(rows),
    )


def _render_csv(report: CostReport) -> str:
    header = ["polling"] + [f"cost_{model}_kb" for model in report.models]
    lines = [",".join(header)]
    for row in report.rows:
        cells = [str(row.polls)] + [
            str(row.kb_of(model)) for model in report.models
        ]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def emit_csv(report: CostReport, sink: Union[BinaryIO, TextIO]) -> None:
    """Write the report to ``sink`` as UTF-8 CSV, one row per polling count."""
    if not report.models:
        raise EmptyResult("report has no model columns")
    text = _render_csv(report)
    if isinstance(sink, io.TextIOBase):
        sink.write(text)
    else:
        sink.write(text.encode("utf-8"))


def _format_bytes(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return str(float(value))


def format_table(report: CostReport) -> str:
    """Plain-text table for terminal output."""
    header = ["polling"] + [f"cost_{model}_kb" for model in report.models]
    body = [
        [str(row.polls)] + [str(row.kb_of(model)) for model in report.models]
        for row in report.rows
    ]
    widths = [
        max(len(header[col]), *(len(line[col]) for line in body))
        if body
        else len(header[col])
        for col in range(len(header))
    ]
    lines = [f"scenario: {report.scenario}"]
    for model, deploy in report.deploy_bytes:
        if deploy:
            suffix = "included in rows" if report.include_deploy else "one-time, excluded from rows"
            lines.append(
                f"{model} deployment: {_format_bytes(deploy)} bytes "
                f"({kilobytes(deploy)} Kb, {suffix})"
            )
    lines.append("  ".join(h.rjust(w) for h, w in zip(header, widths)))
    for line in body:
        lines.append("  ".join(c.rjust(w) for c, w in zip(line, widths)))
    return "\n".join(lines)
