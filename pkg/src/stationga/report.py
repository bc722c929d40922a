"""Per-generation CSV report and plan text."""

from __future__ import annotations

import csv
import dataclasses
import io
from decimal import Decimal

from .engine import RunReport

CSV_COLUMNS = ("generation", "avg_fitness", "min_fitness", "max_fitness", "best_cost")


def fmt(x) -> str:
    """Fixed 10-significant-digit formatting for floats and Decimals."""
    if isinstance(x, int) and not isinstance(x, bool):
        return str(x)
    if isinstance(x, Decimal):
        return format(x, ".10g")
    return format(float(x), ".10g")


def _config_lines(report: RunReport) -> list[str]:
    out = []
    for cfg in (report.engine_cfg, report.operator_cfg):
        for f in dataclasses.fields(cfg):
            v = getattr(cfg, f.name)
            out.append(f"# {f.name}={getattr(v, 'value', v)}")
    return out


def summary_lines(report: RunReport, inst) -> list[str]:
    lines = ["best_chromosome=" + " ".join(map(str, report.best_chromosome))]
    lines.append(f"best_cost={report.best_cost}")
    lines.append(f"evaluations={report.evaluations}")
    lines.append("plan:")
    lines += report.best_plan.to_text(inst).splitlines()
    lines.append("breakdown:")
    lines += report.best_breakdown.to_lines()
    lines.append("retry_stats:")
    lines += report.retry_stats.summary()
    return lines


def report_csv(report: RunReport, inst) -> str:
    buf = io.StringIO()
    for line in _config_lines(report):
        buf.write(line + "\n")
    buf.write(",".join(CSV_COLUMNS) + "\n")
    for row in report.rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    for line in summary_lines(report, inst):
        buf.write(f"# {line}\n")
    return buf.getvalue()


def read_report_csv(text: str) -> list[dict]:
    """Data rows of a report CSV as dicts of floats (comment lines skipped)."""
    rows = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    return [{k: float(v) for k, v in r.items()} for r in csv.DictReader(rows)]
