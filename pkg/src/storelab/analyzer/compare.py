"""Cross-shop comparison of complexity reports."""

from __future__ import annotations

from typing import Any

from storelab.analyzer.report import ComplexityReport
from storelab.errors import StorelabError


def compare_report(reports: list[ComplexityReport]) -> dict[str, Any]:
    """Per-metric table with min/max/mean and explicit deltas vs the mean."""
    if len(reports) < 2:
        raise StorelabError("comparison needs at least two reports")
    names = [r.name for r in reports]
    rows = []
    for metric in ComplexityReport.METRICS:
        values = {r.name: r.metric(metric) for r in reports}
        numbers = list(values.values())
        mean = sum(numbers) / len(numbers)
        rows.append(
            {
                "metric": metric,
                "values": values,
                "min": min(numbers),
                "max": max(numbers),
                "mean": round(mean, 4),
                "delta_vs_mean": {
                    name: round(value - mean, 4) for name, value in values.items()
                },
            }
        )
    return {"shops": names, "rows": rows}


def render_comparison_table(comparison: dict[str, Any]) -> str:
    names = comparison["shops"]
    header = ["metric"] + names + ["min", "max", "mean"]
    lines = ["\t".join(header)]
    for row in comparison["rows"]:
        cells = [row["metric"]]
        cells += [str(row["values"][name]) for name in names]
        cells += [str(row["min"]), str(row["max"]), str(row["mean"])]
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"
