"""Aggregation over (task, repeat) verdict cells."""

from __future__ import annotations

import math
from typing import Any

from storelab.runner.judge import Verdict
from storelab.tasks.model import BenchmarkFile


def sem(values: list[float]) -> float:
    """Standard error of the mean (sample std, zero for n < 2)."""
    n = len(values)
    if n < 2:
        return 0.0
    mean = sum(values) / n
    variance = sum((v - mean) ** 2 for v in values) / (n - 1)
    return math.sqrt(variance / n)


def aggregate(
    benchmark: BenchmarkFile, verdicts: list[Verdict]
) -> dict[str, Any]:
    """Per-task means with SEM across repeats, per-bundle pass rates."""
    by_task: dict[str, list[Verdict]] = {}
    for verdict in verdicts:
        by_task.setdefault(verdict.task_id, []).append(verdict)

    bundles: dict[str, Any] = {}
    for tag, task_ids in benchmark.bundles.items():
        task_rows: dict[str, Any] = {}
        all_outcomes: list[float] = []
        for task_id in task_ids:
            cell = by_task.get(task_id, [])
            outcomes = [1.0 if v.success else 0.0 for v in cell]
            all_outcomes.extend(outcomes)
            task_rows[task_id] = {
                "repeats": len(cell),
                "mean": round(sum(outcomes) / len(outcomes), 6) if outcomes else None,
                "sem": round(sem(outcomes), 6),
            }
        bundles[tag] = {
            "pass_rate": round(sum(all_outcomes) / len(all_outcomes), 6)
            if all_outcomes
            else None,
            "cells": len(all_outcomes),
            "tasks": task_rows,
        }
    return {
        "shop_slug": benchmark.shop_slug,
        "bundles": bundles,
        "verdicts": [v.to_json() for v in verdicts],
    }
