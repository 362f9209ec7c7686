"""Benchmark task model and the deterministic short-horizon generators."""

from storelab.tasks.model import (
    BUNDLE_EASY,
    BUNDLE_HARD,
    BenchmarkFile,
    SuccessCriteria,
    Task,
)
from storelab.tasks.generators import (
    gen_browse_filter,
    gen_discovery,
    gen_policy,
    generate_short_horizon,
)
from storelab.tasks.assemble import apply_overrides, assemble_benchmark, load_overrides

__all__ = [
    "BUNDLE_EASY",
    "BUNDLE_HARD",
    "BenchmarkFile",
    "SuccessCriteria",
    "Task",
    "apply_overrides",
    "assemble_benchmark",
    "gen_browse_filter",
    "gen_discovery",
    "gen_policy",
    "generate_short_horizon",
    "load_overrides",
]
