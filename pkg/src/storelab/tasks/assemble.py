"""Benchmark-file assembly and hand-authored overrides."""

from __future__ import annotations

from pathlib import Path

from storelab import jsonio
from storelab.catalog.model import ShopBundle
from storelab.errors import AssemblyError
from storelab.tasks.model import BUNDLE_EASY, BUNDLE_HARD, BenchmarkFile, Task


def assemble_benchmark(
    bundle: ShopBundle,
    short_tasks: list[Task],
    journey_tasks: list[Task],
) -> BenchmarkFile:
    """Partition tasks into the two bundles and refuse broken inputs.

    Callers are expected to have validated the tasks already; assembly
    re-checks with the validator and refuses on any error-severity issue.
    """
    from storelab.validation import validate

    tagged: list[Task] = []
    for task in short_tasks:
        task.bundle_tag = BUNDLE_EASY
        tagged.append(task)
    for task in journey_tasks:
        task.bundle_tag = BUNDLE_HARD
        tagged.append(task)

    seen: set[str] = set()
    for task in tagged:
        if task.id in seen:
            raise AssemblyError(f"duplicate task id: {task.id}")
        seen.add(task.id)

    errors = [i for i in validate(tagged, bundle) if i.severity == "error"]
    if errors:
        summary = "; ".join(f"{i.task_id}: {i.rule}" for i in errors)
        raise AssemblyError(f"refusing to assemble with validation errors: {summary}")

    return BenchmarkFile(shop_slug=bundle.slug, tasks=tagged)


def load_overrides(data_sources: str | Path) -> list[Task]:
    """Read hand-authored task files from a ``data_sources/`` directory.

    Each ``*.json`` file holds either a task object or a list of task
    objects. Overrides replace generated tasks with the same id.
    """
    directory = Path(data_sources)
    tasks: list[Task] = []
    if not directory.is_dir():
        return tasks
    for path in sorted(directory.glob("*.json")):
        raw = jsonio.load_path(path)
        items = raw if isinstance(raw, list) else [raw]
        tasks.extend(Task.from_json(item) for item in items)
    return tasks


def apply_overrides(tasks: list[Task], overrides: list[Task]) -> list[Task]:
    """Hand-authored tasks take precedence over generated ones by id."""
    by_id = {t.id: t for t in overrides}
    merged = []
    for task in tasks:
        override = by_id.pop(task.id, None)
        if override is not None:
            override.bundle_tag = task.bundle_tag
            merged.append(override)
        else:
            merged.append(task)
    merged.extend(by_id.values())
    return merged
