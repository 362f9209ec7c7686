"""The validator-driven polish loop.

Initial pass, then at most two polish rounds. Each polish prompt bundles
only the flagged tasks with their specific issues plus the shop context;
the generator regenerates only those tasks, ids preserved. If actionable
issues survive round two, the build halts instead of shipping them.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field
from typing import Any

from storelab import jsonio
from storelab.catalog.model import ShopBundle
from storelab.errors import MergeError, PolishLoopHalt
from storelab.journeys.adapters import TextGenerator
from storelab.journeys.prompts import build_prompt
from storelab.tasks.model import BUNDLE_HARD, Task
from storelab.validation import actionable_subset, validate
from storelab.validation.rules import Issue

log = logging.getLogger(__name__)

MAX_POLISH_ROUNDS = 2
PARSE_RETRIES = 1

POLISH_HEADER = """\
Some of the tasks you authored failed grounding validation against the
shop data. Regenerate ONLY the flagged tasks listed below. Keep each
task's id EXACTLY as given, fix the listed issues, and follow every rule
from the system prompt. Respond with a JSON object with a "tasks" key
containing ONLY the regenerated tasks.
"""

_FENCE_RE = re.compile(r"^```[a-zA-Z]*\n|\n```$", re.MULTILINE)


def parse_generator_output(text: str) -> list[Task]:
    """Extract the tasks array from a completion; raises ValueError if absent."""
    candidate = _FENCE_RE.sub("", text.strip())
    try:
        payload = json.loads(candidate)
    except ValueError:
        start, end = candidate.find("{"), candidate.rfind("}")
        if start < 0 or end <= start:
            raise ValueError("no JSON object in generator output")
        payload = json.loads(candidate[start : end + 1])
    if not isinstance(payload, dict) or not isinstance(payload.get("tasks"), list):
        raise ValueError('generator output lacks a "tasks" array')
    tasks = []
    for raw in payload["tasks"]:
        if not isinstance(raw, dict) or not raw.get("id") or not raw.get("intent"):
            raise ValueError("task object missing id or intent")
        tasks.append(Task.from_json(raw, bundle_tag=BUNDLE_HARD))
    return tasks


def merge_regenerated(
    original: list[Task], regenerated: list[Task], flagged_ids: set[str]
) -> list[Task]:
    """Replace flagged tasks by id; order and unflagged tasks preserved."""
    replacements: dict[str, Task] = {}
    for task in regenerated:
        if task.id not in flagged_ids:
            raise MergeError(
                f"regenerated task id {task.id!r} is not in the flagged set"
            )
        replacements[task.id] = task
    return [replacements.get(task.id, task) for task in original]


def _polish_prompt(
    flagged: list[Task], issues: list[Issue], shop_context: str
) -> str:
    parts = [POLISH_HEADER, "### Flagged tasks"]
    issues_by_task: dict[str, list[Issue]] = {}
    for issue in issues:
        issues_by_task.setdefault(issue.task_id, []).append(issue)
    for task in flagged:
        parts.append(jsonio.dumps(task.to_json()))
        parts.append("Issues:")
        for issue in issues_by_task.get(task.id, []):
            parts.append(f"- [{issue.severity}] {issue.rule}: {issue.message}")
        parts.append("")
    parts.append("### Shop context")
    parts.append(shop_context)
    return "\n".join(parts)


@dataclass
class JourneyResult:
    tasks: list[Task] = field(default_factory=list)
    rounds_used: int = 0
    disposition: str = "emitted"  # emitted | halted
    audit: list[dict[str, Any]] = field(default_factory=list)

    @property
    def halted(self) -> bool:
        return self.disposition == "halted"


def generate_journeys(
    text_generator: TextGenerator,
    bundle: ShopBundle,
    count: int,
    *,
    timeout: float | None = None,
    domain: str = "http://localhost:8400",
) -> JourneyResult:
    """Run initial generation plus the bounded polish loop."""
    prompt = build_prompt(bundle, count, domain=domain)
    retries_left = PARSE_RETRIES

    def call(user_prompt: str) -> list[Task]:
        nonlocal retries_left
        text = text_generator.generate(prompt.system_prompt, user_prompt, timeout)
        try:
            return parse_generator_output(text)
        except ValueError as first_error:
            if retries_left <= 0:
                raise PolishLoopHalt(
                    f"generator output unparseable: {first_error}"
                ) from first_error
            retries_left -= 1
            log.warning("generator output unparseable (%s); re-requesting", first_error)
            text = text_generator.generate(prompt.system_prompt, user_prompt, timeout)
            try:
                return parse_generator_output(text)
            except ValueError as second_error:
                raise PolishLoopHalt(
                    f"generator output unparseable after retry: {second_error}"
                ) from second_error

    tasks = call(prompt.user_prompt)
    result = JourneyResult(tasks=tasks)

    # The shop-context slice of the user prompt (everything except the
    # authoring instructions) rides along in every polish prompt.
    shop_context = build_shop_context(prompt.user_prompt)

    issues = validate(tasks, bundle)
    actionable = actionable_subset(issues)
    result.audit.append(_audit_entry(0, issues, actionable))

    while actionable and result.rounds_used < MAX_POLISH_ROUNDS:
        flagged_ids = {issue.task_id for issue in actionable}
        flagged_tasks = [t for t in tasks if t.id in flagged_ids]
        polish_user = _polish_prompt(flagged_tasks, actionable, shop_context)
        regenerated = call(polish_user)
        accepted = [t for t in regenerated if t.id in flagged_ids]
        rejected = [t.id for t in regenerated if t.id not in flagged_ids]
        if rejected:
            log.warning(
                "generator changed ids %s; treating their targets as still flagged",
                rejected,
            )
        tasks = merge_regenerated(tasks, accepted, flagged_ids)
        result.tasks = tasks
        result.rounds_used += 1
        issues = validate(tasks, bundle)
        actionable = actionable_subset(issues)
        result.audit.append(_audit_entry(result.rounds_used, issues, actionable))

    if actionable:
        result.disposition = "halted"
        log.error(
            "journey generation halted: %d actionable issue(s) after %d polish rounds",
            len(actionable),
            result.rounds_used,
        )
    return result


def build_shop_context(user_prompt: str) -> str:
    """The data-dump portion of the user prompt (from the shop profile on)."""
    marker = "### Shop profile"
    index = user_prompt.find(marker)
    context = user_prompt[index:] if index >= 0 else user_prompt
    stop = context.find("### High-quality reference tasks")
    return context[:stop] if stop >= 0 else context


def _audit_entry(
    round_index: int, issues: list[Issue], actionable: list[Issue]
) -> dict[str, Any]:
    return {
        "round": round_index,
        "issues": [issue.to_json() for issue in issues],
        "actionable_task_ids": sorted({issue.task_id for issue in actionable}),
    }


def require_emitted(result: JourneyResult) -> list[Task]:
    """Raise the halt error unless the polish loop converged."""
    if result.halted:
        raise PolishLoopHalt(
            "tasks failed validation after the polish loop; no benchmark emitted"
        )
    return result.tasks


__all__ = [
    "JourneyResult",
    "generate_journeys",
    "merge_regenerated",
    "parse_generator_output",
    "require_emitted",
]
