"""Issue triage: actionable subset, exit codes, readable reports."""

from __future__ import annotations

from storelab.validation.rules import Issue

# Warnings that feed the journey polish loop alongside every error: the two
# hallucination classes. unknown-page stays advisory only.
ACTIONABLE_WARNING_RULES = frozenset({"option-mismatch", "product-not-in-collection"})

# Exit code used when error-severity issues are present.
VALIDATION_EXIT_CODE = 2


def actionable_subset(issues: list[Issue]) -> list[Issue]:
    """Every error plus the hallucination-class warnings."""
    return [
        issue
        for issue in issues
        if issue.severity == "error" or issue.rule in ACTIONABLE_WARNING_RULES
    ]


def render_report(issues: list[Issue]) -> str:
    """Group issues by task, then rule."""
    if not issues:
        return "no issues\n"
    lines: list[str] = []
    by_task: dict[str, list[Issue]] = {}
    for issue in issues:
        by_task.setdefault(issue.task_id, []).append(issue)
    for task_id in sorted(by_task):
        lines.append(f"task {task_id}:")
        for issue in sorted(by_task[task_id], key=lambda i: i.rule):
            lines.append(f"  [{issue.severity}] {issue.rule}: {issue.message}")
    errors = sum(1 for i in issues if i.severity == "error")
    warnings = len(issues) - errors
    lines.append(f"{errors} error(s), {warnings} warning(s)")
    return "\n".join(lines) + "\n"


def exit_disposition(issues: list[Issue]) -> dict:
    """Errors halt the build; warnings are logged."""
    has_errors = any(i.severity == "error" for i in issues)
    return {
        "code": VALIDATION_EXIT_CODE if has_errors else 0,
        "report": render_report(issues),
    }
