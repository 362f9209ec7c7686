"""Rule-based task validation: seven rules, issue records, exit dispositions."""

from storelab.validation.rules import (
    ERROR_RULES,
    RULE_SEVERITY,
    WARNING_RULES,
    Issue,
    validate,
)
from storelab.validation.report import (
    ACTIONABLE_WARNING_RULES,
    actionable_subset,
    exit_disposition,
    render_report,
)

__all__ = [
    "ACTIONABLE_WARNING_RULES",
    "ERROR_RULES",
    "Issue",
    "RULE_SEVERITY",
    "WARNING_RULES",
    "actionable_subset",
    "exit_disposition",
    "render_report",
    "validate",
]
