"""The seven grounding rules.

The validator is a pure function from (tasks, bundle) to a list of Issue
records — it never raises on findings, so callers decide whether to halt
or just log. Four rules are error severity and three are warnings:

    unknown-collection         error    URL hint names a collection handle
                                        the bundle does not have
    unknown-product            error    same, for /products/<handle>
    infeasible-filter          error    facet not realized by any product
                                        in the targeted collection
    intent-answer-leak         error    a response_contains value appears
                                        verbatim in the intent
    option-mismatch            warning  intent asks to select an option
                                        dimension the product lacks
    product-not-in-collection  warning  intent pairs a product with a
                                        collection that does not contain it
    unknown-page               warning  /pages/<handle> does not resolve
                                        (softer: /policies/* fallthrough)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any

from storelab.catalog.model import ShopBundle
from storelab.catalog.options import build_option_index, facet_count
from storelab.tasks.model import Task

ERROR_RULES = (
    "unknown-collection",
    "unknown-product",
    "infeasible-filter",
    "intent-answer-leak",
)
WARNING_RULES = (
    "option-mismatch",
    "product-not-in-collection",
    "unknown-page",
)
RULE_SEVERITY = {**{r: "error" for r in ERROR_RULES}, **{r: "warning" for r in WARNING_RULES}}


@dataclass
class Issue:
    rule: str
    severity: str
    task_id: str
    message: str
    evidence: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {
            "rule": self.rule,
            "severity": self.severity,
            "task_id": self.task_id,
            "message": self.message,
            "evidence": self.evidence,
        }


_HANDLE_IN_URL = r"([a-z0-9][a-z0-9._-]*)"
_COLLECTION_URL_RE = re.compile(r"/collections/" + _HANDLE_IN_URL)
_PRODUCT_URL_RE = re.compile(r"/products/" + _HANDLE_IN_URL)
_PAGE_URL_RE = re.compile(r"/pages/" + _HANDLE_IN_URL)

# Matches the deterministic filter-intent template: use the <Dim> filter (e.g. <Value>)
_INTENT_FACET_RE = re.compile(
    r"use the (?P<dim>[A-Za-z][\w ]*?) filter \(e\.g\.,? (?P<value>[^)]+)\)"
)

_SELECT_VERBS = r"(?:select|choose|pick)"


def _issue(rule: str, task: Task, message: str, **evidence: Any) -> Issue:
    return Issue(
        rule=rule,
        severity=RULE_SEVERITY[rule],
        task_id=task.id,
        message=message,
        evidence=evidence,
    )


def _check_url_hints(task: Task, bundle: ShopBundle, issues: list[Issue]) -> None:
    for hint in task.all_url_hints():
        for match in _COLLECTION_URL_RE.finditer(hint):
            handle = match.group(1)
            if handle not in bundle.collection_by_handle:
                issues.append(
                    _issue(
                        "unknown-collection",
                        task,
                        f"collection handle {handle!r} is not in the bundle",
                        handle=handle,
                        hint=hint,
                    )
                )
        for match in _PRODUCT_URL_RE.finditer(hint):
            handle = match.group(1)
            if handle not in bundle.product_by_handle:
                issues.append(
                    _issue(
                        "unknown-product",
                        task,
                        f"product handle {handle!r} is not in the bundle",
                        handle=handle,
                        hint=hint,
                    )
                )
        for match in _PAGE_URL_RE.finditer(hint):
            handle = match.group(1)
            if bundle.find_page(handle, kind="custom_page") is None:
                issues.append(
                    _issue(
                        "unknown-page",
                        task,
                        f"page handle {handle!r} is not in the bundle",
                        handle=handle,
                        hint=hint,
                    )
                )


def _target_collection(task: Task, bundle: ShopBundle):
    for hint in task.all_url_hints():
        match = _COLLECTION_URL_RE.search(hint)
        if match:
            return bundle.collection_by_handle.get(match.group(1))
    return None


def _task_facet(task: Task) -> tuple[str, str] | None:
    if task.facet:
        return task.facet["dim"], task.facet["value"]
    match = _INTENT_FACET_RE.search(task.intent)
    if match:
        return match.group("dim").strip(), match.group("value").strip()
    return None


def _check_filter_feasibility(task: Task, bundle: ShopBundle, issues: list[Issue]) -> None:
    facet = _task_facet(task)
    if facet is None:
        return
    collection = _target_collection(task, bundle)
    if collection is None:
        return  # unresolvable collections are already unknown-collection
    dim, value = facet
    index = build_option_index(collection, bundle)
    if facet_count(index, dim, value) == 0:
        issues.append(
            _issue(
                "infeasible-filter",
                task,
                f"facet ({dim}, {value}) is not realized by any product in"
                f" collection {collection.handle!r}",
                dim=dim,
                value=value,
                collection=collection.handle,
            )
        )


def _check_answer_leak(task: Task, issues: list[Issue]) -> None:
    intent_lower = task.intent.lower()
    for expected in task.success_criteria.response_contains:
        if expected and expected.lower() in intent_lower:
            issues.append(
                _issue(
                    "intent-answer-leak",
                    task,
                    f"response_contains value {expected!r} appears verbatim in"
                    " the intent",
                    leaked=expected,
                )
            )


def _titles_in_intent(intent: str, titles: dict[str, str]) -> list[str]:
    """Handles of titles found in the intent, longest title first.

    Longest-match-first: once a title matches, shorter titles contained in
    the matched span are suppressed to avoid substring false positives.
    """
    intent_lower = intent.lower()
    found: list[str] = []
    claimed: list[tuple[int, int]] = []
    for title, handle in sorted(titles.items(), key=lambda kv: -len(kv[0])):
        start = intent_lower.find(title.lower())
        if start < 0:
            continue
        span = (start, start + len(title))
        if any(span[0] >= s and span[1] <= e for s, e in claimed):
            continue
        claimed.append(span)
        found.append(handle)
    return found


def _check_membership(task: Task, bundle: ShopBundle, issues: list[Issue]) -> None:
    product_titles = {p.title: p.handle for p in bundle.products if p.title}
    collection_titles = {c.title: c.handle for c in bundle.collections if c.title}
    named_products = _titles_in_intent(task.intent, product_titles)
    named_collections = _titles_in_intent(task.intent, collection_titles)
    for collection_handle in named_collections:
        collection = bundle.collection_by_handle[collection_handle]
        members = set(collection.product_handles)
        for product_handle in named_products:
            if product_handle not in members:
                product = bundle.product_by_handle[product_handle]
                issues.append(
                    _issue(
                        "product-not-in-collection",
                        task,
                        f"intent pairs product {product.title!r} with collection"
                        f" {collection.title!r} which does not contain it",
                        product=product_handle,
                        collection=collection_handle,
                    )
                )


def _dimension_vocabulary(bundle: ShopBundle) -> set[str]:
    vocab = {"Color", "Size"}
    for product in bundle.products:
        vocab.update(product.option_axes)
    return vocab


def _named_task_products(task: Task, bundle: ShopBundle) -> list:
    """Products a task demonstrably talks about (URL handle or exact title)."""
    handles: list[str] = []
    for hint in task.all_url_hints():
        for match in _PRODUCT_URL_RE.finditer(hint):
            if match.group(1) in bundle.product_by_handle:
                handles.append(match.group(1))
    titles = {p.title: p.handle for p in bundle.products if p.title}
    for handle in _titles_in_intent(task.intent, titles):
        if handle not in handles:
            handles.append(handle)
    return [bundle.product_by_handle[h] for h in handles]


def _check_option_mismatch(task: Task, bundle: ShopBundle, issues: list[Issue]) -> None:
    products = _named_task_products(task, bundle)
    if not products:
        return
    vocab = _dimension_vocabulary(bundle)
    for dim in sorted(vocab):
        # A select-style verb followed by the dimension name within the same
        # sentence; keyword proximity only, no free-text parsing.
        pattern = re.compile(
            _SELECT_VERBS + r"\b[^.!?]*?\b" + re.escape(dim) + r"\b", re.IGNORECASE
        )
        if not pattern.search(task.intent):
            continue
        for product in products:
            axes_lower = {a.lower() for a in product.option_axes}
            if dim.lower() not in axes_lower:
                issues.append(
                    _issue(
                        "option-mismatch",
                        task,
                        f"intent asks to select a {dim} option on"
                        f" {product.title!r} which has no such dimension",
                        dim=dim,
                        product=product.handle,
                    )
                )


def validate(tasks: list[Task], bundle: ShopBundle) -> list[Issue]:
    """Run all seven rules over every task; deterministic, pure."""
    issues: list[Issue] = []
    for task in tasks:
        _check_url_hints(task, bundle, issues)
        _check_filter_feasibility(task, bundle, issues)
        _check_answer_leak(task, issues)
        _check_option_mismatch(task, bundle, issues)
        _check_membership(task, bundle, issues)
    return issues
