"""Task and benchmark-file types.

A task is the unit generated, validated, and executed: an id, a
natural-language intent, and success criteria whose ``url_contains`` value
acts as either a soft hint to the judge or a hard trajectory gate,
depending on the harness mode.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

BUNDLE_EASY = "easy_short_horizon"
BUNDLE_HARD = "hard_long_horizon"


@dataclass
class SuccessCriteria:
    url_contains: str | None = None
    type: str = ""
    response_contains: list[str] = field(default_factory=list)

    @classmethod
    def from_json(cls, raw: dict[str, Any]) -> "SuccessCriteria":
        return cls(
            url_contains=raw.get("url_contains"),
            type=str(raw.get("type", "")),
            response_contains=[str(s) for s in raw.get("response_contains", [])],
        )

    def to_json(self) -> dict[str, Any]:
        doc: dict[str, Any] = {}
        if self.url_contains is not None:
            doc["url_contains"] = self.url_contains
        doc["type"] = self.type
        if self.response_contains:
            doc["response_contains"] = list(self.response_contains)
        return doc


@dataclass
class Task:
    id: str
    type: str  # shopping | navigation
    intent: str
    success_criteria: SuccessCriteria
    url_contains_alt: list[str] = field(default_factory=list)
    # Structured facet for filter tasks; spares the validator from having to
    # re-parse the intent.
    facet: dict[str, str] | None = None
    bundle_tag: str = BUNDLE_EASY

    @classmethod
    def from_json(cls, raw: dict[str, Any], bundle_tag: str = BUNDLE_EASY) -> "Task":
        facet = raw.get("facet")
        return cls(
            id=str(raw["id"]),
            type=str(raw.get("type", "shopping")),
            intent=str(raw.get("intent", "")),
            success_criteria=SuccessCriteria.from_json(raw.get("success_criteria", {})),
            url_contains_alt=[str(u) for u in raw.get("url_contains_alt", [])],
            facet={"dim": str(facet["dim"]), "value": str(facet["value"])}
            if facet
            else None,
            bundle_tag=bundle_tag,
        )

    def to_json(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "id": self.id,
            "type": self.type,
            "intent": self.intent,
            "success_criteria": self.success_criteria.to_json(),
        }
        if self.url_contains_alt:
            doc["url_contains_alt"] = list(self.url_contains_alt)
        if self.facet:
            doc["facet"] = dict(self.facet)
        return doc

    def all_url_hints(self) -> list[str]:
        hints = []
        if self.success_criteria.url_contains:
            hints.append(self.success_criteria.url_contains)
        hints.extend(self.url_contains_alt)
        return hints


@dataclass
class BenchmarkFile:
    shop_slug: str
    tasks: list[Task] = field(default_factory=list)

    @property
    def bundles(self) -> dict[str, list[str]]:
        partition: dict[str, list[str]] = {BUNDLE_EASY: [], BUNDLE_HARD: []}
        for task in self.tasks:
            partition.setdefault(task.bundle_tag, []).append(task.id)
        return partition

    @classmethod
    def from_json(cls, raw: dict[str, Any]) -> "BenchmarkFile":
        bundles = raw.get("bundles", {})
        tag_by_id: dict[str, str] = {}
        for tag, ids in bundles.items():
            for task_id in ids:
                tag_by_id[task_id] = tag
        tasks = [
            Task.from_json(t, tag_by_id.get(str(t.get("id")), BUNDLE_EASY))
            for t in raw.get("tasks", [])
        ]
        return cls(shop_slug=str(raw.get("shop_slug", "")), tasks=tasks)

    def to_json(self) -> dict[str, Any]:
        return {
            "shop_slug": self.shop_slug,
            "tasks": [t.to_json() for t in self.tasks],
            "bundles": self.bundles,
        }

    def task_by_id(self, task_id: str) -> Task | None:
        for task in self.tasks:
            if task.id == task_id:
                return task
        return None
