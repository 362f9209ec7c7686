"""Deterministic reference agent for the six short-horizon skills.

An oracle policy, not a model: policy tasks navigate straight to the
hinted route, browse/filter tasks navigate (applying the facet via URL
parameters), open the first product card, and submit the add-to-cart
form; discovery tasks go through ``/search?q=<title>``. Journey tasks are
declared infeasible. Used to prove end-to-end groundedness of generated
benchmarks.
"""

from __future__ import annotations

import re
from typing import Any
from urllib.parse import quote_plus

from storelab.tasks.model import Task

_QUOTED_RE = re.compile(r'"([^"]+)"')


def _skill_of(task: Task) -> str:
    for skill in ("search-exact", "search-substitute", "browse", "filter",
                  "shipping", "returns", "e2e"):
        if f"-{skill}-" in task.id:
            return skill
    if task.type == "navigation":
        return "navigation"
    return "unknown"


class ScriptedReferenceAgent:
    """Step policy bound to one task; plans a fixed route and follows it."""

    def __init__(self, task: Task):
        self.task = task
        self.skill = _skill_of(task)
        self.stage = 0

    # -- helpers ------------------------------------------------------------

    def _quoted_title(self) -> str | None:
        match = _QUOTED_RE.search(self.task.intent)
        return match.group(1) if match else None

    def _first_product_link(self, observation: dict[str, Any]) -> str | None:
        for elem_id, description in observation["elements"].items():
            if "-> /products/" in description:
                return elem_id
        return None

    def _add_button(self, observation: dict[str, Any]) -> str | None:
        for elem_id, description in observation["elements"].items():
            if '"Add to Cart"' in description and "POST /cart/add" in description:
                return elem_id
        return None

    def _end(self, note: str) -> dict[str, Any]:
        return {"should_end": True, "instruction": "end session", "memory": note}

    def _goto(self, target: str, note: str) -> dict[str, Any]:
        return {
            "method": "goto",
            "target": target,
            "instruction": f"navigate to {target}",
            "memory": note,
        }

    # -- policy -------------------------------------------------------------

    def step(self, observation: dict[str, Any]) -> dict[str, Any]:
        if self.skill in ("shipping", "returns", "navigation"):
            return self._policy_step(observation)
        if self.skill in ("browse", "filter"):
            return self._collection_step(observation)
        if self.skill in ("search-exact", "search-substitute"):
            return self._discovery_step(observation)
        return self._end("task type outside the scripted repertoire: infeasible")

    def _policy_step(self, observation: dict[str, Any]) -> dict[str, Any]:
        hints = self.task.all_url_hints()
        if self.stage < len(hints):
            target = hints[self.stage]
            self.stage += 1
            return self._goto(target, f"visiting policy route {target}")
        if observation["status"] == 200:
            return self._end("policy page read")
        return self._end("no policy route answered")

    def _collection_step(self, observation: dict[str, Any]) -> dict[str, Any]:
        if self.stage == 0:
            self.stage = 1
            target = self.task.success_criteria.url_contains or "/"
            if self.task.facet:
                dim, value = self.task.facet["dim"], self.task.facet["value"]
                target = f"{target}?filter.{quote_plus(dim)}={quote_plus(value)}"
            return self._goto(target, "opening target collection")
        if self.stage == 1:
            link = self._first_product_link(observation)
            if link is None:
                # A filter may legitimately match nothing; that is terminal.
                return self._end("no products after filtering; terminal state ok")
            self.stage = 2
            return {
                "method": "click",
                "element_id": link,
                "instruction": "open first product card",
                "memory": "opening first product",
            }
        if self.stage == 2:
            button = self._add_button(observation)
            if button is None:
                return self._end("no add-to-cart control found")
            self.stage = 3
            return {
                "method": "click",
                "element_id": button,
                "instruction": "add product to cart",
                "memory": "adding to cart",
            }
        return self._end("product in cart")

    def _discovery_step(self, observation: dict[str, Any]) -> dict[str, Any]:
        if self.stage == 0:
            self.stage = 1
            title = self._quoted_title() or ""
            return self._goto(
                f"/search?q={quote_plus(title)}", f"searching for {title!r}"
            )
        if self.stage == 1:
            link = self._first_product_link(observation)
            if link is None:
                return self._end("no search results")
            self.stage = 2
            return {
                "method": "click",
                "element_id": link,
                "instruction": "open top search result",
                "memory": "opening top result",
            }
        if self.stage == 2:
            button = self._add_button(observation)
            if button is None:
                return self._end("product cannot be added")
            self.stage = 3
            return {
                "method": "click",
                "element_id": button,
                "instruction": "add product to cart",
                "memory": "adding to cart",
            }
        return self._end("product in cart")


def scripted_agent_factory(task: Task) -> ScriptedReferenceAgent:
    return ScriptedReferenceAgent(task)
