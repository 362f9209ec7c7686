"""Rollout execution: step an agent against a storefront under budgets.

A rollout drives a form-aware HTTP session (no scripted browser): link
clicks follow hrefs, submit clicks replay the enclosing form, fills and
selections update client-side form state. Every action, URL, memory note,
and cart snapshot is recorded; exceeding a budget terminates the rollout
but never errors it.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable, Protocol
from urllib.parse import urlencode, urljoin, urlsplit

import httpx

from storelab.errors import MarkupError, RunError
from storelab.runner.profiles import Budgets
from storelab.runner.projection import PageModel, build_page_model

TERMINATION_AGENT_END = "agent_end"
TERMINATION_STEPS = "steps_limit_reached"
TERMINATION_TIME = "time_limit_reached"


class StepPolicy(Protocol):
    def step(self, observation: dict[str, Any]) -> dict[str, Any]: ...


AgentFactory = Callable[[Any], StepPolicy]


@dataclass
class RolloutRecord:
    task_id: str
    urls_visited: list[str] = field(default_factory=list)
    actions: list[dict[str, Any]] = field(default_factory=list)
    memory_log: list[str] = field(default_factory=list)
    cart_snapshots: list[dict[str, Any]] = field(default_factory=list)
    termination: str = TERMINATION_AGENT_END
    steps_used: int = 0
    wall_clock_ms: int = 0
    crash: str | None = None

    def to_json(self) -> dict[str, Any]:
        return {
            "task_id": self.task_id,
            "urls_visited": list(self.urls_visited),
            "actions": list(self.actions),
            "memory_log": list(self.memory_log),
            "cart_snapshots": list(self.cart_snapshots),
            "termination": self.termination,
            "steps_used": self.steps_used,
            "wall_clock_ms": self.wall_clock_ms,
            **({"crash": self.crash} if self.crash else {}),
        }


class BrowserlessSession:
    """Form-aware HTTP session shared by a rollout."""

    def __init__(self, env_url: str, client: httpx.Client):
        self.env_url = env_url.rstrip("/")
        self.client = client
        self.url = ""
        self.status = 0
        self.page: PageModel | None = None
        self.page_error: str | None = None

    def _record(self, response: httpx.Response) -> str:
        parts = urlsplit(str(response.url))
        self.url = parts.path + (f"?{parts.query}" if parts.query else "")
        self.status = response.status_code
        self.page_error = None
        content_type = response.headers.get("content-type", "")
        if "text/html" in content_type:
            try:
                self.page = build_page_model(response.text)
            except MarkupError as exc:
                self.page = None
                self.page_error = str(exc)
        else:
            self.page = None
        return f"http {self.status}"

    def goto(self, target: str) -> str:
        url = urljoin(self.env_url + "/", target.lstrip("/"))
        return self._record(self.client.get(url))

    def click(self, elem_id: str) -> str:
        if self.page is None or elem_id not in self.page.elements:
            return f"error: no element {elem_id} on this page"
        element = self.page.elements[elem_id]
        if element.tag == "a" and element.href:
            return self.goto(element.href)
        if element.form_field is not None and element.form_field.input_type in (
            "checkbox", "radio",
        ):
            field_model = element.form_field
            if field_model.input_type == "radio" and element.form is not None:
                for other in element.form.fields:
                    if other.name == field_model.name:
                        other.checked = False
            field_model.checked = not field_model.checked
            return "toggled"
        if element.form is not None and (
            element.form_field is None
            or element.form_field.input_type in ("submit", "button", "image")
        ):
            return self._submit(element.form, element.form_field)
        return f"error: element {elem_id} is not clickable"

    def fill(self, elem_id: str, value: str) -> str:
        if self.page is None or elem_id not in self.page.elements:
            return f"error: no element {elem_id} on this page"
        element = self.page.elements[elem_id]
        if element.form_field is None:
            return f"error: element {elem_id} is not a form field"
        element.form_field.value = value
        return "filled"

    def select_option(self, elem_id: str, value: str) -> str:
        return self.fill(elem_id, value)

    def _submit(self, form: FormModelLike, submitter) -> str:
        data = form.submission(submitter)
        action = form.action or self.url
        url = urljoin(self.env_url + "/", action.lstrip("/"))
        if form.method == "post":
            return self._record(self.client.post(url, data=data))
        query = urlencode(data)
        return self._record(self.client.get(url + ("?" + query if query else "")))

    def cart_snapshot(self) -> dict[str, Any] | None:
        try:
            response = self.client.get(self.env_url + "/cart.js")
        except httpx.HTTPError:
            return None
        if response.status_code != 200:
            return None
        return response.json()


FormModelLike = Any  # duck-typed FormModel (submission / action / method)


def run_task(
    agent_factory: AgentFactory,
    task,
    env_url: str,
    budgets: Budgets,
) -> RolloutRecord:
    """Execute one rollout on a fresh session, recording everything.

    The environment is reset for this session before the first observation
    so the initial state is the cold-start state.
    """
    record = RolloutRecord(task_id=task.id)
    started = time.monotonic()
    try:
        client = httpx.Client(follow_redirects=True, timeout=30)
    except Exception as exc:  # pragma: no cover
        raise RunError(str(exc)) from exc
    with client:
        session = BrowserlessSession(env_url, client)
        try:
            reset = client.post(session.env_url + "/__reset?scope=session")
            reset.raise_for_status()
        except httpx.HTTPError as exc:
            raise RunError(f"environment unreachable: {env_url} ({exc})") from exc

        agent = agent_factory(task)
        session.goto("/")
        record.urls_visited.append(session.url)
        snapshot = session.cart_snapshot()
        if snapshot is not None:
            record.cart_snapshots.append(snapshot)

        while True:
            if record.steps_used >= budgets.max_steps:
                record.termination = TERMINATION_STEPS
                break
            if time.monotonic() - started > budgets.max_wall_clock:
                record.termination = TERMINATION_TIME
                break
            observation = {
                "step": record.steps_used,
                "intent": task.intent,
                "url": session.url,
                "status": session.status,
                "projection": session.page.projection if session.page else "",
                "page_error": session.page_error,
                "elements": {
                    eid: el.describe()
                    for eid, el in (session.page.elements if session.page else {}).items()
                },
                "memory": list(record.memory_log),
            }
            try:
                action = agent.step(observation)
            except Exception as exc:
                record.termination = TERMINATION_TIME
                record.crash = f"agent crash: {exc}"
                break
            record.steps_used += 1
            memory_note = str(action.get("memory", ""))
            if memory_note:
                record.memory_log.append(memory_note)
            if action.get("should_end"):
                record.termination = TERMINATION_AGENT_END
                record.actions.append(
                    {
                        "step": record.steps_used,
                        "instruction": str(action.get("instruction", "end")),
                        "method": "end",
                        "target": "",
                        "outcome": "session ended by agent",
                    }
                )
                break
            method = str(action.get("method", ""))
            target = str(action.get("element_id") or action.get("target") or "")
            arguments = action.get("arguments") or []
            if method == "goto":
                outcome = session.goto(target)
            elif method == "click":
                outcome = session.click(target)
            elif method in ("fill", "type"):
                outcome = session.fill(target, str(arguments[0]) if arguments else "")
            elif method in ("select_option", "select"):
                outcome = session.select_option(
                    target, str(arguments[0]) if arguments else ""
                )
            elif method == "noop":
                outcome = "noop"
            else:
                outcome = f"error: unsupported method {method!r}"
            record.actions.append(
                {
                    "step": record.steps_used,
                    "instruction": str(action.get("instruction", "")),
                    "method": method,
                    "target": target,
                    "outcome": outcome,
                }
            )
            if method in ("goto", "click") and not outcome.startswith("error"):
                if not record.urls_visited or record.urls_visited[-1] != session.url:
                    record.urls_visited.append(session.url)
                snapshot = session.cart_snapshot()
                if snapshot is not None:
                    record.cart_snapshots.append(snapshot)

    record.wall_clock_ms = int((time.monotonic() - started) * 1000)
    return record
