"""Agent adapters for the bench runner."""

from __future__ import annotations

import json
import subprocess
from typing import Any

from storelab.runner.rollout import AgentFactory
from storelab.runner.scripted import scripted_agent_factory
from storelab.tasks.model import Task


class CommandAgent:
    """One external process per step.

    stdin:  {"task": {...}, "observation": {...}} as one JSON document
    stdout: the action JSON ({"method": ..., "element_id": ...,
            "arguments": [...], "should_end": ..., "memory": ...})
    """

    def __init__(self, command: str, task: Task, timeout: float | None = 120):
        self.command = command
        self.task = task
        self.timeout = timeout

    def step(self, observation: dict[str, Any]) -> dict[str, Any]:
        payload = json.dumps(
            {"task": self.task.to_json(), "observation": observation}
        )
        proc = subprocess.run(
            self.command,
            shell=True,
            input=payload.encode("utf-8"),
            capture_output=True,
            timeout=self.timeout,
        )
        if proc.returncode != 0:
            raise RuntimeError(
                f"agent failed ({proc.returncode}): {proc.stderr.decode()[:400]}"
            )
        return json.loads(proc.stdout.decode("utf-8"))


def command_agent_factory(command: str) -> AgentFactory:
    def factory(task: Task) -> CommandAgent:
        return CommandAgent(command, task)

    return factory


def resolve_agent(spec: str) -> AgentFactory:
    if spec == "scripted":
        return scripted_agent_factory
    return command_agent_factory(spec)
