"""Verdicts: hard gates first, then the pluggable judge.

Gate order is fixed: (1) any rollout not terminated by the agent's own end
signal fails outright — this guards against spurious successes where the
final page merely looks right; (2) in hard_url mode a trajectory that
never touches the task's URL hints fails without consulting the judge;
(3) only then does the judge see the rollout.
"""

from __future__ import annotations

import json
import subprocess
from dataclasses import dataclass
from typing import Any, Protocol

from storelab.runner.rollout import TERMINATION_AGENT_END, RolloutRecord
from storelab.tasks.model import Task


@dataclass
class Verdict:
    task_id: str
    success: bool
    reasoning: str
    gated: bool = False  # a hard rule decided, judge skipped or overridden

    def to_json(self) -> dict[str, Any]:
        return {
            "task_id": self.task_id,
            "success": self.success,
            "reasoning": self.reasoning,
            "gated": self.gated,
        }


class Judge(Protocol):
    def judge(self, payload: dict[str, Any]) -> dict[str, Any]: ...


class StubJudge:
    """Always succeeds; gates carry the pass/fail burden in hermetic runs."""

    def judge(self, payload: dict[str, Any]) -> dict[str, Any]:
        return {"success": True, "reasoning": "stub judge: criteria assumed met"}


class CommandJudge:
    """External judge process: rollout JSON on stdin, verdict JSON on stdout."""

    def __init__(self, command: str, timeout: float | None = 120):
        self.command = command
        self.timeout = timeout

    def judge(self, payload: dict[str, Any]) -> dict[str, Any]:
        proc = subprocess.run(
            self.command,
            shell=True,
            input=json.dumps(payload).encode("utf-8"),
            capture_output=True,
            timeout=self.timeout,
        )
        if proc.returncode != 0:
            raise RuntimeError(
                f"judge failed ({proc.returncode}): {proc.stderr.decode()[:400]}"
            )
        verdict = json.loads(proc.stdout.decode("utf-8"))
        return {
            "success": bool(verdict.get("success")),
            "reasoning": str(verdict.get("reasoning", "")),
        }


def resolve_judge(spec: str) -> Judge:
    if spec == "stub":
        return StubJudge()
    return CommandJudge(spec)


def _url_gate_passes(rollout: RolloutRecord, task: Task) -> bool:
    hints = task.all_url_hints()
    if not hints:
        return True
    return any(hint in url for url in rollout.urls_visited for hint in hints)


def judge_payload(rollout: RolloutRecord, task: Task) -> dict[str, Any]:
    return {
        "intent": task.intent,
        "success_criteria": task.success_criteria.to_json(),
        "memory_log": list(rollout.memory_log),
        "urls_visited": list(rollout.urls_visited),
        "termination": rollout.termination,
        "cart_snapshots": list(rollout.cart_snapshots),
    }


def gate_and_judge(
    rollout: RolloutRecord, task: Task, judge: Judge, mode: str = "soft_url"
) -> Verdict:
    """Apply the termination gate, the URL gate (hard_url mode), then judge."""
    if rollout.termination != TERMINATION_AGENT_END:
        return Verdict(
            task_id=task.id,
            success=False,
            reasoning=f"forced failure: rollout terminated by {rollout.termination},"
                      " not by the agent's end signal",
            gated=True,
        )
    if mode == "hard_url" and not _url_gate_passes(rollout, task):
        return Verdict(
            task_id=task.id,
            success=False,
            reasoning="hard URL gate: trajectory never matched "
                      f"{task.all_url_hints()}",
            gated=True,
        )
    try:
        outcome = judge.judge(judge_payload(rollout, task))
    except Exception as exc:
        return Verdict(
            task_id=task.id,
            success=False,
            reasoning=f"judge unavailable: {exc}",
            gated=True,
        )
    return Verdict(
        task_id=task.id,
        success=bool(outcome.get("success")),
        reasoning=str(outcome.get("reasoning", "")),
        gated=False,
    )
