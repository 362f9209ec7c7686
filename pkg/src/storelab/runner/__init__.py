"""Benchmark execution: rollouts, budgets, gating, judging, aggregation."""

from storelab.runner.profiles import PROFILES, Budgets, Profile
from storelab.runner.rollout import RolloutRecord, run_task
from storelab.runner.judge import (
    CommandJudge,
    StubJudge,
    Verdict,
    gate_and_judge,
    resolve_judge,
)
from storelab.runner.aggregate import aggregate
from storelab.runner.scripted import ScriptedReferenceAgent, scripted_agent_factory

__all__ = [
    "Budgets",
    "CommandJudge",
    "PROFILES",
    "Profile",
    "RolloutRecord",
    "ScriptedReferenceAgent",
    "StubJudge",
    "Verdict",
    "aggregate",
    "gate_and_judge",
    "resolve_judge",
    "run_task",
    "scripted_agent_factory",
]
