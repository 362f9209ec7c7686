"""Harness budget profiles.

``browsergym``: 30-step budget, URL hints enforced as a hard trajectory
gate. ``internal``: 40 steps and an 850-second wall clock, URL hints soft
(judge guidance only), cart-only terminal convention.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Budgets:
    max_steps: int
    max_wall_clock: float  # seconds


@dataclass(frozen=True)
class Profile:
    name: str
    budgets: Budgets
    url_mode: str  # hard_url | soft_url
    repeats: int = 3


PROFILES = {
    "browsergym": Profile(
        name="browsergym",
        budgets=Budgets(max_steps=30, max_wall_clock=850.0),
        url_mode="hard_url",
    ),
    "internal": Profile(
        name="internal",
        budgets=Budgets(max_steps=40, max_wall_clock=850.0),
        url_mode="soft_url",
    ),
}
