"""Text-generator adapters.

The orchestrator only needs one synchronous call: prompt pair in, text
out. The command adapter speaks the external-process contract (prompt JSON
on stdin, completion text on stdout); the stub generators make the whole
pipeline runnable offline and give the CLI deterministic fixtures.
"""

from __future__ import annotations

import json
import subprocess
from typing import Protocol

from storelab.catalog.model import ShopBundle
from storelab.catalog.options import is_generic_collection
from storelab.errors import StorelabError


class TextGenerator(Protocol):
    def generate(
        self, system_prompt: str, user_prompt: str, timeout: float | None = None
    ) -> str: ...


class CommandGenerator:
    """Run an external command per generation call.

    stdin:  {"system": "...", "user": "..."} as one JSON document
    stdout: the completion text
    """

    def __init__(self, command: str):
        self.command = command

    def generate(
        self, system_prompt: str, user_prompt: str, timeout: float | None = None
    ) -> str:
        payload = json.dumps({"system": system_prompt, "user": user_prompt})
        try:
            proc = subprocess.run(
                self.command,
                shell=True,
                input=payload.encode("utf-8"),
                capture_output=True,
                timeout=timeout,
            )
        except subprocess.TimeoutExpired as exc:
            raise StorelabError(f"generator timed out: {self.command}") from exc
        if proc.returncode != 0:
            raise StorelabError(
                f"generator failed ({proc.returncode}): {proc.stderr.decode()[:400]}"
            )
        return proc.stdout.decode("utf-8")


def _grounded_tasks(bundle: ShopBundle, count: int) -> list[dict]:
    """Deterministic grounded journeys straight from the bundle."""
    collections = [
        c for c in bundle.collections if not is_generic_collection(c.handle)
    ] or list(bundle.collections)
    pages = [p for p in bundle.pages if p.kind == "custom_page"]
    tasks = []
    for index in range(1, count + 1):
        collection = collections[(index - 1) % len(collections)]
        members = [
            bundle.product_by_handle[h]
            for h in collection.product_handles
            if bundle.product_by_handle[h].active
        ]
        product = members[0] if members else None
        detour = pages[(index - 1) % len(pages)] if pages else None
        steps = []
        if detour is not None:
            steps.append(
                f'Open the "{detour.title}" page from the footer to read it.'
            )
        steps.append(
            f'Then navigate to the "{collection.title}" collection from the top menu.'
        )
        if product is not None:
            steps.append(
                f'Open "{product.title}", select any variant if options are shown, '
                "and add it to cart."
            )
        steps.append(
            "Once the product is in your cart, end the session. "
            "Do not click any Checkout button."
        )
        tasks.append(
            {
                "id": f"{bundle.slug}-e2e-v1-{index}",
                "type": "shopping",
                "intent": "Planned weekend errand. " + " ".join(steps),
                "success_criteria": {
                    "url_contains": f"/collections/{collection.handle}",
                    "type": "cart_after_nav",
                },
            }
        )
    return tasks


class GroundedStubGenerator:
    """Offline generator that authors valid journeys from the bundle itself."""

    def __init__(self, bundle: ShopBundle, count: int):
        self.bundle = bundle
        self.count = count

    def generate(
        self, system_prompt: str, user_prompt: str, timeout: float | None = None
    ) -> str:
        return json.dumps({"tasks": _grounded_tasks(self.bundle, self.count)})


class StubbornStubGenerator:
    """Always returns the same ungrounded tasks; never converges.

    Exercises the halt path: every round re-emits tasks that reference a
    collection the bundle does not have, with stable ids.
    """

    def __init__(self, bundle: ShopBundle, count: int):
        self.bundle = bundle
        self.count = count

    def generate(
        self, system_prompt: str, user_prompt: str, timeout: float | None = None
    ) -> str:
        tasks = [
            {
                "id": f"{self.bundle.slug}-e2e-v1-{index}",
                "type": "shopping",
                "intent": 'Navigate to the "Phantom Aisle" collection and add '
                          "any product to cart. Once it is in your cart, end "
                          "the session. Do not click any Checkout button.",
                "success_criteria": {
                    "url_contains": "/collections/phantom-aisle",
                    "type": "cart_after_nav",
                },
            }
            for index in range(1, self.count + 1)
        ]
        return json.dumps({"tasks": tasks})


def resolve_generator(spec: str, bundle: ShopBundle, count: int) -> TextGenerator:
    """Map a CLI ``--generator`` value to an adapter."""
    if spec == "stub":
        return GroundedStubGenerator(bundle, count)
    if spec == "stub-stubborn":
        return StubbornStubGenerator(bundle, count)
    return CommandGenerator(spec)
