"""Prompt assembly and the polish loop, driven by scripted mock generators."""

from __future__ import annotations

import json

import pytest

from storelab.errors import MergeError, PolishLoopHalt, StorelabError
from storelab.journeys import (
    GroundedStubGenerator,
    StubbornStubGenerator,
    build_prompt,
    generate_journeys,
    merge_regenerated,
)
from storelab.journeys.orchestrator import parse_generator_output
from storelab.tasks.model import BUNDLE_HARD, Task

from tests.test_catalog import mini_bundle, mini_product


class ScriptedGenerator:
    """Returns canned responses in order; records every prompt it saw."""

    def __init__(self, responses):
        self.responses = list(responses)
        self.calls: list[tuple[str, str]] = []

    def generate(self, system_prompt, user_prompt, timeout=None):
        self.calls.append((system_prompt, user_prompt))
        if not self.responses:
            raise AssertionError("generator called more times than scripted")
        return self.responses.pop(0)


def journey(task_id, collection="knives", intent_extra=""):
    return {
        "id": task_id,
        "type": "shopping",
        "intent": f'Navigate to the "{collection}" collection and add any '
                  f"product to cart.{intent_extra} Once it is in your cart, "
                  "end the session. Do not click any Checkout button.",
        "success_criteria": {
            "url_contains": f"/collections/{collection}",
            "type": "cart_after_nav",
        },
    }


def tasks_json(*tasks) -> str:
    return json.dumps({"tasks": list(tasks)})


class TestBuildPrompt:
    def test_count_line(self, demo_bundle):
        context = build_prompt(demo_bundle, 5)
        assert "Author 5 end-to-end evaluation tasks" in context.user_prompt

    def test_required_sections(self, demo_bundle):
        context = build_prompt(demo_bundle, 3)
        for i in range(1, 15):
            assert f"{i}. " in context.user_prompt
        assert "Anti-patterns to AVOID" in context.user_prompt
        assert "Do not click any Checkout button" in context.system_prompt
        assert f'"{demo_bundle.slug}-e2e-v1-{{index}}"' in context.user_prompt
        assert "numbers starting at 1" in context.user_prompt
        assert len(context.few_shot) == 8

    def test_gift_card_section_present(self, demo_bundle):
        context = build_prompt(demo_bundle, 2)
        assert "Kitchen Gift Card" in context.user_prompt

    def test_no_gift_cards_marks_category_inapplicable(self):
        bundle = mini_bundle(
            [mini_product("p", "P")],
            collections=[{"handle": "c", "title": "C", "product_handles": ["p"]}],
        )
        context = build_prompt(bundle, 2)
        assert "none" in context.placeholders["gift_card_list_or_none"]
        assert "NOT APPLICABLE" in context.user_prompt

    def test_memberships_match_brute_force(self, demo_bundle):
        context = build_prompt(demo_bundle, 2)
        for line in context.placeholders["mapping_str"].splitlines():
            handle, owners = line[2:].split(": ", 1)
            for owner in owners.split(", "):
                collection = demo_bundle.collection_by_handle[owner]
                assert handle in collection.product_handles
        # reverse direction: every real membership is listed
        for collection in demo_bundle.collections:
            for handle in collection.product_handles:
                assert f"- {handle}:" in context.placeholders["mapping_str"]

    def test_zero_collections_refused(self):
        bundle = mini_bundle([mini_product("p", "P")])
        with pytest.raises(StorelabError):
            build_prompt(bundle, 2)

    def test_products_list_shows_real_options(self, demo_bundle):
        context = build_prompt(demo_bundle, 2)
        assert "Color: Black Handle | Natural Wood Handle" in context.user_prompt


class TestMerge:
    def make(self, task_id):
        return Task.from_json(journey(task_id), bundle_tag=BUNDLE_HARD)

    def test_replacement_preserves_order(self):
        t1, t2, t3 = self.make("t1"), self.make("t2"), self.make("t3")
        t2_new = self.make("t2")
        t2_new.intent = "fixed"
        merged = merge_regenerated([t1, t2, t3], [t2_new], {"t2"})
        assert [t.id for t in merged] == ["t1", "t2", "t3"]
        assert merged[1].intent == "fixed"
        assert merged[0] is t1 and merged[2] is t3

    def test_empty_regenerated(self):
        tasks = [self.make("t1")]
        assert merge_regenerated(tasks, [], {"t1"}) == tasks

    def test_new_id_rejected(self):
        with pytest.raises(MergeError):
            merge_regenerated([self.make("t1")], [self.make("t9")], {"t1"})


class TestParse:
    def test_plain_json(self):
        tasks = parse_generator_output(tasks_json(journey("a-1")))
        assert tasks[0].id == "a-1"
        assert tasks[0].bundle_tag == BUNDLE_HARD

    def test_fenced_json(self):
        text = "```json\n" + tasks_json(journey("a-1")) + "\n```"
        assert parse_generator_output(text)[0].id == "a-1"

    def test_prose_wrapped_json(self):
        text = "Here you go:\n" + tasks_json(journey("a-1")) + "\nEnjoy!"
        assert parse_generator_output(text)[0].id == "a-1"

    def test_missing_tasks_key(self):
        with pytest.raises(ValueError):
            parse_generator_output('{"items": []}')

    def test_task_without_id(self):
        with pytest.raises(ValueError):
            parse_generator_output('{"tasks": [{"intent": "x"}]}')


class TestPolishLoop:
    def test_zero_issues_initial_pass(self, demo_bundle):
        generator = ScriptedGenerator([
            tasks_json(journey("demo-kitchen-e2e-v1-1"),
                       journey("demo-kitchen-e2e-v1-2")),
        ])
        result = generate_journeys(generator, demo_bundle, 2)
        assert result.rounds_used == 0
        assert result.disposition == "emitted"
        assert len(result.tasks) == 2
        assert len(generator.calls) == 1

    def test_converging_mock_round_one(self, demo_bundle):
        bad = journey("demo-kitchen-e2e-v1-1", collection="phantom-aisle")
        good_other = journey("demo-kitchen-e2e-v1-2")
        fixed = journey("demo-kitchen-e2e-v1-1")
        generator = ScriptedGenerator([
            tasks_json(bad, good_other),
            tasks_json(fixed),
        ])
        result = generate_journeys(generator, demo_bundle, 2)
        assert result.rounds_used == 1
        assert result.disposition == "emitted"
        assert {t.id for t in result.tasks} == {
            "demo-kitchen-e2e-v1-1", "demo-kitchen-e2e-v1-2",
        }
        # polish prompt mentions only the flagged id
        polish_user = generator.calls[1][1]
        assert '"demo-kitchen-e2e-v1-1"' in polish_user
        assert '"demo-kitchen-e2e-v1-2"' not in polish_user

    def test_stubborn_mock_halts_after_two_rounds(self, demo_bundle):
        generator = StubbornStubGenerator(demo_bundle, 2)
        result = generate_journeys(generator, demo_bundle, 2)
        assert result.disposition == "halted"
        assert result.rounds_used == 2
        assert len(result.audit) == 3

    def test_id_set_conserved_across_rounds(self, demo_bundle):
        bad = journey("demo-kitchen-e2e-v1-1", collection="phantom-aisle")
        generator = ScriptedGenerator([
            tasks_json(bad, journey("demo-kitchen-e2e-v1-2")),
            tasks_json(journey("demo-kitchen-e2e-v1-1")),
        ])
        result = generate_journeys(generator, demo_bundle, 2)
        assert sorted(t.id for t in result.tasks) == [
            "demo-kitchen-e2e-v1-1", "demo-kitchen-e2e-v1-2",
        ]

    def test_changed_id_treated_as_still_flagged(self, demo_bundle):
        bad = journey("demo-kitchen-e2e-v1-1", collection="phantom-aisle")
        renamed = journey("demo-kitchen-e2e-v1-9")
        generator = ScriptedGenerator([
            tasks_json(bad),
            tasks_json(renamed),  # wrong id: rejected
            tasks_json(journey("demo-kitchen-e2e-v1-1")),  # round 2 fixes it
        ])
        result = generate_journeys(generator, demo_bundle, 1)
        assert result.rounds_used == 2
        assert result.disposition == "emitted"
        assert [t.id for t in result.tasks] == ["demo-kitchen-e2e-v1-1"]

    def test_parse_retry_once_then_halt(self, demo_bundle):
        generator = ScriptedGenerator(["not json", "still not json"])
        with pytest.raises(PolishLoopHalt):
            generate_journeys(generator, demo_bundle, 1)
        assert len(generator.calls) == 2

    def test_parse_retry_recovers(self, demo_bundle):
        generator = ScriptedGenerator([
            "garbage", tasks_json(journey("demo-kitchen-e2e-v1-1")),
        ])
        result = generate_journeys(generator, demo_bundle, 1)
        assert result.disposition == "emitted"

    def test_generator_call_budget(self, demo_bundle):
        # stubborn path: 1 initial + 2 polish = 3 content calls, no more
        class CountingStubborn(StubbornStubGenerator):
            calls = 0

            def generate(self, *args, **kwargs):
                type(self).calls += 1
                return super().generate(*args, **kwargs)

        generator = CountingStubborn(demo_bundle, 1)
        result = generate_journeys(generator, demo_bundle, 1)
        assert result.halted
        assert CountingStubborn.calls == 3

    def test_grounded_stub_passes_clean(self, demo_bundle):
        generator = GroundedStubGenerator(demo_bundle, 4)
        result = generate_journeys(generator, demo_bundle, 4)
        assert result.disposition == "emitted"
        assert result.rounds_used == 0
        assert len(result.tasks) == 4
