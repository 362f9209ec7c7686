"""Seven-rule validator: severities, planted violations, triage, disposition."""

from __future__ import annotations

import pytest

from storelab.tasks import Task
from storelab.tasks.model import SuccessCriteria
from storelab.validation import (
    ERROR_RULES,
    RULE_SEVERITY,
    WARNING_RULES,
    actionable_subset,
    exit_disposition,
    validate,
)
from storelab.validation.rules import Issue

from tests.test_catalog import mini_bundle, mini_product


@pytest.fixture()
def shop():
    products = [
        mini_product("anvil-pro", "Anvil Pro", ptype="Anvil"),
        mini_product("rope-coil", "Rope Coil", ptype="Rope"),
        mini_product(
            "gift-card", "Gift Card", ptype="Gift Card", gift_card=True,
            options={"Denomination": ["25", "50"]},
        ),
        mini_product("blue-tarp", "Blue Tarp", ptype="Tarp", options={"Color": ["Blue"]}),
    ]
    collections = [
        {"handle": "hardware", "title": "Hardware",
         "product_handles": ["anvil-pro", "blue-tarp"]},
        {"handle": "camping", "title": "Camping", "product_handles": ["rope-coil"]},
    ]
    pages = [
        {"handle": "refund-policy", "title": "Refund Policy", "kind": "native_policy"},
        {"handle": "faq", "title": "FAQ", "kind": "custom_page"},
    ]
    return mini_bundle(products, collections=collections, pages=pages)


def task(**kwargs) -> Task:
    defaults = dict(
        id="t-1",
        type="shopping",
        intent="Browse the store.",
        success_criteria=SuccessCriteria(type="navigation"),
    )
    defaults.update(kwargs)
    return Task(**defaults)


class TestSeverityTable:
    def test_partition(self):
        assert set(ERROR_RULES) == {
            "unknown-collection", "unknown-product", "infeasible-filter",
            "intent-answer-leak",
        }
        assert set(WARNING_RULES) == {
            "option-mismatch", "product-not-in-collection", "unknown-page",
        }

    @pytest.mark.parametrize(
        "rule,severity",
        [
            ("unknown-collection", "error"),
            ("unknown-product", "error"),
            ("infeasible-filter", "error"),
            ("intent-answer-leak", "error"),
            ("option-mismatch", "warning"),
            ("product-not-in-collection", "warning"),
            ("unknown-page", "warning"),
        ],
    )
    def test_severity(self, rule, severity):
        assert RULE_SEVERITY[rule] == severity


class TestRules:
    def test_unknown_collection(self, shop):
        issues = validate(
            [task(success_criteria=SuccessCriteria(
                url_contains="/collections/ghost-collection", type="navigation"))],
            shop,
        )
        assert [i.rule for i in issues] == ["unknown-collection"]
        assert issues[0].severity == "error"

    def test_unknown_product(self, shop):
        issues = validate(
            [task(success_criteria=SuccessCriteria(
                url_contains="/products/ghost-product", type="x"))],
            shop,
        )
        assert [i.rule for i in issues] == ["unknown-product"]

    def test_unknown_page_is_warning(self, shop):
        issues = validate(
            [task(url_contains_alt=["/pages/ghost-page"])],
            shop,
        )
        assert [(i.rule, i.severity) for i in issues] == [("unknown-page", "warning")]

    def test_infeasible_filter_structured(self, shop):
        issues = validate(
            [task(
                success_criteria=SuccessCriteria(
                    url_contains="/collections/hardware", type="navigation"),
                facet={"dim": "Color", "value": "Chartreuse"},
            )],
            shop,
        )
        assert [i.rule for i in issues] == ["infeasible-filter"]

    def test_infeasible_filter_from_intent(self, shop):
        issues = validate(
            [task(
                intent='Go to the "Camping" collection. Find and use the Color '
                       "filter (e.g. Black) to refine the list.",
                success_criteria=SuccessCriteria(
                    url_contains="/collections/camping", type="navigation"),
            )],
            shop,
        )
        assert [i.rule for i in issues] == ["infeasible-filter"]

    def test_feasible_filter_passes(self, shop):
        issues = validate(
            [task(
                success_criteria=SuccessCriteria(
                    url_contains="/collections/hardware", type="navigation"),
                facet={"dim": "Color", "value": "Blue"},
            )],
            shop,
        )
        assert issues == []

    def test_intent_answer_leak(self, shop):
        issues = validate(
            [task(
                intent="Find the policy that promises 30-day returns.",
                success_criteria=SuccessCriteria(
                    url_contains="/pages/faq", type="page_navigation",
                    response_contains=["30-day returns"]),
            )],
            shop,
        )
        assert [i.rule for i in issues] == ["intent-answer-leak"]
        assert issues[0].evidence["leaked"] == "30-day returns"

    def test_option_mismatch_gift_card(self, shop):
        issues = validate(
            [task(
                intent='Open the "Gift Card" product page and select a Color '
                       "variant before adding it to cart.",
                success_criteria=SuccessCriteria(
                    url_contains="/products/gift-card", type="cart"),
            )],
            shop,
        )
        assert [(i.rule, i.severity) for i in issues] == [("option-mismatch", "warning")]

    def test_option_present_no_mismatch(self, shop):
        issues = validate(
            [task(
                intent='Open the "Blue Tarp" product page and select a Color variant.',
                success_criteria=SuccessCriteria(
                    url_contains="/products/blue-tarp", type="cart"),
            )],
            shop,
        )
        assert issues == []

    def test_product_not_in_collection(self, shop):
        issues = validate(
            [task(
                intent='Navigate to the "Camping" collection and add the '
                       '"Anvil Pro" to cart.',
                success_criteria=SuccessCriteria(
                    url_contains="/collections/camping", type="navigation"),
            )],
            shop,
        )
        assert [(i.rule, i.severity) for i in issues] == [
            ("product-not-in-collection", "warning")
        ]

    def test_membership_holds_no_issue(self, shop):
        issues = validate(
            [task(
                intent='Navigate to the "Hardware" collection and add the '
                       '"Anvil Pro" to cart.',
                success_criteria=SuccessCriteria(
                    url_contains="/collections/hardware", type="navigation"),
            )],
            shop,
        )
        assert issues == []

    def test_clean_corpus_empty(self, shop):
        tasks = [
            task(id="a", intent='Find "Anvil Pro" and add it to cart.',
                 success_criteria=SuccessCriteria(
                     url_contains="/products/anvil-pro", type="cart_exact")),
            task(id="b", success_criteria=SuccessCriteria(
                url_contains="/policies/refund-policy", type="page_navigation")),
        ]
        assert validate(tasks, shop) == []

    def test_validator_is_pure(self, shop):
        tasks = [task(success_criteria=SuccessCriteria(
            url_contains="/collections/ghost", type="navigation"))]
        first = [i.to_json() for i in validate(tasks, shop)]
        second = [i.to_json() for i in validate(tasks, shop)]
        assert first == second


class TestTriage:
    def make(self, rule, severity):
        return Issue(rule=rule, severity=severity, task_id="t", message="m")

    def test_error_plus_advisory(self):
        issues = [
            self.make("unknown-collection", "error"),
            self.make("unknown-page", "warning"),
        ]
        subset = actionable_subset(issues)
        assert [i.rule for i in subset] == ["unknown-collection"]

    def test_empty(self):
        assert actionable_subset([]) == []

    def test_hallucination_warnings_retained(self):
        issues = [
            self.make("option-mismatch", "warning"),
            self.make("product-not-in-collection", "warning"),
        ]
        assert len(actionable_subset(issues)) == 2

    def test_disposition_warnings_only(self):
        issues = [self.make("unknown-page", "warning")]
        disposition = exit_disposition(issues)
        assert disposition["code"] == 0
        assert "unknown-page" in disposition["report"]

    def test_disposition_error(self):
        issues = [self.make("unknown-product", "error")]
        assert exit_disposition(issues)["code"] != 0

    def test_disposition_empty(self):
        disposition = exit_disposition([])
        assert disposition["code"] == 0
        assert disposition["report"] == "no issues\n"


def planted_violation_tasks():
    """A corpus with exactly one planted violation per rule."""
    return [
    task(id="plant-unknown-collection",
         success_criteria=SuccessCriteria(
             url_contains="/collections/ghost-collection", type="navigation")),
    task(id="plant-unknown-product",
         success_criteria=SuccessCriteria(
             url_contains="/products/ghost-product", type="cart")),
    task(id="plant-infeasible-filter",
         success_criteria=SuccessCriteria(
             url_contains="/collections/hardware", type="navigation"),
         facet={"dim": "Color", "value": "Chartreuse"}),
    task(id="plant-intent-answer-leak",
         intent="Confirm the store offers 30-day returns.",
         success_criteria=SuccessCriteria(
             url_contains="/pages/faq", type="page_navigation",
             response_contains=["30-day returns"])),
    task(id="plant-option-mismatch",
         intent='Open the "Gift Card" product and select a Color variant.',
         success_criteria=SuccessCriteria(
             url_contains="/products/gift-card", type="cart")),
    task(id="plant-product-not-in-collection",
         intent='Navigate to the "Camping" collection and add the '
                '"Anvil Pro" to cart.',
         success_criteria=SuccessCriteria(
             url_contains="/collections/camping", type="navigation")),
    task(id="plant-unknown-page",
         success_criteria=SuccessCriteria(
             url_contains="/pages/ghost-page", type="page_navigation")),
]



class TestPlantedCorpus:
    """One planted violation per rule yields exactly seven issues."""

    def test_exactly_one_issue_per_rule(self, shop):
        issues = validate(planted_violation_tasks(), shop)
        assert len(issues) == 7
        rules = sorted(i.rule for i in issues)
        assert rules == sorted(ERROR_RULES + WARNING_RULES)
        for issue in issues:
            assert issue.severity == RULE_SEVERITY[issue.rule]
            assert issue.task_id == f"plant-{issue.rule}"
