"""Deterministic generators: shapes, dedup, feasibility, groundedness fuzz."""

from __future__ import annotations

import random

import pytest

from storelab import jsonio
from storelab.errors import AssemblyError
from storelab.fixtures import random_bundle
from storelab.tasks import (
    BUNDLE_EASY,
    BUNDLE_HARD,
    BenchmarkFile,
    Task,
    apply_overrides,
    assemble_benchmark,
    gen_browse_filter,
    gen_discovery,
    gen_policy,
    generate_short_horizon,
)
from storelab.validation import validate

from tests.test_catalog import mini_bundle, mini_product


class TestDiscovery:
    def test_single_eligible_product(self):
        bundle = mini_bundle([mini_product("anvil-pro", "Anvil Pro", ptype="Anvil")])
        tasks = gen_discovery(bundle)
        assert len(tasks) == 2
        exact = next(t for t in tasks if "search-exact" in t.id)
        substitute = next(t for t in tasks if "search-substitute" in t.id)
        assert exact.success_criteria.url_contains == "/products/anvil-pro"
        assert exact.success_criteria.type == "cart_exact"
        assert "Anvil Pro" in exact.intent
        assert substitute.success_criteria.url_contains == "/products/"
        assert substitute.success_criteria.type == "cart_substitute"

    def test_all_gift_cards(self):
        bundle = mini_bundle([
            mini_product("g1", "Gift One", gift_card=True, ptype="Gift Card",
                         options={"Denomination": ["25"]}),
        ])
        assert gen_discovery(bundle) == []

    def test_shared_type_dedup(self):
        bundle = mini_bundle([
            mini_product("mug-a", "Mug A", ptype="Mug"),
            mini_product("mug-b", "Mug B", ptype="Mug"),
        ])
        tasks = gen_discovery(bundle)
        assert len(tasks) == 2
        assert all("mug-a" in (t.success_criteria.url_contains or "") or
                   "Mug A" in t.intent for t in tasks)

    def test_count_limit(self):
        bundle = mini_bundle([
            mini_product(f"p-{i}", f"Product {i}", ptype=f"T{i}") for i in range(9)
        ])
        assert len(gen_discovery(bundle, count_limit=3)) == 6


class TestBrowseFilter:
    def make_bundle(self):
        products = [
            mini_product("coat-a", "Coat A", ptype="Coat",
                         options={"Color": ["Black", "Blue"]}),
            mini_product("coat-b", "Coat B", ptype="Coat", options={"Color": ["Black"]}),
            mini_product("scarf", "Scarf", ptype="Scarf"),
        ]
        collections = [
            {"handle": "frost-season-collection", "title": "Frost Season Collection",
             "product_handles": ["coat-a", "coat-b", "scarf"]},
        ]
        return mini_bundle(products, collections=collections)

    def test_filter_task_shape(self):
        tasks = gen_browse_filter(self.make_bundle(), rng_seed=1)
        filter_tasks = [t for t in tasks if "-filter-" in t.id]
        assert len(filter_tasks) == 1
        ft = filter_tasks[0]
        assert "use the Color filter" in ft.intent
        assert "It is ok if no products match the filter" in ft.intent
        assert ft.success_criteria.url_contains == "/collections/frost-season-collection"
        assert ft.success_criteria.type == "navigation"
        assert ft.facet["dim"] == "Color"

    def test_small_collection_skipped(self):
        bundle = mini_bundle(
            [mini_product("a", "A"), mini_product("b", "B", ptype="B")],
            collections=[{"handle": "tiny", "title": "Tiny",
                          "product_handles": ["a", "b"]}],
        )
        assert gen_browse_filter(bundle, rng_seed=0) == []

    def test_generic_collection_skipped(self):
        products = [mini_product(f"p-{i}", f"P {i}", ptype=f"T{i}") for i in range(3)]
        bundle = mini_bundle(
            products,
            collections=[{"handle": "sale", "title": "Sale",
                          "product_handles": [p["handle"] for p in products]}],
        )
        assert gen_browse_filter(bundle, rng_seed=0) == []

    def test_locally_absent_dim_not_used(self):
        # Color is common in the catalog overall yet absent from the target
        # collection: the fallback must kick in instead.
        products = [
            mini_product("tent-a", "Tent A", ptype="Tent", vendor="Peak"),
            mini_product("tent-b", "Tent B", ptype="Tent", vendor="Crag"),
            mini_product("tent-c", "Tent C", ptype="Tent", vendor="Peak"),
            mini_product("shirt", "Shirt", ptype="Shirt",
                         options={"Color": ["Black"]}),
        ]
        collections = [
            {"handle": "tents", "title": "Tents",
             "product_handles": ["tent-a", "tent-b", "tent-c"]},
        ]
        bundle = mini_bundle(products, collections=collections)
        tasks = gen_browse_filter(bundle, rng_seed=3)
        filter_tasks = [t for t in tasks if "-filter-" in t.id]
        assert len(filter_tasks) == 1
        assert filter_tasks[0].facet["dim"] in ("Brand", "Type")
        # brute-force feasibility of whatever was chosen
        dim, value = filter_tasks[0].facet["dim"], filter_tasks[0].facet["value"]
        members = bundle.collection_products(bundle.collections[0])
        if dim == "Brand":
            assert any(p.vendor == value for p in members)
        else:
            assert any(p.product_type == value for p in members)

    def test_deterministic_given_seed(self):
        bundle = self.make_bundle()
        first = [t.to_json() for t in gen_browse_filter(bundle, rng_seed=42)]
        second = [t.to_json() for t in gen_browse_filter(bundle, rng_seed=42)]
        assert first == second


class TestPolicy:
    def test_listing_shape_refund(self):
        bundle = mini_bundle(
            [mini_product("p", "P")],
            pages=[
                {"handle": "refund-policy", "title": "Refund Policy",
                 "kind": "native_policy"},
                {"handle": "return-policy", "title": "Return Policy",
                 "kind": "custom_page"},
            ],
        )
        tasks = gen_policy(bundle)
        returns = next(t for t in tasks if "-returns-" in t.id)
        assert returns.success_criteria.url_contains == "/policies/refund-policy"
        assert returns.url_contains_alt == ["/pages/return-policy"]
        assert returns.type == "navigation"

    def test_zero_pages(self):
        bundle = mini_bundle([mini_product("p", "P")])
        assert gen_policy(bundle) == []

    def test_custom_delivery_page_only(self):
        bundle = mini_bundle(
            [mini_product("p", "P")],
            pages=[{"handle": "delivery-faq", "title": "Delivery FAQ",
                    "kind": "custom_page"}],
        )
        tasks = gen_policy(bundle)
        assert len(tasks) == 1
        shipping = tasks[0]
        assert "-shipping-" in shipping.id
        assert shipping.success_criteria.url_contains == "/pages/delivery-faq"
        assert shipping.url_contains_alt == ["/policies/shipping-policy"]


class TestAssemble:
    def test_counts_and_partition(self, demo_bundle):
        short = generate_short_horizon(demo_bundle)[:6]
        journeys = [
            Task.from_json({
                "id": f"{demo_bundle.slug}-e2e-v1-{i}",
                "type": "shopping",
                "intent": 'Navigate to the "Knives" collection and add any product '
                          "to cart. Once it is in your cart, end the session.",
                "success_criteria": {"url_contains": "/collections/knives",
                                     "type": "cart"},
            })
            for i in (1, 2)
        ]
        benchmark = assemble_benchmark(demo_bundle, short, journeys)
        assert len(benchmark.bundles[BUNDLE_EASY]) == 6
        assert len(benchmark.bundles[BUNDLE_HARD]) == 2
        ids = [t.id for t in benchmark.tasks]
        assert len(ids) == len(set(ids))

    def test_empty_inputs(self, demo_bundle):
        benchmark = assemble_benchmark(demo_bundle, [], [])
        assert benchmark.tasks == []
        assert benchmark.bundles == {BUNDLE_EASY: [], BUNDLE_HARD: []}

    def test_round_trip(self, demo_bundle):
        short = generate_short_horizon(demo_bundle)
        benchmark = assemble_benchmark(demo_bundle, short, [])
        text = jsonio.dumps(benchmark.to_json())
        reparsed = BenchmarkFile.from_json(jsonio.loads(text))
        assert reparsed.to_json() == benchmark.to_json()
        again = jsonio.dumps(reparsed.to_json())
        assert again == text

    def test_duplicate_id_refused(self, demo_bundle):
        short = generate_short_horizon(demo_bundle)[:1]
        with pytest.raises(AssemblyError, match="duplicate"):
            assemble_benchmark(demo_bundle, short + short, [])

    def test_error_issue_refused(self, demo_bundle):
        bad = Task.from_json({
            "id": "bad-1", "type": "shopping", "intent": "x",
            "success_criteria": {"url_contains": "/collections/ghost",
                                 "type": "navigation"},
        })
        with pytest.raises(AssemblyError, match="unknown-collection"):
            assemble_benchmark(demo_bundle, [bad], [])

    def test_overrides_take_precedence(self):
        generated = [Task.from_json({
            "id": "t-1", "type": "shopping", "intent": "old",
            "success_criteria": {"type": "x"}})]
        override = [Task.from_json({
            "id": "t-1", "type": "shopping", "intent": "new",
            "success_criteria": {"type": "x"}})]
        merged = apply_overrides(generated, override)
        assert len(merged) == 1
        assert merged[0].intent == "new"


class TestListingsRoundTrip:
    def test_examples_parse_serialize_reparse(self, task_examples):
        for raw in task_examples:
            parsed = Task.from_json(raw)
            dumped = parsed.to_json()
            assert dumped == raw
            assert Task.from_json(jsonio.loads(jsonio.dumps(dumped))).to_json() == raw


class TestGroundednessFuzz:
    def test_hundred_random_bundles(self):
        rng = random.Random(20260810)
        for trial in range(100):
            bundle = random_bundle(rng, slug=f"fuzz-{trial}")
            tasks = generate_short_horizon(bundle, rng_seed=trial)
            issues = validate(tasks, bundle)
            errors = [i for i in issues if i.severity == "error"]
            assert errors == [], (trial, [i.to_json() for i in errors])
            # filter feasibility by brute force
            for t in tasks:
                if t.facet is None:
                    continue
                handle = t.success_criteria.url_contains.split("/collections/")[1]
                collection = bundle.collection_by_handle[handle]
                dim, value = t.facet["dim"], t.facet["value"]
                realized = 0
                for p in bundle.collection_products(collection):
                    if dim == "Brand":
                        realized += int(p.vendor == value)
                    elif dim == "Type":
                        realized += int(p.product_type == value)
                    else:
                        realized += int(any(
                            v.options.get(dim) == value for v in p.variants))
                assert realized >= 1, (trial, t.id, t.facet)
            # discovery constraints
            seen_types = set()
            for t in tasks:
                if "-search-exact-" not in t.id:
                    continue
                handle = t.success_criteria.url_contains.split("/products/")[1]
                product = bundle.product_by_handle[handle]
                assert product.active and not product.gift_card
                assert product.has_available_variant
                assert product.product_type not in seen_types
                seen_types.add(product.product_type)

    def test_determinism(self):
        rng = random.Random(5)
        bundle = random_bundle(rng)
        first = [t.to_json() for t in generate_short_horizon(bundle, rng_seed=9)]
        second = [t.to_json() for t in generate_short_horizon(bundle, rng_seed=9)]
        assert first == second
