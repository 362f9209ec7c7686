"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line with its runtime and enforces the
criterion's runtime budget. Run with ``pytest tests/test_acceptance.py -s``
to see the lines.
"""

from __future__ import annotations

import json
import random
import time
from contextlib import contextmanager
from decimal import Decimal
from pathlib import Path

import httpx

from storelab import jsonio
from storelab.catalog import Capabilities, ShopStats
from storelab.cli import EXIT_POLISH_HALT, dispatch
from storelab.engine import serve
from storelab.engine.cart import CartStore
from storelab.engine.listing import ListingQuery, apply_filters
from storelab.fixtures import random_bundle
from storelab.journeys import StubbornStubGenerator, generate_journeys
from storelab.runner import (
    PROFILES,
    StubJudge,
    Verdict,
    aggregate,
    gate_and_judge,
    run_task,
)
from storelab.runner.rollout import RolloutRecord, TERMINATION_STEPS, TERMINATION_TIME
from storelab.runner.scripted import scripted_agent_factory
from storelab.tasks import BenchmarkFile, Task, generate_short_horizon
from storelab.validation import ERROR_RULES, RULE_SEVERITY, WARNING_RULES, validate

from tests.sitefixtures import StaticSite, expected_engine_graph, page
from tests.test_validator import planted_violation_tasks, shop as planted_shop  # noqa: F401

DATA_DIR = Path(__file__).parent / "data"


@contextmanager
def criterion(name: str, budget_seconds: float):
    started = time.monotonic()
    try:
        yield
    except BaseException:
        elapsed = time.monotonic() - started
        print(f"FAIL {name} ({elapsed:.2f}s)")
        raise
    elapsed = time.monotonic() - started
    assert elapsed < budget_seconds, (
        f"{name} exceeded its runtime budget: {elapsed:.2f}s >= {budget_seconds}s"
    )
    print(f"PASS {name} ({elapsed:.2f}s)")


def test_validator_table_conformance(planted_shop, demo_bundle):  # noqa: F811
    with criterion("validator-table-conformance", 1.0):
        issues = validate(planted_violation_tasks(), planted_shop)
        assert len(issues) == 7
        assert sorted(i.rule for i in issues) == sorted(ERROR_RULES + WARNING_RULES)
        for issue in issues:
            assert issue.severity == RULE_SEVERITY[issue.rule]
        assert {RULE_SEVERITY[r] for r in ERROR_RULES} == {"error"}
        assert {RULE_SEVERITY[r] for r in WARNING_RULES} == {"warning"}
        # clean corpus yields zero issues
        clean = generate_short_horizon(demo_bundle)
        assert validate(clean, demo_bundle) == []
        # exit codes: errors halt the build, warnings do not
        from storelab.validation import exit_disposition

        assert exit_disposition(issues)["code"] != 0
        warnings_only = [i for i in issues if i.severity == "warning"]
        assert exit_disposition(warnings_only)["code"] == 0
        assert exit_disposition([])["code"] == 0


def test_generator_groundedness_fuzz():
    with criterion("generator-groundedness-100-bundles", 30.0):
        rng = random.Random(202608)
        for trial in range(100):
            bundle = random_bundle(rng, slug=f"acc-{trial}")
            tasks = generate_short_horizon(bundle, rng_seed=trial)
            errors = [
                i for i in validate(tasks, bundle) if i.severity == "error"
            ]
            assert errors == [], (trial, [i.to_json() for i in errors])
            seen_types: set[str] = set()
            for task in tasks:
                if task.facet is not None:
                    handle = task.success_criteria.url_contains.split(
                        "/collections/"
                    )[1]
                    collection = bundle.collection_by_handle[handle]
                    dim, value = task.facet["dim"], task.facet["value"]
                    realized = 0
                    for product in bundle.collection_products(collection):
                        if dim == "Brand":
                            realized += int(product.vendor == value)
                        elif dim == "Type":
                            realized += int(product.product_type == value)
                        else:
                            realized += int(
                                any(
                                    v.options.get(dim) == value
                                    for v in product.variants
                                )
                            )
                    assert realized >= 1, (trial, task.id)
                if "-search-exact-" in task.id:
                    handle = task.success_criteria.url_contains.split(
                        "/products/"
                    )[1]
                    product = bundle.product_by_handle[handle]
                    assert product.active
                    assert not product.gift_card
                    assert product.has_available_variant
                    assert product.product_type not in seen_types
                    seen_types.add(product.product_type)


def test_polish_loop_contract(demo_bundle, demo_dir, tmp_path):
    with criterion("polish-loop-contract", 5.0):
        # (a) converging mock: emission with rounds_used <= 2, ids conserved
        class ConvergingMock:
            def __init__(self):
                self.round = 0

            def generate(self, system_prompt, user_prompt, timeout=None):
                self.round += 1
                if self.round == 1:
                    tasks = [
                        {
                            "id": "demo-kitchen-e2e-v1-1",
                            "type": "shopping",
                            "intent": 'Navigate to the "Ghost Aisle" collection '
                                      "and add any product to cart.",
                            "success_criteria": {
                                "url_contains": "/collections/ghost-aisle",
                                "type": "cart",
                            },
                        },
                        {
                            "id": "demo-kitchen-e2e-v1-2",
                            "type": "shopping",
                            "intent": 'Navigate to the "Knives" collection and '
                                      "add any product to cart. Once it is in "
                                      "your cart, end the session.",
                            "success_criteria": {
                                "url_contains": "/collections/knives",
                                "type": "cart",
                            },
                        },
                    ]
                else:
                    tasks = [
                        {
                            "id": "demo-kitchen-e2e-v1-1",
                            "type": "shopping",
                            "intent": 'Navigate to the "Cookware" collection and '
                                      "add any product to cart. Once it is in "
                                      "your cart, end the session.",
                            "success_criteria": {
                                "url_contains": "/collections/cookware",
                                "type": "cart",
                            },
                        }
                    ]
                return json.dumps({"tasks": tasks})

        result = generate_journeys(ConvergingMock(), demo_bundle, 2)
        assert result.disposition == "emitted"
        assert result.rounds_used <= 2
        assert sorted(t.id for t in result.tasks) == [
            "demo-kitchen-e2e-v1-1",
            "demo-kitchen-e2e-v1-2",
        ]

        # (b) stubborn mock: halt after exactly two polish rounds, no file
        stubborn = StubbornStubGenerator(demo_bundle, 2)
        halted = generate_journeys(stubborn, demo_bundle, 2)
        assert halted.disposition == "halted"
        assert halted.rounds_used == 2
        out = tmp_path / "halted-bench.json"
        code = dispatch([
            "gen-tasks", str(demo_dir), "--journeys", "2",
            "--generator", "stub-stubborn", "--out", str(out),
        ])
        assert code == EXIT_POLISH_HALT
        assert not out.exists()


def test_storefront_contract(demo_bundle):
    with criterion("storefront-contract", 120.0):
        with serve(demo_bundle, seed=0) as engine:
            with httpx.Client(base_url=engine.url, follow_redirects=True) as client:
                # every route answers success for every handle
                routes = (
                    ["/", "/cart", "/checkout", "/search?q=pan",
                     "/search/suggest.json?q=pan"]
                    + [f"/collections/{c.handle}" for c in demo_bundle.collections]
                    + [f"/products/{p.handle}" for p in demo_bundle.products]
                    + [p.route for p in demo_bundle.pages]
                )
                for route in routes:
                    assert client.get(route).status_code == 200, route

                # price ascending listing is non-decreasing
                import re as _re

                html = client.get("/collections/cookware?sort_by=price_asc").text
                prices = [
                    float(m)
                    for m in _re.findall(r'class="card-price">\s*\$(\d+\.\d{2})', html)
                ]
                assert prices == sorted(prices) and prices

                # 24-card load-more
                first = client.get("/collections/cookware").text
                assert first.count('class="product-card"') == 24
                assert "data-sg-load-more" in first
                active = [
                    p
                    for p in demo_bundle.collection_products(
                        demo_bundle.collection_by_handle["cookware"]
                    )
                    if p.active
                ]
                rest = client.get("/collections/cookware?loaded=24").text
                assert rest.count('class="product-card"') == len(active) - 24
                assert "data-sg-load-more" not in rest

            # filters subset-monotone over 1000 random queries
            rng = random.Random(11)
            cookware = demo_bundle.collection_by_handle["cookware"]
            products = [
                p for p in demo_bundle.collection_products(cookware) if p.active
            ]
            dims = ["Color", "Size", "Material", "Brand", "Type", "Bogus"]
            values = ["Black Handle", "2 Qt", "Flax", "Hearthline", "Saucepan", "x"]
            base_handles = {p.handle for p in products}
            for _ in range(1000):
                query = ListingQuery(
                    available=rng.random() < 0.5,
                    on_sale=rng.random() < 0.5,
                    facet=(rng.choice(dims), rng.choice(values))
                    if rng.random() < 0.5
                    else None,
                )
                filtered = apply_filters(products, query)
                handles = {p.handle for p in filtered}
                assert handles <= base_handles
                narrowed = apply_filters(filtered, ListingQuery(on_sale=True))
                assert {p.handle for p in narrowed} <= handles

            # cart subtotal oracle over 1000 random mutation sequences
            store = CartStore(demo_bundle)
            variants = {
                v.id: v.price
                for p in demo_bundle.products
                for v in p.variants
                if v.available
            }
            variant_ids = sorted(variants)
            rng = random.Random(12)
            for seq in range(1000):
                sid = f"acc-{seq}"
                expected: dict[str, int] = {}
                for _ in range(rng.randint(1, 10)):
                    vid = rng.choice(variant_ids)
                    op = rng.choice(["add", "set_qty", "remove"])
                    if op == "add":
                        qty = rng.randint(1, 3)
                        store.mutate(sid, "add", vid, qty)
                        expected[vid] = expected.get(vid, 0) + qty
                    elif op == "set_qty":
                        qty = rng.randint(0, 4)
                        store.mutate(sid, "set_qty", vid, qty)
                        if qty == 0:
                            expected.pop(vid, None)
                        else:
                            expected[vid] = qty
                    else:
                        store.mutate(sid, "remove", vid)
                        expected.pop(vid, None)
                oracle = sum(
                    (variants[v] * q for v, q in expected.items()), Decimal("0.00")
                )
                assert store.get(sid).subtotal == oracle

        # reset restores byte-identical cold-start pages
        sequence = [
            "/", "/collections/cookware", "/products/forged-chefs-knife",
            "/cart", "/pages/about-us", "/policies/refund-policy",
        ]
        with serve(demo_bundle, seed=0) as fresh:
            with httpx.Client(base_url=fresh.url, follow_redirects=True) as client:
                cold = [client.get(p).content for p in sequence]
                client.post("/cart/add", data={"id": "paring-knife-v1", "quantity": 2})
                client.post("/cart/update", data={"id": "paring-knife-v1", "quantity": 5})
                client.post("/__reset?scope=all")
                warm = [client.get(p).content for p in sequence]
            assert warm == cold


def test_end_to_end_groundedness(demo_bundle):
    with criterion("end-to-end-groundedness", 120.0):
        tasks = generate_short_horizon(demo_bundle)
        assert len(tasks) >= 20
        profile = PROFILES["browsergym"]
        assert profile.budgets.max_steps == 30
        passed = 0
        with serve(demo_bundle, seed=0) as engine:
            for task in tasks:
                rollout = run_task(
                    scripted_agent_factory, task, engine.url, profile.budgets
                )
                verdict = gate_and_judge(
                    rollout, task, StubJudge(), mode="hard_url"
                )
                assert verdict.success, (
                    task.id, rollout.termination, rollout.urls_visited
                )
                passed += 1
        assert passed == len(tasks)


def test_harness_protocol_constants(demo_bundle):
    with criterion("harness-protocol-constants", 30.0):
        internal = PROFILES["internal"]
        assert internal.budgets.max_steps == 40
        assert internal.budgets.max_wall_clock == 850.0
        assert internal.repeats == 3

        # SEM reported over 3 repeats
        bench = BenchmarkFile(shop_slug="s")
        task = Task.from_json({
            "id": "t", "type": "shopping", "intent": "x",
            "success_criteria": {"type": "cart"},
        })
        bench.tasks = [task]
        verdicts = [
            Verdict(task_id="t", success=s, reasoning="") for s in (True, True, False)
        ]
        report = aggregate(bench, verdicts)
        row = report["bundles"]["easy_short_horizon"]["tasks"]["t"]
        assert row["repeats"] == 3
        assert row["sem"] > 0

        # forced-failure rule holds on 100% of non-agent_end rollouts
        rng = random.Random(3)
        for _ in range(500):
            rollout = RolloutRecord(task_id="t")
            rollout.termination = rng.choice([TERMINATION_STEPS, TERMINATION_TIME])
            rollout.urls_visited = ["/", "/collections/knives"]
            verdict = gate_and_judge(
                rollout, task, StubJudge(),
                mode=rng.choice(["soft_url", "hard_url"]),
            )
            assert verdict.success is False
            assert verdict.gated is True


def test_analyzer_oracle_equivalence(demo_bundle):
    with criterion("analyzer-oracle-equivalence", 60.0):
        from storelab.analyzer import crawl
        from storelab.analyzer.crawler import UIState, degree_identity_holds

        site = StaticSite({
            "/": page(links=["/a", "/b"]),
            "/a": page(links=["/", "/c"], toggles=["navigation"]),
            "/b": page(links=["/c", "/missing"]),
            "/c": page(links=["/d"]),
            "/d": page(),
        })
        try:
            graph = crawl(site.url)
        finally:
            site.close()
        assert graph.nodes == {
            UIState("/"), UIState("/a"), UIState("/b"), UIState("/c"),
            UIState("/d"), UIState("/missing"),
            UIState("/a", "navigation_open"),
        }
        assert len(graph.edges) == 8
        degrees = {n.label(): graph.out_degree(n) for n in graph.nodes}
        assert degrees == {
            "/": 2, "/a": 3, "/b": 2, "/c": 1, "/d": 0, "/missing": 0,
            "/a:navigation": 0,
        }
        assert degree_identity_holds(graph)

        with serve(demo_bundle, seed=0) as engine:
            engine_graph = crawl(engine.url, max_pages=500)
        expected = expected_engine_graph(demo_bundle)
        assert engine_graph.nodes == expected.nodes
        assert {
            (e.src.label(), e.dst.label(), e.action_label)
            for e in engine_graph.edges
        } == {
            (e.src.label(), e.dst.label(), e.action_label)
            for e in expected.edges
        }
        assert degree_identity_holds(engine_graph)


def test_schema_round_trips(task_examples):
    with criterion("schema-round-trips", 10.0):
        # capability document
        caps_raw = jsonio.load_path(DATA_DIR / "capabilities_cookware.json")
        caps = Capabilities(caps_raw)
        assert len(caps.sort_keys) == 8
        reparsed = jsonio.loads(jsonio.dumps(caps.to_json()))
        assert reparsed == caps_raw
        # stats document (164 products, 50 collections, extra field kept)
        stats_raw = jsonio.load_path(DATA_DIR / "stats_cookware.json")
        stats = ShopStats.from_json(stats_raw)
        assert stats.products_total == 164
        assert stats.collections_total == 50
        round_tripped = ShopStats.from_json(jsonio.loads(jsonio.dumps(stats.to_json())))
        assert round_tripped.to_json() == stats_raw
        # task objects
        for raw in task_examples:
            parsed = Task.from_json(raw)
            assert parsed.to_json() == raw
            again = Task.from_json(jsonio.loads(jsonio.dumps(parsed.to_json())))
            assert again.to_json() == raw
