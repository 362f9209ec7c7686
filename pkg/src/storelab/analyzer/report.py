"""Site-level complexity report: crawl + per-page metrics + aggregates."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import httpx

from storelab.analyzer.complexity import PageComplexity, complexity
from storelab.analyzer.crawler import BASE_CONFIG, TransitionGraph, crawl
from storelab.errors import MarkupError


@dataclass
class ComplexityReport:
    name: str
    tree_depth: int
    fill_count: float
    click_count: float
    choice_count: float
    graph: dict[str, float]
    pages: dict[str, dict[str, Any]] = field(default_factory=dict)

    METRICS = (
        "nodes", "edges", "avg_out_degree", "tree_depth", "fill", "click", "choice",
    )

    def metric(self, name: str) -> float:
        if name in ("nodes", "edges", "avg_out_degree"):
            return self.graph[name]
        return {
            "tree_depth": self.tree_depth,
            "fill": self.fill_count,
            "click": self.click_count,
            "choice": self.choice_count,
        }[name]

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "tree_depth": self.tree_depth,
            "fill_count": self.fill_count,
            "click_count": self.click_count,
            "choice_count": self.choice_count,
            "graph": self.graph,
            "pages": self.pages,
        }

    @classmethod
    def from_json(cls, raw: dict[str, Any]) -> "ComplexityReport":
        return cls(
            name=raw.get("name", "site"),
            tree_depth=raw["tree_depth"],
            fill_count=raw["fill_count"],
            click_count=raw["click_count"],
            choice_count=raw["choice_count"],
            graph=dict(raw["graph"]),
            pages=dict(raw.get("pages", {})),
        )


def analyze_site(
    base_url: str,
    *,
    name: str = "site",
    max_pages: int = 200,
    max_depth: int = 10,
    collapse_routes: bool = False,
) -> tuple[ComplexityReport, TransitionGraph]:
    """Crawl a site and aggregate page metrics.

    Interaction counts aggregate as the mean over crawled pages (typical
    page complexity); tree depth aggregates as the maximum.
    """
    graph = crawl(
        base_url,
        max_pages=max_pages,
        max_depth=max_depth,
        collapse_routes=collapse_routes,
    )
    pages: dict[str, dict[str, Any]] = {}
    with httpx.Client(follow_redirects=True, timeout=10) as client:
        for node in sorted(graph.nodes):
            if node.config != BASE_CONFIG or node in graph.annotations:
                continue
            response = client.get(base_url.rstrip("/") + node.route)
            try:
                page = complexity(response.text)
            except MarkupError as exc:
                pages[node.route] = {"error": str(exc)}
                continue
            pages[node.route] = page.to_json()

    measured = [p for p in pages.values() if "error" not in p]
    def mean(key: str) -> float:
        if not measured:
            return 0.0
        return round(sum(p[key] for p in measured) / len(measured), 2)

    report = ComplexityReport(
        name=name,
        tree_depth=max((p["tree_depth"] for p in measured), default=0),
        fill_count=mean("fill_count"),
        click_count=mean("click_count"),
        choice_count=mean("choice_count"),
        graph={
            "nodes": len(graph.nodes),
            "edges": len(graph.edges),
            "avg_out_degree": round(graph.avg_out_degree, 4),
        },
        pages=pages,
    )
    return report, graph


def report_for_pages(
    name: str, page_metrics: dict[str, PageComplexity], graph: TransitionGraph
) -> ComplexityReport:
    """Assemble a report from precomputed page metrics (offline path)."""
    measured = list(page_metrics.values())

    def mean(values: list[float]) -> float:
        return round(sum(values) / len(values), 2) if values else 0.0

    return ComplexityReport(
        name=name,
        tree_depth=max((m.tree_depth for m in measured), default=0),
        fill_count=mean([m.fill_count for m in measured]),
        click_count=mean([m.click_count for m in measured]),
        choice_count=mean([m.choice_count for m in measured]),
        graph={
            "nodes": len(graph.nodes),
            "edges": len(graph.edges),
            "avg_out_degree": round(graph.avg_out_degree, 4),
        },
        pages={route: m.to_json() for route, m in page_metrics.items()},
    )
