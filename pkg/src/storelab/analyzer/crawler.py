"""Bounded breadth-first crawler building a UI state-transition graph.

Nodes are distinct UI states: a page route in its base configuration plus
one node per toggleable surface the page exposes (navigation, cart drawer,
search dropdown, filter panel, sort dropdown), detected via the
``data-sg-toggle`` attribute the engine emits. For third-party sites a
CSS-free selector heuristic can be supplied instead. Edges are user
actions: link clicks between routes and toggle openings into
configuration states.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable
from urllib.parse import urljoin, urlsplit

import httpx

from storelab.analyzer.markup import Element, parse_document
from storelab.errors import CrawlError, MarkupError

TOGGLE_ATTRIBUTE = "data-sg-toggle"

# data-sg-toggle value -> UI configuration name
TOGGLE_CONFIGS = {
    "navigation": "navigation_open",
    "cart_drawer": "cart_drawer_open",
    "search": "search_open",
    "filter_panel": "filter_panel_open",
    "sort": "sort_open",
}

BASE_CONFIG = "base"


@dataclass(frozen=True, order=True)
class UIState:
    route: str
    config: str = BASE_CONFIG

    def label(self) -> str:
        if self.config == BASE_CONFIG:
            return self.route
        return f"{self.route}:{self.config.removesuffix('_open')}"


@dataclass(frozen=True, order=True)
class Edge:
    src: UIState
    dst: UIState
    action_label: str


@dataclass
class TransitionGraph:
    nodes: set[UIState] = field(default_factory=set)
    edges: set[Edge] = field(default_factory=set)
    annotations: dict[UIState, str] = field(default_factory=dict)

    @property
    def avg_out_degree(self) -> float:
        if not self.nodes:
            return 0.0
        return len(self.edges) / len(self.nodes)

    def out_degree(self, node: UIState) -> int:
        return sum(1 for edge in self.edges if edge.src == node)

    def to_json(self) -> dict:
        return {
            "nodes": [
                {
                    "route": n.route,
                    "config": n.config,
                    **(
                        {"annotation": self.annotations[n]}
                        if n in self.annotations
                        else {}
                    ),
                }
                for n in sorted(self.nodes)
            ],
            "edges": [
                {
                    "from": e.src.label(),
                    "to": e.dst.label(),
                    "action": e.action_label,
                }
                for e in sorted(self.edges)
            ],
            "summary": {
                "nodes": len(self.nodes),
                "edges": len(self.edges),
                "avg_out_degree": round(self.avg_out_degree, 4),
            },
        }


def route_path(url: str, base: str) -> str | None:
    """Same-origin path for a link target, or None for external links."""
    absolute = urljoin(base, url)
    parts = urlsplit(absolute)
    base_parts = urlsplit(base)
    if parts.scheme not in ("http", "https") or parts.netloc != base_parts.netloc:
        return None
    return parts.path or "/"


def pattern_of(path: str, collapse_routes: bool = False) -> str:
    """Node identity for a concrete path; pattern-level when collapsing."""
    if collapse_routes:
        for prefix in ("/products/", "/collections/", "/pages/", "/policies/"):
            if path.startswith(prefix) and len(path) > len(prefix):
                return prefix + ":handle"
    return path


def _page_links(root: Element) -> list[str]:
    links = []
    for node in root.iter():
        if node.tag == "a":
            href = node.attr("href")
            if href:
                links.append(href)
    return links


def _page_toggles(root: Element) -> list[str]:
    configs = []
    for node in root.iter():
        toggle = node.attr(TOGGLE_ATTRIBUTE)
        if toggle and toggle in TOGGLE_CONFIGS:
            config = TOGGLE_CONFIGS[toggle]
            if config not in configs:
                configs.append(config)
    return configs


def crawl(
    base_url: str,
    *,
    max_pages: int = 200,
    max_depth: int = 10,
    collapse_routes: bool = False,
    concurrency: int = 4,
    client: httpx.Client | None = None,
) -> TransitionGraph:
    """Breadth-first same-origin crawl up to the page and depth budgets.

    Only attempted routes become nodes; a fetch failure is recorded as a
    node with an error annotation and no outgoing edges. Edges pointing at
    routes outside the budget are dropped so the graph stays closed.
    """
    owned_client = client is None
    http = client or httpx.Client(follow_redirects=True, timeout=10)
    graph = TransitionGraph()
    lock = threading.Lock()
    try:
        start = route_path(base_url, base_url)
        if start is None:
            raise CrawlError(f"cannot derive a start route from {base_url!r}")
        try:
            http.get(base_url)
        except httpx.HTTPError as exc:
            raise CrawlError(f"base url unreachable: {base_url} ({exc})") from exc

        # Fetches hit concrete paths; node identity is the (possibly
        # collapsed) pattern. One concrete representative per pattern.
        visited: set[str] = set()  # patterns
        pending: list[str] = [start]  # concrete paths
        attempted = 0
        link_targets: dict[str, list[tuple[str, str]]] = {}  # pattern -> targets

        def fetch(path: str) -> tuple[str, Element | None, str | None]:
            try:
                response = http.get(urljoin(base_url, path))
                if response.status_code >= 400:
                    return path, None, f"http {response.status_code}"
                if "text/html" not in response.headers.get("content-type", ""):
                    return path, None, "not html"
                return path, parse_document(response.text), None
            except (httpx.HTTPError, MarkupError) as exc:
                return path, None, f"fetch error: {exc}"

        depth = 0
        executor = ThreadPoolExecutor(max_workers=max(1, concurrency))
        try:
            while pending and depth <= max_depth and attempted < max_pages:
                wave = []
                for path in pending:
                    if pattern_of(path, collapse_routes) in visited:
                        continue
                    if attempted + len(wave) >= max_pages:
                        break
                    wave.append(path)
                    visited.add(pattern_of(path, collapse_routes))
                if not wave:
                    break
                attempted += len(wave)
                next_pending: list[str] = []
                queued = set()
                for path, root, error in executor.map(fetch, wave):
                    pattern = pattern_of(path, collapse_routes)
                    state = UIState(route=pattern)
                    with lock:
                        graph.nodes.add(state)
                        if error is not None:
                            graph.annotations[state] = error
                            continue
                    toggles = _page_toggles(root)
                    targets: list[tuple[str, str]] = []
                    for href in _page_links(root):
                        concrete = route_path(href, base_url)
                        if concrete is None:
                            continue
                        target_pattern = pattern_of(concrete, collapse_routes)
                        targets.append((target_pattern, f"click:{href}"))
                        if target_pattern not in visited and target_pattern not in queued:
                            queued.add(target_pattern)
                            next_pending.append(concrete)
                    with lock:
                        link_targets.setdefault(pattern, []).extend(targets)
                        for config in toggles:
                            config_state = UIState(route=pattern, config=config)
                            graph.nodes.add(config_state)
                            graph.edges.add(
                                Edge(
                                    src=state,
                                    dst=config_state,
                                    action_label=f"toggle:{config.removesuffix('_open')}",
                                )
                            )
                pending = next_pending
                depth += 1
        finally:
            executor.shutdown(wait=True)

        # Link edges only between patterns that became nodes.
        routes_present = {n.route for n in graph.nodes if n.config == BASE_CONFIG}
        for pattern, targets in link_targets.items():
            src = UIState(route=pattern)
            for target, label in targets:
                if target in routes_present:
                    graph.edges.add(Edge(src=src, dst=UIState(route=target),
                                         action_label=label))
        return graph
    finally:
        if owned_client:
            http.close()


def graph_isomorphic(a: TransitionGraph, b: TransitionGraph) -> bool:
    """Equality after canonical ordering (states are self-identifying)."""
    return sorted(a.nodes) == sorted(b.nodes) and sorted(a.edges) == sorted(b.edges)


def degree_identity_holds(graph: TransitionGraph) -> bool:
    return sum(graph.out_degree(n) for n in graph.nodes) == len(graph.edges)


def closed(graph: TransitionGraph) -> bool:
    return all(e.src in graph.nodes and e.dst in graph.nodes for e in graph.edges)


def states_from(routes: Iterable[str]) -> set[UIState]:
    return {UIState(route=r) for r in routes}
