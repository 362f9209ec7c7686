"""In-test static site server and the engine link-inventory oracle."""

from __future__ import annotations

import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import urlencode, urlsplit

from storelab.analyzer.crawler import TOGGLE_CONFIGS, Edge, TransitionGraph, UIState
from storelab.engine.listing import PAGE_SIZE


class StaticSite:
    """Serve a {path: html} mapping; anything else is 404."""

    def __init__(self, pages: dict[str, str]):
        self.pages = pages
        site = self

        class Handler(BaseHTTPRequestHandler):
            def log_message(self, *args):
                pass

            def do_GET(self):
                path = urlsplit(self.path).path
                body = site.pages.get(path)
                if body is None:
                    payload = b"<html><body><h1>404</h1></body></html>"
                    self.send_response(404)
                else:
                    payload = body.encode("utf-8")
                    self.send_response(200)
                self.send_header("Content-Type", "text/html; charset=utf-8")
                self.send_header("Content-Length", str(len(payload)))
                self.end_headers()
                self.wfile.write(payload)

        self.server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self.server.daemon_threads = True
        self.thread = threading.Thread(target=self.server.serve_forever, daemon=True)
        self.thread.start()

    @property
    def url(self) -> str:
        return f"http://127.0.0.1:{self.server.server_address[1]}"

    def close(self):
        self.server.shutdown()
        self.server.server_close()


def page(links=(), toggles=()):
    anchors = "".join(f'<a href="{href}">{href}</a>' for href in links)
    buttons = "".join(
        f'<button data-sg-toggle="{name}">{name}</button>' for name in toggles
    )
    return f"<html><body><main>{anchors}{buttons}</main></body></html>"


def expected_engine_graph(bundle) -> TransitionGraph:
    """Static link/toggle enumeration of the engine's rendered site.

    Derived purely from the bundle documents and the engine's declared
    affordances (header/footer inventory, 24-card first page, toggle set),
    with a BFS mirroring the crawler's reachability.
    """
    custom_pages = [p for p in bundle.pages if p.kind == "custom_page"]
    policy_pages = [p for p in bundle.pages if p.kind == "native_policy"]
    layout_links = (
        ["/"]
        + [f"/collections/{c.handle}" for c in bundle.collections]
        + ["/cart"]
        + [f"/pages/{p.handle}" for p in custom_pages]
        + [f"/policies/{p.handle}" for p in policy_pages]
    )
    layout_toggles = ["navigation", "cart_drawer", "search"]
    collection_toggles = layout_toggles + (
        ["filter_panel"] if bundle.capabilities.collection_filters else []
    ) + (["sort"] if bundle.capabilities.sort_keys else [])

    def page_spec(route: str) -> tuple[list[str], list[str]]:
        """(links in document order, toggle names) for a route."""
        links = list(layout_links)
        toggles = list(layout_toggles)
        if route.startswith("/collections/"):
            handle = route.split("/collections/")[1]
            collection = bundle.collection_by_handle[handle]
            active = [
                bundle.product_by_handle[h]
                for h in collection.product_handles
                if bundle.product_by_handle[h].active
            ]
            cards = active[:PAGE_SIZE]
            links += [f"/products/{p.handle}" for p in cards]
            if len(active) > PAGE_SIZE:
                links.append(f"{route}?{urlencode({'loaded': PAGE_SIZE})}")
            toggles = list(collection_toggles)
        elif route == "/cart":
            links.append("/")  # continue shopping (checkout hidden when empty)
        return links, toggles

    graph = TransitionGraph()
    visited: set[str] = set()
    queue = ["/"]
    link_map: dict[str, list[str]] = {}
    while queue:
        route = queue.pop(0)
        if route in visited:
            continue
        visited.add(route)
        links, toggles = page_spec(route)
        link_map[route] = links
        state = UIState(route=route)
        graph.nodes.add(state)
        for toggle in toggles:
            config = TOGGLE_CONFIGS[toggle]
            config_state = UIState(route=route, config=config)
            graph.nodes.add(config_state)
            graph.edges.add(Edge(state, config_state, f"toggle:{toggle}"))
        for href in links:
            target = urlsplit(href).path
            if target not in visited and target not in queue:
                queue.append(target)
    routes = {n.route for n in graph.nodes}
    for route, links in link_map.items():
        src = UIState(route=route)
        for href in links:
            target = urlsplit(href).path
            if target in routes:
                graph.edges.add(Edge(src, UIState(route=target), f"click:{href}"))
    return graph
