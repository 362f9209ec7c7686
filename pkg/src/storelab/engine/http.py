"""The storefront HTTP service.

Built on the standard library's threading HTTP server so a shop can be
embedded in tests and spun up per rollout with no external runtime. The
catalog is immutable; session carts are the only mutable state, so
``POST /__reset`` restores the exact cold-start state.

Route table:

    GET  /                                homepage
    GET  /collections/<handle>            listing (filters/sort/load-more)
    GET  /products/<handle>               product detail
    GET  /pages/<handle>                  custom info page
    GET  /policies/<name>-policy          native policy page
    GET  /search?q=                       full-page results
    GET  /search/suggest.json?q=          predictive JSON
    GET  /cart                            cart page
    GET  /cart.js                         cart state JSON
    GET  /checkout                        static checkout-disabled page
    GET  /assets/<file>                   static assets
    POST /cart/add | /cart/update | /cart/remove
    POST /__reset?scope=session|all

Cart mutations accept form-encoded or JSON bodies. Clients that accept
``application/json`` get ``{"cart": ..., "drawer_html": ...}``; plain form
posts get a 303 redirect to ``/cart`` so the no-script flow works.
"""

from __future__ import annotations

import json
import random
import threading
from http.cookies import SimpleCookie
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from importlib import resources
from urllib.parse import parse_qsl, urlsplit

from storelab.catalog.model import ShopBundle
from storelab.engine.cart import CartError, CartStore
from storelab.engine.listing import ListingError, ListingQuery
from storelab.engine.render import Renderer
from storelab.engine.search import search_products, suggest_payload
from storelab.errors import StorelabError

SESSION_COOKIE = "sg_session"

_STATIC_TYPES = {
    ".css": "text/css; charset=utf-8",
    ".js": "application/javascript; charset=utf-8",
    ".svg": "image/svg+xml",
}


class EngineState:
    """Shared state behind one running storefront."""

    def __init__(self, bundle: ShopBundle, seed: int = 0):
        self.bundle = bundle
        self.renderer = Renderer(bundle)
        self.carts = CartStore(bundle)
        self._rng = random.Random(seed)
        self._rng_lock = threading.Lock()

    def new_session_token(self) -> str:
        with self._rng_lock:
            return f"s{self._rng.getrandbits(64):016x}"


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    state: EngineState  # attached by serve()

    # -- plumbing ---------------------------------------------------------

    def log_message(self, format: str, *args) -> None:  # noqa: A002
        pass

    def _session(self) -> tuple[str, bool]:
        cookie = SimpleCookie(self.headers.get("Cookie", ""))
        if SESSION_COOKIE in cookie:
            return cookie[SESSION_COOKIE].value, False
        return self.state.new_session_token(), True

    def _send(self, status: int, content_type: str, body: bytes) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        if self._new_session:
            self.send_header(
                "Set-Cookie", f"{SESSION_COOKIE}={self._sid}; Path=/; HttpOnly"
            )
        self.end_headers()
        self.wfile.write(body)

    def _html(self, status: int, markup: str) -> None:
        self._send(status, "text/html; charset=utf-8", markup.encode("utf-8"))

    def _json(self, status: int, obj) -> None:
        body = json.dumps(obj).encode("utf-8")
        self._send(status, "application/json; charset=utf-8", body)

    def _redirect(self, location: str) -> None:
        self.send_response(303)
        self.send_header("Location", location)
        self.send_header("Content-Length", "0")
        if self._new_session:
            self.send_header(
                "Set-Cookie", f"{SESSION_COOKIE}={self._sid}; Path=/; HttpOnly"
            )
        self.end_headers()

    def _wants_json(self) -> bool:
        accept = self.headers.get("Accept", "")
        content_type = self.headers.get("Content-Type", "")
        return "application/json" in accept or "application/json" in content_type

    def _body_params(self) -> dict[str, str]:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        content_type = self.headers.get("Content-Type", "")
        if "application/json" in content_type:
            try:
                data = json.loads(raw.decode("utf-8") or "{}")
            except ValueError:
                return {}
            return {str(k): str(v) for k, v in data.items()}
        return dict(parse_qsl(raw.decode("utf-8")))

    # -- GET routes ---------------------------------------------------------

    def do_GET(self) -> None:  # noqa: N802
        self._sid, self._new_session = self._session()
        split = urlsplit(self.path)
        path = split.path
        params = dict(parse_qsl(split.query))
        cart = self.state.carts.get(self._sid)
        render = self.state.renderer
        try:
            if path == "/":
                return self._html(200, render.home(cart))
            if path.startswith("/collections/"):
                handle = path[len("/collections/"):]
                if handle not in self.state.bundle.collection_by_handle:
                    return self._html(404, render.not_found(cart, "collection"))
                try:
                    query = ListingQuery.from_params(params)
                except ListingError as exc:
                    return self._html(400, render.error_page(cart, str(exc)))
                return self._html(200, render.collection(handle, query, cart))
            if path.startswith("/products/"):
                handle = path[len("/products/"):]
                if handle not in self.state.bundle.product_by_handle:
                    return self._html(404, render.not_found(cart, "product"))
                return self._html(200, render.product(handle, cart))
            if path.startswith("/pages/"):
                handle = path[len("/pages/"):]
                page = self.state.bundle.find_page(handle, kind="custom_page")
                if page is None:
                    return self._html(404, render.not_found(cart, "page"))
                return self._html(200, render.info_page(page, cart))
            if path.startswith("/policies/"):
                handle = path[len("/policies/"):]
                page = self.state.bundle.find_page(handle, kind="native_policy")
                if page is None:
                    return self._html(404, render.not_found(cart, "policy"))
                return self._html(200, render.info_page(page, cart))
            if path == "/search/suggest.json":
                return self._json(
                    200, suggest_payload(self.state.bundle, params.get("q", ""))
                )
            if path == "/search":
                q = params.get("q", "")
                results = search_products(self.state.bundle, q)
                return self._html(200, render.search_results(q, results, cart))
            if path == "/cart":
                return self._html(200, render.cart_page(cart))
            if path == "/cart.js":
                return self._json(200, cart.to_json())
            if path == "/checkout":
                return self._html(200, render.checkout_page(cart))
            if path.startswith("/assets/"):
                return self._static(path[len("/assets/"):])
            return self._html(404, render.not_found(cart, "page"))
        except BrokenPipeError:
            pass

    def _static(self, name: str) -> None:
        if "/" in name or name.startswith("."):
            return self._html(404, self.state.renderer.not_found(
                self.state.carts.get(self._sid), "asset"))
        suffix = "." + name.rsplit(".", 1)[-1] if "." in name else ""
        content_type = _STATIC_TYPES.get(suffix, "application/octet-stream")
        try:
            data = (
                resources.files("storelab.engine") / "static" / name
            ).read_bytes()
        except (FileNotFoundError, OSError):
            return self._html(404, self.state.renderer.not_found(
                self.state.carts.get(self._sid), "asset"))
        self._send(200, content_type, data)

    # -- POST routes --------------------------------------------------------

    def do_POST(self) -> None:  # noqa: N802
        self._sid, self._new_session = self._session()
        split = urlsplit(self.path)
        path = split.path
        query = dict(parse_qsl(split.query))
        params = self._body_params()
        try:
            if path == "/__reset":
                scope = query.get("scope", params.get("scope", "all"))
                if scope == "session":
                    self.state.carts.reset_session(self._sid)
                else:
                    self.state.carts.reset_all()
                return self._json(200, {"ok": True, "scope": scope})
            if path in ("/cart/add", "/cart/update", "/cart/remove"):
                return self._cart_mutation(path, params)
            cart = self.state.carts.get(self._sid)
            return self._html(404, self.state.renderer.not_found(cart, "route"))
        except BrokenPipeError:
            pass

    def _cart_mutation(self, path: str, params: dict[str, str]) -> None:
        kind = {"/cart/add": "add", "/cart/update": "set_qty", "/cart/remove": "remove"}[
            path
        ]
        variant_id = params.get("id", "")
        quantity: int | None = None
        if "quantity" in params:
            try:
                quantity = int(params["quantity"])
            except ValueError:
                return self._mutation_error(CartError("quantity must be an integer"))
        try:
            cart = self.state.carts.mutate(self._sid, kind, variant_id, quantity)
        except CartError as exc:
            return self._mutation_error(exc)
        if self._wants_json():
            return self._json(
                200,
                {
                    "cart": cart.to_json(),
                    "drawer_html": self.state.renderer.drawer_fragment(cart),
                },
            )
        return self._redirect("/cart")

    def _mutation_error(self, exc: CartError) -> None:
        status = getattr(exc, "status", 400)
        if self._wants_json():
            return self._json(status, {"error": str(exc)})
        cart = self.state.carts.get(self._sid)
        return self._html(status, self.state.renderer.error_page(cart, str(exc)))


class EngineHandle:
    """A running storefront; shut down with ``close()``."""

    def __init__(self, server: ThreadingHTTPServer, thread: threading.Thread,
                 state: EngineState):
        self.server = server
        self.thread = thread
        self.state = state

    @property
    def port(self) -> int:
        return self.server.server_address[1]

    @property
    def url(self) -> str:
        host = self.server.server_address[0]
        return f"http://{host}:{self.port}"

    def close(self) -> None:
        self.server.shutdown()
        self.server.server_close()
        self.thread.join(timeout=5)

    def __enter__(self) -> "EngineHandle":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def serve(
    bundle: ShopBundle, host: str = "127.0.0.1", port: int = 0, seed: int = 0
) -> EngineHandle:
    """Start the storefront in a background thread; ``port=0`` picks a free one."""
    state = EngineState(bundle, seed=seed)
    handler = type("BoundHandler", (_Handler,), {"state": state})
    try:
        server = ThreadingHTTPServer((host, port), handler)
    except OSError as exc:
        raise StorelabError(f"cannot bind {host}:{port}: {exc}") from exc
    server.daemon_threads = True
    thread = threading.Thread(target=server.serve_forever, name="storelab-engine")
    thread.daemon = True
    thread.start()
    return EngineHandle(server, thread, state)
