"""HTML rendering for the storefront engine.

Templates are deterministic functions of (bundle, request, session cart):
identical inputs render byte-identical markup. Interactive surfaces carry
``data-sg-*`` hook attributes — the contract shared with the progressive
enhancement client and the structure analyzer's toggle detection.
"""

from __future__ import annotations

from decimal import Decimal
from urllib.parse import urlencode

from jinja2 import Environment, PackageLoader, select_autoescape

from storelab.catalog.model import Product, ShopBundle
from storelab.engine.cart import CartState
from storelab.engine.listing import (
    PAGE_SIZE,
    SORT_LABELS,
    ListingQuery,
    apply_filters,
    apply_sort,
    paginate,
)

_CURRENCY_SYMBOLS = {"USD": "$", "EUR": "€", "GBP": "£"}

SECTION_LABELS = {
    "hero": "Welcome",
    "hero_video": "Welcome",
    "category_chip_slider": "Shop by Category",
    "featured_product_grid": "Featured",
    "specialty_product_banner": "Specialty",
    "video_endorsement": "Endorsement",
    "feature_cards_grid": "Why Shop Here",
    "reviews_banner": "Reviews",
    "product_carousel": "Best Sellers",
    "product_hero_quote": "Spotlight",
    "ugc_video_carousel": "Community",
    "category_banners_3up": "Collections",
    "culinary_council": "Advisory Council",
    "recipe_carousel": "Recipes",
    "article_carousel": "Articles",
    "founder_message": "A Note from the Founder",
    "newsletter_inline": "Newsletter",
}


class Renderer:
    def __init__(self, bundle: ShopBundle):
        self.bundle = bundle
        self.env = Environment(
            loader=PackageLoader("storelab.engine", "templates"),
            autoescape=select_autoescape(["html"]),
            trim_blocks=True,
            lstrip_blocks=True,
        )
        self.env.filters["money"] = self.money
        symbol = _CURRENCY_SYMBOLS.get(bundle.currency, bundle.currency + " ")
        self._symbol = symbol

    def money(self, amount: Decimal) -> str:
        quantized = amount.quantize(Decimal("0.01"))
        return f"{self._symbol}{quantized}"

    def shop_name(self) -> str:
        return self.bundle.slug.replace("-", " ").replace("_", " ").title()

    def _base_context(self, cart: CartState) -> dict:
        bundle = self.bundle
        return {
            "shop_name": self.shop_name(),
            "bundle": bundle,
            "nav_collections": bundle.collections,
            "custom_pages": [p for p in bundle.pages if p.kind == "custom_page"],
            "policy_pages": [p for p in bundle.pages if p.kind == "native_policy"],
            "cart": cart,
            "drawer_html": self.drawer_fragment(cart),
            "announcement": bundle.capabilities.raw.get("site_shell", {}).get(
                "has_announcement_bar", False
            ),
        }

    def _render(self, template: str, cart: CartState, **context) -> str:
        ctx = self._base_context(cart)
        ctx.update(context)
        return self.env.get_template(template).render(**ctx)

    def drawer_fragment(self, cart: CartState) -> str:
        return self.env.get_template("drawer.html").render(
            cart=cart, money=self.money
        )

    def home(self, cart: CartState) -> str:
        sections = [
            {"type": t, "label": SECTION_LABELS.get(t, t.replace("_", " ").title())}
            for t in self.bundle.capabilities.homepage_section_types
        ]
        return self._render("home.html", cart, title=self.shop_name(), sections=sections)

    def collection(self, handle: str, query: ListingQuery, cart: CartState) -> str:
        collection = self.bundle.collection_by_handle[handle]
        products = [
            p for p in self.bundle.collection_products(collection) if p.active
        ]
        filtered = apply_filters(products, query)
        ordered = apply_sort(filtered, query.sort)
        page = paginate(ordered, query.loaded)
        load_more_href = None
        if page.has_more:
            params = query.to_params(loaded=PAGE_SIZE)
            load_more_href = f"/collections/{handle}?{urlencode(params)}"
        sort_keys = [
            (key, SORT_LABELS[key]) for key in self.bundle.capabilities.sort_keys
        ]
        return self._render(
            "collection.html",
            cart,
            title=collection.title,
            collection=collection,
            total_count=len(filtered),
            cards=page.slice,
            load_more_href=load_more_href,
            query=query,
            sort_keys=sort_keys,
            filters_declared=self.bundle.capabilities.collection_filters,
        )

    def product(self, handle: str, cart: CartState) -> str:
        product = self.bundle.product_by_handle[handle]
        multi = len(product.variants) > 1
        default_variant = next(
            (v for v in product.variants if v.available), product.variants[0]
        )
        return self._render(
            "product.html",
            cart,
            title=product.title,
            product=product,
            multi=multi,
            default_variant=default_variant,
            has_reviews=self.bundle.capabilities.has_reviews,
        )

    def info_page(self, page_doc, cart: CartState) -> str:
        return self._render("page.html", cart, title=page_doc.title, page=page_doc)

    def cart_page(self, cart: CartState) -> str:
        return self._render("cart.html", cart, title="Your Cart")

    def checkout_page(self, cart: CartState) -> str:
        return self._render("checkout.html", cart, title="Checkout")

    def search_results(self, q: str, results: list[Product], cart: CartState) -> str:
        return self._render(
            "search.html", cart, title="Search", q=q, results=results
        )

    def not_found(self, cart: CartState, what: str = "page") -> str:
        return self._render("notfound.html", cart, title="Not Found", what=what)

    def error_page(self, cart: CartState, message: str) -> str:
        return self._render("error.html", cart, title="Bad Request", message=message)
