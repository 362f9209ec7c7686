"""Domain types for a shop bundle.

A bundle is the five-document artifact (products, collections, pages,
capabilities, stats) that fully describes one sandbox shop. Everything is
immutable after load so a bundle can be shared read-only across request
handlers and generators.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Any

# The eight sort keys a capability document may declare, in canonical order.
CANONICAL_SORT_KEYS = (
    "featured",
    "best_selling",
    "alpha_az",
    "alpha_za",
    "price_asc",
    "price_desc",
    "date_new",
    "date_old",
)

# Capability documents historically spell the alphabetical keys out.
SORT_KEY_ALIASES = {
    "alphabetically_az": "alpha_az",
    "alphabetically_za": "alpha_za",
}

HANDLE_RE = re.compile(r"^[a-z0-9]+(?:[-_.][a-z0-9]+)*$")


def is_valid_handle(handle: str) -> bool:
    return bool(HANDLE_RE.match(handle))


@dataclass(frozen=True)
class Variant:
    """One purchasable configuration of a product."""

    id: str
    options: dict[str, str]
    price: Decimal
    compare_at_price: Decimal | None = None
    available: bool = True

    @property
    def on_sale(self) -> bool:
        return self.compare_at_price is not None and self.compare_at_price > self.price


@dataclass(frozen=True)
class Product:
    handle: str
    title: str
    vendor: str
    product_type: str
    description: str = ""
    tags: tuple[str, ...] = ()
    status: str = "active"
    gift_card: bool = False
    option_axes: tuple[str, ...] = ()
    variants: tuple[Variant, ...] = ()
    images: tuple[str, ...] = ()
    # Ordinal used by the date_new / date_old sort keys; best_selling_ordinal
    # optionally overrides collection order for the best_selling key.
    created_ordinal: int = 0
    best_selling_ordinal: int | None = None

    @property
    def active(self) -> bool:
        return self.status == "active"

    @property
    def price_min(self) -> Decimal:
        return min(v.price for v in self.variants)

    @property
    def price_max(self) -> Decimal:
        return max(v.price for v in self.variants)

    @property
    def has_available_variant(self) -> bool:
        return any(v.available for v in self.variants)

    @property
    def on_sale(self) -> bool:
        return any(v.on_sale for v in self.variants)


@dataclass(frozen=True)
class Collection:
    handle: str
    title: str
    description: str = ""
    product_handles: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.product_handles)


@dataclass(frozen=True)
class PageDoc:
    handle: str
    title: str
    body: str = ""
    kind: str = "custom_page"  # custom_page | native_policy

    @property
    def route(self) -> str:
        if self.kind == "native_policy":
            return f"/policies/{self.handle}"
        return f"/pages/{self.handle}"


class Capabilities:
    """Declarative description of a shop's user-facing affordances.

    The raw document is kept verbatim so that load -> serialize round-trips
    field-identically; typed accessors expose the slices the engine needs.
    """

    def __init__(self, raw: dict[str, Any]):
        self.raw = raw

    def to_json(self) -> dict[str, Any]:
        return self.raw

    def _section(self, name: str) -> dict[str, Any]:
        value = self.raw.get(name)
        return value if isinstance(value, dict) else {}

    @property
    def currency(self) -> str:
        return str(self._section("shop").get("currency", "USD"))

    @property
    def descriptor(self) -> str:
        return str(self._section("shop").get("descriptor", ""))

    @property
    def nav_depth(self) -> int:
        return int(self._section("site_shell").get("nav_depth", 1))

    @property
    def homepage_section_types(self) -> list[str]:
        return list(self._section("homepage").get("section_types", []))

    @property
    def homepage_section_count(self) -> int:
        return int(
            self._section("homepage").get(
                "section_count", len(self.homepage_section_types)
            )
        )

    @property
    def collection_filters(self) -> list[str]:
        return list(self._section("collection").get("filters", []))

    @property
    def sort_keys(self) -> list[str]:
        declared = self._section("collection").get("sort", [])
        return [SORT_KEY_ALIASES.get(key, key) for key in declared]

    @property
    def pagination(self) -> str:
        return str(self._section("collection").get("pagination", "load_more"))

    @property
    def has_reviews(self) -> bool:
        return bool(self._section("product").get("has_reviews", False))

    @property
    def cart_type(self) -> str:
        return str(self._section("cart").get("type", "drawer"))

    @property
    def info_pages_present(self) -> list[str]:
        value = self.raw.get("info_pages_present", [])
        return list(value) if isinstance(value, list) else []


@dataclass
class ShopStats:
    """Aggregate statistics over a bundle.

    ``extra`` preserves any fields this toolkit does not compute itself so a
    foreign stats document survives a load/serialize round trip unchanged.
    """

    products_total: int = 0
    collections_total: int = 0
    products_per_collection: dict[str, Any] = field(default_factory=dict)
    price: dict[str, Any] | None = None
    products_with_variants_pct: float = 0.0
    variant_axes_observed: list[str] = field(default_factory=list)
    navigation_depth_max: int = 0
    homepage_section_count: int = 0
    info_pages_count: int = 0
    extra: dict[str, Any] = field(default_factory=dict)

    KNOWN_FIELDS = (
        "products_total",
        "collections_total",
        "products_per_collection",
        "price",
        "products_with_variants_pct",
        "variant_axes_observed",
        "navigation_depth_max",
        "homepage_section_count",
        "info_pages_count",
    )

    @classmethod
    def from_json(cls, raw: dict[str, Any]) -> "ShopStats":
        known = {k: raw[k] for k in cls.KNOWN_FIELDS if k in raw}
        extra = {k: v for k, v in raw.items() if k not in cls.KNOWN_FIELDS}
        stats = cls(extra=extra)
        for key, value in known.items():
            setattr(stats, key, value)
        return stats

    def to_json(self) -> dict[str, Any]:
        doc: dict[str, Any] = {}
        for key in self.KNOWN_FIELDS:
            value = getattr(self, key)
            if key == "price" and value is None:
                continue
            doc[key] = value
        doc.update(self.extra)
        return doc


@dataclass
class ShopBundle:
    """One sandbox shop, fully cross-linked."""

    slug: str
    products: tuple[Product, ...]
    collections: tuple[Collection, ...]
    pages: tuple[PageDoc, ...]
    capabilities: Capabilities
    stats: ShopStats

    def __post_init__(self) -> None:
        self.product_by_handle = {p.handle: p for p in self.products}
        self.collection_by_handle = {c.handle: c for c in self.collections}
        self.page_by_handle: dict[str, PageDoc] = {}
        for page in self.pages:
            self.page_by_handle.setdefault(page.handle, page)
        self.variant_by_id: dict[str, tuple[Product, Variant]] = {}
        for product in self.products:
            for variant in product.variants:
                self.variant_by_id[variant.id] = (product, variant)

    @property
    def currency(self) -> str:
        return self.capabilities.currency

    def collection_products(self, collection: Collection) -> list[Product]:
        return [self.product_by_handle[h] for h in collection.product_handles]

    def find_page(self, handle: str, kind: str | None = None) -> PageDoc | None:
        for page in self.pages:
            if page.handle == handle and (kind is None or page.kind == kind):
                return page
        return None
