"""Storefront search: full-page results and the predictive JSON endpoint."""

from __future__ import annotations

from typing import Any

from storelab.catalog.model import Product, ShopBundle
from storelab.jsonio import money

SUGGEST_LIMIT = 10


def search_products(bundle: ShopBundle, q: str) -> list[Product]:
    """Case-insensitive substring match over title, tags, vendor, and type.

    An exact title match ranks first so an exact-title query surfaces its
    product at the top; everything else keeps catalog order. Empty queries
    return no results.
    """
    needle = q.strip().lower()
    if not needle:
        return []
    matches = [
        p
        for p in bundle.products
        if p.active
        and (
            needle in p.title.lower()
            or any(needle in tag.lower() for tag in p.tags)
            or needle in p.vendor.lower()
            or needle in p.product_type.lower()
        )
    ]
    exact = [p for p in matches if p.title.lower() == needle]
    rest = [p for p in matches if p.title.lower() != needle]
    return exact + rest


def _suggest_record(product: Product) -> dict[str, Any]:
    compare_ats = [
        v.compare_at_price for v in product.variants if v.compare_at_price is not None
    ]
    return {
        "title": product.title,
        "handle": product.handle,
        "price": str(money(product.price_min)),
        "compare_at_price_min": str(money(min(compare_ats))) if compare_ats else None,
        "compare_at_price_max": str(money(max(compare_ats))) if compare_ats else None,
        "available": product.has_available_variant,
        "url": f"/products/{product.handle}",
        "vendor": product.vendor,
        "featured_image": product.images[0] if product.images else None,
        "tags": list(product.tags),
        "type": product.product_type,
    }


def suggest_payload(bundle: ShopBundle, q: str) -> dict[str, Any]:
    """Top matches as product-shaped records for the predictive dropdown."""
    results = search_products(bundle, q)[:SUGGEST_LIMIT]
    return {"products": [_suggest_record(p) for p in results]}
