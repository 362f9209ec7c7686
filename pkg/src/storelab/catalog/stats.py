"""Recompute aggregate statistics from a bundle."""

from __future__ import annotations

from decimal import Decimal

from storelab.catalog.model import ShopBundle, ShopStats


def _median(values: list) -> float | Decimal:
    """Mean-of-middles median (decimal-valued for even counts)."""
    ordered = sorted(values)
    n = len(ordered)
    mid = n // 2
    if n % 2 == 1:
        return ordered[mid]
    return (ordered[mid - 1] + ordered[mid]) / 2


def compute_stats(bundle: ShopBundle) -> ShopStats:
    """Pure recomputation of every stats field from the bundle documents.

    A product with a single default variant counts as variant-less for
    ``products_with_variants_pct``.
    """
    products = bundle.products
    collections = bundle.collections
    stats = ShopStats()
    stats.products_total = len(products)
    stats.collections_total = len(collections)

    sizes = [len(c) for c in collections]
    if sizes:
        stats.products_per_collection = {
            "avg": round(sum(sizes) / len(sizes), 2),
            "median": float(_median(sizes)),
            "max": max(sizes),
        }
    else:
        stats.products_per_collection = {"avg": 0.0, "median": 0.0, "max": 0}

    prices = [v.price for p in products for v in p.variants]
    if prices:
        stats.price = {
            "min": min(prices),
            "max": max(prices),
            "median": _median(prices),
            "currency": bundle.currency,
        }
    else:
        stats.price = None

    if products:
        multi = sum(1 for p in products if len(p.variants) > 1)
        stats.products_with_variants_pct = multi / len(products)
    else:
        stats.products_with_variants_pct = 0.0

    axes = {dim.lower() for p in products for v in p.variants for dim in v.options}
    stats.variant_axes_observed = sorted(axes)

    stats.navigation_depth_max = bundle.capabilities.nav_depth
    stats.homepage_section_count = bundle.capabilities.homepage_section_count
    stats.info_pages_count = len(bundle.pages)
    return stats
