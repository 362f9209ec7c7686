"""Per-collection option index, generic-handle exclusion, discovery eligibility.

The option index is the feasibility oracle for filter tasks: a facet
``(dimension, value)`` is only ever emitted when at least one product in the
target collection realizes it. Shop-wide statistics are deliberately not
used — a dimension can be common in the catalog overall yet absent from a
specific collection.
"""

from __future__ import annotations

from typing import Dict, Iterable

from storelab.catalog.model import Collection, Product, ShopBundle

# Synthetic dimensions backed by product-level fields that every storefront
# filter UI exposes regardless of variant-option coverage.
BRAND_DIM = "Brand"  # from Product.vendor
TYPE_DIM = "Type"  # from Product.product_type

GENERIC_COLLECTION_HANDLES = frozenset({"all", "sale", "featured", "best-sellers"})

# dimension -> value -> number of distinct products realizing the pair
OptionIndex = Dict[str, Dict[str, int]]


def is_generic_collection(
    handle: str, generic_handles: Iterable[str] = GENERIC_COLLECTION_HANDLES
) -> bool:
    """True for catchall handles that make poor browse/filter targets."""
    return handle.lower() in {h.lower() for h in generic_handles}


def build_option_index(collection: Collection, bundle: ShopBundle) -> OptionIndex:
    """Count realizable (dimension, value) pairs over a collection's products.

    A product counts once per distinct value it carries on a dimension, no
    matter how many of its variants share that value. Brand and Type are
    always included when the collection is non-empty.
    """
    index: OptionIndex = {}

    def bump(dim: str, value: str) -> None:
        index.setdefault(dim, {})
        index[dim][value] = index[dim].get(value, 0) + 1

    for product in bundle.collection_products(collection):
        seen: set[tuple[str, str]] = set()
        for variant in product.variants:
            for dim, value in variant.options.items():
                if (dim, value) not in seen:
                    seen.add((dim, value))
                    bump(dim, value)
        if product.vendor:
            bump(BRAND_DIM, product.vendor)
        if product.product_type:
            bump(TYPE_DIM, product.product_type)
    return index


def facet_count(index: OptionIndex, dim: str, value: str) -> int:
    """Case-insensitive lookup of a facet count in an option index."""
    for known_dim, values in index.items():
        if known_dim.lower() != dim.lower():
            continue
        for known_value, count in values.items():
            if known_value.lower() == value.lower():
                return count
    return 0


def eligible_discovery_products(bundle: ShopBundle) -> list[Product]:
    """Products a discovery task may reference.

    Active, not a gift card, at least one available variant (an agent is
    never asked to add an out-of-stock item), and at most one product per
    product_type — the representative is the lexicographically smallest
    handle within the type, so sampling is reproducible without a seed.
    """
    candidates = [
        p
        for p in bundle.products
        if p.active and not p.gift_card and p.has_available_variant
    ]
    best_by_type: dict[str, str] = {}
    for product in candidates:
        current = best_by_type.get(product.product_type)
        if current is None or product.handle < current:
            best_by_type[product.product_type] = product.handle
    chosen = set(best_by_type.values())
    return [p for p in candidates if p.handle in chosen]
