"""Deterministic short-horizon task generators.

Six skills over three groups: product discovery (search-exact,
search-substitute), filter-selection (browse, filter), and
information-seeking (shipping, returns). Same bundle, seed, and limits in
produce the same task list out.
"""

from __future__ import annotations

import logging
import random

from storelab.catalog.model import Collection, PageDoc, ShopBundle
from storelab.catalog.options import (
    BRAND_DIM,
    TYPE_DIM,
    build_option_index,
    eligible_discovery_products,
    is_generic_collection,
)
from storelab.tasks.model import SuccessCriteria, Task

log = logging.getLogger(__name__)

# Variant-option dimensions tried first for filter tasks before falling
# back to the universal Brand/Type product fields.
DEFAULT_PRIORITY_DIMS = ("Color", "Size", "Material", "Style")

MIN_BROWSE_COLLECTION_SIZE = 3

# Default per-skill caps sized so a typical shop lands in the mid-30s of
# short-horizon tasks; all overridable.
DEFAULT_DISCOVERY_LIMIT = 12
DEFAULT_COLLECTION_LIMIT = 6

SHIPPING_KEYWORDS = ("shipping", "delivery")
RETURNS_KEYWORDS = ("return", "refund", "exchange")

_EXACT_INTENT = (
    'Find the product "{title}" on this store using search, open its product '
    "page, select any variant if options are shown, and add it to cart. Once "
    "the product is in your cart, end the session. Do not click any Checkout "
    "button."
)
_SUBSTITUTE_INTENT = (
    'You wanted "{title}" but it may be unavailable. Search this store for it '
    "and, if you cannot find that exact product, pick the closest comparable "
    "{ptype} alternative instead. Open the product page of your pick, select "
    "any variant if options are shown, and add it to cart. Once a product is "
    "in your cart, end the session. Do not click any Checkout button."
)
_BROWSE_INTENT = (
    'Navigate to the "{title}" collection on this store. Browse the products '
    "shown, open any one of them, select any variant if options are shown, "
    "and add it to cart. Once the product is in your cart, end the session. "
    "Do not click any Checkout button."
)
_FILTER_INTENT = (
    'Navigate to the "{title}" collection on this store. Find and use the '
    "{dim} filter (e.g. {value}) to select an option. If products are shown "
    "after filtering, select any variant of a product and add it to cart. It "
    "is ok if no products match the filter; using filter correctly means the "
    "navigation task is completed successfully."
)
_SHIPPING_INTENT = (
    "Find the shipping policy page on this store. Look for shipping "
    "information in the footer, menu, or any navigation links. Read the "
    "shipping policy details, then leave the site."
)
_RETURNS_INTENT = (
    "Find the returns and refund policy page on this store. Look for return "
    "policy information in the footer, menu, or any navigation links. Read "
    "the refund policy details, then leave the site."
)


def gen_discovery(bundle: ShopBundle, count_limit: int = DEFAULT_DISCOVERY_LIMIT) -> list[Task]:
    """Two tasks per eligible product: exact-title search and substitute search."""
    tasks: list[Task] = []
    products = eligible_discovery_products(bundle)[:count_limit]
    for n, product in enumerate(products, start=1):
        tasks.append(
            Task(
                id=f"{bundle.slug}-search-exact-{n}",
                type="shopping",
                intent=_EXACT_INTENT.format(title=product.title),
                success_criteria=SuccessCriteria(
                    url_contains=f"/products/{product.handle}", type="cart_exact"
                ),
            )
        )
        tasks.append(
            Task(
                id=f"{bundle.slug}-search-substitute-{n}",
                type="shopping",
                intent=_SUBSTITUTE_INTENT.format(
                    title=product.title, ptype=product.product_type.lower()
                ),
                success_criteria=SuccessCriteria(
                    url_contains="/products/", type="cart_substitute"
                ),
            )
        )
    return tasks


def _browse_targets(bundle: ShopBundle, limit: int) -> list[Collection]:
    targets = []
    for collection in bundle.collections:
        if is_generic_collection(collection.handle):
            continue
        active = [p for p in bundle.collection_products(collection) if p.active]
        if len(active) >= MIN_BROWSE_COLLECTION_SIZE:
            targets.append(collection)
    return targets[:limit]


def _pick_facet(
    bundle: ShopBundle,
    collection: Collection,
    rng: random.Random,
    priority_dims: tuple[str, ...],
) -> tuple[str, str] | None:
    index = build_option_index(collection, bundle)
    for dim in list(priority_dims) + [BRAND_DIM, TYPE_DIM]:
        values = index.get(dim)
        if not values:
            continue
        feasible = sorted(v for v, count in values.items() if count >= 1)
        if feasible:
            return dim, rng.choice(feasible)
    return None


def gen_browse_filter(
    bundle: ShopBundle,
    rng_seed: int = 0,
    *,
    limit: int = DEFAULT_COLLECTION_LIMIT,
    priority_dims: tuple[str, ...] = DEFAULT_PRIORITY_DIMS,
) -> list[Task]:
    """Browse and filter tasks over populated, non-generic collections.

    A filter task is only emitted with a facet the collection's own option
    index realizes; collections with nothing to filter on yield browse
    tasks only.
    """
    rng = random.Random(rng_seed)
    tasks: list[Task] = []
    targets = _browse_targets(bundle, limit)
    for n, collection in enumerate(targets, start=1):
        tasks.append(
            Task(
                id=f"{bundle.slug}-browse-{n}",
                type="shopping",
                intent=_BROWSE_INTENT.format(title=collection.title),
                success_criteria=SuccessCriteria(
                    url_contains=f"/collections/{collection.handle}",
                    type="navigation",
                ),
            )
        )
    filter_n = 0
    for collection in targets:
        facet = _pick_facet(bundle, collection, rng, priority_dims)
        if facet is None:
            continue
        filter_n += 1
        dim, value = facet
        tasks.append(
            Task(
                id=f"{bundle.slug}-filter-{filter_n}",
                type="shopping",
                intent=_FILTER_INTENT.format(
                    title=collection.title, dim=dim, value=value
                ),
                success_criteria=SuccessCriteria(
                    url_contains=f"/collections/{collection.handle}",
                    type="navigation",
                ),
                facet={"dim": dim, "value": value},
            )
        )
    return tasks


def _policy_candidates(
    bundle: ShopBundle, keywords: tuple[str, ...], default_handle: str
) -> list[str]:
    """Candidate routes for one policy skill, best match first.

    Native policy routes outrank custom pages; the platform-default
    ``/policies/<name>-policy`` route is always a candidate because many
    storefronts surface it even without a dedicated page document.
    """

    def matches(page: PageDoc) -> bool:
        hay = f"{page.title} {page.handle}".lower()
        return any(k in hay for k in keywords)

    native = sorted(
        p.route for p in bundle.pages if p.kind == "native_policy" and matches(p)
    )
    custom = sorted(
        p.route for p in bundle.pages if p.kind == "custom_page" and matches(p)
    )
    candidates = native + custom
    default_route = f"/policies/{default_handle}"
    if default_route not in candidates:
        candidates.append(default_route)
    return candidates


def gen_policy(bundle: ShopBundle) -> list[Task]:
    """Shipping and returns lookup tasks with soft URL hints."""
    tasks: list[Task] = []
    skills = (
        ("shipping", SHIPPING_KEYWORDS, "shipping-policy", _SHIPPING_INTENT),
        ("returns", RETURNS_KEYWORDS, "refund-policy", _RETURNS_INTENT),
    )
    for skill, keywords, default_handle, intent in skills:
        has_match = any(
            any(k in f"{p.title} {p.handle}".lower() for k in keywords)
            for p in bundle.pages
        )
        if not has_match:
            log.info("policy skill %r omitted: no matching page in bundle", skill)
            continue
        candidates = _policy_candidates(bundle, keywords, default_handle)
        tasks.append(
            Task(
                id=f"{bundle.slug}-{skill}-1",
                type="navigation",
                intent=intent,
                success_criteria=SuccessCriteria(
                    url_contains=candidates[0], type="page_navigation"
                ),
                url_contains_alt=candidates[1:],
            )
        )
    return tasks


def generate_short_horizon(
    bundle: ShopBundle,
    *,
    rng_seed: int = 0,
    discovery_limit: int = DEFAULT_DISCOVERY_LIMIT,
    collection_limit: int = DEFAULT_COLLECTION_LIMIT,
) -> list[Task]:
    """All six deterministic skills, in stable skill-then-index order."""
    return (
        gen_discovery(bundle, discovery_limit)
        + gen_browse_filter(bundle, rng_seed, limit=collection_limit)
        + gen_policy(bundle)
    )
