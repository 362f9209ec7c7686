"""Load and persist the five-document bundle directory.

Layout: ``products.json``, ``collections.json``, ``pages.json``,
``capabilities.json``, ``stats.json`` — all UTF-8 JSON. Loading verifies
every referential invariant; a bundle that loads is safe to serve and to
generate tasks against.
"""

from __future__ import annotations

from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Any

from storelab import jsonio
from storelab.catalog.model import (
    CANONICAL_SORT_KEYS,
    Capabilities,
    Collection,
    PageDoc,
    Product,
    ShopBundle,
    ShopStats,
    Variant,
    is_valid_handle,
)
from storelab.errors import BundleIntegrityError, BundleLoadError, CapabilityError

BUNDLE_FILES = (
    "products.json",
    "collections.json",
    "pages.json",
    "capabilities.json",
    "stats.json",
)

SUPPORTED_PAGINATION = {"load_more"}
KNOWN_PAGINATION = {"load_more", "numbered", "infinite"}


def _decimal(value: Any, context: str) -> Decimal:
    try:
        return Decimal(value) if not isinstance(value, Decimal) else value
    except (InvalidOperation, TypeError) as exc:
        raise BundleLoadError(f"{context}: not a decimal number: {value!r}") from exc


def parse_variant(raw: dict[str, Any], context: str) -> Variant:
    compare_at = raw.get("compare_at_price")
    return Variant(
        id=str(raw["id"]),
        options={str(k): str(v) for k, v in raw.get("options", {}).items()},
        price=_decimal(raw["price"], f"{context} price"),
        compare_at_price=None
        if compare_at is None
        else _decimal(compare_at, f"{context} compare_at_price"),
        available=bool(raw.get("available", True)),
    )


def parse_product(raw: dict[str, Any], index: int) -> Product:
    handle = str(raw["handle"])
    variants = tuple(
        parse_variant(v, f"product {handle} variant {i}")
        for i, v in enumerate(raw.get("variants", []))
    )
    declared_axes = raw.get("options")
    if declared_axes is None:
        axes: list[str] = []
        for variant in variants:
            for dim in variant.options:
                if dim not in axes:
                    axes.append(dim)
    else:
        axes = [str(a) for a in declared_axes]
    best = raw.get("best_selling_ordinal")
    return Product(
        handle=handle,
        title=str(raw["title"]),
        vendor=str(raw.get("vendor", "")),
        product_type=str(raw.get("product_type", "")),
        description=str(raw.get("description", "")),
        tags=tuple(str(t) for t in raw.get("tags", [])),
        status=str(raw.get("status", "active")),
        gift_card=bool(raw.get("gift_card", False)),
        option_axes=tuple(axes),
        variants=variants,
        images=tuple(str(i) for i in raw.get("images", [])),
        created_ordinal=int(raw.get("created_ordinal", index)),
        best_selling_ordinal=None if best is None else int(best),
    )


def product_to_json(product: Product) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "handle": product.handle,
        "title": product.title,
        "vendor": product.vendor,
        "product_type": product.product_type,
        "description": product.description,
        "tags": list(product.tags),
        "status": product.status,
        "gift_card": product.gift_card,
        "options": list(product.option_axes),
        "variants": [
            {
                "id": v.id,
                "options": dict(v.options),
                "price": v.price,
                **(
                    {"compare_at_price": v.compare_at_price}
                    if v.compare_at_price is not None
                    else {}
                ),
                "available": v.available,
            }
            for v in product.variants
        ],
        "price_min": product.price_min,
        "price_max": product.price_max,
        "images": list(product.images),
        "created_ordinal": product.created_ordinal,
    }
    if product.best_selling_ordinal is not None:
        doc["best_selling_ordinal"] = product.best_selling_ordinal
    return doc


def _verify_products(products: tuple[Product, ...], raw_list: list[dict]) -> None:
    problems: list[str] = []
    seen: set[str] = set()
    for raw, product in zip(raw_list, products):
        h = product.handle
        if not h or not is_valid_handle(h):
            problems.append(f"product handle not url-safe lowercase: {h!r}")
        if h in seen:
            problems.append(f"duplicate product handle: {h}")
        seen.add(h)
        if not product.variants:
            problems.append(f"product {h}: no variants")
            continue
        for variant in product.variants:
            unknown = set(variant.options) - set(product.option_axes)
            if unknown:
                problems.append(
                    f"product {h} variant {variant.id}: options outside declared"
                    f" axes: {sorted(unknown)}"
                )
            if variant.price < 0:
                problems.append(f"product {h} variant {variant.id}: negative price")
            if (
                variant.compare_at_price is not None
                and variant.compare_at_price < variant.price
            ):
                problems.append(
                    f"product {h} variant {variant.id}: compare_at below price"
                )
        if product.gift_card:
            physical = [a for a in product.option_axes if a.lower() != "denomination"]
            if physical:
                problems.append(
                    f"gift card {h}: physical option axes {physical} not allowed"
                )
        for key, expected in (("price_min", product.price_min), ("price_max", product.price_max)):
            declared = raw.get(key)
            if declared is not None and Decimal(declared) != expected:
                problems.append(
                    f"product {h}: {key} {declared} != {expected} over variants"
                )
        if product.price_min > product.price_max:
            problems.append(f"product {h}: price_min above price_max")
    if problems:
        raise BundleIntegrityError("; ".join(problems))


def _verify_cross_links(
    products: tuple[Product, ...],
    collections: tuple[Collection, ...],
    pages: tuple[PageDoc, ...],
    capabilities: Capabilities,
) -> None:
    problems: list[str] = []
    product_handles = {p.handle for p in products}
    seen_collections: set[str] = set()
    for collection in collections:
        if collection.handle in seen_collections:
            problems.append(f"duplicate collection handle: {collection.handle}")
        seen_collections.add(collection.handle)
        dangling = [h for h in collection.product_handles if h not in product_handles]
        if dangling:
            problems.append(
                f"collection {collection.handle}: dangling product handles {dangling}"
            )
    seen_pages: set[tuple[str, str]] = set()
    for page in pages:
        key = (page.kind, page.handle)
        if key in seen_pages:
            problems.append(f"duplicate page handle within kind: {key}")
        seen_pages.add(key)
        if page.kind == "native_policy" and not page.handle.endswith("-policy"):
            problems.append(
                f"native policy page {page.handle}: handle must end in '-policy'"
            )
        elif page.kind not in ("native_policy", "custom_page"):
            problems.append(f"page {page.handle}: unknown kind {page.kind}")
    page_handles = {p.handle for p in pages}
    for handle in capabilities.info_pages_present:
        if handle not in page_handles:
            problems.append(f"info_pages_present entry does not resolve: {handle}")
    variant_ids: set[str] = set()
    for product in products:
        for variant in product.variants:
            if variant.id in variant_ids:
                problems.append(f"duplicate variant id: {variant.id}")
            variant_ids.add(variant.id)
    if problems:
        raise BundleIntegrityError("; ".join(problems))


def _verify_capabilities(capabilities: Capabilities) -> None:
    unknown_sorts = [k for k in capabilities.sort_keys if k not in CANONICAL_SORT_KEYS]
    if unknown_sorts:
        raise CapabilityError(f"unknown sort keys declared: {unknown_sorts}")
    pagination = capabilities.pagination
    if pagination not in KNOWN_PAGINATION:
        raise CapabilityError(f"unknown pagination mode: {pagination}")
    if pagination not in SUPPORTED_PAGINATION:
        raise CapabilityError(
            f"pagination mode {pagination!r} is not supported by this engine"
        )


def bundle_from_documents(
    slug: str,
    *,
    products: list[dict[str, Any]],
    collections: list[dict[str, Any]],
    pages: list[dict[str, Any]],
    capabilities: dict[str, Any],
    stats: dict[str, Any] | None = None,
) -> ShopBundle:
    """Cross-link and verify in-memory documents into a bundle.

    When ``stats`` is omitted the block is recomputed from the documents.
    """
    parsed_products = tuple(parse_product(raw, i) for i, raw in enumerate(products))
    _verify_products(parsed_products, products)

    parsed_collections = tuple(
        Collection(
            handle=str(raw["handle"]),
            title=str(raw["title"]),
            description=str(raw.get("description", "")),
            product_handles=tuple(str(h) for h in raw.get("product_handles", [])),
        )
        for raw in collections
    )
    parsed_pages = tuple(
        PageDoc(
            handle=str(raw["handle"]),
            title=str(raw["title"]),
            body=str(raw.get("body", "")),
            kind=str(raw.get("kind", "custom_page")),
        )
        for raw in pages
    )
    caps = Capabilities(capabilities)
    _verify_capabilities(caps)
    _verify_cross_links(parsed_products, parsed_collections, parsed_pages, caps)

    bundle = ShopBundle(
        slug=slug,
        products=parsed_products,
        collections=parsed_collections,
        pages=parsed_pages,
        capabilities=caps,
        stats=ShopStats.from_json(stats) if stats is not None else ShopStats(),
    )
    if stats is None:
        from storelab.catalog.stats import compute_stats

        bundle.stats = compute_stats(bundle)
    return bundle


def load_shop_bundle(directory: str | Path) -> ShopBundle:
    """Load, cross-link, and verify a bundle directory."""
    directory = Path(directory)
    docs: dict[str, Any] = {}
    for name in BUNDLE_FILES:
        path = directory / name
        if not path.is_file():
            raise BundleLoadError(f"missing bundle document: {name}")
        try:
            docs[name] = jsonio.load_path(path)
        except ValueError as exc:
            raise BundleLoadError(f"cannot parse {name}: {exc}") from exc

    return bundle_from_documents(
        directory.name.lower(),
        products=docs["products.json"],
        collections=docs["collections.json"],
        pages=docs["pages.json"],
        capabilities=docs["capabilities.json"],
        stats=docs["stats.json"],
    )


def write_bundle(
    directory: str | Path,
    *,
    products: list[dict[str, Any]],
    collections: list[dict[str, Any]],
    pages: list[dict[str, Any]],
    capabilities: dict[str, Any],
    stats: dict[str, Any],
) -> Path:
    """Write the five documents of a bundle directory."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    jsonio.dump_path(directory / "products.json", products)
    jsonio.dump_path(directory / "collections.json", collections)
    jsonio.dump_path(directory / "pages.json", pages)
    jsonio.dump_path(directory / "capabilities.json", capabilities)
    jsonio.dump_path(directory / "stats.json", stats)
    return directory
