"""Seeded random bundle factory for property and fuzz tests.

Every generated bundle satisfies the full loader invariants by
construction; the interesting variation is in catalog shape (variant axes,
gift cards, sold-out products, generic collections, policy page coverage).
"""

from __future__ import annotations

import random
from decimal import Decimal
from pathlib import Path
from typing import Any

from storelab.catalog.loader import bundle_from_documents, write_bundle
from storelab.catalog.model import ShopBundle

_WORDS = (
    "alder", "basil", "cedar", "delta", "ember", "fjord", "garnet", "harbor",
    "iris", "juniper", "kiln", "larch", "meadow", "north", "opal", "pine",
    "quarry", "rowan", "sable", "tarn", "umber", "vale", "willow", "yarrow",
)
_VENDORS = ("Northwind", "Gale & Co", "Harborline", "Quarryworks", "Vale Supply")
_TYPES = ("Mug", "Lamp", "Rug", "Chair", "Clock", "Vase", "Shelf", "Basket")
_DIMS = {
    "Color": ("Black", "Blue", "Green", "Rust", "Sand"),
    "Size": ("S", "M", "L"),
    "Material": ("Oak", "Steel", "Wool"),
}
_POLICY_PAGES = (
    ("shipping-policy", "Shipping Policy", "native_policy"),
    ("refund-policy", "Refund Policy", "native_policy"),
    ("return-policy", "Return Policy", "custom_page"),
    ("delivery-faq", "Delivery FAQ", "custom_page"),
)
_OTHER_PAGES = (
    ("about", "About", "custom_page"),
    ("faq", "FAQ", "custom_page"),
    ("contact", "Contact", "custom_page"),
)


def random_bundle_documents(rng: random.Random) -> dict[str, Any]:
    n_products = rng.randint(6, 16)
    products: list[dict[str, Any]] = []
    for i in range(n_products):
        word = _WORDS[i % len(_WORDS)]
        ptype = rng.choice(_TYPES)
        handle = f"{word}-{ptype.lower()}-{i}"
        title = f"{word.title()} {ptype} {i}"
        gift_card = rng.random() < 0.1
        status = "inactive" if rng.random() < 0.1 else "active"
        axes: dict[str, list[str]] = {}
        if gift_card:
            axes = {"Denomination": ["25", "50"]}
        elif rng.random() < 0.6:
            dim = rng.choice(list(_DIMS))
            values = rng.sample(_DIMS[dim], rng.randint(1, len(_DIMS[dim])))
            axes = {dim: values}
        price = Decimal(rng.randint(500, 30000)) / 100
        on_sale = rng.random() < 0.3
        variants = []
        value_lists = list(axes.values())
        n_variants = len(value_lists[0]) if value_lists else 1
        sold_out = rng.random() < 0.12
        for j in range(n_variants):
            options = {dim: values[j] for dim, values in axes.items()}
            variants.append(
                {
                    "id": f"{handle}-v{j}",
                    "options": options,
                    "price": price,
                    **(
                        {"compare_at_price": price + Decimal("5.00")}
                        if on_sale
                        else {}
                    ),
                    "available": not sold_out,
                }
            )
        products.append(
            {
                "handle": handle,
                "title": title,
                "vendor": rng.choice(_VENDORS),
                "product_type": "Gift Card" if gift_card else ptype,
                "description": f"A {ptype.lower()} for the {word} room.",
                "tags": [ptype.lower(), word],
                "status": status,
                "gift_card": gift_card,
                "options": list(axes),
                "variants": variants,
                "images": [],
                "created_ordinal": i,
            }
        )

    handles = [p["handle"] for p in products]
    collections = []
    n_collections = rng.randint(2, 5)
    for c in range(n_collections):
        members = rng.sample(handles, rng.randint(1, len(handles)))
        generic = rng.random() < 0.2
        handle = rng.choice(["sale", "all", "featured"]) if generic else f"room-{_WORDS[c]}"
        if any(col["handle"] == handle for col in collections):
            handle = f"{handle}-{c}"
        collections.append(
            {
                "handle": handle,
                "title": handle.replace("-", " ").title(),
                "description": "",
                "product_handles": members,
            }
        )

    pages = [
        {"handle": h, "title": t, "body": f"<p>{t}.</p>", "kind": k}
        for (h, t, k) in _POLICY_PAGES
        if rng.random() < 0.7
    ] + [
        {"handle": h, "title": t, "body": f"<p>{t}.</p>", "kind": k}
        for (h, t, k) in _OTHER_PAGES
        if rng.random() < 0.5
    ]

    capabilities = {
        "version": "0.1",
        "shop": {
            "descriptor": "Randomized household goods shop",
            "category": "Home",
            "currency": "USD",
            "tone": ["plain"],
        },
        "site_shell": {
            "has_announcement_bar": False,
            "header_style": "single-row",
            "has_mega_menu": False,
            "nav_depth": 1,
            "footer_groups": 2,
        },
        "homepage": {
            "section_types": ["hero", "featured_product_grid", "newsletter_inline"],
            "section_count": 3,
            "has_popup_modal": False,
        },
        "collection": {
            "layout": "grid",
            "columns_desktop": 3,
            "filters": ["availability", "on_sale"],
            "sort": ["featured", "price_asc", "price_desc", "alpha_az"],
            "pagination": "load_more",
        },
        "product": {
            "variant_selectors": ["radio_buttons"],
            "has_quantity_selector": True,
            "has_reviews": False,
            "has_recommendations": False,
        },
        "cart": {"type": "drawer", "has_promo_input": False, "has_upsells": False},
        "search": {
            "trigger": "icon_button",
            "has_predictive": True,
            "results_layout": "fullpage",
        },
        "info_pages_present": [p["handle"] for p in pages],
    }
    return {
        "products": products,
        "collections": collections,
        "pages": pages,
        "capabilities": capabilities,
    }


def random_bundle(rng: random.Random, slug: str = "fuzz-shop") -> ShopBundle:
    return bundle_from_documents(slug, **random_bundle_documents(rng))


def write_random_bundle(directory: str | Path, rng: random.Random) -> Path:
    directory = Path(directory)
    docs = random_bundle_documents(rng)
    bundle = bundle_from_documents(directory.name.lower(), **docs)
    return write_bundle(directory, stats=bundle.stats.to_json(), **docs)
