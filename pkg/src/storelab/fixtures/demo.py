"""The demo-kitchen fixture shop.

A compact kitchen-goods storefront sized to exercise every engine surface:
one collection larger than the 24-card first page, multi-variant products
with Color/Size/Material axes, sale pricing, a sold-out product, an
inactive product, a gift card, and the full seven-page info set.
"""

from __future__ import annotations

from decimal import Decimal
from pathlib import Path
from typing import Any

from storelab.catalog.loader import write_bundle

_VENDORS = ("Hearthline", "Ferrum Works", "Casterline", "Loom & Ladle")


def _product(
    handle: str,
    title: str,
    vendor: str,
    product_type: str,
    price: str,
    *,
    compare_at: str | None = None,
    options: dict[str, list[str]] | None = None,
    status: str = "active",
    gift_card: bool = False,
    available: bool = True,
    tags: list[str] | None = None,
    description: str = "",
) -> dict[str, Any]:
    axes = list(options or {})
    variants = []
    if options:
        # One variant per value of the first axis, carrying the other axes'
        # first values; enough structure for filters without combinatorics.
        first_axis = axes[0]
        for i, value in enumerate(options[first_axis]):
            opts = {first_axis: value}
            for other in axes[1:]:
                opts[other] = options[other][min(i, len(options[other]) - 1)]
            variants.append(
                {
                    "id": f"{handle}-v{i + 1}",
                    "options": opts,
                    "price": Decimal(price),
                    **({"compare_at_price": Decimal(compare_at)} if compare_at else {}),
                    "available": available,
                }
            )
    else:
        variants.append(
            {
                "id": f"{handle}-v1",
                "options": {},
                "price": Decimal(price),
                **({"compare_at_price": Decimal(compare_at)} if compare_at else {}),
                "available": available,
            }
        )
    return {
        "handle": handle,
        "title": title,
        "vendor": vendor,
        "product_type": product_type,
        "description": description or f"{title} from {vendor}.",
        "tags": tags or [product_type.lower()],
        "status": status,
        "gift_card": gift_card,
        "options": axes,
        "variants": variants,
        "images": [f"/assets/img/{handle}.svg"],
    }


def _cookware_products() -> list[dict[str, Any]]:
    rows = [
        ("copper-core-saucepan", "Copper Core Saucepan", "Hearthline", "Saucepan", "89.00", "119.00"),
        ("everyday-saucepan", "Everyday Saucepan", "Casterline", "Saucepan", "49.00", None),
        ("carbon-steel-skillet", "Carbon Steel Skillet", "Ferrum Works", "Skillet", "75.00", None),
        ("cast-iron-skillet", "Cast Iron Skillet", "Casterline", "Skillet", "42.50", "55.00"),
        ("nonstick-skillet", "Nonstick Skillet", "Hearthline", "Skillet", "59.99", None),
        ("stockpot-12qt", "Stockpot 12 Qt", "Hearthline", "Stockpot", "110.00", None),
        ("stockpot-8qt", "Stockpot 8 Qt", "Hearthline", "Stockpot", "85.00", "99.00"),
        ("enamel-dutch-oven", "Enamel Dutch Oven", "Casterline", "Dutch Oven", "139.00", "179.00"),
        ("mini-dutch-oven", "Mini Dutch Oven", "Casterline", "Dutch Oven", "64.00", None),
        ("steel-roasting-pan", "Steel Roasting Pan", "Ferrum Works", "Roasting Pan", "98.00", None),
        ("sheet-pan-duo", "Sheet Pan Duo", "Ferrum Works", "Sheet Pan", "36.00", None),
        ("rimmed-sheet-pan", "Rimmed Sheet Pan", "Ferrum Works", "Sheet Pan", "22.00", None),
        ("stovetop-kettle", "Stovetop Kettle", "Hearthline", "Kettle", "54.00", None),
        ("pour-over-kettle", "Pour Over Kettle", "Hearthline", "Kettle", "68.00", "84.00"),
        ("bamboo-steamer", "Bamboo Steamer", "Loom & Ladle", "Steamer", "28.00", None),
        ("stacking-steamer", "Stacking Steamer", "Hearthline", "Steamer", "46.00", None),
        ("copper-mixing-bowls", "Copper Mixing Bowls", "Hearthline", "Mixing Bowl", "72.00", None),
        ("nesting-mixing-bowls", "Nesting Mixing Bowls", "Casterline", "Mixing Bowl", "39.00", "49.00"),
        ("balloon-whisk", "Balloon Whisk", "Loom & Ladle", "Utensil", "14.00", None),
        ("slotted-turner", "Slotted Turner", "Loom & Ladle", "Utensil", "16.00", None),
        ("maple-spoon-set", "Maple Spoon Set", "Loom & Ladle", "Utensil", "24.00", None),
        ("splatter-guard", "Splatter Guard", "Ferrum Works", "Cookware Accessory", "18.00", None),
        ("universal-lid", "Universal Lid", "Ferrum Works", "Cookware Accessory", "26.00", None),
        ("trivet-pair", "Trivet Pair", "Casterline", "Cookware Accessory", "19.00", None),
        ("braising-pan", "Braising Pan", "Casterline", "Braiser", "125.00", "149.00"),
    ]
    products = [
        _product(h, t, v, pt, price, compare_at=cmp)
        for (h, t, v, pt, price, cmp) in rows
    ]
    # Sold out but still listed: keeps the availability filter honest.
    products.append(
        _product(
            "cast-iron-press",
            "Cast Iron Press",
            "Casterline",
            "Grill Press",
            "34.00",
            available=False,
        )
    )
    # A sized saucier exercises a Size facet inside the big collection.
    products.append(
        _product(
            "saucier-pan",
            "Saucier Pan",
            "Hearthline",
            "Saucier",
            "79.00",
            options={"Size": ["2 Qt", "3.5 Qt"]},
        )
    )
    return products


def _knife_products() -> list[dict[str, Any]]:
    return [
        _product(
            "forged-chefs-knife",
            "Forged Chef's Knife",
            "Ferrum Works",
            "Chef's Knife",
            "149.00",
            options={"Color": ["Black Handle", "Natural Wood Handle"]},
            tags=["knife", "forged"],
        ),
        _product(
            "paring-knife",
            "Paring Knife",
            "Ferrum Works",
            "Paring Knife",
            "39.00",
            tags=["knife"],
        ),
        _product(
            "bread-knife",
            "Bread Knife",
            "Casterline",
            "Bread Knife",
            "55.00",
            compare_at="69.00",
            tags=["knife"],
        ),
        _product(
            "santoku-knife",
            "Santoku Knife",
            "Ferrum Works",
            "Santoku",
            "119.00",
            options={"Color": ["Black Handle"]},
            tags=["knife"],
        ),
        _product(
            "waxed-knife-roll",
            "Waxed Knife Roll",
            "Loom & Ladle",
            "Knife Storage",
            "89.00",
            options={"Material": ["Waxed Canvas", "Leather"]},
            tags=["knife", "storage"],
        ),
    ]


def _textile_products() -> list[dict[str, Any]]:
    return [
        _product(
            "cross-back-apron",
            "Cross Back Apron",
            "Loom & Ladle",
            "Apron",
            "58.00",
            options={"Color": ["Flax", "Charcoal"], "Size": ["S/M", "L/XL"]},
        ),
        _product(
            "quilted-oven-mitt",
            "Quilted Oven Mitt",
            "Loom & Ladle",
            "Oven Mitt",
            "24.00",
            options={"Color": ["Flax", "Rust"]},
        ),
        _product(
            "tea-towel-set",
            "Tea Towel Set",
            "Loom & Ladle",
            "Tea Towel",
            "32.00",
            compare_at="38.00",
            options={"Color": ["Stripe", "Check"]},
        ),
        _product(
            "linen-napkin-set",
            "Linen Napkin Set",
            "Loom & Ladle",
            "Napkin",
            "44.00",
        ),
    ]


def demo_bundle_documents() -> dict[str, Any]:
    """Build the five demo-shop documents as plain JSON-ready objects."""
    cookware = _cookware_products()
    knives = _knife_products()
    textiles = _textile_products()
    gift_card = _product(
        "kitchen-gift-card",
        "Kitchen Gift Card",
        "Hearthline",
        "Gift Card",
        "25.00",
        options={"Denomination": ["25", "50", "100"]},
        gift_card=True,
        tags=["gift"],
    )
    retired = _product(
        "retired-fondue-set",
        "Retired Fondue Set",
        "Casterline",
        "Fondue Set",
        "99.00",
        status="inactive",
    )
    products = cookware + knives + textiles + [gift_card, retired]
    for i, product in enumerate(products):
        product["created_ordinal"] = i

    collections = [
        {
            "handle": "cookware",
            "title": "Cookware",
            "description": "Pans, pots, and the pieces that live on the stovetop.",
            "product_handles": [p["handle"] for p in cookware],
        },
        {
            "handle": "knives",
            "title": "Knives",
            "description": "Forged blades and knife care.",
            "product_handles": [p["handle"] for p in knives],
        },
        {
            "handle": "kitchen-textiles",
            "title": "Kitchen Textiles",
            "description": "Aprons, mitts, and towels woven to last.",
            "product_handles": [p["handle"] for p in textiles],
        },
        {
            "handle": "sale",
            "title": "Sale",
            "description": "Marked-down favorites.",
            "product_handles": [
                p["handle"]
                for p in products
                if any("compare_at_price" in v for v in p["variants"])
            ]
            + ["kitchen-gift-card", "retired-fondue-set"],
        },
    ]

    pages = [
        {
            "handle": "shipping-policy",
            "title": "Shipping Policy",
            "body": "<p>Orders ship within 2 business days. Free shipping over $75.</p>",
            "kind": "native_policy",
        },
        {
            "handle": "refund-policy",
            "title": "Refund Policy",
            "body": "<p>30-day returns on unused items in original packaging.</p>",
            "kind": "native_policy",
        },
        {
            "handle": "privacy-policy",
            "title": "Privacy Policy",
            "body": "<p>We store only what an order needs.</p>",
            "kind": "native_policy",
        },
        {
            "handle": "return-policy",
            "title": "Return Policy",
            "body": "<p>Start a return from your order confirmation email.</p>",
            "kind": "custom_page",
        },
        {
            "handle": "delivery-faq",
            "title": "Delivery FAQ",
            "body": "<p>Carrier options, timelines, and tracking answers.</p>",
            "kind": "custom_page",
        },
        {
            "handle": "about-us",
            "title": "About Us",
            "body": "<p>Three workshops, one kitchen obsession.</p>",
            "kind": "custom_page",
        },
        {
            "handle": "contact",
            "title": "Contact",
            "body": "<p>Write to the workshop floor.</p>",
            "kind": "custom_page",
        },
    ]

    capabilities = {
        "version": "0.1",
        "shop": {
            "descriptor": "Workshop-made cookware, knives, and kitchen textiles",
            "category": "Cookware / Kitchen",
            "currency": "USD",
            "tone": ["warm", "workshop", "direct-to-consumer"],
        },
        "site_shell": {
            "has_announcement_bar": True,
            "header_style": "two-row sticky",
            "has_mega_menu": False,
            "nav_depth": 2,
            "footer_groups": 3,
        },
        "homepage": {
            "section_types": [
                "hero",
                "category_chip_slider",
                "featured_product_grid",
                "feature_cards_grid",
                "reviews_banner",
                "product_carousel",
                "founder_message",
                "newsletter_inline",
            ],
            "section_count": 8,
            "has_popup_modal": False,
        },
        "collection": {
            "layout": "grid",
            "columns_desktop": 3,
            "filters": ["availability", "on_sale"],
            "sort": [
                "featured",
                "best_selling",
                "alpha_az",
                "alpha_za",
                "price_asc",
                "price_desc",
                "date_new",
                "date_old",
            ],
            "pagination": "load_more",
        },
        "product": {
            "gallery_style": "single_image",
            "variant_selectors": ["radio_buttons"],
            "has_quantity_selector": True,
            "description_layout": "prose",
            "has_reviews": True,
            "has_recommendations": False,
            "has_personalization": False,
        },
        "cart": {
            "type": "drawer",
            "has_promo_input": False,
            "has_upsells": False,
            "has_shipping_estimate": False,
        },
        "search": {
            "trigger": "icon_button",
            "has_predictive": True,
            "predictive_types": ["products"],
            "results_layout": "fullpage",
        },
        "floating": {
            "has_chat_widget": False,
            "has_age_gate": False,
            "has_cookie_banner": False,
            "has_newsletter_popup": False,
        },
        "info_pages_present": [p["handle"] for p in pages],
    }

    return {
        "products": products,
        "collections": collections,
        "pages": pages,
        "capabilities": capabilities,
    }


def write_demo_bundle(directory: str | Path) -> Path:
    """Write the demo shop, with stats recomputed from the documents."""
    from storelab.catalog.loader import bundle_from_documents, load_shop_bundle

    docs = demo_bundle_documents()
    directory = Path(directory)
    bundle = bundle_from_documents(directory.name.lower(), **docs)
    write_bundle(directory, stats=bundle.stats.to_json(), **docs)
    load_shop_bundle(directory)  # final verification pass
    return directory
