"""Prompt assembly for the journey generator.

The user prompt is a grounded data dump: every collection, product, option
value, membership, and page listed comes straight from the bundle, so the
generator physically cannot quote anything the shop does not have — and
the validator re-checks whatever it invents anyway.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from storelab.catalog.model import ShopBundle
from storelab.catalog.options import build_option_index
from storelab.errors import StorelabError

SYSTEM_PROMPT = """\
You are an expert at designing evaluation tasks for e-commerce web agents.
Your job is to author realistic end-to-end shopping journeys that mirror how
real human buyers actually browse and transact on online stores.

Hard rules:
- Every task must be 100% grounded in the data dump below. Never invent
  products, collections, page titles, or variant options that are not in
  the data dump below.
- A product mentioned in a task must exist in the catalog (Title + handle).
- A collection mentioned in a task must exist (Title + handle).
- If you ask the agent to "select a Color variant" or "select a Size",
  the named product MUST have that variant option AND values. Otherwise
  use generic phrasing like "select any variant" or simply "add it to cart".
- A product/collection pairing in the same task (e.g. "Navigate to X
  collection and add product Y") is only valid if Y is actually a member
  of X according to the Product-to-Collection Mappings section.
- Every task must end in a well-defined state the agent can reach: a
  specific set of items in the cart, a specific URL visited for a
  navigation task. Never "and then browse around".
- **Never instruct the agent to click Checkout, proceed to checkout, head
  to a checkout page, abandon checkout, or otherwise traverse the cart ->
  checkout boundary.** Checkout is intentionally disabled on the sandbox
  shop and the LLM judge grades tasks on the **final cart state only**.
  End shopping tasks with wording like "Once the product is in your cart,
  end the session. Do not click any Checkout button." For tasks involving
  cart edits (add -> remove, quantity change), describe the expected final
  cart explicitly.
- Intents should be second-person, imperative. Shopping tasks should be
  one or two short paragraphs; they may include natural detours (policy
  lookup, About page, brand comparison) before the cart-state terminal.
- Avoid tasks that require user authentication, payment entry, or any
  externally-gated flow.
- Do not produce tasks that require human judgment calls the agent cannot
  verify (e.g., "pick the most stylish product").

Quality bar (this is what separates a great task from a basic one):
- Open with a one-sentence persona or motivation that frames the journey
  ("First-time visitor.", "You're a returns-cautious shopper.",
  "Multi-pet household shopping.", "Sales hunting.").
- Reference specific storefront UI elements (homepage banner, top menu,
  footer Quick Links, brand menu) by name when they exist.
- Mix at least 2-3 distinct skills per task (search + compare + cart edit;
  policy lookup + nav drilldown + add). Single-step "search and add"
  tasks are too easy and should be the minority.
- Use exact brand/product/collection titles as written in the data --
  never paraphrase ("Fresh Drops" not "new arrivals", "Womens Run Club"
  not "running gear").

Output format: a JSON object with a single key "tasks" containing an array
of task objects, each with fields:
  id (slug-friendly string),
  type ("shopping" or "navigation"),
  intent (string),
  success_criteria (object with url_contains and a descriptive type field).
Do not include the `url` field -- that will be filled in downstream.
"""

# Few-shot reference journeys spanning the behavior categories.
FEW_SHOT_EXAMPLES = (
    {
        "label": "Multi-pet household shopping",
        "intent": (
            "Multi-pet household shopping. Navigate to the Dog Kibble "
            "collection via the Dogs menu and add any kibble product to cart. "
            "Navigate to Cats -> Litter from the top menu and open Worlds Best "
            "Cat Litter. Select any size variant (for example Original 28lb) "
            "and add it to cart. Open the full cart page and increase the cat "
            "litter quantity from 1 to 2. Once the cart contains one dog "
            "kibble and two units of cat litter, end the session. Do not "
            "click any Checkout button."
        ),
        "success_criteria_type": "cart_multi_pet_with_quantity_edit",
    },
    {
        "label": "Free-shipping threshold calculation",
        "intent": (
            "Hit the free-shipping threshold. Note the 'Nemokamas "
            "pristatymas nuo 49 EUR' banner on the homepage. Navigate to "
            "Sunims -> Skanestai and add a treat product under EUR 25 to the "
            "cart. Open the cart page, observe how much more you need to "
            "reach EUR 49 for free shipping. Go back to the store, navigate "
            "to the same Skanestai category, and add a second product that "
            "pushes the total over EUR 49. Return to cart, confirm the "
            "free-shipping banner has updated. Once both products are in "
            "your cart with a total over EUR 49, end the session. Do not "
            "click any Checkout button."
        ),
        "success_criteria_type": "cart_after_free_shipping_threshold",
    },
    {
        "label": "Filter that returns zero results, then recover",
        "intent": (
            "Navigate to the Christmas & Hanukkah collection via the Shop "
            "by Holidays & Events menu. Apply a Size filter for '3-6 Months'; "
            "results will likely be sparse or empty. Observe the empty or "
            "filtered state, then clear the Size filter and apply a different "
            "one such as Color = Blue. If products appear, open the first "
            "one, select any variant, and add it to cart; if still empty, "
            "remove all filters and pick any product from the unfiltered "
            "list. Once a product is in your cart, end the session. Do not "
            "click any Checkout button."
        ),
        "success_criteria_type": "cart_after_filter_recover",
    },
    {
        "label": "Search, review read, atomic add",
        "intent": (
            "You saw a friend's espresso setup and want the same grinder. "
            "Search the store for Conical Burr Grinder using the header "
            "search. Open its product page, read the review section to check "
            "the aggregate rating, then add one unit to cart. Once the "
            "grinder is in your cart, end the session. Do not click any "
            "Checkout button."
        ),
        "success_criteria_type": "cart_after_review_read",
    },
    {
        "label": "Size chart lookup before apparel add",
        "intent": (
            "Buying your first pair of trail runners online. Navigate to the "
            "Footwear collection from the top menu and open the Ridgeline "
            "Trail Runner. Find and open the Size Guide link near the size "
            "selector to confirm which size matches EU 42, select the "
            "matching Size variant, and add the shoe to cart. Once it is in "
            "your cart, end the session. Do not click any Checkout button."
        ),
        "success_criteria_type": "cart_after_size_guide",
    },
    {
        "label": "Returns lookup with cart action after",
        "intent": (
            "You're a returns-cautious shopper. Before buying, open the "
            "Return Policy page from the footer and check the return window "
            "length. Satisfied, navigate to the Ceramics collection, open "
            "the Speckled Pour Over Set, and add it to cart. Once the set is "
            "in your cart with the policy checked first, end the session. "
            "Do not click any Checkout button."
        ),
        "success_criteria_type": "cart_after_returns_lookup",
    },
    {
        "label": "Cross-brand comparison",
        "intent": (
            "Comparison shopping for a daily carry bottle. From the Bottles "
            "collection open the Alpine Flask 750ml, note its price and "
            "capacity, go back, open the Summit Bottle 750ml, and compare. "
            "Add whichever of the two is cheaper to your cart and leave the "
            "other out. Once exactly one bottle is in your cart, end the "
            "session. Do not click any Checkout button."
        ),
        "success_criteria_type": "cart_after_comparison",
    },
    {
        "label": "First-time visitor info detour",
        "intent": (
            "First-time visitor. Open the About page from the footer to read "
            "what the workshop stands for, then use the top menu to enter "
            "the Pantry collection. Pick any product under 20, open its "
            "page, and add two units using the quantity stepper. Once the "
            "cart shows quantity 2, end the session. Do not click any "
            "Checkout button."
        ),
        "success_criteria_type": "cart_after_about_detour",
    },
)

BEHAVIOR_CATEGORIES = (
    "Search & atomic add-to-cart",
    "Nav drilldown (menu -> sub-menu -> collection -> product)",
    "Filter + sort (e.g. Format=Hardcover then sort by price)",
    "Filter that returns zero results, then recover",
    "Substitute-match discovery (intended product missing -> close alternative)",
    "Review / detail read on a product page",
    "Size chart / fit guide lookup",
    "Shipping policy lookup (with cart action after)",
    "Returns / refunds lookup (with cart action after)",
    "Gift card purchase (only if the shop sells gift cards)",
    "Multi-product cart with edit (add A, add B, remove A, set qty 2 on B)",
    "Cross-collection or cross-brand comparison (compare A and B, pick one)",
    "Contact / store locator / about page",
    "Free-shipping threshold or sale-discount calculation (if banner exists)",
)

USER_TEMPLATE = """\
Author {count} end-to-end evaluation tasks for the following storefront.
Follow the system prompt's schema and quality bar. Cover as many of the
behavior categories below as this store supports, and skip any that are
not applicable to this store.

### Shop profile
Name: {store_name}
Description: {store_description}
Country: {country}, Currency: {currency}, Language: {language}
Domain: {domain}

### Top collections (title -- handle)
{collections_list}

### Top product types
{product_types_list}

### Example products (title -- handle, with REAL variant options & values)
{products_list}

### Product-to-Collection memberships (use these to ground multi-step tasks)
{mapping_str}

### Collection facets / option patterns (for filter tasks)
{option_patterns_list}

### Policy / info pages (title -- /pages/handle)
{pages_list}

### Gift card products
{gift_card_list_or_none}

### Behavior categories to cover (aim for at least 10 of 14)
{behavior_categories}

### High-quality reference tasks (from other shops in this benchmark suite)
{few_shot_blocks}

### Anti-patterns to AVOID
- "Search for X. Pick a Color and Size variant. Add to cart." -- too thin,
  no persona, no detour, single skill.
- Mentioning "Color" or "Size" for a product whose options list above does
  NOT include that name.
- Generic UI references like "navigate to the homepage" without naming a
  specific section or CTA.
- Two products in one intent that are not co-located in any collection
  according to the membership list above.

When constructing tasks, USE EXACT product titles, collection titles, and
option names from the lists above. Use the storefront's own wording for
collection names ("Fresh Drops" not "new arrivals"). For multi-step tasks,
ensure each (collection, product) pair you mention is a real membership.

Respond with a JSON object with a "tasks" key containing the array of
{count} tasks. Each `id` should use the format
"{shop_slug}-e2e-v1-{index}" replacing {index} with numbers starting at 1.
"""


@dataclass
class PromptContext:
    system_prompt: str
    user_prompt: str
    few_shot: tuple = FEW_SHOT_EXAMPLES
    placeholders: dict[str, str] = field(default_factory=dict)


def _render_few_shot() -> str:
    blocks = []
    for example in FEW_SHOT_EXAMPLES:
        blocks.append(
            f"# {example['label']}\n"
            f'intent: "{example["intent"]}"\n'
            f'success_criteria.type: "{example["success_criteria_type"]}"'
        )
    return "\n\n".join(blocks)


def _options_summary(product) -> str:
    if not product.option_axes:
        return "no variant options"
    parts = []
    for axis in product.option_axes:
        values = []
        for variant in product.variants:
            value = variant.options.get(axis)
            if value and value not in values:
                values.append(value)
        parts.append(f"{axis}: {' | '.join(values)}")
    return "; ".join(parts)


def build_placeholders(
    bundle: ShopBundle, count: int, domain: str = "http://localhost:8400"
) -> dict[str, str]:
    shop = bundle.capabilities.raw.get("shop", {})
    store_name = shop.get("name") or bundle.slug.replace("-", " ").replace(
        "_", " "
    ).title()
    collections_list = "\n".join(
        f"- {c.title} -- {c.handle}" for c in bundle.collections
    ) or "- (none)"
    types = sorted({p.product_type for p in bundle.products if p.product_type})
    product_types_list = "\n".join(f"- {t}" for t in types) or "- (none)"
    products_list = "\n".join(
        f"- {p.title} -- {p.handle} [{_options_summary(p)}]"
        for p in bundle.products
        if p.active
    ) or "- (none)"
    memberships = []
    for product in bundle.products:
        owners = [
            c.handle for c in bundle.collections if product.handle in c.product_handles
        ]
        if owners:
            memberships.append(f"- {product.handle}: {', '.join(owners)}")
    mapping_str = "\n".join(memberships) or "- (none)"
    option_patterns = []
    for collection in bundle.collections:
        index = build_option_index(collection, bundle)
        dims = []
        for dim, values in index.items():
            rendered = ", ".join(f"{v}:{n}" for v, n in values.items())
            dims.append(f"{dim}({rendered})")
        if dims:
            option_patterns.append(f"- {collection.handle}: {'; '.join(dims)}")
    option_patterns_list = "\n".join(option_patterns) or "- (none)"
    pages_list = "\n".join(
        f"- {p.title} -- {p.route}" for p in bundle.pages
    ) or "- (none)"
    gift_cards = [p for p in bundle.products if p.gift_card and p.active]
    gift_card_list_or_none = "\n".join(
        f"- {p.title} -- {p.handle}" for p in gift_cards
    ) or "none"

    categories = []
    for i, category in enumerate(BEHAVIOR_CATEGORIES, start=1):
        line = f"{i}.  {category}"
        if i == 10 and not gift_cards:
            line += " -- NOT APPLICABLE: this store sells no gift cards."
        categories.append(line)

    return {
        "count": str(count),
        "store_name": store_name,
        "store_description": shop.get("descriptor", ""),
        "country": shop.get("country", "US"),
        "currency": bundle.currency,
        "language": shop.get("language", "en"),
        "domain": domain,
        "collections_list": collections_list,
        "product_types_list": product_types_list,
        "products_list": products_list,
        "mapping_str": mapping_str,
        "option_patterns_list": option_patterns_list,
        "pages_list": pages_list,
        "gift_card_list_or_none": gift_card_list_or_none,
        "behavior_categories": "\n".join(categories),
        "few_shot_blocks": _render_few_shot(),
        "shop_slug": bundle.slug,
    }


def build_prompt(
    bundle: ShopBundle, count: int, domain: str = "http://localhost:8400"
) -> PromptContext:
    """Assemble the grounded prompt pair for ``count`` journeys."""
    if count < 1:
        raise StorelabError("journey count must be >= 1")
    if not bundle.collections:
        raise StorelabError(
            "journey generation requires at least one collection to navigate"
        )
    placeholders = build_placeholders(bundle, count, domain)
    user_prompt = USER_TEMPLATE
    for key, value in placeholders.items():
        user_prompt = user_prompt.replace("{" + key + "}", value)
    return PromptContext(
        system_prompt=SYSTEM_PROMPT,
        user_prompt=user_prompt,
        placeholders=placeholders,
    )
