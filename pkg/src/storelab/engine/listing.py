"""Collection listing pipeline: filters, sort, two-stage load-more pagination.

All pure functions over product sequences. Filtering is conjunctive and
order-preserving; sorting is a stable permutation; pagination implements
exactly the two-stage contract — 24 cards first, then the rest of the
collection in a single batch.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from storelab.catalog.model import CANONICAL_SORT_KEYS, Product

PAGE_SIZE = 24

SORT_LABELS = {
    "featured": "Featured",
    "best_selling": "Best selling",
    "alpha_az": "Alphabetically, A-Z",
    "alpha_za": "Alphabetically, Z-A",
    "price_asc": "Price, low to high",
    "price_desc": "Price, high to low",
    "date_new": "Date, new to old",
    "date_old": "Date, old to new",
}


class ListingError(ValueError):
    """Bad listing query (unknown sort key, unsupported loaded offset)."""


@dataclass
class ListingQuery:
    available: bool = False
    on_sale: bool = False
    facet: tuple[str, str] | None = None
    sort: str = "featured"
    loaded: int = 0

    @classmethod
    def from_params(cls, params: dict[str, str]) -> "ListingQuery":
        sort = params.get("sort_by", "featured")
        if sort not in CANONICAL_SORT_KEYS:
            raise ListingError(f"unknown sort key: {sort!r}")
        loaded_raw = params.get("loaded", "0")
        try:
            loaded = int(loaded_raw)
        except ValueError as exc:
            raise ListingError(f"bad loaded offset: {loaded_raw!r}") from exc
        if loaded not in (0, PAGE_SIZE):
            raise ListingError(f"unsupported loaded offset: {loaded}")
        facet = None
        for key, value in params.items():
            if key.startswith("filter."):
                facet = (key[len("filter."):], value)
                break
        return cls(
            available=params.get("available") == "1",
            on_sale=params.get("on_sale") == "1",
            facet=facet,
            sort=sort,
            loaded=loaded,
        )

    def to_params(self, **overrides) -> dict[str, str]:
        params: dict[str, str] = {}
        if self.available:
            params["available"] = "1"
        if self.on_sale:
            params["on_sale"] = "1"
        if self.facet:
            params[f"filter.{self.facet[0]}"] = self.facet[1]
        if self.sort != "featured":
            params["sort_by"] = self.sort
        params.update({k: str(v) for k, v in overrides.items()})
        return params


def _realizes_facet(product: Product, dim: str, value: str) -> bool:
    dim_lower, value_lower = dim.lower(), value.lower()
    if dim_lower == "brand":
        return product.vendor.lower() == value_lower
    if dim_lower == "type":
        return product.product_type.lower() == value_lower
    for variant in product.variants:
        for vdim, vvalue in variant.options.items():
            if vdim.lower() == dim_lower and vvalue.lower() == value_lower:
                return True
    return False


def apply_filters(products: list[Product], query: ListingQuery) -> list[Product]:
    """Conjunctive filtering, input order preserved.

    An unknown facet dimension simply matches nothing — the route renders
    the "no products match" state rather than an error status.
    """
    result = products
    if query.available:
        result = [p for p in result if p.has_available_variant]
    if query.on_sale:
        result = [p for p in result if p.on_sale]
    if query.facet:
        dim, value = query.facet
        result = [p for p in result if _realizes_facet(p, dim, value)]
    return list(result)


def apply_sort(products: list[Product], sort_key: str) -> list[Product]:
    """Stable permutation under one of the eight canonical keys."""
    if sort_key not in CANONICAL_SORT_KEYS:
        raise ListingError(f"unknown sort key: {sort_key!r}")
    if sort_key == "featured":
        return list(products)
    if sort_key == "best_selling":
        order = {id(p): i for i, p in enumerate(products)}
        return sorted(
            products,
            key=lambda p: (
                p.best_selling_ordinal
                if p.best_selling_ordinal is not None
                else order[id(p)]
            ),
        )
    if sort_key == "alpha_az":
        return sorted(products, key=lambda p: p.title)
    if sort_key == "alpha_za":
        return sorted(products, key=lambda p: p.title, reverse=True)
    if sort_key == "price_asc":
        return sorted(products, key=lambda p: p.price_min)
    if sort_key == "price_desc":
        return sorted(products, key=lambda p: p.price_min, reverse=True)
    if sort_key == "date_new":
        return sorted(products, key=lambda p: p.created_ordinal, reverse=True)
    # date_old
    return sorted(products, key=lambda p: p.created_ordinal)


@dataclass
class Page:
    slice: list[Product] = field(default_factory=list)
    has_more: bool = False


def paginate(products: list[Product], loaded: int) -> Page:
    """Two-stage load-more: first 24 cards, then the remainder in one batch."""
    if loaded == 0:
        return Page(slice=products[:PAGE_SIZE], has_more=len(products) > PAGE_SIZE)
    return Page(slice=products[PAGE_SIZE:], has_more=False)
