"""Deterministic, resettable HTTP storefront served from a shop bundle."""

from storelab.engine.listing import ListingQuery, apply_filters, apply_sort, paginate
from storelab.engine.cart import CartStore, CartError, UnavailableVariant, UnknownVariant
from storelab.engine.http import EngineHandle, serve

__all__ = [
    "CartError",
    "CartStore",
    "EngineHandle",
    "ListingQuery",
    "UnavailableVariant",
    "UnknownVariant",
    "apply_filters",
    "apply_sort",
    "paginate",
    "serve",
]
