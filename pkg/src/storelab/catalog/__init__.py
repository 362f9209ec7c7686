"""Shop bundle data model, loaders, derived indexes, and statistics."""

from storelab.catalog.model import (
    Capabilities,
    Collection,
    PageDoc,
    Product,
    ShopBundle,
    ShopStats,
    Variant,
)
from storelab.catalog.loader import load_shop_bundle, write_bundle
from storelab.catalog.options import (
    BRAND_DIM,
    TYPE_DIM,
    OptionIndex,
    build_option_index,
    eligible_discovery_products,
    is_generic_collection,
)
from storelab.catalog.stats import compute_stats

__all__ = [
    "BRAND_DIM",
    "TYPE_DIM",
    "Capabilities",
    "Collection",
    "OptionIndex",
    "PageDoc",
    "Product",
    "ShopBundle",
    "ShopStats",
    "Variant",
    "build_option_index",
    "compute_stats",
    "eligible_discovery_products",
    "is_generic_collection",
    "load_shop_bundle",
    "write_bundle",
]
