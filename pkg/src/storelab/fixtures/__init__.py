"""Bundled fixture shops: a hand-written demo shop and a randomized factory."""

from storelab.fixtures.demo import demo_bundle_documents, write_demo_bundle
from storelab.fixtures.random_shop import (
    random_bundle,
    random_bundle_documents,
    write_random_bundle,
)

__all__ = [
    "demo_bundle_documents",
    "write_demo_bundle",
    "random_bundle",
    "random_bundle_documents",
    "write_random_bundle",
]
