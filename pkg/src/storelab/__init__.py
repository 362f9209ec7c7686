"""storelab: deterministic sandbox storefronts plus a grounded benchmark pipeline.

The toolkit has four layers:

* ``storelab.catalog`` loads declarative shop bundles (catalog, collections,
  pages, capabilities, stats) and derives per-collection option indexes.
* ``storelab.engine`` serves a resettable HTTP storefront from a bundle.
* ``storelab.tasks`` / ``storelab.validation`` / ``storelab.journeys``
  generate benchmark tasks, lint them against the bundle, and run the
  bounded regenerate-flagged-tasks repair loop for LLM-authored journeys.
* ``storelab.analyzer`` / ``storelab.runner`` measure structural complexity
  of a storefront and execute benchmark tasks with budgets, gating, and
  judge aggregation.
"""

__version__ = "0.1.0"
