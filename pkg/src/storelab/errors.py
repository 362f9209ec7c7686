"""Exception types shared across the toolkit."""


class StorelabError(Exception):
    """Base class for all storelab errors."""


class BundleLoadError(StorelabError):
    """A bundle document is missing or cannot be parsed."""


class BundleIntegrityError(StorelabError):
    """A loaded bundle violates a referential or structural invariant."""


class CapabilityError(StorelabError):
    """The capability document declares something the engine cannot serve."""


class AssemblyError(StorelabError):
    """A benchmark file cannot be assembled (duplicate ids, failing tasks)."""


class MergeError(StorelabError):
    """A regenerated task set cannot be merged back into the original list."""


class PolishLoopHalt(StorelabError):
    """Journey generation exhausted its polish rounds with issues remaining."""


class CrawlError(StorelabError):
    """The crawler could not reach the base URL."""


class MarkupError(StorelabError):
    """An HTML document is malformed; message names the offending position."""


class RunError(StorelabError):
    """A benchmark rollout could not be started."""
