"""Long-horizon journey authoring: prompt assembly, generation, polish loop."""

from storelab.journeys.prompts import PromptContext, build_prompt
from storelab.journeys.orchestrator import (
    JourneyResult,
    generate_journeys,
    merge_regenerated,
)
from storelab.journeys.adapters import (
    CommandGenerator,
    GroundedStubGenerator,
    StubbornStubGenerator,
    resolve_generator,
)

__all__ = [
    "CommandGenerator",
    "GroundedStubGenerator",
    "JourneyResult",
    "PromptContext",
    "StubbornStubGenerator",
    "build_prompt",
    "generate_journeys",
    "merge_regenerated",
    "resolve_generator",
]
