"""Cube tilings of the nonnegative orthant and discrete corner-region search."""
from .core import (
    CompletionResult,
    CoverageReport,
    CubeTile,
    TranslationSet,
    complete_translations,
    radius_exceeds_diameter,
    restrict_to_face,
    tile_diameter_sq,
    verify_direct_sum,
)
from .rescale import RescaledInstance, normalize_and_rescale
from .search import DiscreteRegion, SearchReport, local_tiling_search

__all__ = [
    "CompletionResult",
    "CoverageReport",
    "CubeTile",
    "DiscreteRegion",
    "RescaledInstance",
    "SearchReport",
    "TranslationSet",
    "complete_translations",
    "local_tiling_search",
    "normalize_and_rescale",
    "radius_exceeds_diameter",
    "restrict_to_face",
    "tile_diameter_sq",
    "verify_direct_sum",
]
