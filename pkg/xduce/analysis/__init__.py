from xduce.analysis.bounded import Ambiguity, Valuedness, max_ambiguity, max_valuedness
from xduce.analysis.static import acceptance_distances, co_reachable, output_speed, shortcut_guarantee
from xduce.analysis.witness import (
    Continuation,
    ContinuationSearch,
    TrailingProfile,
    TrailingWitness,
    VariationWitness,
    accepting_continuation,
    find_trailing_witness,
    find_variation_witness,
    trailing_profile,
)

__all__ = [
    "Ambiguity",
    "Continuation",
    "ContinuationSearch",
    "TrailingProfile",
    "TrailingWitness",
    "Valuedness",
    "VariationWitness",
    "acceptance_distances",
    "accepting_continuation",
    "co_reachable",
    "find_trailing_witness",
    "find_variation_witness",
    "max_ambiguity",
    "max_valuedness",
    "output_speed",
    "shortcut_guarantee",
    "trailing_profile",
]
