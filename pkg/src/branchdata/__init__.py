"""
Realizability, explicit construction and counting for branched covers of the
sphere with two arbitrary branch points and any number of branch points whose
partition has a single nontrivial cycle.
"""

from .counting import (CountReport, centralizer_order, character_value, count_tuples,
                       frobenius_disconnected)
from .data import (Constellation, CyclePartition, DatumError, GeneralDatum, Reason,
                   RealizabilityVerdict, SpecialDatum, belyi_datum, decide_realizable,
                   enumerate_special_data, genus_of, total_branch_number, verify_constellation)
from .perm import Permutation, PermutationError, compose, conjugate, cycle_type, inverse, orbits
from .realizer import ConstructionDefect, NotRealizable, RealizeStats, realize
from .search import SearchBudget, SearchExhausted, search_realize

__version__ = "0.1.0"

__all__ = [
    "CountReport", "centralizer_order", "character_value", "count_tuples", "frobenius_disconnected",
    "Constellation", "CyclePartition", "DatumError", "GeneralDatum", "Reason", "RealizabilityVerdict",
    "SpecialDatum", "belyi_datum", "decide_realizable", "enumerate_special_data", "genus_of",
    "total_branch_number", "verify_constellation", "Permutation", "PermutationError", "compose",
    "conjugate", "cycle_type", "inverse", "orbits", "ConstructionDefect", "NotRealizable",
    "RealizeStats", "realize", "SearchBudget", "SearchExhausted", "search_realize",
]
