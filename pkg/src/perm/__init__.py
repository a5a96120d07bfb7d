"""
Permutation-group core: permutations, closure and subgroup operations.
"""

from .permutation import Permutation, compose, parse_cycles
from .group import (
    Group,
    close,
    conjugate,
    count_generating_tuples,
    derived_series,
    derived_subgroup,
    element_class_ranks,
    index,
    intersect,
    is_simple_group,
    is_solvable,
    is_two_transitive,
    normal_closure,
    normalizer,
    orbits,
    quotient_by,
)

__all__ = [
    "Permutation", "compose", "parse_cycles",
    "Group", "close", "conjugate", "count_generating_tuples", "derived_series",
    "derived_subgroup", "element_class_ranks", "index", "intersect", "is_simple_group",
    "is_solvable", "is_two_transitive",
    "normal_closure", "normalizer", "orbits", "quotient_by",
]
