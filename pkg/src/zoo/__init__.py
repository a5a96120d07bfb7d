"""
Group zoo: finite fields, the spec grammar and group constructors.
"""

from .fields import FiniteField, field, prime_power_decomposition
from .spec import GroupSpec, canonical_spec_text, parse_spec, serialize_spec
from .constructors import build_group, direct_product, expected_order

__all__ = [
    "FiniteField", "field", "prime_power_decomposition",
    "GroupSpec", "canonical_spec_text", "parse_spec", "serialize_spec",
    "build_group", "direct_product", "expected_order",
]
