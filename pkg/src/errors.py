"""
Mulambda Errors
===============
One exception hierarchy for the whole engine. Library code raises;
the CLI maps every MulambdaError to exit code 2.
"""

from typing import Optional


class MulambdaError(Exception):
    """Base class for all engine errors."""


class DegreeMismatchError(MulambdaError, ValueError):
    """Permutations or groups acting on different point counts."""


class CapExceededError(MulambdaError):
    """A configured size cap was hit (group too large for desk-scale enumeration)."""

    def __init__(self, cap_name: str, cap_value: int, detail: str = ""):
        self.cap_name = cap_name
        self.cap_value = cap_value
        message = f"{cap_name} of {cap_value} exceeded"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class NotASubgroupError(MulambdaError, ValueError):
    """A set of elements is not contained in the ambient group."""


class SpecSyntaxError(MulambdaError, ValueError):
    """Group spec text does not match the grammar."""

    def __init__(self, text: str, position: int, reason: str):
        self.text = text
        self.position = position
        self.reason = reason
        super().__init__(f"{reason} at position {position} in {text!r}")


class SpecParameterError(MulambdaError, ValueError):
    """Constructor name unknown or parameter out of range."""


class FieldError(MulambdaError, ArithmeticError):
    """Finite-field misuse: inverse of zero, bad modulus, non-prime characteristic."""


class RegimeError(MulambdaError, ValueError):
    """q lies outside the regime covered by a closed-form table."""


class CheckedArithmeticError(MulambdaError, ArithmeticError):
    """A table formula asked for a division that is not exact."""


class CacheFormatError(MulambdaError):
    """Lattice cache file unreadable or from another format version."""


class CorpusError(MulambdaError):
    """Suite corpus file missing or malformed."""

    def __init__(self, path: str, detail: Optional[str] = None):
        self.path = path
        super().__init__(f"cannot read corpus {path}" + (f": {detail}" if detail else ""))


def exact_div(numerator: int, denominator: int, what: str = "") -> int:
    """Integer division that refuses to truncate."""
    if denominator == 0 or numerator % denominator:
        raise CheckedArithmeticError(
            f"{numerator}/{denominator} is not an exact integer" + (f" ({what})" if what else "")
        )
    return numerator // denominator
