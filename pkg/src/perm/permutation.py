"""
Permutations
============
Immutable bijections on {0, ..., degree-1} stored as image tuples.

Composition follows the functional convention (p∘q)(x) = p(q(x)).
"""

import math
import re
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from ..errors import DegreeMismatchError, SpecSyntaxError

_CYCLE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection on degree points, 0-based."""
    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"images {images} are not a bijection on {len(images)} points")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: Optional[int] = None) -> "Permutation":
        cycles = [tuple(c) for c in cycles]
        support = [x for c in cycles for x in c]
        if len(support) != len(set(support)):
            raise ValueError(f"cycles {cycles} are not disjoint")
        needed = max(support) + 1 if support else 0
        degree = needed if degree is None else degree
        if degree < needed:
            raise DegreeMismatchError(f"cycle point {needed - 1} outside degree {degree}")
        images = list(range(degree))
        for cycle in cycles:
            for i, x in enumerate(cycle):
                images[x] = cycle[(i + 1) % len(cycle)]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.images))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Disjoint cycles of length > 1, each starting at its smallest point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cycle.append(x)
                seen[x] = True
                x = self.images[x]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    @property
    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def extend(self, degree: int, shift: int = 0) -> "Permutation":
        """Same action moved to points shift.. on a larger point set."""
        if shift + self.degree > degree:
            raise DegreeMismatchError(f"cannot place degree {self.degree} at {shift} inside {degree}")
        images = list(range(degree))
        for x, y in enumerate(self.images):
            images[x + shift] = y + shift
        return Permutation(tuple(images))

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycles)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """(p∘q)(x) = p(q(x))."""
    if p.degree != q.degree:
        raise DegreeMismatchError(f"cannot compose degree {p.degree} with degree {q.degree}")
    return Permutation(tuple(p.images[x] for x in q.images))


def parse_cycles(text: str, offset: int = 0) -> List[Tuple[int, ...]]:
    """Parse disjoint-cycle notation such as "(0 1)(2 3 4)"; "()" is the identity.

    offset is the position of text inside a larger string, for error messages.
    """
    stripped = re.sub(r"\s+", " ", text).strip()
    if not stripped:
        raise SpecSyntaxError(text, offset, "empty cycle list")
    cycles = []
    position = 0
    for match in _CYCLE.finditer(text):
        gap = text[position:match.start()]
        if gap.strip():
            raise SpecSyntaxError(text, offset + position, "expected '('")
        body = match.group(1).replace(",", " ").split()
        try:
            points = tuple(int(x) for x in body)
        except ValueError:
            raise SpecSyntaxError(text, offset + match.start(1), "non-integer point") from None
        if any(x < 0 for x in points):
            raise SpecSyntaxError(text, offset + match.start(1), "negative point")
        if len(points) > 1:
            cycles.append(points)
        position = match.end()
    if text[position:].strip():
        raise SpecSyntaxError(text, offset + position, "trailing characters in cycle list")
    return cycles
