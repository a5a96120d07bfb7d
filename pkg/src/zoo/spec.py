"""
Group Specs
===========
Parser and serializer for the textual group-spec grammar:

    cyclic:n  dihedral:2n  sym:n  alt:n  elem:p,k
    psl2:q  pgl2:q  sl2:q  sz:8  u3:3
    product(A,B)
    perm:[(0 1 2)(3 4);(0 3)]

Whitespace between tokens is ignored. Inside a perm generator, spaces
separate the points of a cycle.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from sympy import isprime

from ..errors import SpecParameterError, SpecSyntaxError
from ..perm.permutation import parse_cycles
from .fields import prime_power_decomposition

# constructor name -> number of integer parameters
ARITY: Dict[str, int] = {
    "cyclic": 1,
    "dihedral": 1,
    "sym": 1,
    "alt": 1,
    "elem": 2,
    "psl2": 1,
    "pgl2": 1,
    "sl2": 1,
    "sz": 1,
    "u3": 1,
}

Cycles = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class GroupSpec:
    """Parsed spec. Exactly one of params / children / generators is in use."""
    name: str
    params: Tuple[int, ...] = ()
    children: Tuple["GroupSpec", ...] = ()
    generators: Tuple[Cycles, ...] = field(default=())

    def __str__(self) -> str:
        return serialize_spec(self)


def validate_spec(spec: GroupSpec) -> GroupSpec:
    """Range-check constructor parameters; returns spec unchanged."""
    name, params = spec.name, spec.params
    if name == "product":
        if len(spec.children) != 2:
            raise SpecParameterError("product takes exactly two factors")
        for child in spec.children:
            validate_spec(child)
        return spec
    if name == "perm":
        return spec
    if name not in ARITY:
        raise SpecParameterError(f"unknown constructor {name!r}")
    if len(params) != ARITY[name]:
        raise SpecParameterError(f"{name} takes {ARITY[name]} parameter(s), got {len(params)}")

    if name in ("cyclic", "sym", "alt") and params[0] < 1:
        raise SpecParameterError(f"{name}:n needs n >= 1")
    elif name == "dihedral" and (params[0] < 2 or params[0] % 2):
        raise SpecParameterError("dihedral:m needs an even order m >= 2")
    elif name == "elem":
        p, k = params
        if not isprime(p) or k < 1:
            raise SpecParameterError(f"elem:{p},{k} needs a prime p and k >= 1")
    elif name in ("psl2", "pgl2", "sl2"):
        if prime_power_decomposition(params[0]) is None:
            raise SpecParameterError(f"{name}:{params[0]} needs a prime power q >= 2")
    elif name == "sz" and params[0] != 8:
        raise SpecParameterError("only sz:8 is supported")
    elif name == "u3" and params[0] != 3:
        raise SpecParameterError("only u3:3 is supported")
    return spec


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, reason: str, position: int = None):
        raise SpecSyntaxError(self.text, self.pos if position is None else position, reason)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char: str):
        if self.peek() != char:
            self.error(f"expected {char!r}")
        self.pos += 1

    def name(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        if start == self.pos:
            self.error("expected a constructor name")
        return self.text[start:self.pos].lower()

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def spec(self) -> GroupSpec:
        start = self.pos
        name = self.name()
        if name == "product":
            self.expect("(")
            left = self.spec()
            self.expect(",")
            right = self.spec()
            self.expect(")")
            return GroupSpec("product", children=(left, right))
        self.expect(":")
        if name == "perm":
            return GroupSpec("perm", generators=self.generator_list())
        if name not in ARITY:
            raise SpecParameterError(f"unknown constructor {name!r} at position {start}")
        params = [self.integer()]
        while len(params) < ARITY[name] and self.peek() == ",":
            self.pos += 1
            params.append(self.integer())
        return GroupSpec(name, params=tuple(params))

    def generator_list(self) -> Tuple[Cycles, ...]:
        self.expect("[")
        close = self.text.find("]", self.pos)
        if close < 0:
            self.error("unterminated generator list")
        body_start = self.pos
        body = self.text[body_start:close]
        generators: List[Cycles] = []
        offset = body_start
        for chunk in body.split(";"):
            generators.append(tuple(parse_cycles(chunk, offset)))
            offset += len(chunk) + 1
        self.pos = close + 1
        return tuple(generators)


def parse_spec(text: str) -> GroupSpec:
    """Parse and range-check a group spec; raises SpecSyntaxError / SpecParameterError."""
    parser = _Parser(text)
    spec = parser.spec()
    if parser.peek():
        parser.error("trailing characters")
    return validate_spec(spec)


def serialize_spec(spec: GroupSpec) -> str:
    """Canonical text form; parse_spec(serialize_spec(s)) == s."""
    if spec.name == "product":
        left, right = spec.children
        return f"product({serialize_spec(left)},{serialize_spec(right)})"
    if spec.name == "perm":
        rendered = []
        for cycles in spec.generators:
            text = "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycles)
            rendered.append(text or "()")
        return "perm:[" + ";".join(rendered) + "]"
    return f"{spec.name}:" + ",".join(str(x) for x in spec.params)


def canonical_spec_text(text: str) -> str:
    return serialize_spec(parse_spec(text))
