"""
Test Permutations
=================

Composition convention, inversion, cycle notation and parse errors.
"""

import os
import sys

import pytest
from hypothesis import given, strategies

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.errors import DegreeMismatchError, SpecSyntaxError
from src.perm.permutation import Permutation, compose, parse_cycles

permutations = strategies.integers(1, 9).flatmap(
    lambda n: strategies.permutations(list(range(n))).map(lambda images: Permutation(tuple(images)))
)


def test_compose_is_functional():
    """(p∘q)(x) = p(q(x))."""
    p = Permutation.from_cycles([(0, 1)], degree=3)
    q = Permutation.from_cycles([(1, 2)], degree=3)
    pq = compose(p, q)
    assert pq.images == (1, 2, 0), "p∘q should apply q first"
    assert (p * q) == pq, "__mul__ should match compose"
    assert str(pq) == "(0 1 2)"


def test_compose_degree_mismatch():
    with pytest.raises(DegreeMismatchError):
        compose(Permutation.identity(3), Permutation.identity(4))


def test_from_cycles_rejects_overlap():
    with pytest.raises(ValueError):
        Permutation.from_cycles([(0, 1), (1, 2)])


def test_orders_and_cycles():
    p = Permutation.from_cycles([(0, 1, 2), (3, 4)], degree=6)
    assert p.order == 6, "lcm(3, 2) should be 6"
    assert p.cycles() == [(0, 1, 2), (3, 4)]
    assert Permutation.identity(4).order == 1
    assert str(Permutation.identity(4)) == "()"


def test_extend_shifts_points():
    p = Permutation.from_cycles([(0, 1)], degree=2).extend(5, shift=3)
    assert p.images == (0, 1, 2, 4, 3)
    with pytest.raises(DegreeMismatchError):
        p.extend(4, shift=1)


def test_parse_cycles():
    assert parse_cycles("(0 1 2)(3 4)") == [(0, 1, 2), (3, 4)]
    assert parse_cycles("()") == [], "identity should parse to no cycles"
    assert parse_cycles("(0, 1)") == [(0, 1)]


@pytest.mark.parametrize("text", ["", "(0 1", "(0 a)", "x(0 1)", "(0 1) y", "(-1 2)"])
def test_parse_cycles_errors(text):
    with pytest.raises(SpecSyntaxError):
        parse_cycles(text)


def test_parse_error_position_includes_offset():
    with pytest.raises(SpecSyntaxError) as info:
        parse_cycles("(0 1) y", offset=10)
    assert info.value.position == 15, "position should be relative to the enclosing text"


@given(permutations)
def test_inverse_roundtrip(p):
    assert (p * p.inverse()).is_identity()
    assert (p.inverse() * p).is_identity()


@given(permutations)
def test_cycle_notation_roundtrip(p):
    rebuilt = Permutation.from_cycles(parse_cycles(str(p)), degree=p.degree)
    assert rebuilt == p


@given(permutations)
def test_order_is_smallest_identity_power(p):
    power = p
    for _ in range(p.order - 1):
        assert not power.is_identity()
        power = power * p
    assert power.is_identity()
