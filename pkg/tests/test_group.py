"""
Test Permutation Groups
=======================

Closure against an independent order oracle, derived series, normalizers,
quotients and the brute-force generating-tuple count.
"""

import os
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies
from sympy.combinatorics import Permutation as SympyPermutation
from sympy.combinatorics import PermutationGroup

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.errors import CapExceededError, DegreeMismatchError, NotASubgroupError
from src.perm import (
    Group,
    Permutation,
    close,
    conjugate,
    count_generating_tuples,
    derived_series,
    derived_subgroup,
    index,
    intersect,
    is_solvable,
    is_two_transitive,
    normal_closure,
    normalizer,
    orbits,
    quotient_by,
)
from src.zoo import build_group


def cyc(*cycles, degree):
    return Permutation.from_cycles(cycles, degree=degree)


def sympy_order(generators):
    return PermutationGroup([SympyPermutation(list(g.images)) for g in generators]).order()


def test_close_symmetric_group():
    G = close([cyc((0, 1, 2, 3), degree=4), cyc((0, 1), degree=4)])
    assert G.order == 24, "S4 should have 24 elements"
    assert np.array_equal(G.elements[0], np.arange(4)), "identity should have rank 0"
    assert G.rank(Permutation.identity(4)) == 0


def test_close_trivial_group():
    G = close([], degree=3)
    assert G.order == 1
    with pytest.raises(DegreeMismatchError):
        close([])


def test_close_mixed_degrees():
    with pytest.raises(DegreeMismatchError):
        close([Permutation.identity(3), Permutation.identity(4)])


def test_close_respects_cap():
    with pytest.raises(CapExceededError) as info:
        close([cyc((0, 1, 2, 3, 4, 5), degree=6), cyc((0, 1), degree=6)], element_cap=100)
    assert info.value.cap_name == "element_cap"


def test_elements_are_sorted():
    G = build_group("alt:5")
    rows = [tuple(r) for r in G.elements.tolist()]
    assert rows == sorted(rows), "element table should be lexicographic"


@settings(max_examples=25, deadline=None)
@given(strategies.lists(strategies.permutations(list(range(6))), min_size=1, max_size=3))
def test_close_matches_sympy_order(images):
    generators = [Permutation(tuple(i)) for i in images]
    assert close(generators).order == sympy_order(generators)


@settings(max_examples=15, deadline=None)
@given(strategies.permutations([0, 1, 2]))
def test_close_independent_of_generator_order(order):
    gens = [cyc((0, 1, 2, 3, 4), degree=5), cyc((0, 1, 2), degree=5), cyc((1, 2), (3, 4), degree=5)]
    G = close([gens[i] for i in order])
    H = close(gens)
    assert np.array_equal(G.elements, H.elements), "element table should be canonical"


def test_membership_and_rank():
    G = build_group("sym:4")
    p = cyc((0, 2), degree=4)
    assert p in G
    assert G.element(G.rank(p)) == p
    assert cyc((0, 1), degree=5) not in G
    A = build_group("alt:4")
    with pytest.raises(NotASubgroupError):
        A.rank(p)


def test_mul_matches_compose():
    G = build_group("sym:4")
    for a in range(0, G.order, 5):
        for b in range(0, G.order, 7):
            assert G.element(G.mul(a, b)) == G.element(a) * G.element(b)


def test_derived_series_s4():
    G = build_group("sym:4")
    orders = [H.order for H in derived_series(G)]
    assert orders == [24, 12, 4, 1], f"S4 > A4 > V4 > 1, got {orders}"
    assert is_solvable(G)


def test_alt5_is_perfect():
    G = build_group("alt:5")
    assert derived_subgroup(G).order == 60
    assert not is_solvable(G)


def test_normalizer_and_conjugate():
    G = build_group("sym:4")
    C3 = close([cyc((0, 1, 2), degree=4)])
    assert normalizer(G, C3).order == 6, "N_S4(C3) should be S3"
    g = cyc((2, 3), degree=4)
    K = conjugate(C3, g)
    assert K.order == 3
    assert cyc((0, 1, 3), degree=4) in K or cyc((0, 3, 1), degree=4) in K
    assert intersect(C3, K).order == 1
    assert index(G, C3) == 8


def test_normal_closure():
    G = build_group("sym:4")
    V = normal_closure(G, [cyc((0, 1), (2, 3), degree=4)])
    assert V.order == 4, "normal closure of a double transposition should be V4"


def test_quotient_by_frattini_of_sl2_5():
    G = build_group("sl2:5")
    involutions = np.flatnonzero(G.element_orders == 2)
    center = G.normal_closure_ranks(involutions.tolist())
    assert len(center) == 2, "SL2(5) should have a unique involution"
    Q, projection = quotient_by(G, center)
    assert Q.order == 60
    assert len(np.unique(projection)) == 60
    assert projection[0] == 0, "identity should map to the identity"
    for a in range(0, G.order, 11):
        for b in range(0, G.order, 13):
            assert projection[G.mul(a, b)] == Q.mul(int(projection[a]), int(projection[b]))


@pytest.mark.parametrize("spec,k,expected", [
    ("cyclic:12", 1, 4),
    ("sym:3", 1, 0),
    ("sym:3", 2, 18),
    ("cyclic:1", 2, 1),
])
def test_count_generating_tuples(spec, k, expected):
    assert count_generating_tuples(build_group(spec), k) == expected


def test_orbits_and_two_transitivity():
    G = build_group("psl2:7")
    assert len(orbits(G)) == 1
    assert is_two_transitive(G), "PSL2(q) acts 2-transitively on the projective line"
    assert not is_two_transitive(build_group("cyclic:5"))
    assert len(orbits(build_group("product(cyclic:2,cyclic:3)"))) == 2
