"""
Test Subgroup Lattices
======================

Subgroup and class counts against known values, the order relation,
MaxInt, the Frattini subgroup and the class poset.
"""

import os
import sys

import numpy as np
import pytest
from sympy import divisor_count, divisor_sigma

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.errors import CapExceededError
from src.lattice import (
    conjugacy_classes,
    enumerate_subgroups,
    frattini,
    is_simple,
    max_int,
    normal_subgroups,
)
from src.zoo import build_group

Q8 = "perm:[(0 2 1 3)(4 6 5 7);(0 4 1 5)(2 7 3 6)]"


def lattice_of(spec, threads=1):
    return enumerate_subgroups(build_group(spec), threads=threads)


@pytest.mark.parametrize("spec,subgroups,classes", [
    ("cyclic:1", 1, 1),
    ("cyclic:6", 4, 4),
    ("sym:3", 6, 4),
    ("alt:4", 10, 5),
    ("sym:4", 30, 11),
    ("alt:5", 59, 9),
    (Q8, 6, 6),
    ("elem:2,3", 16, 16),
])
def test_subgroup_and_class_counts(spec, subgroups, classes):
    L = lattice_of(spec)
    assert len(L) == subgroups, f"{spec} should have {subgroups} subgroups, got {len(L)}"
    assert L.class_count == classes, f"{spec} should have {classes} classes, got {L.class_count}"


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 8, 9, 12])
def test_dihedral_subgroup_count(n):
    """D_2n has d(n) + σ(n) subgroups."""
    L = lattice_of(f"dihedral:{2 * n}")
    assert len(L) == divisor_count(n) + divisor_sigma(n), f"D_{2 * n}"


def test_thread_count_does_not_change_result():
    serial = lattice_of("sym:4", threads=1)
    parallel = lattice_of("sym:4", threads=4)
    assert len(serial) == len(parallel)
    for a, b in zip(serial.subgroups, parallel.subgroups):
        assert np.array_equal(a, b), "subgroup order should be deterministic"
    assert np.array_equal(serial.class_of, parallel.class_of)


def test_order_relation():
    L = lattice_of("sym:4")
    assert L.orders[L.bottom] == 1 and L.orders[L.top] == 24
    for i in range(len(L)):
        assert L.leq(L.bottom, i) and L.leq(i, L.top)
        above = set(int(k) for k in L.overgroups(i))
        for j in range(len(L)):
            expected = bool(np.all(np.isin(L.subgroups[i], L.subgroups[j])))
            assert L.leq(i, j) == expected, f"leq({i}, {j})"
            assert (j in above) == expected


def test_meet_is_intersection():
    L = lattice_of("sym:4")
    for i in range(0, len(L), 3):
        for j in range(0, len(L), 4):
            m = L.meet(i, j)
            assert np.array_equal(L.subgroups[m], np.intersect1d(L.subgroups[i], L.subgroups[j]))


def test_classes_are_conjugation_orbits():
    L = lattice_of("sym:4")
    G = L.group
    for c, members in enumerate(L.class_members):
        rep = L.subgroups[L.class_reps[c]]
        orbit = {np.sort(G.conjugate_ranks(rep, g)).tobytes() for g in range(G.order)}
        assert orbit == {L.subgroups[i].tobytes() for i in members}
        assert len(L.class_normalizers[c]) * len(members) == G.order, "orbit-stabilizer"


def test_maximal_and_maxint_s4():
    L = lattice_of("sym:4")
    maximal_orders = sorted(int(L.orders[i]) for i in np.flatnonzero(L.maximal))
    assert maximal_orders == [6, 6, 6, 6, 8, 8, 8, 12], f"got {maximal_orders}"
    assert L.maxint[L.top] and L.maxint[L.bottom]
    assert set(max_int(L).tolist()) == set(np.flatnonzero(L.maxint).tolist())


def test_frattini_subgroups():
    assert lattice_of(Q8).orders[frattini(lattice_of(Q8))] == 2, "Φ(Q8) is the center"
    assert lattice_of("cyclic:8").orders[lattice_of("cyclic:8").frattini] == 4
    assert lattice_of("sym:4").orders[lattice_of("sym:4").frattini] == 1
    L = lattice_of("cyclic:1")
    assert L.frattini == L.top


def test_normal_subgroups_and_simplicity():
    L = lattice_of("sym:4")
    assert sorted(int(L.orders[i]) for i in normal_subgroups(L)) == [1, 4, 12, 24]
    assert not is_simple(L)
    assert is_simple(lattice_of("alt:5"))
    assert is_simple(lattice_of("cyclic:5"))
    assert not is_simple(lattice_of("cyclic:1"))


def test_class_poset_s3():
    L = lattice_of("sym:3")
    C = conjugacy_classes(L)
    assert len(C) == 4
    bottom = int(L.class_of[L.bottom])
    assert C.leq(bottom, C.top)
    assert all(C.leq(bottom, d) for d in range(len(C)))
    assert sorted(C.sizes.tolist()) == [1, 1, 1, 3]


def test_subgroup_cap():
    with pytest.raises(CapExceededError):
        enumerate_subgroups(build_group("elem:2,4"), subgroup_cap=20)


def test_array_roundtrip():
    L = lattice_of("alt:5")
    again = type(L).from_arrays(L.group, L.to_arrays())
    assert len(again) == len(L)
    assert np.array_equal(again.class_of, L.class_of)
    assert np.array_equal(again.maxint, L.maxint)
    assert again.frattini == L.frattini
