"""
Test Moebius Functions
======================

mu on the subgroup lattice, lambda on the class poset, Hall's
generating-tuple identity and the vanishing lemmas.
"""

import os
import sys
from math import gcd

import pytest
from hypothesis import given, strategies
from sympy import divisors

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.analysis import analyze_group
from src.lattice import conjugacy_classes, enumerate_subgroups
from src.moebius import (
    hall_sum,
    lambda_poset,
    moebius_integer,
    moebius_table,
    mu_lattice,
    mu_per_subgroup,
    vanishing_violations,
)
from src.perm import count_generating_tuples
from src.zoo import build_group


def class_by_order(analysis, order):
    lattice = analysis.lattice
    matches = [c for c, rep in enumerate(lattice.class_reps) if lattice.orders[rep] == order]
    assert len(matches) == 1, f"expected one class of order {order}, found {len(matches)}"
    return matches[0]


# ============================================================================
# Number-theoretic mu
# ============================================================================

def test_moebius_integer_values():
    assert [moebius_integer(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    with pytest.raises(ValueError):
        moebius_integer(0)


@given(strategies.integers(1, 10 ** 4))
def test_moebius_divisor_sum(n):
    """Σ_{d|n} mu(d) = [n = 1]."""
    assert sum(moebius_integer(d) for d in divisors(n)) == (1 if n == 1 else 0)


@given(strategies.integers(1, 300), strategies.integers(1, 300))
def test_moebius_multiplicative(a, b):
    if gcd(a, b) == 1:
        assert moebius_integer(a * b) == moebius_integer(a) * moebius_integer(b)


# ============================================================================
# Lattice and class poset
# ============================================================================

def test_s3_values():
    A = analyze_group("sym:3")
    bottom = int(A.lattice.class_of[A.lattice.bottom])
    assert A.table.mu_by_class[bottom] == 3, "mu({1}) in S3"
    assert A.table.lam(bottom) == 1, "lambda({1}) in S3"
    assert A.table.mu_by_class[class_by_order(A, 2)] == -1
    assert A.table.mu_by_class[class_by_order(A, 3)] == -1


def test_l2_4_values():
    A = analyze_group("psl2:4")
    bottom = int(A.lattice.class_of[A.lattice.bottom])
    assert A.table.mu_by_class[bottom] == -60
    assert A.table.lam(bottom) == -1
    c2 = class_by_order(A, 2)
    assert A.table.mu_by_class[c2] == 4
    assert A.table.lam(c2) == 2


def test_cyclic_mu_matches_number_theory():
    for n in (6, 12, 30):
        A = analyze_group(f"cyclic:{n}", restrict_to_maxint=False)
        for c, rep in enumerate(A.lattice.class_reps):
            order = int(A.lattice.orders[rep])
            assert A.table.mu_by_class[c] == moebius_integer(n // order), f"C{n}, subgroup of order {order}"


@pytest.mark.parametrize("spec", ["sym:4", "alt:5", "dihedral:12", "perm:[(0 1 2);(1 2)(3 4 5 6)]"])
def test_restriction_does_not_change_values(spec):
    L = enumerate_subgroups(build_group(spec))
    C = conjugacy_classes(L)
    restricted = moebius_table(L, C, restrict_to_maxint=True, verify_restriction=True)
    full = moebius_table(L, C, restrict_to_maxint=False)
    assert restricted.mu_by_class == full.mu_by_class
    assert restricted.lam_by_class == full.lam_by_class


def test_class_invariant_matches_per_subgroup():
    L = enumerate_subgroups(build_group("sym:4"))
    table = mu_lattice(L, restrict_to_maxint=False)
    each = mu_per_subgroup(L)
    for i in range(len(L)):
        assert each[i] == table.mu(L, i)


def test_parallel_mu_is_identical():
    L = enumerate_subgroups(build_group("alt:5"))
    assert mu_lattice(L, threads=1).mu_by_class == mu_lattice(L, threads=4).mu_by_class


def test_lambda_top_and_bottom():
    L = enumerate_subgroups(build_group("alt:4"))
    lam = lambda_poset(conjugacy_classes(L))
    assert lam[int(L.class_of[L.top])] == 1


# ============================================================================
# Hall's identity and vanishing lemmas
# ============================================================================

@pytest.mark.parametrize("spec", ["sym:3", "sym:4", "alt:4", "alt:5", "dihedral:8", "cyclic:12"])
def test_hall_identity(spec):
    """Σ_H mu(H)|H|^k counts generating k-tuples."""
    A = analyze_group(spec)
    for k in (1, 2):
        assert hall_sum(A.lattice, A.table, k) == count_generating_tuples(A.group, k), f"{spec}, k={k}"
    assert hall_sum(A.lattice, A.table, 0) == 0, "no empty tuple generates a nontrivial group"


@pytest.mark.parametrize("spec", [
    "sym:3", "sym:4", "alt:4", "alt:5", "dihedral:16", "cyclic:36", "elem:2,3",
    "perm:[(0 2 1 3)(4 6 5 7);(0 4 1 5)(2 7 3 6)]", "psl2:7", "pgl2:5", "pgl2:7", "sl2:5",
])
def test_vanishing_lemmas(spec):
    A = analyze_group(spec, restrict_to_maxint=False)
    assert vanishing_violations(A.lattice, A.table) == []
