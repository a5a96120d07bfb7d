"""
Test Family Tables
==================

Closed-form rows for L2(q), Sz(q) and R(q): known values, regime gating,
internal consistency, the zero-sum identities and brute-force cross-checks.
"""

import os
import sys
from dataclasses import replace

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.errors import RegimeError, SpecParameterError
from src.families import (
    admissible_q,
    cross_check_family,
    eulerian_row_sum,
    family_group_order,
    family_rows,
    family_spec,
    inconsistent_row,
    l2_order,
    l2_regime,
    l2_rows,
    ree_rows,
    rows_to_frame,
    sz_order,
    sz_rows,
    table_self_check,
)
from src.models import Family


def _row(rows, label, h=None):
    matches = [r for r in rows if r.label == label and r.h == h]
    assert len(matches) == 1, f"expected one row {label} (h={h}), found {len(matches)}"
    return matches[0]


# ============================================================================
# Known values
# ============================================================================

def test_l2_4_trivial_row():
    trivial = _row(l2_rows(4), "{1}")
    assert (trivial.mu, trivial.lam, trivial.normalizer_order) == (-60, -1, 60)


def test_l2_4_involutions():
    involution = _row(l2_rows(4), "C_2")
    assert (involution.mu, involution.lam, involution.normalizer_order) == (4, 2, 4)


def test_l2_8_involutions():
    involution = _row(l2_rows(8), "C_2")
    assert (involution.mu, involution.lam, involution.normalizer_order) == (8, 2, 8)


def test_l2_16_trivial_row_vanishes():
    assert _row(l2_rows(16), "{1}").mu == 0, "mu(4) = 0"


def test_l2_even_has_no_pgl_rows():
    for q in (4, 8, 16, 32, 64):
        assert not [r for r in l2_rows(q) if r.label == "G_h"]


def test_l2_27_special_rows():
    rows = l2_rows(27)
    assert _row(rows, "C_3").mu == 9
    assert _row(rows, "C_2").mu == 14
    assert _row(rows, "{1}").mu == -l2_order(27)


def test_sz_8_rows():
    rows = sz_rows(8)
    assert _row(rows, "{1}").mu == -29120
    c4 = _row(rows, "C_4")
    assert (c4.mu, c4.lam, c4.normalizer_order) == (8, 2, 16)
    c2 = _row(rows, "C_2")
    assert (c2.mu, c2.lam, c2.normalizer_order) == (32, 1, 64)


def test_ree_27_rows():
    rows = ree_rows(27)
    cube = _row(rows, "2^3")
    assert (cube.mu, cube.lam, cube.normalizer_order) == (-21, -1, 168)
    assert _row(rows, "R(3^h)", 1).mu == -1
    assert _row(rows, "2xL2(3)").mu == 2
    assert not [r for r in rows if r.h == 1 and r.label == "2xL2(3^h)"]


# ============================================================================
# Regimes
# ============================================================================

@pytest.mark.parametrize("q", [9, 25, 7, 12, 3, 1])
def test_l2_regime_errors(q):
    with pytest.raises(RegimeError):
        l2_rows(q)


@pytest.mark.parametrize("q,family", [
    (4, Family.L2_EVEN), (27, Family.L2_ODD), (121, Family.L2_ODD),
    (49, Family.L2_ODD_SQUARE), (169, Family.L2_ODD_SQUARE), (625, Family.L2_ODD),
])
def test_l2_regime(q, family):
    assert l2_regime(q)[0] is family


@pytest.mark.parametrize("q", [2, 4, 16, 6, 27])
def test_sz_regime_errors(q):
    with pytest.raises(RegimeError):
        sz_rows(q)


@pytest.mark.parametrize("q", [3, 9, 81, 8])
def test_ree_regime_errors(q):
    with pytest.raises(RegimeError):
        ree_rows(q)


def test_unknown_family():
    with pytest.raises(SpecParameterError):
        family_rows("g2", 4)
    with pytest.raises(SpecParameterError):
        family_spec("ree", 27)


def test_admissible_q():
    assert admissible_q("sz", 2 ** 9) == [8, 32, 128, 512]
    assert admissible_q("ree", 3 ** 7) == [27, 243, 2187]
    l2 = admissible_q("l2", 200)
    assert l2 == [4, 8, 16, 27, 32, 49, 64, 81, 121, 125, 128, 169]


# ============================================================================
# Consistency
# ============================================================================

@pytest.mark.parametrize("family", ["l2", "sz", "ree"])
def test_self_check_sweep(family):
    for q in admissible_q(family):
        rows = family_rows(family, q)
        assert table_self_check(rows), f"{family} q={q}: {inconsistent_row(rows)}"
        G = family_group_order(family, q)
        for row in rows:
            assert G % row.normalizer_order == 0, f"{family} q={q}: |N| of {row.label} does not divide |G|"
            assert row.normalizer_order % row.order == 0


def test_self_check_detects_fault(caplog):
    rows = l2_rows(8)
    rows[-2] = replace(rows[-2], lam=rows[-2].lam + 1)
    assert inconsistent_row(rows) is rows[-2]
    assert not table_self_check(rows)
    assert "inconsistent" in caplog.text


@pytest.mark.parametrize("q", [4, 8, 16, 27, 32, 125, 243])
def test_l2_zero_sums(q):
    rows, G = l2_rows(q), l2_order(q)
    assert eulerian_row_sum(rows, G, 0) == 0
    assert eulerian_row_sum(rows, G, 1) == 0


@pytest.mark.parametrize("q", [8, 32, 128])
def test_sz_zero_sums(q):
    rows, G = sz_rows(q), sz_order(q)
    assert eulerian_row_sum(rows, G, 0) == 0
    assert eulerian_row_sum(rows, G, 1) == 0


def test_rows_to_frame():
    frame = rows_to_frame(sz_rows(8))
    assert list(frame.columns) == ["family", "label", "h", "order", "mu", "normalizer_order", "lambda", "condition", "classes"]
    assert len(frame) == len(sz_rows(8))
    assert frame["family"].unique().tolist() == ["Sz"]
    assert frame["classes"].eq(1).all()


def test_square_table_maximal_classes():
    rows = l2_rows(49)
    maximal = {row.label: row.classes for row in rows if row.condition == "maximal subgroup"}
    assert maximal["PGL_2(p)"] == 2
    assert maximal["A_5"] == 2
    assert sum(maximal.values()) == 7, "L2(49) has seven classes of maximal subgroups"


def test_square_table_dihedral_classes():
    by_label = {row.label: row for row in l2_rows(49)}
    assert by_label["D_{2(p+1)}"].classes == 1
    assert by_label["D_{2(p-1)}"].classes == 2
    assert by_label["D_6"].classes == 2
    assert by_label["D_10"].classes == 1
    by_label = {row.label: row for row in l2_rows(169)}
    assert by_label["D_{2(p+1)}"].classes == 2
    assert by_label["D_{2(p-1)}"].classes == 1


def test_eulerian_sum_counts_every_class():
    row = l2_rows(49)[0]
    single = replace(row, mu=-1, order=60, normalizer_order=60, lam=-1)
    double = replace(single, classes=2)
    G = family_group_order("l2", 49)
    for k in (0, 1, 2):
        assert eulerian_row_sum([double], G, k) == 2 * eulerian_row_sum([single], G, k)


# ============================================================================
# Cross-checks against brute force
# ============================================================================

@pytest.mark.parametrize("q", [4, 8])
def test_cross_check_small(q):
    report = cross_check_family(family_spec("l2", q), l2_rows(q), q)
    assert report.group_order == l2_order(q)
    assert report.match, f"missing from table {report.missing_from_table}, " \
                         f"missing from brute force {report.missing_from_brute_force}"


def test_cross_check_detects_fault():
    rows = l2_rows(4)
    rows[0] = replace(rows[0], mu=rows[0].mu + 1, lam=rows[0].lam + 1)
    report = cross_check_family("psl2:4", rows, 4)
    assert not report.match
    assert report.missing_from_table and report.missing_from_brute_force


@pytest.mark.slow
@pytest.mark.parametrize("family,q", [("l2", 16), ("l2", 27), ("sz", 8)])
def test_cross_check_stretch(family, q):
    report = cross_check_family(family_spec(family, q), family_rows(family, q), q)
    assert report.match, f"missing from table {report.missing_from_table}, " \
                         f"missing from brute force {report.missing_from_brute_force}"
