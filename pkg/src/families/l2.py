"""
L2(q) Tables
============
Closed-form rows for the subgroup classes of L2(q) = PSL2(q) with nonzero
mu or lambda.

    q = 2^e                         even table
    q = p^e, p odd, e > 2           odd table plus the special rows D4, C3, C2, {1}
    q = p^2, p = ±1 mod 5           same as above
    q = p^2, p >= 7, p = ±2 mod 5   square table (non-maximal rows plus the maximal ones)

Notation: r(h) = (p^h - 1)/2, s(h) = (p^h + 1)/2. D_n and C_n are named by
their order. For p = 2, 2r(h) is read as 2^h - 1.
"""

import logging
from math import gcd
from typing import List, Optional, Tuple

from sympy import divisors

from ..errors import RegimeError, exact_div
from ..models import Family, FamilyRow
from ..moebius import moebius_integer
from ..zoo.fields import prime_power_decomposition

logger = logging.getLogger(__name__)


def l2_order(q: int) -> int:
    return q * (q * q - 1) // gcd(2, q - 1)


def pgl2_order(q: int) -> int:
    return q * (q * q - 1)


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def l2_regime(q: int) -> Tuple[Family, int, int]:
    """(family, p, e) for a q covered by the tables; RegimeError otherwise."""
    decomposition = prime_power_decomposition(q)
    if decomposition is None:
        raise RegimeError(f"q = {q} is not a prime power")
    p, e = decomposition
    if q < 4:
        raise RegimeError(f"q = {q} is below the tabulated range (q >= 4)")
    if e == 1:
        raise RegimeError(f"q = {q} is prime; prime fields lie outside the table regime")
    if p == 2:
        return Family.L2_EVEN, p, e
    if e > 2 or p % 5 in (1, 4):
        return Family.L2_ODD, p, e
    if p >= 7 and p % 5 in (2, 3):
        return Family.L2_ODD_SQUARE, p, e
    raise RegimeError(f"q = {q} lies outside the table regime (needs direct computation)")


def l2_rows(q: int) -> List[FamilyRow]:
    """Every tabulated class of L2(q) with mu != 0 or lambda != 0."""
    family, p, e = l2_regime(q)
    if family is Family.L2_EVEN:
        rows = _even_rows(q, e)
    elif family is Family.L2_ODD:
        rows = _odd_rows(q, p, e) + _special_rows(q, p, e)
    else:
        rows = _square_rows(q, p)
    logger.debug("l2_rows(%d): %d rows (%s)", q, len(rows), family.value)
    return rows


# ============================================================================
# q = 2^e
# ============================================================================

def _even_rows(q: int, e: int) -> List[FamilyRow]:
    G = l2_order(q)
    mu_e = moebius_integer(e)
    rows = []

    def row(label, h, order, mu, normalizer, lam, condition="h | e, h > 1"):
        rows.append(FamilyRow(Family.L2_EVEN, label, h, order, mu, normalizer, lam, condition))

    for h in divisors(e):
        if h == 1:
            continue
        m = moebius_integer(e // h)
        ph = 2 ** h
        row("S_h", h, ph * (ph * ph - 1), m, ph * (ph * ph - 1), m)
        row("M_{h,2r(h)}", h, ph * (ph - 1), -m, ph * (ph - 1), -m)
        row("D_{4r(h)}", h, 2 * (ph - 1), -m, 2 * (ph - 1), -m)
        row("D_{4s(h)}", h, 2 * (ph + 1), -m, 2 * (ph + 1), -m)
        row("C_{2r(h)}", h, ph - 1, exact_div(2 * (q - 1), ph - 1) * m, 2 * (q - 1), m)
    row("C_2", None, 2, -q * mu_e, q, -2 * mu_e, "always")
    row("{1}", None, 1, G * mu_e, G, mu_e, "always")
    return rows


# ============================================================================
# q = p^e, p odd: general rows
# ============================================================================

def _suppressed(kind: str, order: int) -> bool:
    """Rows that coincide with D4, C3, C2 or {1} belong to the special table."""
    return (kind == "cyclic" and order <= 3) or (kind == "dihedral" and order <= 4)


def _odd_rows(q: int, p: int, e: int) -> List[FamilyRow]:
    rows = []

    def row(label, h, kind, order, mu, normalizer, lam, condition):
        if _suppressed(kind, order):
            return
        rows.append(FamilyRow(Family.L2_ODD, label, h, order, mu, normalizer, lam, condition))

    for h in divisors(e):
        m = moebius_integer(e // h)
        ph = p ** h
        r, s = (ph - 1) // 2, (ph + 1) // 2
        if (e // h) % 2 == 0:
            row("G_h", h, "other", pgl2_order(ph), m, pgl2_order(ph), m, "e/h even")
            row("M_{h,2r(h)}", h, "other", ph * 2 * r, -m, ph * 2 * r, -m, "e/h even")
            if ph != 3:
                normalizer = gcd(8 * r, q - 1)
                lam = -exact_div(2 * m, gcd(2, exact_div(q - 1, 4 * r)), "lambda(D_{4r(h)})")
                row("D_{4r(h)}", h, "dihedral", 4 * r, -2 * m, normalizer, lam, "e/h even, p^h != 3")
            normalizer = gcd(8 * s, q - 1)
            lam = -exact_div(2 * m, gcd(2, exact_div(q - 1, 4 * s)), "lambda(D_{4s(h)})")
            row("D_{4s(h)}", h, "dihedral", 4 * s, -2 * m, normalizer, lam, "e/h even")
            if ph != 3:
                row("C_{2r(h)}", h, "cyclic", 2 * r, exact_div(2 * (q - 1), ph - 1) * m, q - 1, 2 * m,
                    "e/h even, p^h != 3")
        else:
            row("S_h", h, "other", l2_order(ph), m, l2_order(ph), m, "e/h odd")
            if r > 1:
                row("M_{h,r(h)}", h, "other", ph * r, -m, ph * r, -m, "e/h odd")
            if ph not in (3, 5):
                row("D_{2r(h)}", h, "dihedral", 2 * r, -m, 2 * r, -m, "e/h odd, p^h not in {3, 5}")
            if ph != 3:
                row("D_{2s(h)}", h, "dihedral", 2 * s, -m, 2 * s, -m, "e/h odd, p^h != 3")
            if ph not in (3, 5):
                row("C_{r(h)}", h, "cyclic", r, exact_div(2 * (q - 1), ph - 1) * m, q - 1, m,
                    "e/h odd, p^h not in {3, 5}")
    return rows


def _special_rows(q: int, p: int, e: int) -> List[FamilyRow]:
    """D4, C3, C2 and {1}, each with its piecewise definition."""
    mu_e = moebius_integer(e)
    G = l2_order(q)
    rows = []

    def row(label, order, mu, normalizer, lam, condition):
        rows.append(FamilyRow(Family.L2_ODD, label, None, order, mu, normalizer, lam, condition))

    # D4
    alpha = -6 if _is_power_of_two(e) else 0
    if p == 3 and e % 2 == 0:
        beta = 6 * mu_e
    elif p in (3, 5) and e % 2:
        beta = 3 * mu_e
    else:
        beta = 0
    mu_d4 = alpha - beta
    if q % 8 in (1, 7):
        row("D_4", 4, mu_d4, 24, exact_div(mu_d4, 6, "lambda(D_4)"), "q = ±1 mod 8, N = S_4")
    else:
        row("D_4", 4, mu_d4, 12, exact_div(mu_d4, 3, "lambda(D_4)"), "q != ±1 mod 8, N = A_4")

    # C3
    if p == 7 and e % 2:
        mu_c3, lam_c3 = exact_div(q - 1, 3) * mu_e, mu_e
    elif p == 3:
        mu_c3, lam_c3 = q // 3, 1
    else:
        mu_c3, lam_c3 = 0, 0
    normalizer_c3 = q if q % 3 == 0 else (q - 1 if q % 3 == 1 else q + 1)
    row("C_3", 3, mu_c3, normalizer_c3, lam_c3, f"q = {q % 3} mod 3")

    # C2
    gamma = (q - 1) // 2 if _is_power_of_two(e) else 0
    if p == 3 and e % 2 == 0:
        delta = -(q - 1) * mu_e
    elif p == 3:
        delta = (q + 1) // 2 * mu_e
    elif p == 5 and e % 2:
        delta = -(q - 1) // 2 * mu_e
    else:
        delta = 0
    mu_c2 = gamma - delta
    normalizer_c2 = q - 1 if q % 4 == 1 else q + 1
    row("C_2", 2, mu_c2, normalizer_c2, exact_div(2 * mu_c2, normalizer_c2, "lambda(C_2)"), f"q = {q % 4} mod 4")

    # {1}
    if p == 3 and e % 2:
        row("{1}", 1, G * mu_e, G, mu_e, "p = 3, e odd")
    else:
        row("{1}", 1, 0, G, 0, "otherwise")
    return rows


# ============================================================================
# q = p^2, p >= 7, p = ±2 mod 5
# ============================================================================

def _square_rows(q: int, p: int) -> List[FamilyRow]:
    G = l2_order(q)
    n = p * p - 1
    rows = []

    def row(label, order, mu, normalizer, lam, condition="non-maximal", classes=1):
        rows.append(FamilyRow(Family.L2_ODD_SQUARE, label, None, order, mu, normalizer, lam, condition, classes))

    def dihedral(label, order, normalizer, lam):
        # two classes exactly when the normalizer doubles H
        row(label, order, 2, normalizer, lam, classes=normalizer // order)

    row("G", G, 1, G, 1, "whole group")
    for label, order, classes in (("E_{p^2}:C_{(p^2-1)/2}", q * n // 2, 1), ("D_{p^2-1}", n, 1), ("D_{p^2+1}", q + 1, 1),
                                  ("PGL_2(p)", pgl2_order(p), 2), ("A_5", 60, 2)):
        row(label, order, -1, order, -1, "maximal subgroup", classes)

    row("C_p:C_{p-1}", p * (p - 1), 1, p * (p - 1), 1)
    row("C_{(p^2-1)/2}", n // 2, 2, n, 1)
    dihedral("D_{2(p+1)}", 2 * (p + 1), (p + 1) * gcd(4, p - 1), 2 // gcd(2, (p - 1) // 2))
    dihedral("D_{2(p-1)}", 2 * (p - 1), (p - 1) * gcd(4, p + 1), 2 // gcd(2, (p + 1) // 2))
    row("C_{p-1}", p - 1, -2 * (p + 1), n, -2)
    row("A_4", 12, 2, 24, 1, classes=2)
    dihedral("D_10", 10, 10, 2)
    dihedral("D_6", 6, 12, 1)
    row("D_4", 4, -6, 24, -1, classes=2)
    row("C_3", 3, -exact_div(2 * n, 3), n, -2)
    row("C_2", 2, -exact_div(3 * n, 2), n, -3)
    row("{1}", 1, 0, G, 0)
    return rows


def l2_family_of(q: int) -> Optional[Family]:
    try:
        return l2_regime(q)[0]
    except RegimeError:
        return None
