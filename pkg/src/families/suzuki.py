"""
Sz(q) Table
===========
Rows for the Suzuki groups Sz(q), q = 2^e with e odd and e >= 3.
Rows carrying an h run over the divisors h > 1 of e; r(h) = 2^((h+1)/2).
"""

import logging
from typing import List

from sympy import divisors

from ..errors import RegimeError, exact_div
from ..models import Family, FamilyRow
from ..moebius import moebius_integer
from ..zoo.fields import prime_power_decomposition

logger = logging.getLogger(__name__)


def sz_order(q: int) -> int:
    return q * q * (q * q + 1) * (q - 1)


def sz_exponent(q: int) -> int:
    decomposition = prime_power_decomposition(q)
    if decomposition is None or decomposition[0] != 2:
        raise RegimeError(f"Sz(q) needs q a power of 2, got {q}")
    e = decomposition[1]
    if e < 3 or e % 2 == 0:
        raise RegimeError(f"Sz(q) needs q = 2^e with e odd and e >= 3, got e = {e}")
    return e


def sz_rows(q: int) -> List[FamilyRow]:
    e = sz_exponent(q)
    mu_e = moebius_integer(e)
    G = sz_order(q)
    rows = []

    def row(label, h, order, mu, normalizer, lam, condition="h | e, h > 1"):
        rows.append(FamilyRow(Family.SZ, label, h, order, mu, normalizer, lam, condition))

    for h in divisors(e):
        if h == 1:
            continue
        m = moebius_integer(e // h)
        qh = 2 ** h
        r = 2 ** ((h + 1) // 2)
        row("G(h)", h, sz_order(qh), m, sz_order(qh), m)
        row("F(h)", h, qh * qh * (qh - 1), -m, qh * qh * (qh - 1), -m)
        row("B0(h)", h, 2 * (qh - 1), -m, 2 * (qh - 1), -m)
        row("A0(h)", h, qh - 1, exact_div(2 * (q - 1), qh - 1) * m, 2 * (q - 1), m)
        row("B1(h)", h, 4 * (qh - r + 1), -m, 4 * (qh - r + 1), -m)
        row("B2(h)", h, 4 * (qh + r + 1), -m, 4 * (qh + r + 1), -m)

    row("C_4", None, 4, -q * mu_e, 2 * q, -2 * mu_e, "always")
    row("C_2", None, 2, -exact_div(q * q, 2) * mu_e, q * q, -mu_e, "always")
    row("{1}", None, 1, G * mu_e, G, mu_e, "always")
    logger.debug("sz_rows(%d): %d rows", q, len(rows))
    return rows
