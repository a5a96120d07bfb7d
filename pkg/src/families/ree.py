"""
Ree Table
=========
Rows for the small Ree groups R(q), q = 3^e with e odd and e >= 3.
The normalizer of every row is the subgroup itself except for 2^3, whose
normalizer is AΓL1(8) of order 168.
"""

import logging
from typing import List

from sympy import divisors

from ..errors import RegimeError
from ..models import Family, FamilyRow
from ..moebius import moebius_integer
from ..zoo.fields import prime_power_decomposition

logger = logging.getLogger(__name__)

AGAMMAL1_8_ORDER = 168


def ree_order(q: int) -> int:
    return q ** 3 * (q ** 3 + 1) * (q - 1)


def ree_exponent(q: int) -> int:
    decomposition = prime_power_decomposition(q)
    if decomposition is None or decomposition[0] != 3:
        raise RegimeError(f"R(q) needs q a power of 3, got {q}")
    e = decomposition[1]
    if e < 3 or e % 2 == 0:
        raise RegimeError(f"R(q) needs q = 3^e with e odd and e >= 3, got e = {e}")
    return e


def ree_rows(q: int) -> List[FamilyRow]:
    e = ree_exponent(q)
    mu_e = moebius_integer(e)
    rows = []

    def row(label, h, order, mu, lam=None, normalizer=None, condition="h | e"):
        rows.append(FamilyRow(Family.REE, label, h, order, mu,
                              order if normalizer is None else normalizer,
                              mu if lam is None else lam, condition))

    for h in divisors(e):
        m = moebius_integer(e // h)
        qh = 3 ** h
        r = 3 ** ((h + 1) // 2)
        row("R(3^h)", h, ree_order(qh), m)
        row("(3^h+3^((h+1)/2)+1):6", h, 6 * (qh + r + 1), -m)
        row("(3^h)^(1+1+1):(3^h-1)", h, qh ** 3 * (qh - 1), -m)
        if h == 1:
            continue
        row("(3^h-3^((h+1)/2)+1):6", h, 6 * (qh - r + 1), -m, condition="h | e, h > 1")
        row("2xL2(3^h)", h, qh * (qh * qh - 1), -m, condition="h | e, h > 1")
        row("2x(3^h:(3^h-1)/2)", h, qh * (qh - 1), m, condition="h | e, h > 1")
        row("(2^2xD_((3^h+1)/2)):3", h, 6 * (qh + 1), -m, condition="h | e, h > 1")
        row("2^2xD_((3^h+1)/2)", h, 2 * (qh + 1), 3 * m, condition="h | e, h > 1")

    row("2xL2(3)", None, 24, -2 * mu_e, condition="always")
    row("2^3", None, 8, 21 * mu_e, lam=mu_e, normalizer=AGAMMAL1_8_ORDER, condition="always")
    logger.debug("ree_rows(%d): %d rows", q, len(rows))
    return rows
