"""
Table Checks
============
Consistency checks on closed-form rows and the bridge between rows and the
brute-force engine.
"""

import logging
from collections import Counter
from typing import Callable, Dict, List, Optional, Union

import pandas as pd
from sympy import primerange

from ..analysis import GroupAnalysis, analyze_group
from ..config import FAMILY_SWEEP_LIMIT
from ..errors import RegimeError, SpecParameterError, exact_div
from ..models import CrossCheckReport, FamilyRow
from ..perm.group import Group
from .l2 import l2_order, l2_regime, l2_rows
from .ree import ree_exponent, ree_order, ree_rows
from .suzuki import sz_exponent, sz_order, sz_rows

logger = logging.getLogger(__name__)

FRAME_COLUMNS = ["family", "label", "h", "order", "mu", "normalizer_order", "lambda", "condition", "classes"]

ROW_BUILDERS: Dict[str, Callable[[int], List[FamilyRow]]] = {
    "l2": l2_rows,
    "sz": sz_rows,
    "ree": ree_rows,
}

GROUP_ORDERS: Dict[str, Callable[[int], int]] = {
    "l2": l2_order,
    "sz": sz_order,
    "ree": ree_order,
}


def family_rows(family: str, q: int) -> List[FamilyRow]:
    if family not in ROW_BUILDERS:
        raise SpecParameterError(f"unknown family {family!r}; expected one of {sorted(ROW_BUILDERS)}")
    return ROW_BUILDERS[family](q)


def family_group_order(family: str, q: int) -> int:
    return GROUP_ORDERS[family](q)


def family_spec(family: str, q: int) -> str:
    """Spec text of the group a family's rows describe, for brute-force cross-checks."""
    if family == "l2":
        return f"psl2:{q}"
    if family == "sz":
        return f"sz:{q}"
    raise SpecParameterError(f"no constructor for family {family!r}; cross-check unavailable")


def inconsistent_row(rows: List[FamilyRow]) -> Optional[FamilyRow]:
    """First row breaking mu = [N : H]·lambda, or None."""
    for row in rows:
        if row.normalizer_order % row.order:
            return row
        if row.mu != (row.normalizer_order // row.order) * row.lam:
            return row
    return None


def table_self_check(rows: List[FamilyRow]) -> bool:
    bad = inconsistent_row(rows)
    if bad is not None:
        logger.warning("table row %s (h=%s, order %d) is inconsistent: mu=%d, [N:H]=%s, lambda=%d",
                       bad.label, bad.h, bad.order, bad.mu,
                       f"{bad.normalizer_order}/{bad.order}", bad.lam)
        return False
    return True


def eulerian_row_sum(rows: List[FamilyRow], group_order: int, k: int) -> int:
    """Σ mu · [G : N] · |H|^k; each row stands for classes · [G : N] subgroups."""
    return sum(row.classes * row.mu * exact_div(group_order, row.normalizer_order, row.label) * row.order ** k
               for row in rows)


def rows_to_frame(rows: List[FamilyRow]) -> pd.DataFrame:
    return pd.DataFrame([row.to_dict() for row in rows], columns=FRAME_COLUMNS)


def admissible_q(family: str, limit: int = FAMILY_SWEEP_LIMIT) -> List[int]:
    """Every q <= limit that the family's tables cover, ascending."""
    if family == "sz":
        candidates = [2 ** e for e in range(3, limit.bit_length() + 1, 2)]
        return [q for q in candidates if q <= limit]
    if family == "ree":
        candidates, e = [], 3
        while 3 ** e <= limit:
            candidates.append(3 ** e)
            e += 2
        return candidates
    if family != "l2":
        raise SpecParameterError(f"unknown family {family!r}")
    admissible = []
    for p in primerange(2, int(limit ** 0.5) + 1):
        q = p * p
        while q <= limit:
            try:
                l2_regime(q)
                admissible.append(q)
            except RegimeError:
                pass
            q *= p
    return sorted(admissible)


def _regime_check(family: str, q: int) -> None:
    if family == "l2":
        l2_regime(q)
    elif family == "sz":
        sz_exponent(q)
    elif family == "ree":
        ree_exponent(q)


def cross_check_family(source: Union[str, Group, GroupAnalysis],
                       rows: List[FamilyRow],
                       q: int,
                       **kwargs) -> CrossCheckReport:
    """
    Compare the brute-force class fingerprints (|H|, mu, lambda, |N_G(H)|)
    with the table rows as multisets. Classes and rows with mu = lambda = 0
    are left out on both sides.
    """
    if not rows:
        raise RegimeError("no table rows to cross-check")
    analysis = source if isinstance(source, GroupAnalysis) else analyze_group(source, **kwargs)
    lattice, table = analysis.lattice, analysis.table

    brute = Counter()
    for c, rep in enumerate(lattice.class_reps):
        mu, lam = table.mu_by_class[c], table.lam(c)
        if mu == 0 and lam == 0:
            continue
        brute[(int(lattice.orders[rep]), mu, lam, len(lattice.class_normalizers[c]))] += 1
    tabled = Counter()
    for row in rows:
        if row.mu != 0 or row.lam != 0:
            tabled[row.fingerprint()] += row.classes

    report = CrossCheckReport(
        family=rows[0].family,
        q=q,
        group_order=analysis.group.order,
        brute_force=sorted(brute.elements()),
        table=sorted(tabled.elements()),
        missing_from_table=sorted((brute - tabled).elements()),
        missing_from_brute_force=sorted((tabled - brute).elements()),
    )
    for fingerprint in report.missing_from_table:
        logger.info("class %s found by brute force but not in table", fingerprint)
    for fingerprint in report.missing_from_brute_force:
        logger.info("table row %s not found by brute force", fingerprint)
    return report
