"""
Closed-form mu / lambda tables for L2(q), Sz(q) and R(q).
"""

from .l2 import l2_order, l2_regime, l2_rows
from .suzuki import sz_order, sz_rows
from .ree import ree_order, ree_rows
from .checks import (
    admissible_q,
    cross_check_family,
    eulerian_row_sum,
    family_group_order,
    family_rows,
    family_spec,
    inconsistent_row,
    rows_to_frame,
    table_self_check,
)

__all__ = [
    "l2_order", "l2_regime", "l2_rows", "sz_order", "sz_rows", "ree_order", "ree_rows",
    "admissible_q", "cross_check_family", "eulerian_row_sum", "family_group_order",
    "family_rows", "family_spec", "inconsistent_row", "rows_to_frame", "table_self_check",
]
