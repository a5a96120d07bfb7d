"""Mulambda - Moebius Functions on Subgroup Lattices and Class Posets"""
__version__ = "1.0.0"

from .config import *
from .errors import MulambdaError
from .models import (
    Verdict, Family, ClassRecord, PropertyReport, ProductSplitReport,
    FrattiniQuotientReport, OvergroupDiagnostic, FamilyRow, CrossCheckReport,
    SuiteResult, RunConfig
)
from .perm import Permutation, Group, close
from .zoo import build_group, parse_spec, serialize_spec
from .lattice import SubgroupLattice, ClassPoset, enumerate_subgroups, conjugacy_classes
from .lattice_cache import LatticeCache
from .moebius import moebius_integer, moebius_table
from .analysis import GroupAnalysis, analyze_group
from .property_checks import (
    check_property, product_split_check, frattini_quotient_check,
    overgroup_poset_diagnostic, minimality
)
from .families import l2_rows, sz_rows, ree_rows, table_self_check, cross_check_family
from .cli import MulambdaEngine, main
