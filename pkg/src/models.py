"""
Mulambda Data Models
====================
Data classes for property reports, product / quotient checks, table rows
and run configuration.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from .config import DEFAULT_FORMAT, DEFAULT_THREADS, ELEMENT_CAP, OUTPUT_FORMATS, SUBGROUP_CAP


class Verdict(Enum):
    """Outcome of a check. NOT_APPLICABLE means a hypothesis failed, not the claim."""
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not applicable"


class Family(Enum):
    """Closed-form table families."""
    L2_EVEN = "L2even"
    L2_ODD = "L2odd"
    L2_ODD_SQUARE = "L2oddSquare"
    SZ = "Sz"
    REE = "Ree"


@dataclass
class ClassRecord:
    """One conjugacy class of subgroups evaluated against mu = t * lambda."""
    class_index: int
    rep_index: int  # Subgroup index of the canonical representative
    rep_order: int
    class_size: int
    mu: int
    lam: int
    normalizer_order: int  # |N_G(H)|
    normalizer_in_derived_order: int  # |N_G'(H)|
    derived_meet_order: int  # |G' ∩ H|
    t: int  # [N_G'(H) : G' ∩ H]
    in_maxint: bool

    @property
    def predicted_mu(self) -> int:
        return self.t * self.lam

    @property
    def passed(self) -> bool:
        return self.mu == self.predicted_mu

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rep_order": self.rep_order,
            "class_size": self.class_size,
            "mu": self.mu,
            "lambda": self.lam,
            "t": self.t,
            "pass": self.passed,
        }

    def to_row(self) -> Dict[str, Any]:
        """Wide form for human and CSV tables."""
        return {
            "class": self.class_index,
            "rep_order": self.rep_order,
            "class_size": self.class_size,
            "mu": self.mu,
            "lambda": self.lam,
            "N_G": self.normalizer_order,
            "N_G'": self.normalizer_in_derived_order,
            "G'^H": self.derived_meet_order,
            "t": self.t,
            "t*lambda": self.predicted_mu,
            "maxint": self.in_maxint,
            "pass": self.passed,
        }


@dataclass
class PropertyReport:
    """(mu, lambda)-property verdict for one group."""
    spec: str
    order: int
    solvable: bool
    derived_order: int
    frattini_order: int
    subgroup_count: int
    class_count: int
    classes: List[ClassRecord] = field(default_factory=list)
    maxint_only: bool = False

    @property
    def failing(self) -> List[ClassRecord]:
        return [c for c in self.classes if not c.passed]

    @property
    def verdict(self) -> Verdict:
        return Verdict.PASS if not self.failing else Verdict.FAIL

    def to_dict(self) -> Dict[str, Any]:
        return {
            "spec": self.spec,
            "order": self.order,
            "solvable": self.solvable,
            "derived_order": self.derived_order,
            "frattini_order": self.frattini_order,
            "classes": [c.to_dict() for c in self.classes],
            "verdict": self.verdict.value,
        }


@dataclass
class ProductSplitReport:
    """Direct-product splitting of mu and lambda over G1 x G2."""
    left_spec: str
    right_spec: str
    maximal_split: bool  # Every maximal subgroup of G1 x G2 splits
    split_subgroups_checked: int = 0
    mismatches: List[str] = field(default_factory=list)
    left_verdict: Optional[Verdict] = None
    right_verdict: Optional[Verdict] = None
    product_verdict: Optional[Verdict] = None

    @property
    def verdict(self) -> Verdict:
        if not self.maximal_split:
            return Verdict.NOT_APPLICABLE
        if self.mismatches:
            return Verdict.FAIL
        factors_pass = self.left_verdict == Verdict.PASS and self.right_verdict == Verdict.PASS
        if factors_pass and self.product_verdict != Verdict.PASS:
            return Verdict.FAIL
        return Verdict.PASS

    def to_dict(self) -> Dict[str, Any]:
        return {
            "left": self.left_spec,
            "right": self.right_spec,
            "maximal_split": self.maximal_split,
            "split_subgroups_checked": self.split_subgroups_checked,
            "mismatches": list(self.mismatches),
            "left_verdict": self.left_verdict.value if self.left_verdict else None,
            "right_verdict": self.right_verdict.value if self.right_verdict else None,
            "product_verdict": self.product_verdict.value if self.product_verdict else None,
            "verdict": self.verdict.value,
        }


@dataclass
class FrattiniQuotientReport:
    """Comparison of mu, lambda and t between H >= Phi(G) and H/Phi in G/Phi."""
    spec: str
    frattini_order: int
    quotient_order: int
    classes_checked: int = 0
    mismatches: List[str] = field(default_factory=list)
    group_verdict: Optional[Verdict] = None
    quotient_verdict: Optional[Verdict] = None

    @property
    def verdict(self) -> Verdict:
        return Verdict.FAIL if self.mismatches else Verdict.PASS

    def to_dict(self) -> Dict[str, Any]:
        return {
            "spec": self.spec,
            "frattini_order": self.frattini_order,
            "quotient_order": self.quotient_order,
            "classes_checked": self.classes_checked,
            "mismatches": list(self.mismatches),
            "group_verdict": self.group_verdict.value if self.group_verdict else None,
            "quotient_verdict": self.quotient_verdict.value if self.quotient_verdict else None,
            "verdict": self.verdict.value,
        }


@dataclass
class OvergroupDiagnostic:
    """Overgroup interval S of H in the lattice against its image S-bar in the class poset."""
    subgroup_index: int
    subgroup_order: int
    overgroups: List[int]  # Subgroup indices K with H <= K
    overclasses: List[int]  # Class indices [K] with [H] <= [K]
    isomorphic: bool
    graphs: Tuple[Any, Any] = field(default=(None, None), repr=False, compare=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subgroup_index": self.subgroup_index,
            "subgroup_order": self.subgroup_order,
            "S": len(self.overgroups),
            "S_bar": len(self.overclasses),
            "isomorphic": self.isomorphic,
        }


@dataclass
class FamilyRow:
    """One row of a closed-form table evaluated at a concrete q."""
    family: Family
    label: str
    h: Optional[int]  # Divisor of e, None for rows without an h-parameter
    order: int  # |H|
    mu: int
    normalizer_order: int  # |N_G(H)|
    lam: int
    condition: str  # Side condition that admitted the row
    classes: int = 1  # Conjugacy classes of subgroups the row stands for

    @property
    def index_in_normalizer(self) -> int:
        return self.normalizer_order // self.order

    def fingerprint(self) -> Tuple[int, int, int, int]:
        return (self.order, self.mu, self.lam, self.normalizer_order)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family.value,
            "label": self.label,
            "h": self.h,
            "order": self.order,
            "mu": self.mu,
            "normalizer_order": self.normalizer_order,
            "lambda": self.lam,
            "condition": self.condition,
            "classes": self.classes,
        }


@dataclass
class CrossCheckReport:
    """Brute-force fingerprints against table rows."""
    family: Family
    q: int
    group_order: int
    brute_force: List[Tuple[int, int, int, int]] = field(default_factory=list)
    table: List[Tuple[int, int, int, int]] = field(default_factory=list)
    missing_from_table: List[Tuple[int, int, int, int]] = field(default_factory=list)
    missing_from_brute_force: List[Tuple[int, int, int, int]] = field(default_factory=list)

    @property
    def match(self) -> bool:
        return not self.missing_from_table and not self.missing_from_brute_force

    @property
    def verdict(self) -> Verdict:
        return Verdict.PASS if self.match else Verdict.FAIL

    def to_dict(self) -> Dict[str, Any]:
        keys = ("order", "mu", "lambda", "normalizer_order")
        return {
            "family": self.family.value,
            "q": self.q,
            "group_order": self.group_order,
            "match": self.match,
            "missing_from_table": [dict(zip(keys, f)) for f in self.missing_from_table],
            "missing_from_brute_force": [dict(zip(keys, f)) for f in self.missing_from_brute_force],
        }


@dataclass
class SuiteResult:
    """One corpus line after verification."""
    spec: str
    expected: Optional[Verdict]
    observed: Optional[Verdict]
    error: Optional[str] = None
    processing_time: float = 0.0

    @property
    def met(self) -> bool:
        if self.error is not None:
            return False
        return self.expected is None or self.expected == self.observed

    def to_dict(self) -> Dict[str, Any]:
        return {
            "spec": self.spec,
            "expected": self.expected.value if self.expected else None,
            "observed": self.observed.value if self.observed else None,
            "met": self.met,
            "error": self.error,
        }


@dataclass
class RunConfig:
    """Resolved command-line invocation."""
    command: str
    specs: List[str] = field(default_factory=list)
    family: Optional[str] = None
    q: Optional[int] = None
    corpus: Optional[str] = None
    output_format: str = DEFAULT_FORMAT
    cache_dir: Optional[str] = None
    use_cache: bool = True
    element_cap: int = ELEMENT_CAP
    subgroup_cap: int = SUBGROUP_CAP
    maxint_only: bool = False
    threads: int = DEFAULT_THREADS
    cross_check: bool = False
    cache_action: Optional[str] = None

    def __post_init__(self):
        if self.element_cap <= 0 or self.subgroup_cap <= 0:
            raise ValueError("caps must be positive")
        if self.threads <= 0:
            raise ValueError("thread count must be positive")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"format must be one of {OUTPUT_FORMATS}")
