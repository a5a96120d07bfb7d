"""
Property Checks
===============
The (mu, lambda)-property

    mu(H) = [N_G'(H) : G' ∩ H] · lambda(H)

evaluated per conjugacy class, plus the direct-product splitting check,
the Frattini-quotient reduction check and the overgroup-poset diagnostic.
"""

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Dict, List, Tuple, Union

import networkx as nx
import numpy as np

from .analysis import GroupAnalysis, analyze_group
from .config import ELEMENT_CAP
from .errors import exact_div
from .models import (
    ClassRecord,
    FrattiniQuotientReport,
    OvergroupDiagnostic,
    ProductSplitReport,
    PropertyReport,
)
from .moebius import mu_per_subgroup
from .perm.group import Group, is_solvable, quotient_by
from .zoo.constructors import direct_product
from .zoo.spec import GroupSpec, parse_spec

logger = logging.getLogger(__name__)

Source = Union[str, GroupSpec, Group, GroupAnalysis]


def _analysis(source: Source, **kwargs) -> GroupAnalysis:
    if isinstance(source, GroupAnalysis):
        return source
    return analyze_group(source, **kwargs)


def _t_index(analysis: GroupAnalysis, subgroup_ranks: np.ndarray, normalizer_ranks: np.ndarray) -> Tuple[int, int, int]:
    """(|N_G'(H)|, |G' ∩ H|, t) for one subgroup."""
    derived = analysis.derived_mask
    n_in_derived = int(np.count_nonzero(derived[normalizer_ranks]))
    meet = int(np.count_nonzero(derived[subgroup_ranks]))
    return n_in_derived, meet, exact_div(n_in_derived, meet, "t index")


def _class_record(analysis: GroupAnalysis, c: int) -> ClassRecord:
    lattice = analysis.lattice
    rep = int(lattice.class_reps[c])
    normalizer = lattice.class_normalizers[c]
    n_in_derived, meet, t = _t_index(analysis, lattice.subgroups[rep], normalizer)
    return ClassRecord(
        class_index=c,
        rep_index=rep,
        rep_order=int(lattice.orders[rep]),
        class_size=lattice.class_size(c),
        mu=analysis.table.mu_by_class[c],
        lam=analysis.table.lam(c),
        normalizer_order=len(normalizer),
        normalizer_in_derived_order=n_in_derived,
        derived_meet_order=meet,
        t=t,
        in_maxint=bool(lattice.maxint[rep]),
    )


def check_property(source: Source, maxint_only: bool = False, threads: int = 1, **kwargs) -> PropertyReport:
    """
    Evaluate the (mu, lambda)-property at one representative per class.

    Args:
        source: spec, Group or an existing GroupAnalysis
        maxint_only: skip classes outside MaxInt(G) (both sides are 0 there)
        threads: classes are independent and may be evaluated concurrently
    """
    analysis = _analysis(source, threads=threads, **kwargs)
    lattice = analysis.lattice
    classes = [c for c in range(lattice.class_count)
               if not maxint_only or lattice.maxint[lattice.class_reps[c]]]

    records: Dict[int, ClassRecord] = {}
    if threads > 1 and len(classes) > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            futures = {executor.submit(_class_record, analysis, c): c for c in classes}
            for future in as_completed(futures):
                records[futures[future]] = future.result()
    else:
        for c in classes:
            records[c] = _class_record(analysis, c)

    ordered = sorted(records.values(), key=lambda r: (r.rep_order, r.class_size, r.class_index))
    report = PropertyReport(
        spec=analysis.spec,
        order=analysis.group.order,
        solvable=analysis.solvable,
        derived_order=len(analysis.derived_ranks),
        frattini_order=analysis.frattini_order,
        subgroup_count=len(lattice),
        class_count=lattice.class_count,
        classes=ordered,
        maxint_only=maxint_only,
    )
    if report.failing:
        logger.info("%s fails on %d classes", analysis.spec or "group", len(report.failing))
    return report


def class_invariance_violations(source: Source, **kwargs) -> List[str]:
    """mu and t evaluated at every member of every class; differences are reported."""
    analysis = _analysis(source, **kwargs)
    lattice, G = analysis.lattice, analysis.group
    mu_each = mu_per_subgroup(lattice, restrict_to_maxint=False)
    violations = []
    for c, members in enumerate(lattice.class_members):
        rep = int(members[0])
        _, _, t_rep = _t_index(analysis, lattice.subgroups[rep], lattice.class_normalizers[c])
        for i in members:
            i = int(i)
            if mu_each[i] != analysis.table.mu_by_class[c]:
                violations.append(f"class {c}: mu({i}) = {mu_each[i]} differs from {analysis.table.mu_by_class[c]}")
            normalizer = G.normalizer_ranks(lattice.subgroups[i], lattice.generators[i])
            _, _, t = _t_index(analysis, lattice.subgroups[i], normalizer)
            if t != t_rep:
                violations.append(f"class {c}: t({i}) = {t} differs from {t_rep}")
    return violations


# ============================================================================
# Direct products
# ============================================================================

def _split(H: np.ndarray, left_proj: np.ndarray, right_proj: np.ndarray) -> Tuple[np.ndarray, np.ndarray, bool]:
    """H ∩ (G1 × 1) and H ∩ (1 × G2) as factor ranks, and whether H is their product."""
    H1 = np.unique(left_proj[H[right_proj[H] == 0]])
    H2 = np.unique(right_proj[H[left_proj[H] == 0]])
    return H1, H2, len(H) == len(H1) * len(H2)


def product_split_check(left: Source, right: Source, threads: int = 1, **kwargs) -> ProductSplitReport:
    """
    mu and lambda over G1 × G2 against the factor values.

    The splitting hypothesis (every maximal subgroup of G1 × G2 is a product
    M1 × M2) is tested first; without it the report is NOT_APPLICABLE.
    """
    A1 = _analysis(left, threads=threads, **kwargs)
    A2 = _analysis(right, threads=threads, **kwargs)
    if A1.spec and A2.spec:
        product_source = GroupSpec("product", children=(parse_spec(A1.spec), parse_spec(A2.spec)))
    else:
        product_source = direct_product(A1.group, A2.group, kwargs.get("element_cap", ELEMENT_CAP))
    A = _analysis(product_source, threads=threads, **kwargs)

    G1, G2 = A1.group, A2.group
    E = A.group.elements.astype(np.int64)
    left_proj = G1.ranks_of(E[:, :G1.degree])
    right_proj = G2.ranks_of(E[:, G1.degree:] - G1.degree)

    lattice = A.lattice
    report = ProductSplitReport(left_spec=A1.spec, right_spec=A2.spec, maximal_split=True)
    for c, rep in enumerate(lattice.class_reps):
        if lattice.maximal[rep] and not _split(lattice.subgroups[rep], left_proj, right_proj)[2]:
            report.maximal_split = False
            logger.info("maximal subgroup of order %d does not split", lattice.orders[rep])
            break
    if not report.maximal_split:
        return report

    for c, rep in enumerate(lattice.class_reps):
        H1, H2, split = _split(lattice.subgroups[rep], left_proj, right_proj)
        if not split:
            continue
        report.split_subgroups_checked += 1
        i1, i2 = A1.lattice.index_of(H1), A2.lattice.index_of(H2)
        mu_expected = A1.table.mu(A1.lattice, i1) * A2.table.mu(A2.lattice, i2)
        lam_expected = (A1.table.lam(int(A1.lattice.class_of[i1]))
                        * A2.table.lam(int(A2.lattice.class_of[i2])))
        if A.table.mu_by_class[c] != mu_expected:
            report.mismatches.append(
                f"class {c} (order {len(H1)}x{len(H2)}): mu {A.table.mu_by_class[c]} != {mu_expected}")
        if A.table.lam(c) != lam_expected:
            report.mismatches.append(
                f"class {c} (order {len(H1)}x{len(H2)}): lambda {A.table.lam(c)} != {lam_expected}")

    report.left_verdict = check_property(A1, threads=threads).verdict
    report.right_verdict = check_property(A2, threads=threads).verdict
    report.product_verdict = check_property(A, threads=threads).verdict
    return report


# ============================================================================
# Frattini quotient
# ============================================================================

def frattini_quotient_check(source: Source, threads: int = 1, **kwargs) -> FrattiniQuotientReport:
    """For every H >= Φ(G): mu, lambda and t of H in G against H/Φ in G/Φ."""
    A = _analysis(source, threads=threads, **kwargs)
    lattice, G = A.lattice, A.group
    phi = lattice.subgroups[lattice.frattini]
    group_report = check_property(A, threads=threads)

    if len(phi) == 1:
        return FrattiniQuotientReport(
            spec=A.spec, frattini_order=1, quotient_order=G.order,
            group_verdict=group_report.verdict, quotient_verdict=group_report.verdict,
        )

    Q, projection = quotient_by(G, phi, kwargs.get("element_cap", ELEMENT_CAP))
    AQ = analyze_group(Q, threads=threads, **{k: v for k, v in kwargs.items() if k != "cache"})
    quotient_report = check_property(AQ, threads=threads)
    by_class_g = {r.class_index: r for r in group_report.classes}
    by_class_q = {r.class_index: r for r in quotient_report.classes}

    report = FrattiniQuotientReport(
        spec=A.spec, frattini_order=len(phi), quotient_order=Q.order,
        group_verdict=group_report.verdict, quotient_verdict=quotient_report.verdict,
    )
    for c, rep in enumerate(lattice.class_reps):
        rep = int(rep)
        if not lattice.leq(lattice.frattini, rep):
            continue
        image = np.unique(projection[lattice.subgroups[rep]])
        cq = int(AQ.lattice.class_of[AQ.lattice.index_of(image)])
        g_rec, q_rec = by_class_g[c], by_class_q[cq]
        report.classes_checked += 1
        for name, a, b in (("mu", g_rec.mu, q_rec.mu), ("lambda", g_rec.lam, q_rec.lam), ("t", g_rec.t, q_rec.t)):
            if a != b:
                report.mismatches.append(f"class {c} (order {g_rec.rep_order}): {name} {a} != {b} in quotient")
    return report


# ============================================================================
# Overgroup posets
# ============================================================================

def overgroup_poset_diagnostic(source: Source, subgroup_index: int, **kwargs) -> OvergroupDiagnostic:
    """
    S = {K : H <= K} under inclusion against S-bar = {[K] : [H] <= [K]} under
    the class order; isomorphism is decided exactly with networkx.
    """
    A = _analysis(source, **kwargs)
    lattice, poset = A.lattice, A.poset
    S = [int(k) for k in lattice.overgroups(subgroup_index)]
    S_bar = [int(d) for d in poset.above[int(lattice.class_of[subgroup_index])]]

    lattice_graph = nx.DiGraph()
    lattice_graph.add_nodes_from(S)
    lattice_graph.add_edges_from((a, b) for a in S for b in S if a != b and lattice.leq(a, b))
    class_graph = nx.DiGraph()
    class_graph.add_nodes_from(S_bar)
    class_graph.add_edges_from((c, d) for c in S_bar for d in S_bar if c != d and poset.leq(c, d))

    isomorphic = len(S) == len(S_bar) and nx.is_isomorphic(lattice_graph, class_graph)
    return OvergroupDiagnostic(
        subgroup_index=subgroup_index,
        subgroup_order=int(lattice.orders[subgroup_index]),
        overgroups=S,
        overclasses=S_bar,
        isomorphic=isomorphic,
        graphs=(lattice_graph, class_graph),
    )


def minimality(source: Source, **kwargs) -> Tuple[bool, bool]:
    """(minimal simple, minimal non-solvable) read off the lattice."""
    A = _analysis(source, **kwargs)
    if A.solvable:
        return False, False
    lattice = A.lattice
    maximal_reps = [int(rep) for rep in lattice.class_reps if lattice.maximal[rep]]
    all_maximal_solvable = all(is_solvable(lattice.subgroup(rep)) for rep in maximal_reps)
    normal_count = sum(1 for members in lattice.class_members if len(members) == 1)
    return all_maximal_solvable and normal_count == 2, all_maximal_solvable
