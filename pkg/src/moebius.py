"""
Moebius Functions
=================
mu on the subgroup lattice, lambda on the class poset, and the classical
number-theoretic Moebius function.

Both poset functions are computed top-down: the top gets 1, every other
element gets minus the sum over its strict overgroups. With the MaxInt
restriction on, elements outside MaxInt(G) get an explicit 0 (Hall's
lemma) and are never summed over.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional

import numpy as np
from sympy import factorint

from .config import MAXINT_RESTRICTION
from .errors import MulambdaError
from .lattice import ClassPoset, SubgroupLattice

logger = logging.getLogger(__name__)


@lru_cache(maxsize=4096)
def moebius_integer(n: int) -> int:
    """Classical mu(n): 0 unless n is squarefree, else (-1)^(number of prime factors)."""
    if n < 1:
        raise ValueError("moebius_integer needs n >= 1")
    factors = factorint(n)
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


@dataclass
class MoebiusTable:
    """
    mu per class (class invariant), lambda per class, and the flags they were
    computed under. mu per subgroup index is mu_by_class[class_of[i]].
    """
    mu_by_class: List[int]
    lam_by_class: Optional[List[int]]
    restricted: bool

    def mu(self, lattice: SubgroupLattice, i: int) -> int:
        return self.mu_by_class[int(lattice.class_of[i])]

    def lam(self, c: int) -> int:
        if self.lam_by_class is None:
            raise MulambdaError("lambda was not computed for this table")
        return self.lam_by_class[c]


def _tiers(orders: np.ndarray, keys: np.ndarray) -> List[np.ndarray]:
    """Groups of keys with equal order, largest order first."""
    tiers = []
    for order in sorted(set(int(o) for o in orders), reverse=True):
        tiers.append(keys[orders == order])
    return tiers


def mu_lattice(lattice: SubgroupLattice,
               restrict_to_maxint: bool = MAXINT_RESTRICTION,
               threads: int = 1) -> MoebiusTable:
    """
    mu(H) = mu_L(H, G) for every conjugacy class of subgroups.

    mu is constant on classes, so one representative per class is summed:
    the strict overgroups of the representative are bucketed by class with
    np.bincount. Classes of equal order are independent and may run in
    parallel.
    """
    k = lattice.class_count
    reps = lattice.class_reps
    orders = lattice.orders[reps]
    maxint = lattice.maxint[reps]
    top = int(lattice.class_of[lattice.top])
    mu: List[Optional[int]] = [None] * k
    mu[top] = 1

    def evaluate(c: int) -> int:
        if restrict_to_maxint and not maxint[c]:
            return 0
        counts = np.bincount(lattice.class_of[lattice.overgroups(int(reps[c]))], minlength=k)
        counts[c] -= 1
        return -sum(int(counts[d]) * mu[d] for d in np.flatnonzero(counts))

    executor = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for tier in _tiers(orders, np.arange(k)):
            pending = [int(c) for c in tier if c != top]
            values = list(executor.map(evaluate, pending)) if executor else [evaluate(c) for c in pending]
            for c, value in zip(pending, values):
                mu[c] = value
    finally:
        if executor:
            executor.shutdown()
    logger.debug("mu computed on %d classes (restricted=%s)", k, restrict_to_maxint)
    return MoebiusTable(mu_by_class=[int(m) for m in mu], lam_by_class=None, restricted=restrict_to_maxint)


def mu_per_subgroup(lattice: SubgroupLattice, restrict_to_maxint: bool = False) -> List[int]:
    """mu evaluated independently at every subgroup, without using class invariance."""
    n = len(lattice)
    mu = [0] * n
    mu[lattice.top] = 1
    for i in range(n - 2, -1, -1):
        if restrict_to_maxint and not lattice.maxint[i]:
            continue
        mu[i] = -sum(mu[j] for j in lattice.overgroups(i) if j != i)
    return mu


def lambda_poset(poset: ClassPoset, restrict_to_maxint: bool = MAXINT_RESTRICTION) -> List[int]:
    """lambda([H]) = mu_C([H], [G]) on the class poset."""
    k = len(poset)
    lam: List[Optional[int]] = [None] * k
    maxint = poset.maxint
    for c in np.argsort(-poset.orders, kind="stable"):
        c = int(c)
        if c == poset.top:
            lam[c] = 1
        elif restrict_to_maxint and not maxint[c]:
            lam[c] = 0
        else:
            lam[c] = -sum(lam[d] for d in poset.above[c] if d != c)
    return [int(x) for x in lam]


def moebius_table(lattice: SubgroupLattice,
                  poset: ClassPoset,
                  restrict_to_maxint: bool = MAXINT_RESTRICTION,
                  threads: int = 1,
                  verify_restriction: bool = False) -> MoebiusTable:
    """
    Combined mu / lambda table.

    With verify_restriction, both functions are also computed without the
    MaxInt restriction and compared.
    """
    table = mu_lattice(lattice, restrict_to_maxint, threads)
    table.lam_by_class = lambda_poset(poset, restrict_to_maxint)
    if verify_restriction:
        other = mu_lattice(lattice, not restrict_to_maxint, threads)
        other_lam = lambda_poset(poset, not restrict_to_maxint)
        if other.mu_by_class != table.mu_by_class or other_lam != table.lam_by_class:
            raise MulambdaError("MaxInt restriction changed mu or lambda")
    return table


def hall_sum(lattice: SubgroupLattice, table: MoebiusTable, k: int) -> int:
    """Σ_H mu(H) |H|^k over all subgroups."""
    total = 0
    for c, members in enumerate(lattice.class_members):
        order = int(lattice.orders[members[0]])
        total += table.mu_by_class[c] * len(members) * order ** k
    return total


def vanishing_violations(lattice: SubgroupLattice, table: MoebiusTable) -> List[Dict[str, object]]:
    """Classes with nonzero mu or lambda outside MaxInt(G) or not above Φ(G)."""
    violations = []
    for c, rep in enumerate(lattice.class_reps):
        rep = int(rep)
        mu = table.mu_by_class[c]
        lam = table.lam_by_class[c] if table.lam_by_class is not None else 0
        if mu == 0 and lam == 0:
            continue
        if not lattice.maxint[rep]:
            violations.append({"class": c, "order": int(lattice.orders[rep]), "reason": "outside MaxInt"})
        elif not lattice.leq(lattice.frattini, rep):
            violations.append({"class": c, "order": int(lattice.orders[rep]), "reason": "does not contain Frattini"})
    return violations
