"""
Group Analysis
==============
One bundle per group: element table, subgroup lattice, class poset,
mu / lambda table and derived subgroup. Every property check consumes it.
"""

import logging
import time
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .config import ELEMENT_CAP, MAXINT_RESTRICTION, SUBGROUP_CAP
from .errors import CapExceededError
from .lattice import ClassPoset, SubgroupLattice, conjugacy_classes, enumerate_subgroups
from .lattice_cache import LatticeCache
from .moebius import MoebiusTable, moebius_table
from .perm.group import Group, derived_series
from .zoo.constructors import build_group
from .zoo.spec import GroupSpec, parse_spec, serialize_spec

logger = logging.getLogger(__name__)


@dataclass
class GroupAnalysis:
    spec: str  # Canonical spec text, "" for groups built in memory
    group: Group
    lattice: SubgroupLattice
    poset: ClassPoset
    table: MoebiusTable
    derived_ranks: np.ndarray  # G' as sorted ranks into group.elements
    solvable: bool

    @property
    def derived_mask(self) -> np.ndarray:
        return self.group.mask(self.derived_ranks)

    @property
    def frattini_order(self) -> int:
        return int(self.lattice.orders[self.lattice.frattini])


def analyze_group(source: Union[str, GroupSpec, Group],
                  element_cap: int = ELEMENT_CAP,
                  subgroup_cap: int = SUBGROUP_CAP,
                  threads: int = 1,
                  cache: Optional[LatticeCache] = None,
                  restrict_to_maxint: bool = MAXINT_RESTRICTION) -> GroupAnalysis:
    """
    Build (or load) the lattice of a group and compute everything derived from it.

    Args:
        source: spec text, parsed spec, or an already built Group
        cache: lattice cache consulted for spec sources
    """
    start = time.time()
    spec_text = ""
    group: Optional[Group] = None
    lattice: Optional[SubgroupLattice] = None

    if isinstance(source, Group):
        group = source
    else:
        spec = parse_spec(source) if isinstance(source, str) else source
        spec_text = serialize_spec(spec)
        hit = cache.get(spec_text) if cache is not None else None
        if hit is not None:
            group, lattice = hit
            logger.info("cache hit for %s", spec_text)
            if group.order > element_cap:
                raise CapExceededError("element_cap", element_cap, f"cached {spec_text} has order {group.order}")
            if len(lattice) > subgroup_cap:
                raise CapExceededError("subgroup_cap", subgroup_cap, f"cached {spec_text} has {len(lattice)} subgroups")
        else:
            group = build_group(spec, element_cap)

    if lattice is None:
        lattice = enumerate_subgroups(group, subgroup_cap, threads)
        if cache is not None and spec_text:
            cache.set(spec_text, group, lattice)
            logger.info("cache miss for %s, lattice stored", spec_text)

    poset = conjugacy_classes(lattice)
    table = moebius_table(lattice, poset, restrict_to_maxint, threads)
    series = derived_series(group)
    derived = group.ranks_in(series[1]) if len(series) > 1 else np.arange(group.order, dtype=np.int64)
    analysis = GroupAnalysis(
        spec=spec_text,
        group=group,
        lattice=lattice,
        poset=poset,
        table=table,
        derived_ranks=derived,
        solvable=series[-1].order == 1,
    )
    logger.info("analyzed %s (order %d, %d subgroups) in %.2fs",
                spec_text or "group", group.order, len(lattice), time.time() - start)
    return analysis
