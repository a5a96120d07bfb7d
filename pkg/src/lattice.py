"""
Subgroup Lattice
================
Enumerates every subgroup of a finite permutation group, groups them into
conjugacy classes and derives the class poset, MaxInt(G) and Φ(G).

Enumeration works one conjugacy class at a time. Starting from the
trivial subgroup, each class representative R is joined with one cyclic
subgroup of prime-power order from every N_G(R)-orbit not inside R; a join
that lands in an unseen class is expanded into all its conjugates through
a right transversal of its normalizer. Every subgroup is generated by
cyclic subgroups of prime-power order, so the search reaches every class.

Subgroups are sorted int64 rank arrays into the ambient element table.
Final indices are ordered by (order, ranks), so the trivial subgroup is
index 0 and G is the last index.
"""

import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterable, List, Optional

import numpy as np
from sympy import factorint

from .config import SUBGROUP_CAP
from .errors import CapExceededError, MulambdaError, NotASubgroupError
from .perm.group import Group

logger = logging.getLogger(__name__)


class UnionFind:
    """Disjoint sets over hashable items with union by rank."""

    def __init__(self, items: Iterable):
        self.parent = {x: x for x in items}
        self.rank = {x: 0 for x in self.parent}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x

    def groups(self) -> Dict:
        out: Dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


class SubgroupLattice:
    """
    All subgroups of one group, with conjugacy classes.

    Attributes:
        group: the ambient Group
        subgroups: sorted rank arrays, ordered by (order, ranks)
        generators: small generating set (ranks) per subgroup
        class_of: class index per subgroup
        class_members: subgroup indices per class, ascending
        class_reps: smallest subgroup index per class
        class_normalizers: rank array of N_G(rep) per class
        maximal: bool per subgroup
        maxint: bool per subgroup, membership in MaxInt(G)
        frattini: subgroup index of Φ(G)
    """

    def __init__(self,
                 group: Group,
                 subgroups: List[np.ndarray],
                 generators: List[np.ndarray],
                 class_of: np.ndarray,
                 class_normalizers: List[np.ndarray],
                 maximal: Optional[np.ndarray] = None,
                 maxint: Optional[np.ndarray] = None,
                 frattini: Optional[int] = None):
        self.group = group
        self.subgroups = subgroups
        self.generators = generators
        self.class_of = np.asarray(class_of, dtype=np.int64)
        self.class_normalizers = class_normalizers
        self.orders = np.array([len(s) for s in subgroups], dtype=np.int64)
        self._index = {s.tobytes(): i for i, s in enumerate(subgroups)}

        members: List[List[int]] = [[] for _ in range(int(self.class_of.max()) + 1)]
        for i, c in enumerate(self.class_of):
            members[c].append(i)
        self.class_members = [np.array(m, dtype=np.int64) for m in members]
        self.class_reps = np.array([m[0] for m in members], dtype=np.int64)

        self._membership: Optional[np.ndarray] = None
        self._overgroups: Dict[int, np.ndarray] = {}

        self.maximal = self._find_maximal() if maximal is None else np.asarray(maximal, dtype=bool)
        self.maxint = self._find_maxint() if maxint is None else np.asarray(maxint, dtype=bool)
        self.frattini = self._find_frattini() if frattini is None else int(frattini)

    # ------------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.subgroups)

    def __repr__(self) -> str:
        return f"SubgroupLattice(order={self.group.order}, subgroups={len(self)}, classes={self.class_count})"

    @property
    def top(self) -> int:
        return len(self.subgroups) - 1

    @property
    def bottom(self) -> int:
        return 0

    @property
    def class_count(self) -> int:
        return len(self.class_members)

    def class_size(self, c: int) -> int:
        return len(self.class_members[c])

    def index_of(self, ranks: np.ndarray) -> int:
        key = np.asarray(ranks, dtype=np.int64).tobytes()
        if key not in self._index:
            raise NotASubgroupError("rank set is not a subgroup of this lattice")
        return self._index[key]

    def subgroup(self, i: int) -> Group:
        return self.group.subgroup(self.subgroups[i], self.generators[i])

    # ------------------------------------------------------------------
    # Order relation
    # ------------------------------------------------------------------

    @property
    def membership(self) -> np.ndarray:
        """Packed bits: row = element rank, bit j set iff the element lies in subgroup j."""
        if self._membership is None:
            n = len(self.subgroups)
            packed = np.zeros((self.group.order, (n + 7) // 8), dtype=np.uint8)
            for j, ranks in enumerate(self.subgroups):
                packed[ranks, j >> 3] |= np.uint8(0x80 >> (j & 7))
            self._membership = packed
        return self._membership

    def overgroups(self, i: int) -> np.ndarray:
        """Indices K with H_i <= K, ascending, H_i included."""
        cached = self._overgroups.get(i)
        if cached is None:
            gens = self.generators[i]
            if gens.size == 0:
                cached = np.arange(len(self.subgroups), dtype=np.int64)
            else:
                bits = np.bitwise_and.reduce(self.membership[gens], axis=0)
                cached = np.flatnonzero(np.unpackbits(bits, count=len(self.subgroups))).astype(np.int64)
            self._overgroups[i] = cached
        return cached

    def leq(self, i: int, j: int) -> bool:
        """H_i <= H_j."""
        if self.orders[j] % self.orders[i]:
            return False
        gens = self.generators[i]
        if gens.size == 0:
            return True
        bit = np.uint8(0x80 >> (j & 7))
        return bool(np.all(self.membership[gens, j >> 3] & bit))

    def meet(self, i: int, j: int) -> int:
        return self.index_of(np.intersect1d(self.subgroups[i], self.subgroups[j], assume_unique=True))

    # ------------------------------------------------------------------
    # Derived structure
    # ------------------------------------------------------------------

    def _find_maximal(self) -> np.ndarray:
        maximal = np.zeros(len(self.subgroups), dtype=bool)
        for c, rep in enumerate(self.class_reps):
            if rep != self.top and len(self.overgroups(int(rep))) == 2:
                maximal[self.class_members[c]] = True
        return maximal

    def _find_maxint(self) -> np.ndarray:
        maximal_classes = sorted({int(self.class_of[i]) for i in np.flatnonzero(self.maximal)})
        maximal_ranks = [self.subgroups[i] for i in np.flatnonzero(self.maximal)]
        found = set(maximal_classes) | {int(self.class_of[self.top])}
        work = list(maximal_classes)
        while work:
            c = work.pop()
            rep = self.subgroups[self.class_reps[c]]
            for M in maximal_ranks:
                d = int(self.class_of[self.index_of(np.intersect1d(rep, M, assume_unique=True))])
                if d not in found:
                    found.add(d)
                    work.append(d)
        flags = np.zeros(len(self.subgroups), dtype=bool)
        for c in found:
            flags[self.class_members[c]] = True
        return flags

    def _find_frattini(self) -> int:
        maximal = np.flatnonzero(self.maximal)
        if maximal.size == 0:
            return self.top
        ranks = self.subgroups[maximal[0]]
        for i in maximal[1:]:
            ranks = np.intersect1d(ranks, self.subgroups[i], assume_unique=True)
        return self.index_of(ranks)

    # ------------------------------------------------------------------
    # Flat arrays for the on-disk cache
    # ------------------------------------------------------------------

    def to_arrays(self) -> Dict[str, np.ndarray]:
        def flatten(parts: List[np.ndarray]):
            offsets = np.cumsum([0] + [len(p) for p in parts]).astype(np.int64)
            data = np.concatenate(parts).astype(np.int64) if parts else np.zeros(0, dtype=np.int64)
            return offsets, data

        sub_offsets, sub_data = flatten(self.subgroups)
        gen_offsets, gen_data = flatten(self.generators)
        norm_offsets, norm_data = flatten(self.class_normalizers)
        return {
            "subgroup_offsets": sub_offsets, "subgroup_data": sub_data,
            "generator_offsets": gen_offsets, "generator_data": gen_data,
            "normalizer_offsets": norm_offsets, "normalizer_data": norm_data,
            "class_of": self.class_of,
            "maximal": self.maximal, "maxint": self.maxint,
            "frattini": np.array([self.frattini], dtype=np.int64),
        }

    @classmethod
    def from_arrays(cls, group: Group, arrays: Dict[str, np.ndarray]) -> "SubgroupLattice":
        def split(offsets: np.ndarray, data: np.ndarray) -> List[np.ndarray]:
            return [data[offsets[i]:offsets[i + 1]].astype(np.int64) for i in range(len(offsets) - 1)]

        return cls(
            group,
            split(arrays["subgroup_offsets"], arrays["subgroup_data"]),
            split(arrays["generator_offsets"], arrays["generator_data"]),
            arrays["class_of"],
            split(arrays["normalizer_offsets"], arrays["normalizer_data"]),
            maximal=arrays["maximal"],
            maxint=arrays["maxint"],
            frattini=int(arrays["frattini"][0]),
        )


class ClassPoset:
    """Conjugacy classes ordered by [H] <= [K] iff H <= K^g for some g."""

    def __init__(self, lattice: SubgroupLattice):
        self.lattice = lattice
        k = lattice.class_count
        self.reps = lattice.class_reps
        self.orders = lattice.orders[self.reps]
        self.sizes = np.array([len(m) for m in lattice.class_members], dtype=np.int64)
        self.leq_matrix = np.zeros((k, k), dtype=bool)
        self.above: List[np.ndarray] = []
        for c, rep in enumerate(self.reps):
            classes = np.unique(lattice.class_of[lattice.overgroups(int(rep))])
            self.leq_matrix[c, classes] = True
            self.above.append(classes)
            strictly = classes[classes != c]
            if np.any(self.orders[strictly] <= self.orders[c]):
                raise MulambdaError(f"class poset is not antisymmetric at class {c}")

    def __len__(self) -> int:
        return len(self.reps)

    def leq(self, c: int, d: int) -> bool:
        return bool(self.leq_matrix[c, d])

    @property
    def top(self) -> int:
        return int(self.lattice.class_of[self.lattice.top])

    @property
    def maxint(self) -> np.ndarray:
        return self.lattice.maxint[self.reps]


# ============================================================================
# Enumeration
# ============================================================================

class _LatticeBuilder:
    def __init__(self, group: Group, subgroup_cap: int, threads: int):
        self.G = group
        self.cap = subgroup_cap
        self.threads = max(1, threads)
        self.subgroups: List[np.ndarray] = []
        self.generators: List[np.ndarray] = []
        self.conjugators: List[int] = []
        self.class_of: List[int] = []
        self.class_members: List[List[int]] = []
        self.class_normalizers: List[np.ndarray] = []
        self.index: Dict[bytes, int] = {}

        orders = group.element_orders
        prime_power = np.array([o > 1 and len(factorint(int(o))) == 1 for o in range(int(orders.max()) + 1)])
        self.prime_power_elements = prime_power[orders]
        self.cyclic_id = self._cyclic_ids()

    def _cyclic_ids(self) -> np.ndarray:
        """Smallest-rank generator of <g>, per element."""
        G = self.G
        powers = G.power_table
        orders = G.element_orders
        ids = np.arange(G.order, dtype=np.int64)
        for k in range(2, powers.shape[1]):
            usable = (k < orders) & (np.gcd(k, orders) == 1)
            ids = np.where(usable, np.minimum(ids, powers[:, k]), ids)
        return ids

    def add_class(self, ranks: np.ndarray, gens: np.ndarray) -> int:
        G = self.G
        N = G.normalizer_ranks(ranks, gens)
        c = len(self.class_members)
        members = []
        for g in G.right_coset_reps(N):
            g = int(g)
            conj = np.sort(G.conjugate_ranks(ranks, g))
            key = conj.tobytes()
            if key in self.index:
                raise MulambdaError("conjugate produced twice while expanding a class")
            i = len(self.subgroups)
            self.index[key] = i
            self.subgroups.append(conj)
            self.generators.append(G.conjugate_ranks(gens, g))
            self.conjugators.append(g)
            self.class_of.append(c)
            members.append(i)
            if len(self.subgroups) > self.cap:
                raise CapExceededError("subgroup_cap", self.cap, f"group of order {G.order}")
        if len(members) * len(N) != G.order:
            raise MulambdaError("orbit-stabilizer mismatch while expanding a class")
        self.class_members.append(members)
        self.class_normalizers.append(N)
        return c

    def cyclic_orbit_reps(self, ranks: np.ndarray, normalizer: np.ndarray) -> List[int]:
        """One prime-power cyclic generator per N-orbit of cyclic subgroups outside R."""
        G = self.G
        outside = self.prime_power_elements.copy()
        outside[ranks] = False
        nodes = np.unique(self.cyclic_id[outside])
        if nodes.size == 0:
            return []
        uf = UnionFind(int(x) for x in nodes)
        for n in G.small_generating_set(normalizer):
            images = self.cyclic_id[G.conjugate_ranks(nodes, int(n))]
            for x, y in zip(nodes, images):
                if x != y:
                    uf.union(int(x), int(y))
        return sorted(min(members) for members in uf.groups().values())

    def run(self) -> SubgroupLattice:
        G = self.G
        self.add_class(np.zeros(1, dtype=np.int64), np.zeros(0, dtype=np.int64))
        queue = deque([0])
        executor = ThreadPoolExecutor(max_workers=self.threads) if self.threads > 1 else None
        try:
            while queue:
                c = queue.popleft()
                rep = self.class_members[c][0]
                R, gens = self.subgroups[rep], self.generators[rep]
                if len(R) == G.order:
                    continue
                candidates = self.cyclic_orbit_reps(R, self.class_normalizers[c])
                join = lambda g: G.closure_ranks(np.append(gens, g))  # noqa: E731
                joined = list(executor.map(join, candidates)) if executor else [join(g) for g in candidates]
                for g, K in zip(candidates, joined):
                    if K.tobytes() in self.index:
                        continue
                    queue.append(self.add_class(K, np.append(gens, g).astype(np.int64)))
        finally:
            if executor:
                executor.shutdown()
        logger.info("group of order %d: %d subgroups in %d classes",
                    G.order, len(self.subgroups), len(self.class_members))
        return self.finish()

    def finish(self) -> SubgroupLattice:
        G = self.G
        order = sorted(range(len(self.subgroups)),
                       key=lambda i: (len(self.subgroups[i]), self.subgroups[i].tolist()))
        new_index = np.empty(len(order), dtype=np.int64)
        new_index[order] = np.arange(len(order))

        class_order = sorted(range(len(self.class_members)),
                             key=lambda c: min(new_index[i] for i in self.class_members[c]))
        new_class = np.empty(len(class_order), dtype=np.int64)
        new_class[class_order] = np.arange(len(class_order))

        subgroups = [self.subgroups[i] for i in order]
        generators = [self.generators[i] for i in order]
        class_of = new_class[np.array([self.class_of[i] for i in order], dtype=np.int64)]

        normalizers: List[Optional[np.ndarray]] = [None] * len(class_order)
        for c, members in enumerate(self.class_members):
            rep = min(members, key=lambda i: new_index[i])
            base = self.class_normalizers[c]
            normalizers[new_class[c]] = np.sort(G.conjugate_ranks(base, self.conjugators[rep]))
        return SubgroupLattice(G, subgroups, generators, class_of, normalizers)


def enumerate_subgroups(G: Group, subgroup_cap: int = SUBGROUP_CAP, threads: int = 1) -> SubgroupLattice:
    """
    Every subgroup of G, with conjugacy classes, maximal subgroups, MaxInt and Φ.

    Args:
        G: ambient group
        subgroup_cap: refuse lattices with more subgroups than this
        threads: worker threads for the join step

    Returns:
        SubgroupLattice
    """
    return _LatticeBuilder(G, subgroup_cap, threads).run()


def conjugacy_classes(lattice: SubgroupLattice) -> ClassPoset:
    return ClassPoset(lattice)


def max_int(lattice: SubgroupLattice) -> np.ndarray:
    """Subgroup indices of MaxInt(G)."""
    return np.flatnonzero(lattice.maxint)


def frattini(lattice: SubgroupLattice) -> int:
    return lattice.frattini


def normal_subgroups(lattice: SubgroupLattice) -> np.ndarray:
    """Indices of the normal subgroups: classes of size one."""
    return np.array([int(m[0]) for m in lattice.class_members if len(m) == 1], dtype=np.int64)


def is_simple(lattice: SubgroupLattice) -> bool:
    return lattice.group.order > 1 and len(normal_subgroups(lattice)) == 2
