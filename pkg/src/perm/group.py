"""
Permutation Groups
==================
Finite permutation groups by full element enumeration.

A Group stores every element as one row of an (order, degree) numpy array,
sorted lexicographically, so the identity is always rank 0. Element ranks
index that table; subgroups of a Group are sorted int64 rank arrays.
Rank lookup goes through a collision-checked 64-bit row hash and
np.searchsorted, which keeps every product / conjugation vectorised.
"""

import logging
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..config import ELEMENT_CAP
from ..errors import CapExceededError, DegreeMismatchError, MulambdaError, NotASubgroupError
from .permutation import Permutation

logger = logging.getLogger(__name__)

_HASH_SEED = 0x6D75_6C61
_HASH_ATTEMPTS = 8


def _row_dtype(degree: int):
    if degree <= 256:
        return np.uint8
    if degree <= 65536:
        return np.uint16
    return np.int32


def _lexsorted(rows: np.ndarray) -> np.ndarray:
    if rows.shape[1] == 0:
        return rows[:1]
    return rows[np.lexsort(rows.T[::-1])]


class Group:
    """
    A finite permutation group with its full element table.

    Attributes:
        degree: number of points acted on
        generators: tuple of Permutation (may be empty for the trivial group)
        elements: (order, degree) array, lexicographically sorted, identity first
        order: number of elements
    """

    def __init__(self,
                 degree: int,
                 elements: np.ndarray,
                 generators: Optional[Sequence[Permutation]] = None):
        elements = np.ascontiguousarray(elements, dtype=_row_dtype(degree))
        if elements.ndim != 2 or elements.shape[1] != degree or len(elements) == 0:
            raise MulambdaError(f"element table shape {elements.shape} does not fit degree {degree}")
        elements.setflags(write=False)
        self.degree = degree
        self.elements = elements
        self.order = len(elements)
        self._build_index()
        if not np.array_equal(elements[0], np.arange(degree)):
            raise MulambdaError("element table does not start with the identity")
        self._inverse: Optional[np.ndarray] = None
        self._element_orders: Optional[np.ndarray] = None
        self._power_table: Optional[np.ndarray] = None
        if generators is None:
            generators = [self.element(r) for r in self.small_generating_set(np.arange(self.order))]
        self.generators = tuple(generators)
        self._generator_ranks = np.array([self.rank(g) for g in self.generators], dtype=np.int64)

    # ------------------------------------------------------------------
    # Element index
    # ------------------------------------------------------------------

    def _build_index(self):
        rng = np.random.default_rng(_HASH_SEED)
        for _ in range(_HASH_ATTEMPTS):
            weights = rng.integers(1, 2 ** 63, size=self.degree, dtype=np.uint64) | np.uint64(1)
            keys = self._hash(self.elements, weights)
            order = np.argsort(keys, kind="stable")
            sorted_keys = keys[order]
            if len(sorted_keys) < 2 or np.all(sorted_keys[1:] != sorted_keys[:-1]):
                self._weights = weights
                self._sorted_keys = sorted_keys
                self._key_rank = order.astype(np.int64)
                return
        raise MulambdaError("could not build a collision-free element index")

    @staticmethod
    def _hash(rows: np.ndarray, weights: np.ndarray) -> np.ndarray:
        if rows.shape[-1] == 0:
            return np.zeros(rows.shape[:-1], dtype=np.uint64)
        return rows.astype(np.uint64) @ weights

    def ranks_of(self, rows: np.ndarray) -> np.ndarray:
        """Ranks of rows already known to be elements (products, conjugates)."""
        rows = np.asarray(rows)
        keys = self._hash(rows, self._weights)
        pos = np.searchsorted(self._sorted_keys, keys)
        return self._key_rank[np.minimum(pos, self.order - 1)]

    def locate(self, rows: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Ranks plus a found-mask for arbitrary rows; rows must have this degree."""
        rows = np.atleast_2d(np.asarray(rows))
        if rows.shape[1] != self.degree:
            raise DegreeMismatchError(f"rows of degree {rows.shape[1]} against group of degree {self.degree}")
        ranks = self.ranks_of(rows)
        found = np.all(self.elements[ranks] == rows, axis=1)
        return ranks, found

    def rank(self, perm: Permutation) -> int:
        ranks, found = self.locate(np.array(perm.images, dtype=np.int64))
        if not found[0]:
            raise NotASubgroupError(f"{perm} is not an element of this group")
        return int(ranks[0])

    def element(self, rank: int) -> Permutation:
        return Permutation(tuple(int(x) for x in self.elements[rank]))

    def __contains__(self, perm: Permutation) -> bool:
        if perm.degree != self.degree:
            return False
        return bool(self.locate(np.array(perm.images, dtype=np.int64))[1][0])

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"Group(degree={self.degree}, order={self.order}, generators={len(self.generators)})"

    # ------------------------------------------------------------------
    # Rank arithmetic
    # ------------------------------------------------------------------

    @property
    def generator_ranks(self) -> np.ndarray:
        return self._generator_ranks

    @property
    def inverse_ranks(self) -> np.ndarray:
        if self._inverse is None:
            self._inverse = self.ranks_of(np.argsort(self.elements, axis=1))
        return self._inverse

    def mul(self, a: int, b: int) -> int:
        """Rank of a∘b."""
        return int(self.ranks_of(self.elements[a][self.elements[b]][None, :])[0])

    def mul_right(self, ranks: np.ndarray, b: int) -> np.ndarray:
        """Ranks of x∘b for every x in ranks."""
        return self.ranks_of(self.elements[ranks][:, self.elements[b]])

    def mul_left(self, a: int, ranks: np.ndarray) -> np.ndarray:
        """Ranks of a∘x for every x in ranks."""
        return self.ranks_of(self.elements[a][self.elements[ranks]])

    def conjugate_ranks(self, ranks: np.ndarray, g: int) -> np.ndarray:
        """Ranks of g⁻¹∘x∘g for every x in ranks (order preserved)."""
        ranks = np.asarray(ranks, dtype=np.int64)
        if ranks.size == 0:
            return ranks
        g_inv = self.elements[self.inverse_ranks[g]]
        return self.ranks_of(g_inv[self.elements[ranks][:, self.elements[g]]])

    def commutator(self, a: int, b: int) -> int:
        """Rank of [a,b] = a⁻¹b⁻¹ab."""
        inv = self.inverse_ranks
        return self.mul(self.mul(self.mul(int(inv[a]), int(inv[b])), a), b)

    @property
    def element_orders(self) -> np.ndarray:
        if self._element_orders is None:
            self._element_orders = self._compute_element_orders()
        return self._element_orders

    def _compute_element_orders(self) -> np.ndarray:
        identity = np.arange(self.degree)
        orders = np.zeros(self.order, dtype=np.int64)
        pending = np.arange(self.order)
        current = self.elements.copy()
        k = 1
        while pending.size:
            done = np.all(current == identity, axis=1)
            orders[pending[done]] = k
            pending = pending[~done]
            current = np.take_along_axis(current[~done], self.elements[pending], axis=1)
            k += 1
        return orders

    @property
    def power_table(self) -> np.ndarray:
        """P[g, k] = rank of g^k for 0 <= k < max element order."""
        if self._power_table is None:
            width = int(self.element_orders.max())
            table = np.zeros((self.order, width), dtype=np.int64)
            current = np.broadcast_to(np.arange(self.degree), self.elements.shape).astype(self.elements.dtype)
            for k in range(width):
                table[:, k] = self.ranks_of(current)
                current = np.take_along_axis(current, self.elements, axis=1)
            self._power_table = table
        return self._power_table

    def cyclic_ranks(self, g: int) -> np.ndarray:
        """Sorted ranks of <g>."""
        return np.sort(self.power_table[g, :self.element_orders[g]])

    # ------------------------------------------------------------------
    # Subgroup machinery on rank arrays
    # ------------------------------------------------------------------

    def mask(self, ranks: np.ndarray) -> np.ndarray:
        m = np.zeros(self.order, dtype=bool)
        m[np.asarray(ranks, dtype=np.int64)] = True
        return m

    def closure_ranks(self, generators: Iterable[int], cap: Optional[int] = None) -> np.ndarray:
        """Sorted ranks of the subgroup generated by the given element ranks."""
        gens = np.unique(np.asarray(list(generators), dtype=np.int64))
        gens = gens[gens != 0]
        seen = np.zeros(self.order, dtype=bool)
        seen[0] = True
        if gens.size == 0:
            return np.zeros(1, dtype=np.int64)
        gen_rows = self.elements[gens]
        frontier = np.zeros(1, dtype=np.int64)
        count = 1
        while frontier.size:
            products = self.elements[frontier][:, gen_rows]
            found = np.unique(self.ranks_of(products.reshape(-1, self.degree)))
            frontier = found[~seen[found]]
            seen[frontier] = True
            count += frontier.size
            if cap is not None and count > cap:
                raise CapExceededError("element_cap", cap)
        return np.flatnonzero(seen).astype(np.int64)

    def small_generating_set(self, ranks: np.ndarray) -> np.ndarray:
        """Greedy generating set of the subgroup with the given sorted ranks.

        Elements of larger order are tried first; each accepted generator
        at least doubles the generated subgroup.
        """
        ranks = np.asarray(ranks, dtype=np.int64)
        if ranks.size <= 1:
            return np.zeros(0, dtype=np.int64)
        orders = self.element_orders[ranks]
        candidates = ranks[np.lexsort((ranks, -orders))]
        gens: List[int] = []
        current = np.zeros(self.order, dtype=bool)
        current[0] = True
        size = 1
        for r in candidates:
            if current[r]:
                continue
            gens.append(int(r))
            generated = self.closure_ranks(gens)
            current[:] = False
            current[generated] = True
            size = generated.size
            if size == ranks.size:
                break
        return np.array(gens, dtype=np.int64)

    def normalizer_ranks(self, ranks: np.ndarray, generators: Optional[np.ndarray] = None) -> np.ndarray:
        """Sorted ranks of N_G(H) for the subgroup H given by sorted ranks.

        g normalizes H iff g⁻¹hg ∈ H for every generator h of H; candidates
        are filtered one generator at a time.
        """
        member = self.mask(ranks)
        if generators is None:
            generators = self.small_generating_set(ranks)
        candidates = np.arange(self.order, dtype=np.int64)
        inverse_rows = self.elements[self.inverse_ranks]
        for h in generators:
            moved = self.elements[h][self.elements[candidates]]
            conj = np.take_along_axis(inverse_rows[candidates], moved.astype(np.int64), axis=1)
            candidates = candidates[member[self.ranks_of(conj)]]
        return candidates

    def right_coset_reps(self, ranks: np.ndarray) -> np.ndarray:
        """Smallest-rank representative of every right coset Hg."""
        ranks = np.asarray(ranks, dtype=np.int64)
        covered = np.zeros(self.order, dtype=bool)
        sub_rows = self.elements[ranks]
        reps = []
        for g in range(self.order):
            if covered[g]:
                continue
            reps.append(g)
            covered[self.ranks_of(sub_rows[:, self.elements[g]])] = True
        return np.array(reps, dtype=np.int64)

    def normal_closure_ranks(self, seeds: Iterable[int]) -> np.ndarray:
        """Sorted ranks of the smallest normal subgroup containing seeds."""
        gens = [int(s) for s in dict.fromkeys(int(s) for s in seeds) if s != 0]
        current = self.mask(self.closure_ranks(gens))
        i = 0
        while i < len(gens):
            for g in self._generator_ranks:
                c = int(self.conjugate_ranks(np.array([gens[i]]), int(g))[0])
                if not current[c]:
                    gens.append(c)
                    current = self.mask(self.closure_ranks(gens))
            i += 1
        return np.flatnonzero(current).astype(np.int64)

    def subgroup(self, ranks: np.ndarray, generators: Optional[np.ndarray] = None) -> "Group":
        """The subgroup on the given sorted ranks as a standalone Group."""
        ranks = np.asarray(ranks, dtype=np.int64)
        if generators is None:
            generators = self.small_generating_set(ranks)
        return Group(self.degree, self.elements[ranks], [self.element(int(r)) for r in generators])

    def ranks_in(self, H: "Group") -> np.ndarray:
        """Sorted ranks of H's elements inside this group."""
        if H.degree != self.degree:
            raise DegreeMismatchError(f"degree {H.degree} subgroup of degree {self.degree} group")
        ranks, found = self.locate(H.elements)
        if not found.all():
            raise NotASubgroupError("subgroup is not contained in the ambient group")
        return np.sort(ranks)


# ============================================================================
# Public operations
# ============================================================================

def close(generators: Sequence[Permutation],
          element_cap: int = ELEMENT_CAP,
          degree: Optional[int] = None) -> Group:
    """
    Enumerate the group generated by the given permutations.

    Args:
        generators: permutations of one common degree
        element_cap: refuse groups with more elements than this
        degree: required when generators is empty

    Returns:
        Group with canonical (sorted) element table
    """
    generators = list(generators)
    if generators:
        degrees = {g.degree for g in generators}
        if len(degrees) > 1:
            raise DegreeMismatchError(f"generators of mixed degrees {sorted(degrees)}")
        degree = degrees.pop() if degree is None else degree
        if generators[0].degree != degree:
            raise DegreeMismatchError(f"generators of degree {generators[0].degree}, expected {degree}")
    elif degree is None:
        raise DegreeMismatchError("degree required for an empty generator list")
    if degree < 1:
        raise DegreeMismatchError("groups act on at least one point")

    dtype = _row_dtype(degree)
    identity = np.arange(degree, dtype=dtype)
    gen_rows = np.array([g.images for g in generators], dtype=np.int64).reshape(len(generators), degree)
    seen = {identity.tobytes()}
    rows = [identity]
    frontier = identity[None, :]
    while len(frontier):
        fresh = []
        products = frontier[:, gen_rows].reshape(-1, degree)
        for row in products:
            key = row.tobytes()
            if key not in seen:
                seen.add(key)
                fresh.append(row)
                if len(seen) > element_cap:
                    raise CapExceededError("element_cap", element_cap, f"closure of {len(generators)} generators")
        rows.extend(fresh)
        frontier = np.array(fresh, dtype=dtype).reshape(-1, degree)

    elements = _lexsorted(np.array(rows, dtype=dtype).reshape(-1, degree))
    logger.debug("closed %d generators on %d points: order %d", len(generators), degree, len(elements))
    return Group(degree, elements, generators)


def derived_series(G: Group) -> List[Group]:
    """G ⊵ G′ ⊵ G″ ⊵ … down to the first repeated term."""
    series = [G]
    while True:
        D = derived_subgroup(series[-1])
        if D.order == series[-1].order:
            return series
        series.append(D)


def derived_subgroup(G: Group) -> Group:
    """Normal closure of the commutators of the generators."""
    gens = G.generator_ranks
    commutators = {G.commutator(int(a), int(b)) for a in gens for b in gens}
    commutators.discard(0)
    return G.subgroup(G.normal_closure_ranks(sorted(commutators)))


def is_solvable(G: Group) -> bool:
    return derived_series(G)[-1].order == 1


def normal_closure(G: Group, S: Sequence[Permutation]) -> Group:
    return G.subgroup(G.normal_closure_ranks(G.rank(s) for s in S))


def normalizer(G: Group, H: Group) -> Group:
    """N_G(H) = {g ∈ G : H^g = H}."""
    ranks = G.ranks_in(H)
    gens = np.array([G.rank(h) for h in H.generators], dtype=np.int64)
    return G.subgroup(G.normalizer_ranks(ranks, gens))


def conjugate(H: Group, g: Permutation) -> Group:
    """H^g = g⁻¹Hg, element-wise."""
    if g.degree != H.degree:
        raise DegreeMismatchError(f"cannot conjugate degree {H.degree} by degree {g.degree}")
    g_img = np.array(g.images, dtype=np.int64)
    g_inv = np.array(g.inverse().images, dtype=np.int64)
    rows = g_inv[H.elements[:, g_img]]
    gens = [g.inverse() * h * g for h in H.generators]
    return Group(H.degree, _lexsorted(rows), gens)


def intersect(H: Group, K: Group) -> Group:
    if H.degree != K.degree:
        raise DegreeMismatchError(f"cannot intersect degree {H.degree} with degree {K.degree}")
    _, found = K.locate(H.elements)
    return Group(H.degree, H.elements[found])


def index(G: Group, H: Group) -> int:
    G.ranks_in(H)
    return G.order // H.order


def count_generating_tuples(G: Group, k: int) -> int:
    """Number of k-tuples of elements generating G, by exhaustive search (k in {1, 2})."""
    if k == 1:
        return int(np.count_nonzero(G.element_orders == G.order))
    if k != 2:
        raise ValueError("only k = 1 and k = 2 are supported")
    if G.order == 1:
        return 1
    total = 0
    full = G.element_orders == G.order
    for a in range(G.order):
        if full[a]:
            total += G.order
            continue
        inside = G.mask(G.cyclic_ranks(a))
        for b in range(G.order):
            if inside[b]:
                continue
            if full[b] or G.closure_ranks([a, b]).size == G.order:
                total += 1
    return total


def quotient_by(G: Group, normal_ranks: np.ndarray, element_cap: int = ELEMENT_CAP) -> Tuple[Group, np.ndarray]:
    """
    G/N as a permutation group on the left cosets of N.

    Returns:
        (quotient, projection) where projection[r] is the quotient rank of
        the image of G's element r
    """
    normal_ranks = np.asarray(normal_ranks, dtype=np.int64)
    label = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for x in range(G.order):
        if label[x] >= 0:
            continue
        label[G.mul_left(x, normal_ranks)] = len(reps)
        reps.append(x)
    reps = np.array(reps, dtype=np.int64)

    def image(a: int) -> np.ndarray:
        return label[G.mul_left(a, reps)]

    gens = [Permutation(tuple(int(x) for x in image(int(a)))) for a in G.generator_ranks]
    Q = close(gens, element_cap, degree=len(reps))
    expected = G.order // normal_ranks.size
    if Q.order != expected:
        raise MulambdaError(f"coset action has order {Q.order}, expected |G/N| = {expected}")
    # [a, i, x] = a(rep_i(x))
    products = G.elements[:, G.elements[reps]].reshape(-1, G.degree)
    images = label[G.ranks_of(products)].reshape(G.order, len(reps))
    projection = Q.ranks_of(images)
    return Q, projection


def orbits(G: Group) -> List[List[int]]:
    """Orbits of G on its points."""
    seen = [False] * G.degree
    out = []
    for start in range(G.degree):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        for x in orbit:
            for g in G.generators:
                y = g.images[x]
                if not seen[y]:
                    seen[y] = True
                    orbit.append(y)
        out.append(orbit)
    return out


def is_two_transitive(G: Group) -> bool:
    """Single orbit on ordered pairs of distinct points."""
    n = G.degree
    if n < 2:
        return False
    seen = {(0, 1)}
    stack = [(0, 1)]
    while stack:
        x, y = stack.pop()
        for g in G.generators:
            pair = (g.images[x], g.images[y])
            if pair not in seen:
                seen.add(pair)
                stack.append(pair)
    return len(seen) == n * (n - 1)


def element_class_ranks(G: Group, a: int) -> np.ndarray:
    """Sorted ranks of the conjugacy class {x⁻¹∘a∘x : x ∈ G}."""
    a_row = G.elements[a]
    inverses = G.elements[G.inverse_ranks]
    rows = np.take_along_axis(inverses, a_row[G.elements], axis=1)
    return np.unique(G.ranks_of(rows))


def is_simple_group(G: Group) -> bool:
    """
    Simplicity without the subgroup lattice: the normal closure of one
    element per nontrivial conjugacy class must be all of G.
    """
    if G.order == 1:
        return False
    covered = np.zeros(G.order, dtype=bool)
    covered[0] = True
    for a in range(G.order):
        if covered[a]:
            continue
        if G.normal_closure_ranks([a]).size != G.order:
            return False
        covered[element_class_ranks(G, a)] = True
    return True
