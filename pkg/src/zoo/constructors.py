"""
Group Constructors
==================
Builds permutation groups from parsed specs.

Classical families come from explicit generators; PSL2 / PGL2 act on the
projective line, SL2 on nonzero vectors, U3(3) on its 28 isotropic points
and Sz(8) on its 65-point ovoid. Every constructor with a closed-form
order is checked against it after closure.
"""

import logging
import math
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from ..config import ELEMENT_CAP, SZ_ORDER_8, U3_ORDER_3
from ..errors import CapExceededError, MulambdaError, SpecParameterError
from ..perm.group import Group, close, is_simple_group
from ..perm.permutation import Permutation
from .fields import FiniteField, field
from .spec import GroupSpec, parse_spec, validate_spec

logger = logging.getLogger(__name__)

Matrix = Tuple[Tuple[int, ...], ...]


# ============================================================================
# Closed-form orders
# ============================================================================

def expected_order(spec: GroupSpec) -> Optional[int]:
    """|G| for constructors with a known order; None for perm specs."""
    name, params = spec.name, spec.params
    if name == "product":
        left, right = (expected_order(c) for c in spec.children)
        return None if left is None or right is None else left * right
    if name == "perm":
        return None
    n = params[0]
    if name == "cyclic":
        return n
    if name == "dihedral":
        return n
    if name == "sym":
        return math.factorial(n)
    if name == "alt":
        return max(1, math.factorial(n) // 2)
    if name == "elem":
        return params[0] ** params[1]
    if name in ("psl2", "pgl2", "sl2"):
        q = n
        full = q * (q * q - 1)
        return full // 2 if name == "psl2" and q % 2 else full
    if name == "sz":
        return SZ_ORDER_8
    if name == "u3":
        return U3_ORDER_3
    raise SpecParameterError(f"unknown constructor {name!r}")


# ============================================================================
# Small families
# ============================================================================

def _cycle(points: Sequence[int], degree: int) -> Permutation:
    return Permutation.from_cycles([tuple(points)] if len(points) > 1 else [], degree)


def cyclic_generators(n: int) -> Tuple[int, List[Permutation]]:
    if n == 1:
        return 1, []
    return n, [_cycle(range(n), n)]


def dihedral_generators(m: int) -> Tuple[int, List[Permutation]]:
    n = m // 2
    if n == 1:
        return 2, [Permutation.from_cycles([(0, 1)], 2)]
    if n == 2:
        return 4, [Permutation.from_cycles([(0, 1), (2, 3)], 4),
                   Permutation.from_cycles([(0, 2), (1, 3)], 4)]
    rotation = _cycle(range(n), n)
    reflection = Permutation.from_cycles([(i, n - i) for i in range(1, (n + 1) // 2)], n)
    return n, [rotation, reflection]


def symmetric_generators(n: int) -> Tuple[int, List[Permutation]]:
    if n == 1:
        return 1, []
    if n == 2:
        return 2, [Permutation.from_cycles([(0, 1)], 2)]
    return n, [_cycle(range(n), n), Permutation.from_cycles([(0, 1)], n)]


def alternating_generators(n: int) -> Tuple[int, List[Permutation]]:
    if n <= 2:
        return max(n, 1), []
    return n, [Permutation.from_cycles([(0, 1, i)], n) for i in range(2, n)]


def elementary_generators(p: int, k: int) -> Tuple[int, List[Permutation]]:
    degree = p * k
    return degree, [_cycle(range(i * p, (i + 1) * p), degree) for i in range(k)]


# ============================================================================
# Linear groups over GF(q)
# ============================================================================

def _mobius_permutation(F: FiniteField, a: int, b: int, c: int, d: int) -> Permutation:
    """x -> (ax + b)/(cx + d) on GF(q) ∪ {∞}; ∞ is point q."""
    q = F.q
    infinity = q
    images = []
    for x in range(q):
        denominator = F.add(F.mul(c, x), d)
        numerator = F.add(F.mul(a, x), b)
        images.append(infinity if denominator == 0 else F.div(numerator, denominator))
    images.append(infinity if c == 0 else F.div(a, c))
    return Permutation(tuple(images))


def projective_line_generators(q: int, special: bool) -> Tuple[int, List[Permutation]]:
    """Generators of PSL2(q) (special) or PGL2(q) on q+1 points."""
    F = field(q)
    omega = F.primitive_element()
    minus_one = F.neg(1)
    translation = _mobius_permutation(F, 1, 1, 0, 1)
    if special and q % 2:
        scaling = _mobius_permutation(F, F.mul(omega, omega), 0, 0, 1)
    else:
        scaling = _mobius_permutation(F, omega, 0, 0, 1)
    inversion = _mobius_permutation(F, 0, minus_one, 1, 0)
    return q + 1, [g for g in (translation, scaling, inversion) if not g.is_identity()]


def sl2_generators(q: int) -> Tuple[int, List[Permutation]]:
    """SL2(q) acting on the q^2 - 1 nonzero column vectors."""
    F = field(q)
    omega = F.primitive_element()
    vectors = [(u, v) for u in range(q) for v in range(q) if (u, v) != (0, 0)]
    position = {vec: i for i, vec in enumerate(vectors)}

    def act(matrix: Matrix) -> Permutation:
        (a, b), (c, d) = matrix
        images = []
        for u, v in vectors:
            image = (F.add(F.mul(a, u), F.mul(b, v)), F.add(F.mul(c, u), F.mul(d, v)))
            images.append(position[image])
        return Permutation(tuple(images))

    matrices = [((1, 1), (0, 1)), ((omega, 0), (0, F.inv(omega))), ((0, F.neg(1)), (1, 0))]
    return len(vectors), [g for g in (act(m) for m in matrices) if not g.is_identity()]


# ============================================================================
# Matrix groups acting on projective points (U3(3), Sz(8))
# ============================================================================

def _mat_mul(F: FiniteField, A: Matrix, B: Matrix) -> Matrix:
    n, m = len(A), len(B[0])
    rows = []
    for i in range(n):
        row = []
        for j in range(m):
            total = 0
            for k in range(len(B)):
                total = F.add(total, F.mul(A[i][k], B[k][j]))
            row.append(total)
        rows.append(tuple(row))
    return tuple(rows)


def _row_times(F: FiniteField, v: Tuple[int, ...], M: Matrix) -> Tuple[int, ...]:
    return _mat_mul(F, (v,), M)[0]


def _normalize(F: FiniteField, v: Tuple[int, ...]) -> Tuple[int, ...]:
    """Scale so the first nonzero coordinate is 1."""
    lead = next(x for x in v if x)
    scale = F.inv(lead)
    return tuple(F.mul(scale, x) for x in v)


def _projective_action(F: FiniteField,
                       matrices: Sequence[Matrix],
                       start: Tuple[int, ...]) -> Tuple[List[Tuple[int, ...]], List[Permutation]]:
    """Orbit of the point <start> under v -> vM, and the induced permutations."""
    points = [_normalize(F, start)]
    index = {points[0]: 0}
    for point in points:
        for M in matrices:
            image = _normalize(F, _row_times(F, point, M))
            if image not in index:
                index[image] = len(points)
                points.append(image)
    perms = []
    for M in matrices:
        perms.append(Permutation(tuple(index[_normalize(F, _row_times(F, v, M))] for v in points)))
    return points, perms


def _prune_generators(perms: Sequence[Permutation], order: int, element_cap: int) -> List[Permutation]:
    """Greedy subset of perms generating a group of the given order."""
    kept: List[Permutation] = []
    current: Optional[Group] = None
    for g in dict.fromkeys(perms):
        if g.is_identity() or (current is not None and g in current):
            continue
        kept.append(g)
        current = close(kept, element_cap)
        if current.order == order:
            break
    return kept


def u3_3_generators(element_cap: int = ELEMENT_CAP) -> Tuple[int, List[Permutation]]:
    """
    PSU3(3) on the 28 isotropic points of the hermitian form
    x1·y3^3 + x2·y2^3 + x3·y1^3 over GF(9).

    Generators: the unitary upper unitriangular matrices, the unitary
    diagonal matrices and the antidiagonal form matrix J.
    """
    F = field(9)
    conj = lambda x: F.frobenius(x)  # noqa: E731
    J: Matrix = ((0, 0, 1), (0, 1, 0), (1, 0, 0))

    def preserves_form(M: Matrix) -> bool:
        M_bar_t = tuple(tuple(conj(M[j][i]) for j in range(3)) for i in range(3))
        return _mat_mul(F, _mat_mul(F, M, J), M_bar_t) == J

    unitriangular = []
    for a in range(9):
        for b in range(9):
            for c in range(9):
                M = ((1, a, b), (0, 1, c), (0, 0, 1))
                if preserves_form(M):
                    unitriangular.append(M)
    diagonal = []
    for x in range(1, 9):
        for y in range(1, 9):
            for z in range(1, 9):
                M = ((x, 0, 0), (0, y, 0), (0, 0, z))
                if preserves_form(M):
                    diagonal.append(M)
    if len(unitriangular) != 27 or len(diagonal) != 32:
        raise MulambdaError(f"unexpected unitary Borel pieces: {len(unitriangular)}, {len(diagonal)}")

    points, perms = _projective_action(F, unitriangular + diagonal + [J], (1, 0, 0))
    if len(points) != 28:
        raise MulambdaError(f"isotropic orbit has {len(points)} points, expected 28")
    return len(points), _prune_generators(perms, U3_ORDER_3, element_cap)


def sz_8_generators(element_cap: int = ELEMENT_CAP) -> Tuple[int, List[Permutation]]:
    """
    Sz(8) as 4x4 matrices over GF(8) with the field automorphism x -> x^4,
    acting on the orbit of <e4>: the unipotent S(1,0), S(0,1), the torus
    element M(ω) and the antidiagonal T.
    """
    F = field(8)
    theta = lambda x: F.pow(x, 4)  # noqa: E731
    omega = F.primitive_element()

    def S(a: int, b: int) -> Matrix:
        a_2t = F.mul(F.mul(a, a), theta(a))
        a_1t = F.mul(a, theta(a))
        corner = F.add(F.add(a_2t, F.mul(a, b)), theta(b))
        return ((1, 0, 0, 0),
                (a, 1, 0, 0),
                (b, theta(a), 1, 0),
                (corner, F.add(a_1t, b), a, 1))

    def M(lam: int) -> Matrix:
        return ((F.pow(lam, 3), 0, 0, 0),
                (0, F.pow(lam, 2), 0, 0),
                (0, 0, F.pow(lam, -2), 0),
                (0, 0, 0, F.pow(lam, -3)))

    T: Matrix = ((0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0))
    points, perms = _projective_action(F, [S(1, 0), S(0, 1), M(omega), T], (0, 0, 0, 1))
    if len(points) != 65:
        raise MulambdaError(f"ovoid orbit has {len(points)} points, expected 65")
    return len(points), _prune_generators(perms, SZ_ORDER_8, element_cap)


# ============================================================================
# Products and dispatch
# ============================================================================

def direct_product(G1: Group, G2: Group, element_cap: int = ELEMENT_CAP) -> Group:
    """G1 × G2 on d1 + d2 points, G2 moved to points d1.."""
    degree = G1.degree + G2.degree
    if G1.order * G2.order > element_cap:
        raise CapExceededError("element_cap", element_cap, f"product of orders {G1.order} and {G2.order}")
    gens = [g.extend(degree, 0) for g in G1.generators] + [g.extend(degree, G1.degree) for g in G2.generators]
    return close(gens, element_cap, degree=degree)


def _perm_group(spec: GroupSpec, element_cap: int) -> Group:
    needed = 1 + max((x for cycles in spec.generators for c in cycles for x in c), default=0)
    gens = []
    for cycles in spec.generators:
        try:
            gens.append(Permutation.from_cycles(cycles, needed))
        except ValueError as e:
            raise SpecParameterError(f"bad generator {cycles}: {e}") from None
    return close(gens, element_cap, degree=needed)


_GENERATORS: Dict[str, Callable[..., Tuple[int, List[Permutation]]]] = {
    "cyclic": cyclic_generators,
    "dihedral": dihedral_generators,
    "sym": symmetric_generators,
    "alt": alternating_generators,
    "elem": elementary_generators,
    "psl2": lambda q: projective_line_generators(q, special=True),
    "pgl2": lambda q: projective_line_generators(q, special=False),
    "sl2": sl2_generators,
}


SIMPLE_BY_CONSTRUCTION = ("sz", "u3")


def check_simple(spec: GroupSpec, G: Group) -> None:
    """Raise MulambdaError unless G is simple."""
    if not is_simple_group(G):
        raise MulambdaError(f"{spec} closed to a group of order {G.order} that is not simple")


def build_group(spec: Union[str, GroupSpec], element_cap: int = ELEMENT_CAP) -> Group:
    """
    Build the permutation group described by a spec.

    Args:
        spec: spec text or parsed GroupSpec
        element_cap: refuse groups larger than this

    Returns:
        Group, with its order checked against the closed form when one exists
    """
    if isinstance(spec, str):
        spec = parse_spec(spec)
    else:
        validate_spec(spec)

    expected = expected_order(spec)
    if expected is not None and expected > element_cap:
        raise CapExceededError("element_cap", element_cap, f"{spec} has order {expected}")

    if spec.name == "product":
        left, right = (build_group(child, element_cap) for child in spec.children)
        G = direct_product(left, right, element_cap)
    elif spec.name == "perm":
        G = _perm_group(spec, element_cap)
    elif spec.name == "sz":
        degree, gens = sz_8_generators(element_cap)
        G = close(gens, element_cap, degree=degree)
    elif spec.name == "u3":
        degree, gens = u3_3_generators(element_cap)
        G = close(gens, element_cap, degree=degree)
    else:
        degree, gens = _GENERATORS[spec.name](*spec.params)
        G = close(gens, element_cap, degree=degree)

    if expected is not None and G.order != expected:
        raise MulambdaError(f"{spec} closed to order {G.order}, expected {expected}")
    if spec.name in SIMPLE_BY_CONSTRUCTION:
        check_simple(spec, G)
    logger.info("built %s: degree %d, order %d", spec, G.degree, G.order)
    return G
