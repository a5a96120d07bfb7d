"""
Finite Fields
=============
GF(p^e) with elements encoded as integers 0..q-1: the base-p digits of an
element are the coefficients of its residue polynomial, lowest degree first.
Addition and multiplication are dense lookup tables.
"""

import logging
from functools import lru_cache
from itertools import product
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from ..config import FIELD_MODULI, MAX_FIELD_ORDER
from ..errors import FieldError

logger = logging.getLogger(__name__)


def prime_power_decomposition(q: int) -> Optional[Tuple[int, int]]:
    """(p, e) with q = p^e, or None when q is not a prime power."""
    if q < 2:
        return None
    factors = factorint(q)
    if len(factors) != 1:
        return None
    (p, e), = factors.items()
    return int(p), int(e)


def is_irreducible(coefficients: Sequence[int], p: int) -> bool:
    """Irreducibility over GF(p); coefficients lowest degree first."""
    return bool(gf_irreducible_p([int(c) % p for c in reversed(coefficients)], p, ZZ))


def smallest_irreducible(p: int, e: int) -> List[int]:
    """First monic irreducible of degree e in lexicographic order of lower coefficients."""
    for low in product(range(p), repeat=e):
        coefficients = list(reversed(low)) + [1]
        if coefficients[0] and is_irreducible(coefficients, p):
            return coefficients
    raise FieldError(f"no irreducible polynomial of degree {e} over GF({p})")


class FiniteField:
    """
    GF(q) for q = p^e <= MAX_FIELD_ORDER.

    Elements 0..p-1 form the prime subfield with their natural arithmetic.
    """

    def __init__(self, p: int, e: int = 1, modulus: Optional[Sequence[int]] = None):
        if not isprime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if e < 1:
            raise FieldError(f"degree {e} must be positive")
        q = p ** e
        if q > MAX_FIELD_ORDER:
            raise FieldError(f"GF({q}) exceeds the dense-table limit {MAX_FIELD_ORDER}")
        self.p, self.e, self.q = p, e, q

        if e == 1:
            modulus = [0, 1]
        elif modulus is None:
            modulus = FIELD_MODULI.get((p, e))
            if modulus is None or not is_irreducible(modulus, p):
                modulus = smallest_irreducible(p, e)
        modulus = [int(c) % p for c in modulus]
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus {modulus} is not monic of degree {e}")
        if e > 1 and not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        self.modulus = tuple(modulus)

        self._build_tables()
        self._primitive: Optional[int] = None
        logger.debug("built GF(%d) with modulus %s", q, self.modulus)

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        weights = p ** np.arange(e, dtype=np.int64)
        digits = (np.arange(q, dtype=np.int64)[:, None] // weights) % p

        self.add_table = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        self.neg_table = ((-digits) % p) @ weights

        # shifted[i] = digits of a * x^i mod m, for every a
        low = np.array(self.modulus[:e], dtype=np.int64)
        shifted = [digits]
        for _ in range(1, e):
            prev = shifted[-1]
            top = prev[:, -1:]
            nxt = np.concatenate([np.zeros((q, 1), dtype=np.int64), prev[:, :-1]], axis=1)
            shifted.append((nxt - top * low) % p)
        stacked = np.stack(shifted)  # (e, q, e)
        product_digits = np.einsum("bi,iak->abk", digits, stacked) % p
        self.mul_table = product_digits @ weights

        inverse = np.zeros(q, dtype=np.int64)
        inverse[1:] = np.argmax(self.mul_table[1:] == 1, axis=1)
        self.inv_table = inverse

    # ------------------------------------------------------------------

    def __len__(self) -> int:
        return self.q

    def __contains__(self, x: int) -> bool:
        return 0 <= x < self.q

    def __repr__(self) -> str:
        return f"FiniteField(q={self.q}, modulus={list(self.modulus)})"

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative inverse")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        result = 1
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def frobenius(self, a: int, times: int = 1) -> int:
        """a^(p^times)."""
        return self.pow(a, self.p ** times)

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        order = self.q - 1
        for r in factorint(self.q - 1):
            while order % r == 0 and self.pow(a, order // r) == 1:
                order //= r
        return order

    def primitive_element(self) -> int:
        """Smallest generator of the multiplicative group."""
        if self._primitive is None:
            for g in range(1, self.q):
                if self.multiplicative_order(g) == self.q - 1:
                    self._primitive = g
                    break
        return self._primitive

    def squares(self) -> List[int]:
        return sorted({self.mul(a, a) for a in range(1, self.q)})


@lru_cache(maxsize=None)
def field(q: int) -> FiniteField:
    """Shared GF(q) instance."""
    decomposition = prime_power_decomposition(q)
    if decomposition is None:
        raise FieldError(f"{q} is not a prime power")
    return FiniteField(*decomposition)
