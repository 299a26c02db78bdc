import itertools
from functools import lru_cache
from typing import Tuple

import numpy as np
from sympy import Poly, factorint, symbols

from .errors import NotPrimePowerError

_x = symbols("x")


def prime_power(q: int) -> Tuple[int, int]:
    """(p, k) with q = p^k, or NotPrimePowerError."""
    factors = factorint(q) if q > 1 else {}
    if len(factors) != 1:
        raise NotPrimePowerError(f"{q} is not a prime power")
    (p, k), = factors.items()
    return int(p), int(k)


class GaloisField:
    """
    F_q with q = p^k. Elements are the integers 0..q-1; the base-p digits of an
    element are its coefficients in F_p[x]/(f) for a monic irreducible f of
    degree k (the lexicographically first one).
    """
    def __init__(self, q: int):
        self.q = q
        self.p, self.k = prime_power(q)
        self.modulus = self._find_modulus()
        self.add = np.zeros((q, q), dtype=np.int64)
        self.mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                self.add[a, b] = self._from_digits([(x + y) % self.p for x, y in
                                                    zip(self._digits(a), self._digits(b))])
                self.mul[a, b] = self._poly_mul(a, b)
        self.neg = np.array([int(np.flatnonzero(self.add[a] == 0)[0]) for a in range(q)])
        self.inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            self.inv[a] = int(np.flatnonzero(self.mul[a] == 1)[0])
        self.primitive = self._find_primitive()

    def _digits(self, a: int):
        return [(a // self.p ** i) % self.p for i in range(self.k)]

    def _from_digits(self, digits) -> int:
        return sum(int(c) * self.p ** i for i, c in enumerate(digits))

    def _find_modulus(self) -> Tuple[int, ...]:
        if self.k == 1:
            return (0, 1)
        for low in itertools.product(range(self.p), repeat=self.k):
            coeffs = list(low) + [1]  # constant term first
            if Poly(list(reversed(coeffs)), _x, modulus=self.p).is_irreducible:
                return tuple(coeffs)
        raise NotPrimePowerError(f"no irreducible polynomial of degree {self.k} over F_{self.p}")

    def _poly_mul(self, a: int, b: int) -> int:
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        # x^k = -(m_0 + m_1 x + ... + m_{k-1} x^{k-1})
        for deg in range(len(prod) - 1, self.k - 1, -1):
            c = prod[deg]
            if c:
                prod[deg] = 0
                for i in range(self.k):
                    prod[deg - self.k + i] = (prod[deg - self.k + i] - c * self.modulus[i]) % self.p
        return self._from_digits(prod[:self.k])

    def _find_primitive(self) -> int:
        if self.q == 2:
            return 1
        for a in range(2, self.q):
            power, order = a, 1
            while power != 1:
                power = int(self.mul[power, a])
                order += 1
            if order == self.q - 1:
                return a
        raise NotPrimePowerError(f"F_{self.q} has no primitive element")

    def power(self, a: int, e: int) -> int:
        result = 1
        for _ in range(e):
            result = int(self.mul[result, a])
        return result

    def frobenius(self, a: int) -> int:
        return self.power(a, self.p)

    def basis(self):
        """The F_p-basis 1, x, ..., x^(k-1) as field elements."""
        return [self.p ** i for i in range(self.k)]


@lru_cache(maxsize=None)
def galois_field(q: int) -> GaloisField:
    return GaloisField(q)
