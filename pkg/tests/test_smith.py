import random
import unittest

import numpy as np
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from charmonoid.modular import charpoly_mod, inv_mod, nullspace_mod, rank_mod, roots_mod, rref_mod
from charmonoid.smith import smith_normal_form


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def sympy_invariant_factors(rows):
    factors = invariant_factors(Matrix(rows), domain=ZZ)
    return tuple(abs(int(f)) for f in factors if f != 0)


class TestSmithForm(unittest.TestCase):
    def test_diagonal_and_transforms(self):
        R = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
        snf = smith_normal_form(R, 3)
        self.assertEqual(snf.diagonal, [2, 6, 12])
        self.assertEqual(matmul(matmul(snf.U, R), snf.V), snf.D)

    def test_divisibility_chain(self):
        rng = random.Random(3)
        for _ in range(25):
            m, n = rng.randint(1, 4), rng.randint(1, 4)
            R = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
            snf = smith_normal_form(R, n)
            self.assertEqual(matmul(matmul(snf.U, R), snf.V), snf.D)
            diag = snf.diagonal
            nonzero = [d for d in diag if d]
            self.assertTrue(all(d >= 0 for d in diag))
            for a, b in zip(nonzero, nonzero[1:]):
                self.assertEqual(b % a, 0)
            self.assertEqual(tuple(nonzero), sympy_invariant_factors(R))
            # off-diagonal entries vanish
            self.assertTrue(all(snf.D[i][j] == 0 for i in range(m) for j in range(n) if i != j))

    def test_invariants_pad_free_part(self):
        # Z^3 / <(2, 0, 0)> = C2 x Z x Z
        self.assertEqual(smith_normal_form([[2, 0, 0]], 3).invariants(), [2, 0, 0])
        self.assertEqual(smith_normal_form([], 2).invariants(), [0, 0])

    def test_klein_four_relations(self):
        # <a, b | 2a, 2b, a + b - (b + a)>
        snf = smith_normal_form([[2, 0], [0, 2], [0, 0]], 2)
        self.assertEqual(snf.invariants(), [2, 2])


class TestModularAlgebra(unittest.TestCase):
    p = 97

    def test_inverse(self):
        for a in (1, 2, 45, 96):
            self.assertEqual(a * inv_mod(a, self.p) % self.p, 1)

    def test_rref_and_nullspace(self):
        A = np.array([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
        R, pivots = rref_mod(A, self.p)
        self.assertEqual(pivots, [0, 1])
        self.assertEqual(rank_mod(A, self.p), 2)
        N = nullspace_mod(A, self.p)
        self.assertEqual(N.shape, (1, 3))
        self.assertTrue(np.all((A @ N.T) % self.p == 0))

    def test_charpoly_roots(self):
        A = np.diag([3, 5, 5])
        coeffs = charpoly_mod(A, self.p)
        # (x - 3)(x - 5)^2 = x^3 - 13x^2 + 55x - 75
        self.assertEqual(coeffs, [1, (-13) % self.p, 55, (-75) % self.p])
        self.assertEqual(roots_mod(coeffs, self.p), [3, 5])


if __name__ == "__main__":
    unittest.main()
