import unittest

import numpy as np

from charmonoid.chartable import character_table, choose_prime, class_fusion, induce_vector, lift
from charmonoid.errors import LiftAmbiguityError
from charmonoid.named import construct_named
from charmonoid.perm import direct_product
from charmonoid.subgroups import linear_characters, subgroup_conjugacy_classes

CORPUS = [("Sym", (3,)), ("Sym", (4,)), ("Alt", (4,)), ("SL", (2, 3)), ("GL", (2, 3)),
          ("Dihedral", (8,)), ("Alt", (5,)), ("SL", (3, 2)), ("SL", (2, 5)), ("Mathieu", (10,))]


class TestCharacterTable(unittest.TestCase):
    def test_prime_choice(self):
        p, omega = choose_prime(24, 12)
        self.assertEqual(p, 61)
        self.assertEqual(pow(omega, 12, p), 1)
        self.assertTrue(all(pow(omega, k, p) != 1 for k in (4, 6)))

    def test_cyclic(self):
        G = construct_named("Cyclic", (3,))
        T = character_table(G)
        self.assertEqual(T.degrees, (1, 1, 1))
        # every value is a cube root of unity
        cube_roots = {pow(T.omega, k * T.exponent // 3, T.prime) for k in range(3)}
        self.assertTrue(all(int(v) in cube_roots for v in T.values.ravel()))

    def test_degrees(self):
        self.assertEqual(character_table(construct_named("Sym", (3,))).degrees, (1, 1, 2))
        self.assertEqual(character_table(construct_named("SL", (2, 3))).degrees, (1, 1, 1, 2, 2, 2, 3))
        self.assertEqual(character_table(construct_named("GL", (2, 3))).degrees, (1, 1, 2, 2, 2, 3, 3, 4))
        self.assertEqual(character_table(construct_named("Alt", (6,))).degrees, (1, 5, 5, 8, 8, 9, 10))

    def test_self_checks_over_corpus(self):
        for name, args in CORPUS:
            G = construct_named(name, args)
            T = character_table(G, seed=11)
            self.assertEqual(T.r, len(G.classes), name)
            self.assertEqual(sum(d * d for d in T.degrees), G.order, name)
            self.assertTrue(all(G.order % d == 0 for d in T.degrees), name)
            self.assertTrue(T.row_orthogonality(), name)
            self.assertTrue(T.column_orthogonality(), name)
            self.assertTrue(np.all(T.values[0] == 1), name)
            self.assertEqual(list(T.values[:, 0]), [d % T.prime for d in T.degrees], name)

    def test_product_table(self):
        G = direct_product(construct_named("Sym", (3,)), construct_named("Cyclic", (2,)))
        T = character_table(G)
        self.assertEqual(T.degrees, (1, 1, 1, 1, 2, 2))
        self.assertTrue(T.row_orthogonality())

    def test_seed_independence(self):
        G = construct_named("SL", (2, 3))
        a, b = character_table(G, seed=1), character_table(G, seed=99)
        self.assertEqual(a.degrees, b.degrees)
        self.assertTrue(np.array_equal(a.values, b.values))

    def test_inner_product(self):
        T = character_table(construct_named("Sym", (4,)))
        for i in range(T.r):
            for j in range(T.r):
                self.assertEqual(T.inner_product(T.values[i], T.values[j]), int(i == j))


class TestInduction(unittest.TestCase):
    def setUp(self):
        self.S3 = construct_named("Sym", (3,))
        self.T = character_table(self.S3)
        self.classes = subgroup_conjugacy_classes(self.S3)

    def test_fusion(self):
        G = self.S3
        whole = self.classes[-1]
        self.assertEqual(class_fusion(G, whole).map, tuple(range(len(G.classes))))
        self.assertEqual(class_fusion(G, self.classes[0]).map, (0,))
        A3 = next(s for s in self.classes if s.order == 3)
        fused = class_fusion(G, A3).map
        self.assertEqual(len(fused), 3)
        self.assertEqual(fused[0], 0)
        # both nontrivial classes of A3 land in the class of 3-cycles
        three_cycles = next(k for k, c in enumerate(G.classes) if c.element_order == 3)
        self.assertEqual(sorted(fused[1:]), [three_cycles, three_cycles])

    def test_trivial_from_whole_group(self):
        whole = self.classes[-1]
        lam = linear_characters(self.S3, whole)[0]
        self.assertEqual(induce_vector(lam, whole, self.T, G=self.S3), (1, 0, 0))

    def test_regular_character(self):
        trivial = self.classes[0]
        lam = linear_characters(self.S3, trivial)[0]
        self.assertEqual(induce_vector(lam, trivial, self.T, G=self.S3), self.T.degrees)

    def test_degree_check_everywhere(self):
        G = construct_named("GL", (2, 3))
        T = character_table(G)
        for s in subgroup_conjugacy_classes(G):
            for lam in linear_characters(G, s):
                v = induce_vector(lam, s, T, G=G)
                self.assertEqual(sum(a * d for a, d in zip(v, T.degrees)), G.order // s.order)

    def test_abelian_group_induces_unit_vectors(self):
        G = construct_named("Cyclic", (6,))
        T = character_table(G)
        whole = subgroup_conjugacy_classes(G)[-1]
        vectors = {induce_vector(lam, whole, T, G=G) for lam in linear_characters(G, whole)}
        units = {tuple(int(t == i) for t in range(6)) for i in range(6)}
        self.assertEqual(vectors, units)

    def test_sl23_sum_of_three_degree_two(self):
        G = construct_named("SL", (2, 3))
        T = character_table(G)
        target = (0, 0, 0, 1, 1, 1, 0)
        found = {induce_vector(lam, s, T, G=G)
                 for s in subgroup_conjugacy_classes(G) for lam in linear_characters(G, s)}
        self.assertIn(target, found)

    def test_lift(self):
        self.assertEqual(lift(5, 101, 10), 5)
        self.assertEqual(lift(-96, 101, 10), 5)
        with self.assertRaises(LiftAmbiguityError):
            lift(-1, 101, 10)


if __name__ == "__main__":
    unittest.main()
