import random
import unittest

from charmonoid.chartable import character_table, induce_vector
from charmonoid.errors import DimensionMismatchError
from charmonoid.models import HilbertBasis, SubgroupClass
from charmonoid.monoid import MembershipOracle, hilbert_basis, is_member, lattice_rank, monomial_vectors
from charmonoid.named import construct_named
from charmonoid.perm import trivial_group
from charmonoid.subgroups import linear_characters, subgroup_classes_of, subgroup_conjugacy_classes
from tests.helpers import A6_BASIS, brute_minimal_generators


def vectors_of(G):
    T = character_table(G)
    return T, monomial_vectors(G, T, subgroup_conjugacy_classes(G))


class TestMembership(unittest.TestCase):
    def test_zero_is_member(self):
        self.assertEqual(is_member((0, 0), [(1, 0)]), (True, []))

    def test_multiple(self):
        ok, cert = is_member((2, 0), [(1, 0)])
        self.assertTrue(ok)
        self.assertEqual(cert, [(1, 0), (1, 0)])

    def test_non_member(self):
        self.assertEqual(is_member((1, 1), [(2, 0), (0, 1), (1, 2)]), (False, None))
        self.assertFalse(is_member((3,), [(2,)])[0])

    def test_certificate_for_alt6_data(self):
        s8, s9 = A6_BASIS[7], A6_BASIS[8]
        v = tuple(a + b for a, b in zip(s8, s9))
        self.assertEqual(v, (0, 2, 2, 3, 3, 4, 4))
        ok, cert = is_member(v, A6_BASIS)
        self.assertTrue(ok)
        self.assertEqual(tuple(sum(c[i] for c in cert) for i in range(7)), v)
        self.assertTrue(all(c in A6_BASIS for c in cert))

    def test_backtracking(self):
        # greedy (3,3) first leaves (1,0), which is stuck; (2,1)+(2,2) works
        oracle = MembershipOracle([(3, 3), (2, 1), (2, 2)])
        self.assertIn((4, 3), oracle)
        self.assertNotIn((1, 0), oracle)

    def test_adding_generators_keeps_lighter_failures(self):
        oracle = MembershipOracle([(2, 0)])
        self.assertNotIn((1, 0), oracle)
        self.assertNotIn((1, 1), oracle)
        oracle.add((1, 1))
        # (1, 0) is lighter than (1, 1) and stays known; (1, 1) itself is now a member
        self.assertIn((1, 0), oracle._failed)
        self.assertNotIn((1, 1), oracle._failed)
        self.assertIn((1, 1), oracle)
        self.assertIn((3, 1), oracle)
        self.assertNotIn((2, 1), oracle)
        oracle.add((1, 0))
        self.assertIn((2, 1), oracle)
        self.assertIn((1, 0), oracle)

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatchError):
            is_member((1, 0, 0), [(1, 0)])


class TestHilbertBasis(unittest.TestCase):
    def test_simple(self):
        HB = hilbert_basis([(1, 0), (0, 1), (1, 1), (2, 1)])
        self.assertEqual(HB.basis, ((1, 0), (0, 1)))

    def test_duplicates_and_zero_collapse(self):
        HB = hilbert_basis([(0, 0), (1, 1), (1, 1), (2, 2)])
        self.assertEqual(HB.basis, ((1, 1),))

    def test_idempotent(self):
        HB = hilbert_basis(A6_BASIS)
        self.assertEqual(set(HB.basis), set(A6_BASIS))
        self.assertEqual(hilbert_basis(HB).basis, HB.basis)

    def test_canonical_order(self):
        HB = hilbert_basis([(0, 1), (1, 0), (1, 1)])
        self.assertEqual(list(HB.basis), sorted(HB.basis, reverse=True))

    def test_against_brute_force_oracle(self):
        rng = random.Random(2024)
        for _ in range(200):
            r = rng.randint(1, 4)
            S = [tuple(rng.randint(0, 3) for _ in range(r)) for _ in range(rng.randint(1, 8))]
            if not any(any(v) for v in S):
                continue
            self.assertEqual(set(hilbert_basis(S).basis), brute_minimal_generators(S), S)

    def test_generators_are_members(self):
        rng = random.Random(5)
        S = [tuple(rng.randint(0, 3) for _ in range(4)) for _ in range(8)]
        HB = hilbert_basis(S)
        for v in S:
            self.assertTrue(is_member(v, HB.basis)[0])

    def test_lattice_rank(self):
        self.assertEqual(lattice_rank([(1,)]), 1)
        self.assertEqual(lattice_rank(HilbertBasis(7, tuple(A6_BASIS))), 7)
        self.assertEqual(lattice_rank([(1, 1), (2, 2)]), 1)


class TestMonomialVectors(unittest.TestCase):
    def test_trivial_group(self):
        _, S = vectors_of(trivial_group())
        self.assertEqual(S.vectors, ((1,),))
        self.assertEqual(lattice_rank(S), 1)

    def test_abelian_contains_units(self):
        T, S = vectors_of(construct_named("Dihedral", (4,)))
        units = {tuple(int(t == i) for t in range(T.r)) for i in range(T.r)}
        self.assertTrue(units <= set(S.vectors))
        self.assertEqual(set(hilbert_basis(S).basis), units)

    def test_invariants(self):
        G = construct_named("SL", (2, 3))
        T, S = vectors_of(G)
        self.assertIn((1,) + (0,) * (T.r - 1), S.vectors)
        self.assertEqual(len(S.vectors), len(set(S.vectors)))
        self.assertEqual(len(S.witnesses), len(S.vectors))
        for v in S.vectors:
            self.assertTrue(any(v))
            self.assertEqual(G.order % sum(a * d for a, d in zip(v, T.degrees)), 0)
        HB = hilbert_basis(S)
        self.assertEqual(lattice_rank(HB), T.r)
        self.assertGreaterEqual(len(HB), T.r)

    def test_threads_give_same_result(self):
        G = construct_named("Sym", (4,))
        T = character_table(G)
        subgroups = subgroup_conjugacy_classes(G)
        self.assertEqual(monomial_vectors(G, T, subgroups, jobs=1), monomial_vectors(G, T, subgroups, jobs=4))

    def test_conjugate_subgroups_give_equal_vectors(self):
        G = construct_named("Sym", (4,))
        T = character_table(G)
        for s in subgroup_conjugacy_classes(G)[1:]:
            g = 5
            conj = sorted(int(x) for x in G.conjugate_indices(g, list(s.elements)))
            gens = [int(x) for x in G.conjugate_indices(g, list(s.generators))]
            class_of, sizes, reps = subgroup_classes_of(G, conj, gens)
            moved = SubgroupClass(s.index, s.order, s.class_length, s.normalizer_order, s.key,
                                  tuple(conj), tuple(gens), class_of, sizes, reps)
            original = sorted(induce_vector(lam, s, T, G=G) for lam in linear_characters(G, s))
            conjugated = sorted(induce_vector(lam, moved, T, G=G) for lam in linear_characters(G, moved))
            self.assertEqual(original, conjugated)


if __name__ == "__main__":
    unittest.main()
