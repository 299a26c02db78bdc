import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import isprime, primitive_root
from sympy.ntheory import sqrt_mod

from .errors import EigenspaceSplitError, LiftAmbiguityError, PrimeSearchError
from .models import ClassFusion, ConjugacyClassOfElements, LinearCharacter, SubgroupClass, Vector
from .modular import charpoly_mod, inv_mod, mat_mul, nullspace_mod, roots_mod, rref_mod
from .perm import PermGroup

logger = logging.getLogger(__name__)

_PRIME_SEARCH_LIMIT = 100_000


@dataclass(frozen=True)
class CharacterTable:
    """
    Irreducible characters of G with values in F_p. A complex root of unity
    exp(2 pi i k / e) is encoded as omega**k, e = exponent of G.
    """
    order: int
    degrees: Tuple[int, ...]
    values: np.ndarray  # values[i, k] = chi_i(class k) mod p
    classes: Tuple[ConjugacyClassOfElements, ...]
    inverse_class: Tuple[int, ...]
    prime: int
    omega: int
    exponent: int
    seed: int = 0

    @property
    def r(self) -> int:
        return len(self.degrees)

    @property
    def class_sizes(self) -> Tuple[int, ...]:
        return tuple(c.size for c in self.classes)

    def root_of_unity(self, k: int, m: int) -> int:
        """Encoding of exp(2 pi i k / m); m must divide the exponent."""
        return pow(self.omega, (k * (self.exponent // m)) % self.exponent, self.prime)

    def inner_product(self, a: Sequence[int], b: Sequence[int]) -> int:
        """<a, b>_G mod p for class functions given by their values on the classes."""
        p = self.prime
        total = 0
        for k, size in enumerate(self.class_sizes):
            total += size * int(a[k]) * int(b[self.inverse_class[k]])
        return (total % p) * inv_mod(self.order, p) % p

    def row_orthogonality(self) -> bool:
        p = self.prime
        sizes = np.array(self.class_sizes, dtype=np.int64)
        conj = self.values[:, list(self.inverse_class)]
        gram = mat_mul(self.values * sizes % p, conj.T, p)
        return bool(np.array_equal(gram, (np.eye(self.r, dtype=np.int64) * self.order) % p))

    def column_orthogonality(self) -> bool:
        p = self.prime
        conj = self.values[:, list(self.inverse_class)]
        gram = mat_mul(self.values.T, conj, p)
        expected = np.diag([(self.order // s) % p for s in self.class_sizes]).astype(np.int64)
        return bool(np.array_equal(gram, expected))


def choose_prime(order: int, exponent: int) -> Tuple[int, int]:
    """Smallest prime p = 1 mod exponent with p > 2|G|, and an element of order exponent."""
    k = (2 * order) // exponent + 1
    for _ in range(_PRIME_SEARCH_LIMIT):
        p = k * exponent + 1
        if isprime(p):
            omega = pow(int(primitive_root(p)), (p - 1) // exponent, p)
            return p, omega
        k += 1
    raise PrimeSearchError(f"no prime = 1 mod {exponent} found above {2 * order}")


def class_matrices(G: PermGroup, p: int) -> np.ndarray:
    """
    M[j, k, l] = #{x in C_j : x^-1 z_l in C_k}, z_l the representative of class l,
    so that M[j] acts on the central-character vectors (|C_k| chi(g_k) / chi(1))_k.
    """
    classes = G.classes
    r = len(classes)
    class_of = G.class_of
    inv = G.inverse_index
    table = G.table
    M = np.zeros((r, r, r), dtype=np.int64)
    for l, cls in enumerate(classes):
        partner = class_of[table[inv, cls.rep_index]]
        np.add.at(M, (class_of, partner, np.full(class_of.shape[0], l)), 1)
    return M % p


def _split(space: np.ndarray, A: np.ndarray, p: int) -> List[np.ndarray]:
    """Decompose an A-invariant subspace (rows in RREF) into A-eigenspaces."""
    _, pivots = rref_mod(space, p)
    restricted = mat_mul(A, space.T, p)[pivots, :]
    eigenvalues = roots_mod(charpoly_mod(restricted, p), p)
    if len(eigenvalues) <= 1:
        return [space]
    d = space.shape[0]
    parts = []
    for lam in eigenvalues:
        shifted = (restricted - lam * np.eye(d, dtype=np.int64)) % p
        coords = nullspace_mod(shifted, p)
        parts.append(rref_mod(mat_mul(coords, space, p), p)[0])
    if sum(part.shape[0] for part in parts) != d:
        raise EigenspaceSplitError("class matrix is not diagonalizable on an invariant subspace")
    return parts


def _simultaneous_eigenvectors(M: np.ndarray, p: int, seed: int, attempts: int) -> List[np.ndarray]:
    r = M.shape[0]
    spaces = [np.eye(r, dtype=np.int64)]
    for j in range(1, r):
        spaces = [part for space in spaces
                  for part in (_split(space, M[j], p) if space.shape[0] > 1 else [space])]
        if all(space.shape[0] == 1 for space in spaces):
            break
    rng = np.random.default_rng(seed)
    tries = 0
    while any(space.shape[0] > 1 for space in spaces):
        if tries == attempts:
            raise EigenspaceSplitError(f"eigenspaces did not split after {attempts} random combinations")
        weights = rng.integers(0, p, size=r)
        combo = np.tensordot(weights, M, axes=1) % p
        spaces = [part for space in spaces
                  for part in (_split(space, combo, p) if space.shape[0] > 1 else [space])]
        tries += 1
    return [space[0] for space in spaces]


def character_table(G: PermGroup, seed: int = 0, split_attempts: int = 64) -> CharacterTable:
    G.check_cap("character table")
    n = G.order
    classes = G.classes
    r = len(classes)
    e = G.exponent
    p, omega = choose_prime(n, e)
    logger.info("character table of %r: %d classes, prime %d, exponent %d", G, r, p, e)
    inverse_class = [int(c) for c in G.inverse_class]
    sizes = [c.size for c in classes]

    M = class_matrices(G, p)
    rows = []
    for w in _simultaneous_eigenvectors(M, p, seed, split_attempts):
        w = w * inv_mod(w[0], p) % p
        norm = sum(int(w[k]) * int(w[inverse_class[k]]) * inv_mod(sizes[k], p) for k in range(r)) % p
        square = n * inv_mod(norm, p) % p
        roots = [int(x) for x in sqrt_mod(square, p, all_roots=True)]
        degree = min(x for x in roots if 0 < x <= (p - 1) // 2)
        if degree * degree > n:
            raise LiftAmbiguityError(f"degree {degree} squared exceeds |G| = {n}")
        values = tuple(degree * int(w[k]) * inv_mod(sizes[k], p) % p for k in range(r))
        rows.append((degree, values))
    rows.sort()
    degrees = tuple(d for d, _ in rows)
    if sum(d * d for d in degrees) != n:
        raise LiftAmbiguityError(f"squared degrees sum to {sum(d * d for d in degrees)}, not {n}")
    values = np.array([v for _, v in rows], dtype=np.int64)
    table = CharacterTable(n, degrees, values, tuple(classes), tuple(inverse_class), p, omega, e, seed)
    logger.info("irreducible degrees of %r: %s", G, degrees)
    return table


def class_fusion(G: PermGroup, sub: SubgroupClass) -> ClassFusion:
    """Map each class of the subgroup representative to the G-class containing it."""
    return ClassFusion(sub.index, tuple(int(G.class_of[rep]) for rep in sub.h_class_reps))


def lift(value: int, p: int, bound: int, what: str = "value") -> int:
    value %= p
    if value > bound:
        raise LiftAmbiguityError(f"{what} lifts to {value} mod {p}, above the bound {bound}")
    return value


def induce_vector(lam: LinearCharacter, sub: SubgroupClass, T: CharacterTable,
                  fusion: Optional[ClassFusion] = None, G: Optional[PermGroup] = None) -> Vector:
    """
    Multiplicities <lam^G, chi_j>, j = 1..r, by Frobenius reciprocity
    <lam, chi_j|H>_H = |H|^-1 sum_c |c| lam(c) chi_j(c^-1).
    """
    if fusion is None:
        fusion = class_fusion(G, sub)
    p = T.prime
    index = T.order // sub.order
    lam_values = np.array([T.root_of_unity(v, lam.modulus) for v in lam.values], dtype=np.int64)
    weights = lam_values * np.array(sub.h_class_sizes, dtype=np.int64) % p
    fused_inverse = [T.inverse_class[c] for c in fusion.map]
    restricted = T.values[:, fused_inverse]
    raw = mat_mul(restricted, weights[:, None], p).ravel() * inv_mod(sub.order, p) % p
    vector = tuple(lift(int(x), p, index, f"multiplicity of chi_{j + 1}") for j, x in enumerate(raw))
    if sum(v * d for v, d in zip(vector, T.degrees)) != index:
        raise LiftAmbiguityError(
            f"induced vector {vector} has degree {sum(v * d for v, d in zip(vector, T.degrees))}, expected {index}")
    return vector
