import itertools
from typing import Dict, List, Sequence, Set, Tuple

import numpy as np

from charmonoid.config import Settings
from charmonoid.models import HilbertBasis
from charmonoid.perm import PermGroup

Vector = Tuple[int, ...]


def e(r: int, *indices: int) -> Vector:
    """Sum of 1-based unit vectors, as the hand-written bases are stated."""
    v = [0] * r
    for i in indices:
        v[i - 1] += 1
    return tuple(v)


# Hilbert bases of M(G) in the usual labelling of Irr(G), with degrees in that labelling
SL23_DEGREES = (1, 1, 1, 2, 2, 2, 3)
SL23_BASIS = [e(7, 1), e(7, 2), e(7, 3), e(7, 7), e(7, 4, 5), e(7, 4, 6), e(7, 5, 6), e(7, 4, 5, 6)]

GL23_DEGREES = (1, 1, 2, 2, 2, 3, 3, 4)
GL23_BASIS = [e(8, 1), e(8, 2), e(8, 3), e(8, 6), e(8, 7), e(8, 8),
              e(8, 4, 8), e(8, 5, 8), e(8, 4, 5, 8)]

A6_DEGREES = (1, 5, 5, 8, 8, 9, 10)
A6_BASIS = [
    (1, 0, 0, 0, 0, 0, 0), (1, 1, 0, 0, 0, 0, 0), (1, 1, 0, 0, 0, 1, 0), (1, 0, 1, 0, 0, 0, 0),
    (1, 0, 1, 0, 0, 1, 0), (1, 0, 0, 0, 0, 1, 0), (0, 1, 1, 0, 0, 1, 0), (0, 1, 1, 1, 2, 2, 2),
    (0, 1, 1, 2, 1, 2, 2), (0, 1, 0, 1, 1, 1, 0), (0, 1, 0, 0, 0, 0, 1), (0, 0, 1, 1, 1, 1, 0),
    (0, 0, 1, 0, 0, 0, 1), (0, 0, 0, 1, 1, 0, 2), (0, 0, 0, 1, 1, 1, 2), (0, 0, 0, 0, 0, 0, 1),
]


def fresh_settings(**overrides) -> Settings:
    values = {"use_cache": False, "seed": 7}
    values.update(overrides)
    return Settings(**values)


def degree_preserving_matches(ours: Sequence[Vector], our_degrees: Sequence[int],
                              reference: Sequence[Vector], ref_degrees: Sequence[int]) -> List[Tuple[int, ...]]:
    """
    All coordinate maps pi (ours[i] -> reference coordinate pi[i]) preserving degrees
    that carry the set `ours` onto the set `reference`.
    """
    if sorted(our_degrees) != sorted(ref_degrees) or len(ours) != len(reference):
        return []
    target = set(map(tuple, reference))
    blocks: Dict[int, Tuple[List[int], List[int]]] = {}
    for i, d in enumerate(our_degrees):
        blocks.setdefault(d, ([], []))[0].append(i)
    for j, d in enumerate(ref_degrees):
        blocks[d][1].append(j)
    choices = [[list(zip(src, perm)) for perm in itertools.permutations(dst)] for src, dst in blocks.values()]
    found = []
    for combo in itertools.product(*choices):
        pi = [0] * len(our_degrees)
        for pairs in combo:
            for i, j in pairs:
                pi[i] = j
        mapped = set()
        for v in ours:
            w = [0] * len(v)
            for i, x in enumerate(v):
                w[pi[i]] = x
            mapped.add(tuple(w))
        if mapped == target:
            found.append(tuple(pi))
    return found


def is_zero_one(HB: HilbertBasis) -> bool:
    return all(x in (0, 1) for v in HB.basis for x in v)


# -- brute-force oracles -------------------------------------------------------

def closure_of(table: np.ndarray, generators: Sequence[int]) -> frozenset:
    """Subgroup generated by element indices, by repeated right multiplication."""
    members = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in generators:
            y = int(table[x, g])
            if y not in members:
                members.add(y)
                frontier.append(y)
    return frozenset(members)


def all_subgroups(G: PermGroup) -> Set[frozenset]:
    """Every subgroup, assuming each is generated by at most two elements."""
    table = G.table
    n = G.order
    cyclic = {closure_of(table, [x]) for x in range(n)}
    found = set(cyclic)
    for a, b in itertools.combinations(range(n), 2):
        found.add(closure_of(table, [a, b]))
    return found


def subgroup_class_count(G: PermGroup, subgroups: Set[frozenset]) -> int:
    table = G.table
    inv = G.inverse_index
    remaining = set(subgroups)
    count = 0
    while remaining:
        H = remaining.pop()
        for g in range(G.order):
            remaining.discard(frozenset(int(table[table[inv[g], h], g]) for h in H))
        count += 1
    return count


def brute_monoid(generators: Sequence[Vector], box: Sequence[int]) -> Set[Vector]:
    """Elements of the monoid generated by `generators` inside [0, box]."""
    members = {tuple([0] * len(box))}
    frontier = list(members)
    while frontier:
        v = frontier.pop()
        for g in generators:
            w = tuple(a + b for a, b in zip(v, g))
            if all(x <= m for x, m in zip(w, box)) and w not in members:
                members.add(w)
                frontier.append(w)
    return members


def brute_minimal_generators(S: Sequence[Vector]) -> Set[Vector]:
    vectors = {tuple(v) for v in S if any(v)}
    if not vectors:
        return set()
    r = len(next(iter(vectors)))
    box = [max(v[i] for v in vectors) for i in range(r)]
    members = brute_monoid(list(vectors), box)
    zero = tuple([0] * r)
    result = set()
    for v in vectors:
        reducible = any(u != zero and u != v and all(a <= b for a, b in zip(u, v))
                        and tuple(b - a for a, b in zip(u, v)) in members
                        for u in members)
        if not reducible:
            result.add(v)
    return result


def brute_hol_irreducibles(d: Sequence[int], bound: int) -> Set[Vector]:
    """Irreducible elements of {a in N^r : d.a >= 0} lying in [0, bound]^r."""
    r = len(d)
    box = [a for a in itertools.product(range(bound + 1), repeat=r)
           if sum(x * y for x, y in zip(d, a)) >= 0]
    members = set(box)
    zero = tuple([0] * r)
    result = set()
    for a in box:
        if a == zero:
            continue
        if not any(u != zero and u != a and tuple(x - y for x, y in zip(a, u)) in members
                   for u in members if all(x <= y for x, y in zip(u, a))):
            result.add(a)
    return result


def brute_factorial(basis: Sequence[Vector], max_coeff: int = 3) -> bool:
    """No two distinct coefficient vectors (entries <= max_coeff) give the same sum."""
    seen: Dict[Vector, Tuple[int, ...]] = {}
    for coeffs in itertools.product(range(max_coeff + 1), repeat=len(basis)):
        total = tuple(sum(c * v[i] for c, v in zip(coeffs, basis)) for i in range(len(basis[0])))
        if total in seen:
            return False
        seen[total] = coeffs
    return True
