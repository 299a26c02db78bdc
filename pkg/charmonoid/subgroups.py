import itertools
import logging
from fractions import Fraction
from math import lcm, prod
from typing import Dict, List, Sequence, Tuple

import numpy as np
from sympy import factorint

from .errors import OrderMismatchError
from .models import LinearCharacter, SubgroupClass
from .perm import PermGroup, small_generating_set
from .smith import smith_normal_form

logger = logging.getLogger(__name__)

# bound on the temporary (rows x |H|) index arrays built during conjugation
_CHUNK_CELLS = 1 << 22


def bitset_key(mask: np.ndarray) -> int:
    """Integer whose bit i is mask[i]; the canonical identity of a subgroup."""
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def _mask_of(n: int, members) -> np.ndarray:
    mask = np.zeros(n, dtype=bool)
    mask[members] = True
    return mask


def _is_prime_power(k: int) -> bool:
    return k > 1 and len(factorint(k)) == 1


def conjugacy_orbit(G: PermGroup, mask: np.ndarray) -> Dict[int, np.ndarray]:
    """All G-conjugates of a subgroup, keyed by bitset, by closure under generator conjugation."""
    n = mask.shape[0]
    orbit = {bitset_key(mask): mask}
    queue = [mask]
    while queue:
        members = np.flatnonzero(queue.pop())
        for s in G.generator_indices:
            image = _mask_of(n, G.conjugate_indices(s, members))
            key = bitset_key(image)
            if key not in orbit:
                orbit[key] = image
                queue.append(image)
    return orbit


def normalizer_mask(G: PermGroup, mask: np.ndarray) -> np.ndarray:
    table, inv = G.table, G.inverse_index
    n = mask.shape[0]
    members = np.flatnonzero(mask)
    result = np.zeros(n, dtype=bool)
    step = max(1, _CHUNK_CELLS // max(1, members.size))
    for start in range(0, n, step):
        xs = np.arange(start, min(n, start + step))
        conj = table[table[inv[xs][:, None], members[None, :]], xs[:, None]]
        result[xs] = mask[conj].all(axis=1)
    return result


def subgroup_classes_of(G: PermGroup, elements: Sequence[int], generators: Sequence[int]):
    """
    Conjugacy classes of the subgroup with the given element indices.
    Returns (class_of aligned with elements, class sizes, representative indices);
    class 0 is the identity and classes are numbered by their smallest element index.
    """
    elements = np.asarray(sorted(elements), dtype=np.int64)
    table, inv = G.table, G.inverse_index
    label = np.full(len(elements), -1, dtype=np.int64)
    sizes: List[int] = []
    reps: List[int] = []
    lookup = np.full(table.shape[0], -1, dtype=np.int64)
    lookup[elements] = np.arange(len(elements))
    for i, x in enumerate(elements):
        if label[i] >= 0:
            continue
        cid = len(sizes)
        label[i] = cid
        frontier = np.array([x])
        while frontier.size and len(generators):
            images = np.concatenate([table[table[inv[s], frontier], s] for s in generators])
            images = np.unique(images)
            fresh = images[label[lookup[images]] < 0]
            label[lookup[fresh]] = cid
            frontier = fresh
        sizes.append(int((label == cid).sum()))
        reps.append(int(x))
    return tuple(int(c) for c in label), tuple(sizes), tuple(reps)


def _conjugated_cells(G: PermGroup, by: np.ndarray, cells: np.ndarray) -> np.ndarray:
    table, inv = G.table, G.inverse_index
    out = []
    step = max(1, _CHUNK_CELLS // max(1, cells.size))
    for start in range(0, by.size, step):
        xs = by[start:start + step]
        out.append(table[table[inv[xs][:, None], cells[None, :]], xs[:, None]].ravel())
    return np.concatenate(out) if out else np.zeros(0, dtype=np.int64)


def subgroup_conjugacy_classes(G: PermGroup) -> List[SubgroupClass]:
    """
    One representative per conjugacy class of subgroups, found bottom-up: every
    subgroup K > 1 is <H, g> for a maximal subgroup H of K and some g of prime-power
    order outside H, so extending each class representative by such elements
    reaches every class.
    """
    G.check_cap("subgroup enumeration")
    n = G.order
    table = G.table
    orders = G.element_orders
    prime_power_elements = np.array([x for x in range(n) if _is_prime_power(int(orders[x]))], dtype=np.int64)

    known: Dict[int, int] = {}  # conjugate key -> slot in `found`
    found: List[Tuple[np.ndarray, int, int]] = []  # (canonical mask, class length, canonical key)

    def register(mask: np.ndarray) -> bool:
        key = bitset_key(mask)
        if key in known:
            return False
        orbit = conjugacy_orbit(G, mask)
        slot = len(found)
        for k in orbit:
            known[k] = slot
        canonical = min(orbit)
        found.append((orbit[canonical], len(orbit), canonical))
        return True

    trivial = _mask_of(n, [0])
    register(trivial)
    frontier = [trivial]
    while frontier:
        next_frontier = []
        for H in frontier:
            members = np.flatnonzero(H)
            H_gens = small_generating_set(G, H)
            normalizer = np.flatnonzero(normalizer_mask(G, H))
            tried = H.copy()
            for g in prime_power_elements:
                if tried[g]:
                    continue
                coset = table[members, g]
                tried[_conjugated_cells(G, normalizer, coset)] = True
                K = G.closure(H_gens + [int(g)], seed=H)
                if register(K):
                    next_frontier.append(K)
        frontier = next_frontier
        logger.debug("subgroup search: %d classes so far, %d new", len(found), len(frontier))

    found.sort(key=lambda item: (int(item[0].sum()), item[1], item[2]))
    result = []
    for index, (mask, length, key) in enumerate(found):
        elements = tuple(int(x) for x in np.flatnonzero(mask))
        gens = tuple(small_generating_set(G, mask))
        class_of, sizes, reps = subgroup_classes_of(G, elements, gens)
        result.append(SubgroupClass(
            index=index, order=len(elements), class_length=length,
            normalizer_order=n // length, key=key, elements=elements, generators=gens,
            h_class_of=class_of, h_class_sizes=sizes, h_class_reps=reps,
        ))
    logger.info("%r has %d conjugacy classes of subgroups (%d subgroups)",
                G, len(result), sum(s.class_length for s in result))
    return result


def subgroup_class_containing(G: PermGroup, classes: Sequence[SubgroupClass], members: Sequence[int]) -> int:
    """Index of the subgroup class containing the subgroup with the given element indices."""
    mask = _mask_of(G.order, list(members))
    keys = conjugacy_orbit(G, mask)
    canonical = min(keys)
    for sub in classes:
        if sub.key == canonical:
            return sub.index
    raise KeyError("subgroup not found among the classes")


def abelianization(G: PermGroup, sub: SubgroupClass):
    """
    H/[H,H] for the representative H of a subgroup class.
    Returns (coset label per element of H aligned with sub.elements, coset word
    exponent vectors in terms of sub.generators, SmithForm of the relation matrix).
    """
    table = G.table
    gens = list(sub.generators)
    commutators = []
    for a, b in itertools.combinations(gens, 2):
        c = table[table[table[G.inverse_index[a], G.inverse_index[b]], a], b]
        if c != 0:
            commutators.append(int(c))
    derived = G.normal_closure(commutators, within=gens)
    derived_members = np.flatnonzero(derived)

    elements = np.asarray(sub.elements, dtype=np.int64)
    label = np.full(table.shape[0], -1, dtype=np.int64)
    cosets: List[int] = []
    for x in elements:
        if label[x] < 0:
            label[table[x, derived_members]] = len(cosets)
            cosets.append(int(x))

    k, ngens = len(cosets), len(gens)
    words: List[List[int]] = [None] * k  # type: ignore[list-item]
    words[0] = [0] * ngens
    queue = [0]
    relations: List[List[int]] = []
    while queue:
        c = queue.pop(0)
        for i, s in enumerate(gens):
            target = int(label[table[cosets[c], s]])
            step = list(words[c])
            step[i] += 1
            if words[target] is None:
                words[target] = step
                queue.append(target)
            else:
                rel = [a - b for a, b in zip(step, words[target])]
                if any(rel):
                    relations.append(rel)
    snf = smith_normal_form(relations, ngens)
    if prod(snf.invariants()) != k:
        raise OrderMismatchError(f"subgroup {sub.index}: invariants {snf.invariants()} "
                                 f"do not multiply to |H/H'| = {k}")
    logger.debug("subgroup %d: |H/H'| = %d, invariants %s", sub.index, k, snf.invariants())
    return tuple(int(label[x]) for x in elements), words, snf


def linear_characters(G: PermGroup, sub: SubgroupClass) -> List[LinearCharacter]:
    """The |H/[H,H]| linear characters of a subgroup class representative, trivial first."""
    if not sub.generators:
        return [LinearCharacter(sub.index, 0, 1, (0,) * sub.h_class_count)]
    coset_of, words, snf = abelianization(G, sub)
    invariants = snf.invariants()
    ngens = len(sub.generators)
    factors = [(i, d) for i, d in enumerate(invariants) if d != 1]
    m = lcm(*[d for _, d in factors]) if factors else 1
    position = {x: i for i, x in enumerate(sub.elements)}
    rep_words = [words[coset_of[position[rep]]] for rep in sub.h_class_reps]

    result = []
    for index, t in enumerate(itertools.product(*[range(d) for _, d in factors])):
        # generator j maps to sum_i V[j][i] t_i / d_i mod 1
        angles = [Fraction(0)] * ngens
        for (i, d), ti in zip(factors, t):
            for j in range(ngens):
                angles[j] += Fraction(snf.V[j][i] * ti, d)
        values = []
        for w in rep_words:
            total = sum((a * x for a, x in zip(angles, w)), Fraction(0))
            values.append(int(total * m) % m)
        result.append(LinearCharacter(sub.index, index, m, tuple(values)))
    return result
