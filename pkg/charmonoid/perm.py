import logging
from dataclasses import dataclass
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (InputError, InvalidCycleError, NotNormalError, NotSubgroupError,
                     OrderMismatchError, SizeCapExceeded)
from .models import ConjugacyClassOfElements

logger = logging.getLogger(__name__)

DEFAULT_SIZE_CAP = 10_000


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0, ..., n-1}; acts on the right, so (p * q)[i] = q[p[i]]."""
    images: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise InputError(f"images {self.images} are not a bijection")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], degree: int) -> "Permutation":
        """Cycles use 0-based points; a point may appear at most once across all cycles."""
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            for a in cycle:
                if a in seen:
                    raise InvalidCycleError(f"point {a + 1} is repeated")
                if not 0 <= a < degree:
                    raise InvalidCycleError(f"point {a + 1} is outside 1..{degree}")
                seen.add(a)
            for a, b in zip(cycle, list(cycle[1:]) + list(cycle[:1])):
                images[a] = b
        return cls(tuple(images))

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "Permutation":
        return cls(tuple(int(x) for x in arr))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = [False] * self.degree
        result = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            nxt = self.images[start]
            while nxt != start:
                cycle.append(nxt)
                seen[nxt] = True
                nxt = self.images[nxt]
            if len(cycle) > 1:
                result.append(tuple(cycle))
        return result

    def order(self) -> int:
        return lcm(*[len(c) for c in self.cycles()])

    def extended(self, degree: int, shift: int = 0) -> "Permutation":
        """Embed into a larger degree, moving only points shift..shift+self.degree-1."""
        images = list(range(degree))
        for i, j in enumerate(self.images):
            images[i + shift] = j + shift
        return Permutation(tuple(images))

    def as_array(self) -> np.ndarray:
        return np.array(self.images, dtype=np.int32)

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + ",".join(str(a + 1) for a in c) + ")" for c in cycles)


def _compose(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    return q[p]


def _inverse(p: np.ndarray) -> np.ndarray:
    return np.argsort(p).astype(np.int32)


class _Level:
    def __init__(self, base_point: int, identity: np.ndarray):
        self.base_point = base_point
        self.gens: List[np.ndarray] = []
        self.transversal: Dict[int, np.ndarray] = {base_point: identity}

    def grow_orbit(self):
        queue = list(self.transversal)
        while queue:
            beta = queue.pop(0)
            u = self.transversal[beta]
            for s in self.gens:
                image = int(s[beta])
                if image not in self.transversal:
                    self.transversal[image] = _compose(u, s)
                    queue.append(image)


class StabChain:
    """
    Deterministic Schreier-Sims. Each level keeps the generators of its own group,
    the orbit of its base point and a transversal; the next level stabilizes it and
    is generated by the sifted Schreier generators.
    """
    def __init__(self, degree: int, generators: Sequence[np.ndarray]):
        self.degree = degree
        self.identity = np.arange(degree, dtype=np.int32)
        self.levels: List[_Level] = []
        for g in generators:
            self._extend(np.asarray(g, dtype=np.int32), 0)

    @property
    def base(self) -> List[int]:
        return [level.base_point for level in self.levels]

    @property
    def order(self) -> int:
        result = 1
        for level in self.levels:
            result *= len(level.transversal)
        return result

    def sift(self, g: np.ndarray, start: int = 0) -> Tuple[np.ndarray, int]:
        h = g
        for depth in range(start, len(self.levels)):
            level = self.levels[depth]
            u = level.transversal.get(int(h[level.base_point]))
            if u is None:
                return h, depth
            h = _compose(h, _inverse(u))
        return h, len(self.levels)

    def contains(self, g: np.ndarray, start: int = 0) -> bool:
        residue, depth = self.sift(np.asarray(g, dtype=np.int32), start)
        return depth == len(self.levels) and bool(np.array_equal(residue, self.identity))

    def _extend(self, g: np.ndarray, depth: int):
        if self.contains(g, depth):
            return
        if depth == len(self.levels):
            moved = np.flatnonzero(g != self.identity)
            self.levels.append(_Level(int(moved[0]), self.identity))
        level = self.levels[depth]
        level.gens.append(g)
        level.grow_orbit()
        for beta, u in list(level.transversal.items()):
            for s in list(level.gens):
                back = level.transversal[int(s[beta])]
                self._extend(_compose(_compose(u, s), _inverse(back)), depth + 1)


class PermGroup:
    """
    A finite permutation group. Order and membership come from a Schreier-Sims
    chain; everything else works on an explicit enumeration of the elements
    (identity at index 0) together with its multiplication table.
    """
    def __init__(self, degree: int, generators: Sequence[Permutation],
                 size_cap: int = DEFAULT_SIZE_CAP, name: str = ""):
        if degree < 1:
            raise InputError("degree must be positive")
        for g in generators:
            if g.degree != degree:
                raise InputError(f"generator {g} has degree {g.degree}, expected {degree}")
        self.degree = degree
        self.generators: Tuple[Permutation, ...] = tuple(g for g in generators if not g.is_identity())
        self.size_cap = size_cap
        self.name = name
        self._chain: Optional[StabChain] = None
        self._elements: Optional[np.ndarray] = None
        self._sorted_codes = None
        self._code_order = None
        self._table: Optional[np.ndarray] = None
        self._inverse: Optional[np.ndarray] = None
        self._orders: Optional[np.ndarray] = None
        self._classes: Optional[List[ConjugacyClassOfElements]] = None
        self._class_of: Optional[np.ndarray] = None
        self._generator_indices: Optional[List[int]] = None

    def __repr__(self):
        label = self.name or f"<{len(self.generators)} generators>"
        return f"PermGroup({label}, degree={self.degree})"

    # -- Schreier-Sims layer -------------------------------------------------

    @property
    def chain(self) -> StabChain:
        if self._chain is None:
            self._chain = StabChain(self.degree, [g.as_array() for g in self.generators])
        return self._chain

    @property
    def order(self) -> int:
        return self.chain.order

    def contains(self, g: Permutation) -> bool:
        return g.degree == self.degree and self.chain.contains(g.as_array())

    def check_cap(self, what: str = "group"):
        if self.order > self.size_cap:
            raise SizeCapExceeded(self.order, self.size_cap, what)

    # -- explicit enumeration ------------------------------------------------

    def _encode(self, base_images: np.ndarray) -> np.ndarray:
        """Integer code of an element from the images of the base points."""
        b = base_images.shape[1]
        if b == 0:
            return np.zeros(base_images.shape[0], dtype=np.int64)
        if self.degree ** b < 2 ** 62:
            weights = np.array([self.degree ** t for t in range(b)], dtype=np.int64)
            return base_images.astype(np.int64) @ weights
        codes = np.empty(base_images.shape[0], dtype=object)
        for i, row in enumerate(base_images):
            codes[i] = row.astype(np.int32).tobytes()
        return codes

    @property
    def elements(self) -> np.ndarray:
        if self._elements is None:
            self._enumerate()
        return self._elements

    def _enumerate(self):
        self.check_cap()
        base = self.chain.base
        gens = [g.as_array() for g in self.generators]
        identity = np.arange(self.degree, dtype=np.int32)[None, :]
        blocks = [identity]
        known = self._encode(identity[:, base])
        frontier = identity
        while frontier.shape[0] and gens:
            candidates = np.concatenate([s[frontier] for s in gens])
            codes = self._encode(candidates[:, base])
            uniq, first = np.unique(codes, return_index=True)
            fresh = ~np.isin(uniq, known)
            frontier = candidates[first[fresh]]
            if frontier.shape[0]:
                blocks.append(frontier)
                known = np.concatenate([known, uniq[fresh]])
        elements = np.concatenate(blocks).astype(np.int32)
        if elements.shape[0] != self.order:
            raise OrderMismatchError(
                f"enumeration found {elements.shape[0]} elements, Schreier-Sims order is {self.order}")
        codes = self._encode(elements[:, base])
        self._code_order = np.argsort(codes, kind="stable")
        self._sorted_codes = codes[self._code_order]
        self._elements = elements
        logger.info("enumerated %d elements of %r", elements.shape[0], self)

    def _index_of_base_images(self, base_images: np.ndarray) -> np.ndarray:
        codes = self._encode(base_images)
        pos = np.searchsorted(self._sorted_codes, codes)
        return self._code_order[pos].astype(np.int32)

    def index_of(self, g: Permutation) -> int:
        """Position of g in the enumeration; raises NotSubgroupError if g is not an element."""
        if not self.contains(g):
            raise NotSubgroupError(f"{g} is not an element of {self!r}")
        if self._elements is None:
            self._enumerate()
        return int(self._index_of_base_images(g.as_array()[self.chain.base][None, :])[0])

    def indices_of(self, rows: np.ndarray) -> np.ndarray:
        """Enumeration indices of image rows that are known to be elements."""
        if self._elements is None:
            self._enumerate()
        return self._index_of_base_images(np.asarray(rows)[:, self.chain.base])

    def element(self, i: int) -> Permutation:
        return Permutation.from_array(self.elements[i])

    @property
    def table(self) -> np.ndarray:
        """table[i, j] is the index of element_i * element_j."""
        if self._table is None:
            elements = self.elements
            n = elements.shape[0]
            base_cols = elements[:, self.chain.base]
            table = np.empty((n, n), dtype=np.int32)
            for j in range(n):
                table[:, j] = self._index_of_base_images(elements[j][base_cols])
            self._table = table
        return self._table

    @property
    def inverse_index(self) -> np.ndarray:
        if self._inverse is None:
            inverses = np.argsort(self.elements, axis=1)
            self._inverse = self._index_of_base_images(inverses[:, self.chain.base])
        return self._inverse

    @property
    def generator_indices(self) -> List[int]:
        if self._generator_indices is None:
            self._generator_indices = [self.index_of(g) for g in self.generators]
        return self._generator_indices

    def conjugate_indices(self, g: int, xs: np.ndarray) -> np.ndarray:
        """Indices of g^-1 x g for x in xs."""
        table = self.table
        return table[table[self.inverse_index[g], xs], g]

    def closure(self, generators: Sequence[int], seed: Optional[np.ndarray] = None) -> np.ndarray:
        """Membership mask of the subgroup generated by the given element indices (and seed)."""
        table = self.table
        mask = np.zeros(table.shape[0], dtype=bool)
        mask[0] = True
        if seed is not None:
            mask |= seed
        gens = np.asarray(list(generators), dtype=np.int64)
        if gens.size == 0:
            return mask
        frontier = np.flatnonzero(mask)
        while frontier.size:
            products = table[frontier[:, None], gens[None, :]].ravel()
            frontier = np.unique(products[~mask[products]])
            mask[frontier] = True
        return mask

    def normal_closure(self, generators: Sequence[int], within: Sequence[int]) -> np.ndarray:
        """Smallest subgroup containing `generators` and normalized by the elements `within`."""
        gens = list(generators)
        mask = self.closure(gens)
        while True:
            members = np.flatnonzero(mask)
            extra = []
            for w in within:
                conj = self.conjugate_indices(w, members)
                outside = conj[~mask[conj]]
                if outside.size:
                    extra.append(int(outside[0]))
            if not extra:
                return mask
            gens.extend(extra)
            mask = self.closure(gens, seed=mask)

    def subgroup_from_mask(self, mask: np.ndarray, name: str = "") -> "PermGroup":
        gens = small_generating_set(self, mask)
        return PermGroup(self.degree, [self.element(i) for i in gens], self.size_cap, name)

    # -- element orders and classes -----------------------------------------

    @property
    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            table = self.table
            n = table.shape[0]
            idx = np.arange(n)
            orders = np.zeros(n, dtype=np.int64)
            power = idx.copy()
            k = 1
            while (orders == 0).any():
                hit = (power == 0) & (orders == 0)
                orders[hit] = k
                power = table[power, idx]
                k += 1
            self._orders = orders
        return self._orders

    @property
    def exponent(self) -> int:
        return lcm(*[int(x) for x in np.unique(self.element_orders)])

    def is_abelian(self) -> bool:
        gens = self.generators
        return all((a * b) == (b * a) for a in gens for b in gens)

    def _compute_classes(self):
        table = self.table
        inv = self.inverse_index
        n = table.shape[0]
        gens = self.generator_indices
        label = np.full(n, -1, dtype=np.int64)
        members: List[np.ndarray] = []
        for x in range(n):
            if label[x] >= 0:
                continue
            cid = len(members)
            label[x] = cid
            frontier = np.array([x])
            while frontier.size and gens:
                images = np.concatenate([table[table[inv[s], frontier], s] for s in gens])
                frontier = np.unique(images[label[images] < 0])
                label[frontier] = cid
            members.append(np.flatnonzero(label == cid))
        orders = self.element_orders
        keyed = []
        for cid, mem in enumerate(members):
            rows = self.elements[mem]
            rep = int(mem[np.lexsort(rows.T[::-1])[0]])
            keyed.append((int(orders[rep]), len(mem), tuple(int(v) for v in self.elements[rep]), rep, cid))
        keyed.sort()
        self._class_of = np.empty(n, dtype=np.int64)
        self._classes = []
        for new_id, (order, size, rep_images, rep, cid) in enumerate(keyed):
            self._class_of[members[cid]] = new_id
            self._classes.append(ConjugacyClassOfElements(rep_images, size, order, rep))

    @property
    def classes(self) -> List[ConjugacyClassOfElements]:
        if self._classes is None:
            self._compute_classes()
        return self._classes

    @property
    def class_of(self) -> np.ndarray:
        if self._class_of is None:
            self._compute_classes()
        return self._class_of

    @property
    def inverse_class(self) -> np.ndarray:
        """inverse_class[c] is the class containing the inverses of class c."""
        reps = np.array([c.rep_index for c in self.classes])
        return self.class_of[self.inverse_index[reps]]


def small_generating_set(G: PermGroup, mask: np.ndarray) -> List[int]:
    """Greedy generating set: repeatedly add the first element not yet generated."""
    gens: List[int] = []
    current = np.zeros_like(mask)
    current[0] = True
    members = np.flatnonzero(mask)
    orders = G.element_orders
    # high-order elements first keeps the list short
    for x in members[np.argsort(-orders[members], kind="stable")]:
        if not current[x]:
            gens.append(int(x))
            current = G.closure(gens, seed=current)
    return gens


def trivial_group(degree: int = 1, size_cap: int = DEFAULT_SIZE_CAP) -> PermGroup:
    return PermGroup(degree, [], size_cap, name="Trivial")


def group_order(G: PermGroup) -> int:
    return G.order


def conjugacy_classes(G: PermGroup) -> List[ConjugacyClassOfElements]:
    G.check_cap()
    return G.classes


def derived_subgroup(G: PermGroup) -> PermGroup:
    """[G,G] as the normal closure of the generator commutators; needs no enumeration."""
    gens = list(G.generators)
    commutators = []
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            c = a.inverse() * b.inverse() * a * b
            if not c.is_identity():
                commutators.append(c)
    D = PermGroup(G.degree, commutators, G.size_cap, name=f"[{G.name}, {G.name}]")
    changed = True
    while changed:
        changed = False
        for n in list(D.generators):
            for g in gens:
                c = g.inverse() * n * g
                if not D.contains(c):
                    D = PermGroup(G.degree, list(D.generators) + [c], G.size_cap, D.name)
                    changed = True
    return D


def center(G: PermGroup) -> PermGroup:
    table = G.table
    mask = np.ones(table.shape[0], dtype=bool)
    for s in G.generator_indices:
        mask &= table[:, s] == table[s, :]
    return G.subgroup_from_mask(mask, name=f"Z({G.name})")


def is_normal(G: PermGroup, N: PermGroup) -> bool:
    return all(N.contains(g.inverse() * n * g) for g in G.generators for n in N.generators)


def quotient_group(G: PermGroup, N: PermGroup) -> PermGroup:
    """G/N realized by the action of G on the cosets of N."""
    if N.degree != G.degree or not all(G.contains(n) for n in N.generators):
        raise NotSubgroupError(f"{N!r} is not a subgroup of {G!r}")
    if not is_normal(G, N):
        raise NotNormalError(f"{N!r} is not normal in {G!r}")
    table = G.table
    n_idx = G.indices_of(N.elements)
    label = np.full(table.shape[0], -1, dtype=np.int64)
    reps = []
    for x in range(table.shape[0]):
        if label[x] < 0:
            label[table[x, n_idx]] = len(reps)
            reps.append(x)
    k = len(reps)
    gens = []
    for s in G.generator_indices:
        images = tuple(int(label[table[rep, s]]) for rep in reps)
        gens.append(Permutation(images))
    logger.info("quotient of order %d by %d acts on %d cosets", G.order, N.order, k)
    return PermGroup(k, gens, G.size_cap, name=f"{G.name}/{N.name}" if G.name else "")


def direct_product(G: PermGroup, H: PermGroup, size_cap: Optional[int] = None) -> PermGroup:
    cap = size_cap if size_cap is not None else max(G.size_cap, H.size_cap)
    if G.order * H.order > cap:
        raise SizeCapExceeded(G.order * H.order, cap, "direct product")
    degree = G.degree + H.degree
    gens = [g.extended(degree) for g in G.generators]
    gens += [h.extended(degree, shift=G.degree) for h in H.generators]
    return PermGroup(degree, gens, cap, name=f"{G.name} x {H.name}")
