import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import Matrix

from .chartable import CharacterTable, class_fusion, induce_vector
from .errors import DimensionMismatchError, InputError
from .models import HilbertBasis, MonomialVectorSet, SubgroupClass, Vector, canonical_sort
from .perm import PermGroup
from .subgroups import linear_characters

logger = logging.getLogger(__name__)


def _induced_from(G: PermGroup, T: CharacterTable, sub: SubgroupClass) -> List[Tuple[Vector, Tuple[int, int]]]:
    fusion = class_fusion(G, sub)
    return [(induce_vector(lam, sub, T, fusion), (sub.index, lam.index))
            for lam in linear_characters(G, sub)]


def monomial_vectors(G: PermGroup, T: CharacterTable, subgroups: Sequence[SubgroupClass],
                     jobs: int = 1) -> MonomialVectorSet:
    """All vectors <lam^G, chi_j> over subgroup classes and their linear characters, deduplicated."""
    # the tables are filled lazily; build them before worker threads read them
    G.table, G.inverse_index, G.class_of
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(lambda sub: _induced_from(G, T, sub), subgroups))
    else:
        batches = [_induced_from(G, T, sub) for sub in subgroups]

    witness: Dict[Vector, Tuple[int, int]] = {}
    for batch in batches:
        for vector, pair in batch:
            witness.setdefault(vector, pair)
    vectors = canonical_sort(witness)
    logger.info("%d distinct monomial vectors from %d subgroup classes", len(vectors), len(subgroups))
    return MonomialVectorSet(T.r, tuple(vectors), tuple(witness[v] for v in vectors))


def _dominates(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x >= y for x, y in zip(a, b))


class MembershipOracle:
    """
    Decides whether a vector lies in the monoid generated by a finite set of
    nonnegative vectors, by memoized descent: v is a member iff v = 0 or v - g
    is a member for some generator g <= v. A known non-member v stays one when a
    generator g with sum(g) > sum(v) is added.
    """
    def __init__(self, generators: Iterable[Sequence[int]] = ()):
        self.generators: List[Vector] = []
        self._failed: set = set()
        for g in generators:
            self.add(g)

    def add(self, generator: Sequence[int]):
        g = tuple(int(x) for x in generator)
        if any(x < 0 for x in g):
            raise InputError(f"generator {g} has a negative entry")
        if any(g) and g not in self.generators:
            self.generators.append(g)
            # larger generators first keeps descents short
            self.generators.sort(key=lambda v: (-sum(v), v))
            weight = sum(g)
            self._failed = {v for v in self._failed if sum(v) < weight}

    def certificate(self, v: Sequence[int]) -> Optional[List[Vector]]:
        """Generators (with repetition) summing to v, or None if v is not a member."""
        v = tuple(int(x) for x in v)
        if any(x < 0 for x in v):
            return None
        path: List[Vector] = []
        # explicit stack of (vector, next generator position) keeps deep descents off the call stack
        stack: List[Tuple[Vector, int]] = [(v, 0)]
        while stack:
            current, start = stack[-1]
            if not any(current):
                return list(path)
            advanced = False
            for pos in range(start, len(self.generators)):
                g = self.generators[pos]
                if _dominates(current, g):
                    rest = tuple(a - b for a, b in zip(current, g))
                    if rest in self._failed:
                        continue
                    stack[-1] = (current, pos + 1)
                    stack.append((rest, 0))
                    path.append(g)
                    advanced = True
                    break
            if not advanced:
                self._failed.add(current)
                stack.pop()
                if path:
                    path.pop()
        return None

    def __contains__(self, v) -> bool:
        return self.certificate(v) is not None


def is_member(v: Sequence[int], S: Iterable[Sequence[int]]) -> Tuple[bool, Optional[List[Vector]]]:
    """Whether v is an N-combination of S, with the summands as certificate."""
    S = list(S)
    if S and len(S[0]) != len(v):
        raise DimensionMismatchError(len(S[0]), len(v))
    cert = MembershipOracle(S).certificate(v)
    return cert is not None, cert


def _vectors_of(S: Union[MonomialVectorSet, HilbertBasis, Sequence[Sequence[int]]]) -> Tuple[int, List[Vector]]:
    if isinstance(S, MonomialVectorSet):
        return S.r, list(S.vectors)
    if isinstance(S, HilbertBasis):
        return S.r, list(S.basis)
    vectors = [tuple(int(x) for x in v) for v in S]
    if not vectors:
        raise InputError("the generating set is empty")
    return len(vectors[0]), vectors


def hilbert_basis(S) -> HilbertBasis:
    """
    Minimal generating set of the monoid generated by S. Candidates are visited by
    increasing coordinate sum, so any decomposition of a candidate only uses
    elements already generated by the accepted ones.
    """
    r, vectors = _vectors_of(S)
    if any(len(v) != r for v in vectors):
        raise DimensionMismatchError(r, next(len(v) for v in vectors if len(v) != r))
    candidates = sorted({v for v in vectors if any(v)}, key=lambda v: (sum(v), v))
    oracle = MembershipOracle()
    basis: List[Vector] = []
    for v in candidates:
        if v not in oracle:
            basis.append(v)
            oracle.add(v)
    logger.info("Hilbert basis: %d of %d generators are irreducible", len(basis), len(candidates))
    return HilbertBasis(r, tuple(canonical_sort(basis)))


def lattice_rank(S) -> int:
    """Rank over Q of the generating vectors."""
    _, vectors = _vectors_of(S)
    return int(Matrix(vectors).rank())
