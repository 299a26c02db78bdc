from enum import Enum
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

Vector = Tuple[int, ...]


def canonical_sort(vectors) -> List[Vector]:
    """Deduplicate and order vectors lexicographically descending (e_1 first)."""
    return sorted({tuple(int(x) for x in v) for v in vectors}, reverse=True)


@dataclass(frozen=True)
class ConjugacyClassOfElements:
    representative: Tuple[int, ...]  # images, 0-based
    size: int
    element_order: int
    rep_index: int  # position in the parent's element enumeration


@dataclass(frozen=True)
class SubgroupClass:
    index: int
    order: int
    class_length: int
    normalizer_order: int
    key: int  # element bitset over the parent's enumeration (bit i = element i)
    elements: Tuple[int, ...]
    generators: Tuple[int, ...]
    # conjugacy classes of the representative itself, aligned with `elements`
    h_class_of: Tuple[int, ...] = ()
    h_class_sizes: Tuple[int, ...] = ()
    h_class_reps: Tuple[int, ...] = ()

    @property
    def h_class_count(self) -> int:
        return len(self.h_class_sizes)


@dataclass(frozen=True)
class LinearCharacter:
    host: int  # SubgroupClass.index
    index: int
    modulus: int  # m: values are exponents k, meaning exp(2*pi*i*k/m)
    values: Tuple[int, ...]  # H-class index -> exponent mod m

    @property
    def is_trivial(self) -> bool:
        return all(v == 0 for v in self.values)

    @property
    def degree(self) -> int:
        return 1


@dataclass(frozen=True)
class ClassFusion:
    subgroup: int
    map: Tuple[int, ...]  # H-class index -> G-class index


@dataclass(frozen=True)
class VirtualCharVector:
    coefficients: Vector

    def support(self) -> List[int]:
        return [i for i, b in enumerate(self.coefficients) if b != 0]

    def is_zero(self) -> bool:
        return not any(self.coefficients)


@dataclass(frozen=True)
class MonomialVectorSet:
    r: int
    vectors: Tuple[Vector, ...]
    witnesses: Tuple[Tuple[int, int], ...]  # (subgroup class index, linear character index)

    def __len__(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True)
class HilbertBasis:
    r: int
    basis: Tuple[Vector, ...]

    def matrix(self) -> np.ndarray:
        if not self.basis:
            return np.zeros((0, self.r), dtype=np.int64)
        return np.array(self.basis, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class BamCounterexample:
    k: int
    psi: VirtualCharVector
    phi: VirtualCharVector  # e_k - psi


@dataclass
class ClassificationReport:
    r: int
    monomial: bool
    nam: bool
    wam: bool
    bam: bool
    nam_witnesses: List[List[Optional[int]]]
    wam_witnesses: List[List[Optional[int]]]
    bam_counterexample: Optional[BamCounterexample] = None

    @property
    def flags(self) -> Dict[str, bool]:
        return {"monomial": self.monomial, "nam": self.nam, "wam": self.wam, "bam": self.bam}


class Verdict(Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    PRECONDITION = "PRECONDITION"


@dataclass(frozen=True)
class OrderVector:
    d: Vector

    @property
    def r(self) -> int:
        return len(self.d)

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for x in self.d)


@dataclass(frozen=True)
class HolMonoidBasis:
    d: OrderVector
    basis: Tuple[Vector, ...]


@dataclass
class VerificationResult:
    check: str
    verdict: Verdict
    detail: str = ""
    evidence: Dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.PASS
