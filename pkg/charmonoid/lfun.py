"""
Order calculus at a fixed point s0. An order vector d records ord f_i for the
irreducible L-functions; a product of them with multiplicities a has order d.a.
"""
import itertools
import logging
from typing import List, Optional, Sequence

import numpy as np
from sympy import Matrix

from .classify import is_wam
from .errors import DimensionMismatchError
from .models import HilbertBasis, HolMonoidBasis, OrderVector, Vector, VerificationResult, Verdict

logger = logging.getLogger(__name__)

_BOX_CHUNK = 1 << 16


def _as_order_vector(d) -> OrderVector:
    if isinstance(d, OrderVector):
        return d
    return OrderVector(tuple(int(x) for x in d))


def _check_dimension(d: OrderVector, r: int, what: str = "order vector"):
    if d.r != r:
        raise DimensionMismatchError(r, d.r, what)


def l_order(d, a: Sequence[int]) -> int:
    d = _as_order_vector(d)
    _check_dimension(d, len(a), "multiplicity vector")
    return sum(x * y for x, y in zip(d.d, a))


def is_admissible(d, HB: HilbertBasis) -> bool:
    """Every monomial L-function, hence every basis vector, has nonnegative order."""
    d = _as_order_vector(d)
    _check_dimension(d, HB.r)
    return bool((HB.matrix() @ np.array(d.d, dtype=np.int64) >= 0).all())


def violated_constraints(d, HB: HilbertBasis) -> List[int]:
    d = _as_order_vector(d)
    _check_dimension(d, HB.r)
    orders = HB.matrix() @ np.array(d.d, dtype=np.int64)
    return [int(t) for t in np.flatnonzero(orders < 0)]


def pole_indices(d) -> List[int]:
    return [i for i, x in enumerate(_as_order_vector(d).d) if x < 0]


def simple_zero_scenario(d, k: int) -> bool:
    """f_k has a simple zero and no other f_l has a zero at s0."""
    d = _as_order_vector(d).d
    return d[k] == 1 and all(x <= 0 for i, x in enumerate(d) if i != k)


def hol_hilbert_basis(d) -> HolMonoidBasis:
    """
    Hilbert basis of {a in N^r : d.a >= 0}, via the minimal solutions of
    d.a - z = 0 over N^(r+1) (completion over a single equation): a candidate
    with positive defect grows in a coordinate with negative coefficient and
    vice versa; candidates dominating a found solution are dropped.
    """
    d = _as_order_vector(d)
    r = d.r
    coeffs = list(d.d) + [-1]
    n = r + 1
    solutions: List[Vector] = []
    frontier = {tuple(int(t == i) for t in range(n)) for i in range(n)}
    while frontier:
        grown = set()
        level_solutions = [x for x in frontier if sum(c * v for c, v in zip(coeffs, x)) == 0]
        solutions.extend(sorted(level_solutions))
        for x in sorted(frontier):
            defect = sum(c * v for c, v in zip(coeffs, x))
            if defect == 0:
                continue
            for j in range(n):
                if defect * coeffs[j] < 0:
                    y = x[:j] + (x[j] + 1,) + x[j + 1:]
                    if not any(all(a >= b for a, b in zip(y, s)) for s in solutions):
                        grown.add(y)
        frontier = grown
    basis = sorted({s[:r] for s in solutions}, reverse=True)
    logger.debug("Hol basis for d=%s has %d elements", d.d, len(basis))
    return HolMonoidBasis(d, tuple(basis))


def is_factorial(B: HolMonoidBasis) -> bool:
    """A positive affine monoid is free iff its Hilbert basis is linearly independent."""
    if not B.basis:
        return False
    return int(Matrix([list(v) for v in B.basis]).rank()) == len(B.basis)


def theorem3_check(HB: HilbertBasis, d, wam: Optional[bool] = None) -> VerificationResult:
    """For WAM data and admissible d: d >= 0 exactly when Hol(s0) is factorial."""
    d = _as_order_vector(d)
    _check_dimension(d, HB.r)
    if wam is None:
        wam = is_wam(HB)[0]
    if not wam:
        return VerificationResult("theorem3", Verdict.PRECONDITION, "the basis is not weak almost monomial")
    if not is_admissible(d, HB):
        return VerificationResult("theorem3", Verdict.PRECONDITION, "d is not admissible",
                                  {"violated": violated_constraints(d, HB)})
    hol = hol_hilbert_basis(d)
    holomorphic = d.is_nonnegative()
    factorial = is_factorial(hol)
    verdict = Verdict.PASS if holomorphic == factorial else Verdict.FAIL
    return VerificationResult(
        "theorem3", verdict, f"d >= 0 is {holomorphic}, Hol factorial is {factorial}",
        {"d": list(d.d), "hol_basis": [list(v) for v in hol.basis]},
    )


def pole_scenarios(HB: HilbertBasis, k: int, bound: int) -> List[Vector]:
    """
    Admissible d with d_k = 1, -bound <= d_l <= 0 for l != k and some d_l < 0.
    Coordinates l with e_l in the basis are pinned to 0 since admissibility forces d_l >= 0.
    """
    r = HB.r
    units = {l for l in range(r) if tuple(int(t == l) for t in range(r)) in set(HB.basis)}
    free = [l for l in range(r) if l != k and l not in units]
    if not free:
        return []
    A = HB.matrix()
    found: List[Vector] = []
    boxes = itertools.product(range(-bound, 1), repeat=len(free))
    while True:
        chunk = np.array(list(itertools.islice(boxes, _BOX_CHUNK)), dtype=np.int64).reshape(-1, len(free))
        if chunk.shape[0] == 0:
            break
        D = np.zeros((chunk.shape[0], r), dtype=np.int64)
        D[:, k] = 1
        D[:, free] = chunk
        keep = (D < 0).any(axis=1) & ((D @ A.T) >= 0).all(axis=1)
        found.extend(tuple(int(x) for x in row) for row in D[keep])
    return found


def theorem4_check(HB: HilbertBasis, k: int, bound: int, wam: Optional[bool] = None) -> VerificationResult:
    """For WAM data no admissible d has a simple zero at f_k and a pole elsewhere."""
    if not 0 <= k < HB.r:
        raise DimensionMismatchError(HB.r, k + 1, "character index")
    if wam is None:
        wam = is_wam(HB)[0]
    if not wam:
        return VerificationResult("theorem4", Verdict.PRECONDITION, "the basis is not weak almost monomial")
    scenarios = pole_scenarios(HB, k, bound)
    if scenarios:
        return VerificationResult("theorem4", Verdict.FAIL, f"{len(scenarios)} admissible pole scenarios",
                                  {"k": k, "bound": bound, "first": list(scenarios[0])})
    return VerificationResult("theorem4", Verdict.PASS, "no admissible pole scenario",
                              {"k": k, "bound": bound})


def sample_admissible(HB: HilbertBasis, count: int, bound: int, seed: int,
                      require_negative: bool = False, max_batches: int = 200) -> List[OrderVector]:
    """Rejection sampling over [-bound, bound]^r; may return fewer than `count` vectors."""
    rng = np.random.default_rng(seed)
    A = HB.matrix()
    seen = set()
    result: List[OrderVector] = []
    for _ in range(max_batches):
        batch = rng.integers(-bound, bound + 1, size=(4096, HB.r))
        keep = ((batch @ A.T) >= 0).all(axis=1)
        if require_negative:
            keep &= (batch < 0).any(axis=1)
        for row in batch[keep]:
            d = tuple(int(x) for x in row)
            if d not in seen:
                seen.add(d)
                result.append(OrderVector(d))
                if len(result) == count:
                    return result
    logger.warning("sampled only %d of %d admissible order vectors", len(result), count)
    return result
