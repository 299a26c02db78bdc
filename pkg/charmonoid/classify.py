import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

import numpy as np
from sympy import Matrix

from .errors import InvariantViolation, RankDeficiencyError
from .models import BamCounterexample, ClassificationReport, HilbertBasis, Vector, VirtualCharVector

logger = logging.getLogger(__name__)

Witnesses = List[List[Optional[int]]]

_BOX_CHUNK = 1 << 16


def _unit(r: int, i: int) -> Vector:
    return tuple(int(t == i) for t in range(r))


def is_monomial(HB: HilbertBasis) -> bool:
    return len(HB.basis) == HB.r and set(HB.basis) == {_unit(HB.r, i) for i in range(HB.r)}


def _pair_witnesses(HB: HilbertBasis, separates) -> Tuple[bool, Witnesses]:
    """For each ordered pair (i, j), i != j, the first basis index t with separates(sigma_t, i, j)."""
    r = HB.r
    witnesses: Witnesses = [[None] * r for _ in range(r)]
    complete = True
    for i, j in itertools.permutations(range(r), 2):
        witnesses[i][j] = next((t for t, s in enumerate(HB.basis) if separates(s, i, j)), None)
        complete = complete and witnesses[i][j] is not None
    return complete, witnesses


def is_nam(HB: HilbertBasis) -> Tuple[bool, Witnesses]:
    return _pair_witnesses(HB, lambda s, i, j: s[i] > 0 and s[j] == 0)


def is_wam(HB: HilbertBasis) -> Tuple[bool, Witnesses]:
    if is_monomial(HB):
        # e_i separates every pair (i, j)
        position = {v: t for t, v in enumerate(HB.basis)}
        witnesses: Witnesses = [[None if i == j else position[_unit(HB.r, i)] for j in range(HB.r)]
                                for i in range(HB.r)]
        return True, witnesses
    return _pair_witnesses(HB, lambda s, i, j: s[i] > s[j])


def wam_failure_to_bam_counterexample(HB: HilbertBasis, i: int, j: int) -> BamCounterexample:
    """
    When no basis vector has sigma(i) > sigma(j), chi_j = (chi_j - chi_i) + chi_i
    splits chi_j into two nonzero parts with nonnegative pairings.
    """
    e_i, e_j = _unit(HB.r, i), _unit(HB.r, j)
    diff = tuple(a - b for a, b in zip(e_j, e_i))
    return _normalized(j, diff, e_i)


def _normalized(k: int, psi: Vector, phi: Vector) -> BamCounterexample:
    if any(x < 0 for x in psi) and all(x >= 0 for x in phi):
        psi, phi = phi, psi
    return BamCounterexample(k, VirtualCharVector(psi), VirtualCharVector(phi))


def verify_bam_counterexample(HB: HilbertBasis, cx: BamCounterexample) -> bool:
    A = HB.matrix()
    psi = np.array(cx.psi.coefficients, dtype=np.int64)
    phi = np.array(cx.phi.coefficients, dtype=np.int64)
    e_k = np.array(_unit(HB.r, cx.k), dtype=np.int64)
    return (bool(np.array_equal(psi + phi, e_k)) and not cx.psi.is_zero() and not cx.phi.is_zero()
            and bool((A @ psi >= 0).all()) and bool((A @ phi >= 0).all()))


def _independent_rows(A: np.ndarray, k: int) -> List[int]:
    """r linearly independent rows of A, preferring rows with small A[:, k]."""
    r = A.shape[1]
    chosen: List[int] = []
    for t in sorted(range(A.shape[0]), key=lambda t: (A[t, k], t)):
        if Matrix(A[chosen + [t]].tolist()).rank() == len(chosen) + 1:
            chosen.append(t)
            if len(chosen) == r:
                break
    return chosen


def bam_solutions(HB: HilbertBasis, k: int) -> List[Vector]:
    """
    Integer b with 0 <= A b <= A e_k. Picking r independent rows B of A, y = B b
    ranges over a box, and b = adj(B) y / det(B) is kept when integral and
    feasible for the remaining rows.
    """
    A = HB.matrix()
    r = HB.r
    upper = A[:, k]
    rows = _independent_rows(A, k)
    if len(rows) < r:
        raise RankDeficiencyError(f"basis has rank {len(rows)} < r = {r}; the BAM search would not terminate")
    B = Matrix(A[rows].tolist())
    det = int(B.det())
    adj = np.array(B.adjugate().tolist(), dtype=np.int64)
    sign = 1 if det > 0 else -1
    ranges = [range(int(upper[t]) + 1) for t in rows]
    solutions: List[Vector] = []
    boxes = itertools.product(*ranges)
    while True:
        chunk = np.array(list(itertools.islice(boxes, _BOX_CHUNK)), dtype=np.int64).reshape(-1, r)
        if chunk.shape[0] == 0:
            break
        scaled = (chunk @ adj.T) * sign
        integral = (scaled % abs(det) == 0).all(axis=1)
        b = scaled[integral] // abs(det)
        products = b @ A.T
        feasible = ((products >= 0) & (products <= upper[None, :])).all(axis=1)
        solutions.extend(tuple(int(x) for x in row) for row in b[feasible])
    return sorted(solutions)


def _bam_at(HB: HilbertBasis, k: int) -> Optional[BamCounterexample]:
    e_k = _unit(HB.r, k)
    zero = (0,) * HB.r
    found = []
    for b in bam_solutions(HB, k):
        if b in (zero, e_k):
            continue
        found.append(_normalized(k, b, tuple(a - c for a, c in zip(e_k, b))))
    if not found:
        return None
    return min(found, key=lambda cx: cx.psi.coefficients)


def is_bam(HB: HilbertBasis, jobs: int = 1) -> Tuple[bool, Optional[BamCounterexample]]:
    """
    True iff for every k the only integer b with 0 <= A b <= A e_k are 0 and e_k.
    Otherwise the counterexample with the smallest k (then smallest psi) is returned.
    """
    ks = range(HB.r)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda k: _bam_at(HB, k), ks))
    else:
        results = []
        for k in ks:
            results.append(_bam_at(HB, k))
            if results[-1] is not None:
                break
    counterexample = next((cx for cx in results if cx is not None), None)
    return counterexample is None, counterexample


def check_implications(report: ClassificationReport) -> bool:
    """monomial => nam, monomial => bam, nam => wam and bam => wam."""
    def implies(a: bool, b: bool) -> bool:
        return (not a) or b

    return (implies(report.monomial, report.nam) and implies(report.monomial, report.bam)
            and implies(report.nam, report.wam) and implies(report.bam, report.wam))


def classify(HB: HilbertBasis, jobs: int = 1) -> ClassificationReport:
    monomial = is_monomial(HB)
    nam, nam_witnesses = is_nam(HB)
    wam, wam_witnesses = is_wam(HB)
    bam, counterexample = is_bam(HB, jobs)
    if not wam:
        i, j = next((i, j) for i, j in itertools.permutations(range(HB.r), 2) if wam_witnesses[i][j] is None)
        derived = wam_failure_to_bam_counterexample(HB, i, j)
        if bam or not verify_bam_counterexample(HB, derived):
            raise InvariantViolation(f"WAM fails at ({i}, {j}) but the derived BAM counterexample does not hold")
    report = ClassificationReport(HB.r, monomial, nam, wam, bam, nam_witnesses, wam_witnesses, counterexample)
    logger.info("classification: %s", report.flags)
    return report
