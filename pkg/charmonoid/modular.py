"""Dense linear algebra over F_p on int64 numpy arrays (p well below 2**31)."""
from typing import List, Tuple

import numpy as np


def mod_p(A, p: int) -> np.ndarray:
    return np.asarray(A, dtype=np.int64) % p


def inv_mod(a: int, p: int) -> int:
    return pow(int(a) % p, -1, p)


def mat_mul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    # entries < p, so each partial product is below p**2; reduce per column block
    A = mod_p(A, p)
    B = mod_p(B, p)
    if A.shape[1] * (p - 1) ** 2 < 2 ** 62:
        return (A @ B) % p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        out = (out + np.outer(A[:, k], B[k, :]) % p) % p
    return out


def rref_mod(A: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over F_p and its pivot columns."""
    R = mod_p(A, p).copy()
    m, n = R.shape
    pivots: List[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nonzero = np.flatnonzero(R[row:, col])
        if nonzero.size == 0:
            continue
        pick = row + int(nonzero[0])
        if pick != row:
            R[[row, pick]] = R[[pick, row]]
        R[row] = (R[row] * inv_mod(R[row, col], p)) % p
        factors = R[:, col].copy()
        factors[row] = 0
        R = (R - np.outer(factors, R[row])) % p
        pivots.append(col)
        row += 1
    return R[:row], pivots


def rank_mod(A: np.ndarray, p: int) -> int:
    return len(rref_mod(A, p)[1])


def nullspace_mod(A: np.ndarray, p: int) -> np.ndarray:
    """Right nullspace of A over F_p; the rows of the result form a basis."""
    A = mod_p(A, p)
    n = A.shape[1]
    R, pivots = rref_mod(A, p)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, pc in enumerate(pivots):
            basis[t, pc] = (-R[i, f]) % p
    return basis


def charpoly_mod(A: np.ndarray, p: int) -> List[int]:
    """
    Characteristic polynomial det(xI - A), highest coefficient first, by
    Faddeev-LeVerrier; needs p > dim A so that every k is invertible.
    """
    A = mod_p(A, p)
    n = A.shape[0]
    coeffs = [1]
    M = np.zeros_like(A)
    identity = np.eye(n, dtype=np.int64)
    for k in range(1, n + 1):
        M = (mat_mul(A, M, p) + coeffs[-1] * identity) % p
        trace = int(np.trace(mat_mul(A, M, p))) % p
        coeffs.append((-trace * inv_mod(k, p)) % p)
    return coeffs


def roots_mod(coeffs: List[int], p: int) -> List[int]:
    """All roots in F_p, by Horner evaluation at every field element at once."""
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in coeffs:
        acc = (acc * xs + c) % p
    return [int(x) for x in np.flatnonzero(acc == 0)]
