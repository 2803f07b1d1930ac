"""Dense linear algebra over a prime field F_p.

Matrices are ``numpy.int64`` arrays with entries reduced into ``[0, p)``.
Vectors are rows; a linear map ``V -> W`` is stored as a ``dim V x dim W``
matrix acting by ``v @ M``.  All products reduce modulo ``p`` before any
partial sum can overflow 64 bits.
"""
from __future__ import annotations

import numpy as np

_CHUNK = 8192  # rows*p^2 must stay below 2^63


def as_mod(M, p: int) -> np.ndarray:
    A = np.asarray(M, dtype=np.int64)
    return np.mod(A, p)


def matmul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """``A @ B mod p`` without int64 overflow."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    if A.shape[1] <= _CHUNK:
        return np.mod(A @ B, p)
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for s in range(0, A.shape[1], _CHUNK):
        out = np.mod(out + A[:, s:s + _CHUNK] @ B[s:s + _CHUNK], p)
    return out


def inverse_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("zero has no inverse mod p")
    return pow(a, p - 2, p)


def rref(M, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    A = as_mod(M, p).copy()
    if A.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = inverse_mod(int(A[r, c]), p)
        if inv != 1:
            A[r, c:] = (A[r, c:] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit, c:] = (A[hit, c:] - np.outer(col[hit], A[r, c:])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def left_kernel(M, p: int) -> np.ndarray:
    """Basis (as rows) of ``{v : v @ M = 0}``."""
    M = as_mod(M, p)
    m = M.shape[0]
    if m == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if M.shape[1] == 0:
        return np.eye(m, dtype=np.int64)
    # Right kernel of M^T.
    R, piv = rref(M.T, p)
    free = [c for c in range(m) if c not in set(piv)]
    K = np.zeros((len(free), m), dtype=np.int64)
    for t, f in enumerate(free):
        K[t, f] = 1
        for r, c in enumerate(piv):
            K[t, c] = (-R[r, f]) % p
    return K


def reduce_rows(V: np.ndarray, basis: np.ndarray, pivots: list[int], p: int) -> np.ndarray:
    """Reduce rows of ``V`` modulo the span of an RREF ``basis``."""
    V = as_mod(V, p)
    if len(pivots) == 0 or V.shape[0] == 0:
        return V
    return np.mod(V - matmul(V[:, pivots], basis, p), p)


def in_span(v, basis: np.ndarray, pivots: list[int], p: int) -> bool:
    r = reduce_rows(np.atleast_2d(v), basis, pivots, p)
    return not r.any()


def extend_basis(basis: np.ndarray, pivots: list[int], candidates, p: int):
    """Pick candidates, in order, that are independent modulo ``basis``.

    Returns ``(indices, new_basis, new_pivots)`` where the new basis is the RREF
    of the enlarged span.
    """
    candidates = as_mod(candidates, p)
    chosen: list[int] = []
    B, piv = basis, list(pivots)
    for i in range(candidates.shape[0]):
        r = reduce_rows(candidates[i:i + 1], B, piv, p)[0]
        nz = np.flatnonzero(r)
        if nz.size == 0:
            continue
        chosen.append(i)
        B, piv = rref(np.vstack([B, r[None, :]]) if B.size else r[None, :], p)
    return chosen, B, piv


def span_intersection(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Basis of ``rowspace(A) ∩ rowspace(B)``."""
    A = as_mod(A, p)
    B = as_mod(B, p)
    if A.shape[0] == 0 or B.shape[0] == 0:
        return np.zeros((0, A.shape[1] if A.ndim == 2 else 0), dtype=np.int64)
    K = left_kernel(np.vstack([A, B]), p)
    if K.shape[0] == 0:
        return np.zeros((0, A.shape[1]), dtype=np.int64)
    return rref(matmul(K[:, :A.shape[0]], A, p), p)[0]


def solve_left(M: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution ``x`` of ``x @ M = b`` or ``None``."""
    M = as_mod(M, p)
    b = as_mod(b, p).reshape(1, -1)
    aug = np.vstack([M, b])
    K = left_kernel(aug, p)
    for row in K:
        if row[-1] % p:
            scale = inverse_mod(int(-row[-1]), p)
            return (row[:-1] * scale) % p
    return None
