"""Exact dense linear algebra over prime fields F_p, built on numpy integer arrays.

All matrices are 2-D ``int64`` arrays with entries reduced into ``[0, p)``.
Row spaces are canonicalized by reduced row echelon form (RREF); two
subspaces are equal iff their RREF bases are equal arrays.
"""

from __future__ import annotations

from typing import List, Tuple

import numpy as np

MAX_MODULUS = 251


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def check_modulus(p: int) -> int:
    """Validate a field modulus: a prime with 2 <= p <= 251."""
    p = int(p)
    if p < 2 or p > MAX_MODULUS or not is_prime(p):
        raise ValueError(f"field modulus must be a prime in [2, {MAX_MODULUS}], got {p}")
    return p


def inv_mod(x: int, p: int) -> int:
    """Multiplicative inverse of x mod p."""
    x = int(x) % p
    if x == 0:
        raise ZeroDivisionError("inverse of 0 in F_p")
    return pow(x, p - 2, p)


def as_field_matrix(rows, p: int) -> np.ndarray:
    """Coerce to a 2-D int64 array with entries reduced mod p."""
    m = np.atleast_2d(np.asarray(rows, dtype=np.int64))
    return m % p


def rref(m: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over F_p.

    Returns (R, pivot_columns). Zero rows are moved to the bottom but kept,
    so R has the same shape as m.
    """
    a = as_field_matrix(m, p).copy()
    nrows, ncols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        piv = None
        for i in range(r, nrows):
            if a[i, c] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * inv_mod(a[r, c], p)) % p
        for i in range(nrows):
            if i != r and a[i, c] != 0:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def row_basis(m: np.ndarray, p: int) -> np.ndarray:
    """RREF basis of the row space (zero rows dropped)."""
    r, pivots = rref(m, p)
    return r[: len(pivots)].copy()


def rank(m: np.ndarray, p: int) -> int:
    return len(rref(m, p)[1])


def kernel(m: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows, RREF-canonical) of the right null space {x : m x = 0}."""
    a = as_field_matrix(m, p)
    _, ncols = a.shape
    r, pivots = rref(a, p)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    if not free:
        return np.zeros((0, ncols), dtype=np.int64)
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for idx, f in enumerate(free):
        basis[idx, f] = 1
        for row_i, c in enumerate(pivots):
            basis[idx, c] = (-r[row_i, f]) % p
    return row_basis(basis, p)


def reduce_vector(basis: np.ndarray, pivots: List[int], v: np.ndarray, p: int) -> np.ndarray:
    """Reduce v against an RREF basis; result is the canonical coset representative."""
    w = np.asarray(v, dtype=np.int64) % p
    w = w.copy()
    for i, c in enumerate(pivots):
        if w[c] != 0:
            w = (w - w[c] * basis[i]) % p
    return w


def in_row_space(basis: np.ndarray, v: np.ndarray, p: int) -> bool:
    """Membership of v in the row space spanned by an RREF basis."""
    r, pivots = rref(basis, p)
    return not np.any(reduce_vector(r[: len(pivots)], pivots, v, p))


def intersect(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """RREF basis of the intersection of two row spaces."""
    a = row_basis(a, p)
    b = row_basis(b, p)
    if a.shape[1] != b.shape[1]:
        raise ValueError("row spaces live in different ambient dimensions")
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros((0, a.shape[1]), dtype=np.int64)
    # (u, v) with u a = v b  <=>  (u, v) in the right kernel of [a; -b]^T
    stacked = np.vstack([a, (-b) % p])
    coeffs = kernel(stacked.T, p)
    if coeffs.shape[0] == 0:
        return np.zeros((0, a.shape[1]), dtype=np.int64)
    vecs = coeffs[:, : a.shape[0]] @ a % p
    return row_basis(vecs, p)


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """One particular solution x of a x = b over F_p (free variables set to 0).

    Raises ValueError if the system is inconsistent.
    """
    a = as_field_matrix(a, p)
    b = np.asarray(b, dtype=np.int64).reshape(-1) % p
    aug = np.hstack([a, b.reshape(-1, 1)])
    r, pivots = rref(aug, p)
    ncols = a.shape[1]
    if ncols in pivots:
        raise ValueError("linear system has no solution over F_p")
    x = np.zeros(ncols, dtype=np.int64)
    for row_i, c in enumerate(pivots):
        x[c] = r[row_i, ncols]
    return x


def span_size(dim: int, p: int) -> int:
    return p**dim


def iter_span_batches(basis: np.ndarray, p: int, batch_size: int = 1 << 16):
    """Yield batches of all p^dim vectors in the row span of basis.

    Vectors are enumerated in mixed-radix coefficient order (first basis row
    is the most significant digit), which is deterministic and total.
    """
    basis = np.asarray(basis, dtype=np.int64)
    dim = basis.shape[0]
    total = p**dim
    if dim == 0:
        yield np.zeros((1, basis.shape[1]), dtype=np.int64)
        return
    weights = p ** np.arange(dim - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, batch_size):
        idx = np.arange(start, min(start + batch_size, total), dtype=np.int64)
        digits = (idx[:, None] // weights[None, :]) % p
        yield digits @ basis % p


def span_elements(basis: np.ndarray, p: int, max_size: int = 1 << 22) -> np.ndarray:
    """All vectors of the row span as one array; refuses above max_size."""
    basis = np.asarray(basis, dtype=np.int64)
    if p ** basis.shape[0] > max_size:
        raise ValueError(f"span of dimension {basis.shape[0]} over F_{p} exceeds cap {max_size}")
    return np.vstack(list(iter_span_batches(basis, p)))
