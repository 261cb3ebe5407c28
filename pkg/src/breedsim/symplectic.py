"""Symplectic geometry of F_p^{2n}.

Vectors are numpy arrays of length 2n laid out as (a|b): the first n entries
are the X-part, the last n the Z-part. Position indices are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Tuple

import numpy as np

from . import fieldmath as fm


def vector(a: Sequence[int], b: Sequence[int], p: int) -> np.ndarray:
    """Build a symplectic vector (a|b) from its X- and Z-parts."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("a and b parts must be 1-D and of equal length")
    return np.concatenate([a, b]) % p


def from_string(text: str, p: int) -> np.ndarray:
    """Parse 'adigits|bdigits' into a symplectic vector."""
    left, sep, right = text.partition("|")
    if not sep or len(left) != len(right):
        raise ValueError(f"malformed symplectic vector {text!r}")
    digits = [int(ch) for ch in left + right]
    if any(d >= p for d in digits):
        raise ValueError(f"digit out of range for F_{p} in {text!r}")
    return np.asarray(digits, dtype=np.int64)


def to_string(v: np.ndarray) -> str:
    n = len(v) // 2
    return "".join(str(int(x)) for x in v[:n]) + "|" + "".join(str(int(x)) for x in v[n:])


def symp_product(u: np.ndarray, v: np.ndarray, p: int) -> int:
    """Symplectic inner product <a_u, b_v> - <b_u, a_v> mod p."""
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    if u.shape != v.shape:
        raise ValueError("symplectic product of vectors with different lengths")
    n = len(u) // 2
    return int((u[:n] @ v[n:] - u[n:] @ v[:n]) % p)


def pairwise_products(rows: np.ndarray, cols: np.ndarray, p: int) -> np.ndarray:
    """Matrix of symplectic products: out[i, j] = <rows[i], cols[j]>_s."""
    rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
    cols = np.atleast_2d(np.asarray(cols, dtype=np.int64))
    n = rows.shape[1] // 2
    return (rows[:, :n] @ cols[:, n:].T - rows[:, n:] @ cols[:, :n].T) % p


def symp_weight(v: np.ndarray) -> int:
    """Number of positions i with (a_i, b_i) != (0, 0)."""
    v = np.atleast_2d(np.asarray(v))
    n = v.shape[1] // 2
    w = np.count_nonzero((v[:, :n] != 0) | (v[:, n:] != 0), axis=1)
    return int(w[0]) if w.shape == (1,) else w


def symp_weights(mat: np.ndarray) -> np.ndarray:
    """Row-wise symplectic weights of a matrix of symplectic vectors."""
    mat = np.atleast_2d(np.asarray(mat))
    n = mat.shape[1] // 2
    return np.count_nonzero((mat[:, :n] != 0) | (mat[:, n:] != 0), axis=1)


def star(v: np.ndarray, p: int) -> np.ndarray:
    """The map (a|b) -> (a|-b)."""
    v = np.asarray(v, dtype=np.int64)
    n = v.shape[-1] // 2
    out = v.copy()
    out[..., n:] = (-out[..., n:]) % p
    return out


@dataclass(frozen=True, eq=False)
class SympSubspace:
    """An F_p-linear subspace of F_p^{2n}, stored as an RREF basis."""

    p: int
    n: int
    basis: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.basis.setflags(write=False)

    @classmethod
    def from_rows(cls, p: int, n: int, rows: Iterable[np.ndarray]) -> "SympSubspace":
        p = fm.check_modulus(p)
        rows = list(rows)
        if not rows:
            basis = np.zeros((0, 2 * n), dtype=np.int64)
        else:
            mat = fm.as_field_matrix(np.vstack(rows), p)
            if mat.shape[1] != 2 * n:
                raise ValueError(f"expected vectors of length {2 * n}, got {mat.shape[1]}")
            basis = fm.row_basis(mat, p)
        return cls(p, n, basis)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def contains(self, v: np.ndarray) -> bool:
        return fm.in_row_space(self.basis, v, self.p)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SympSubspace):
            return NotImplemented
        return (
            self.p == other.p
            and self.n == other.n
            and self.basis.shape == other.basis.shape
            and bool(np.array_equal(self.basis, other.basis))
        )

    def __hash__(self):
        return hash((self.p, self.n, self.basis.tobytes()))


def star_subspace(s: SympSubspace) -> SympSubspace:
    return SympSubspace.from_rows(s.p, s.n, star(s.basis.copy(), s.p))


def gram(s: SympSubspace) -> np.ndarray:
    """Gram matrix of pairwise symplectic products over the stored basis."""
    return pairwise_products(s.basis, s.basis, s.p)


def is_self_orthogonal(s: SympSubspace) -> bool:
    return not np.any(gram(s))


def symp_dual(s: SympSubspace) -> SympSubspace:
    """The symplectic dual {v : <v, x>_s = 0 for all x in S}."""
    w = syndrome_matrix(s.basis, s.p)
    return SympSubspace(s.p, s.n, fm.kernel(w, s.p))


def syndrome_matrix(basis: np.ndarray, p: int) -> np.ndarray:
    """Matrix W with W v = (<h_i, v>_s)_i for the given basis rows h_i."""
    basis = np.atleast_2d(np.asarray(basis, dtype=np.int64))
    n = basis.shape[1] // 2
    return np.hstack([(-basis[:, n:]) % p, basis[:, :n]])


def puncture(s: SympSubspace, positions: Iterable[int]) -> SympSubspace:
    """Delete the given 0-based positions from both the X- and Z-parts."""
    positions = set(int(i) for i in positions)
    if any(i < 0 or i >= s.n for i in positions):
        raise ValueError(f"puncture positions out of range for n={s.n}: {sorted(positions)}")
    keep = [i for i in range(s.n) if i not in positions]
    cols = keep + [s.n + i for i in keep]
    return SympSubspace.from_rows(s.p, len(keep), s.basis[:, cols].copy())


def symp_extend(d: SympSubspace) -> Tuple[SympSubspace, int]:
    """Append coordinates to make D self-orthogonal.

    Runs symplectic Gram-Schmidt on the basis to split it into hyperbolic
    pairs plus a radical; each pair gets one fresh position that cancels the
    pair's product. Returns (C_ext, c) with C_ext self-orthogonal on n + c
    positions, dim C_ext = dim D, and puncturing the appended positions
    giving back D. c = rank(gram(D)) / 2, the minimum possible.
    """
    p, n = d.p, d.n
    vecs = [row.copy() for row in d.basis]
    pairs = []
    while True:
        hit = None
        for i in range(len(vecs)):
            for j in range(i + 1, len(vecs)):
                if symp_product(vecs[i], vecs[j], p) != 0:
                    hit = (i, j)
                    break
            if hit:
                break
        if hit is None:
            break
        i, j = hit
        u = vecs[i]
        v = (vecs[j] * fm.inv_mod(symp_product(u, vecs[j], p), p)) % p
        rest = [vecs[t] for t in range(len(vecs)) if t not in (i, j)]
        # w -> w + <w,u> v - <w,v> u kills the products with the pair
        vecs = [
            (w + symp_product(w, u, p) * v - symp_product(w, v, p) * u) % p for w in rest
        ]
        pairs.append((u, v))
    c = len(pairs)
    gram_rank = fm.rank(gram(d), p)
    if gram_rank != 2 * c:
        raise AssertionError(
            f"alternating Gram matrix has odd-looking rank {gram_rank} vs {2 * c} pair slots"
        )
    nn = n + c
    rows = []
    for t, (u, v) in enumerate(pairs):
        ue = np.zeros(2 * nn, dtype=np.int64)
        ve = np.zeros(2 * nn, dtype=np.int64)
        ue[:n], ue[nn : nn + n] = u[:n], u[n:]
        ve[:n], ve[nn : nn + n] = v[:n], v[n:]
        # X on the fresh position for u, Z^{-1} for v: the new product -1
        # cancels the pair's product +1
        ue[n + t] = 1
        ve[nn + n + t] = p - 1
        rows.extend([ue, ve])
    for w in vecs:
        we = np.zeros(2 * nn, dtype=np.int64)
        we[:n], we[nn : nn + n] = w[:n], w[n:]
        rows.append(we)
    ext = SympSubspace.from_rows(p, nn, rows)
    assert ext.dim == d.dim
    assert is_self_orthogonal(ext)
    assert puncture(ext, range(n, nn)) == d
    return ext, c
