"""Exact dense linear algebra over a prime field F_p.

Matrices are dense row-major int64 numpy arrays with entries reduced to
[0, p).  Everything here is pure and deterministic: the pivoting rule is
"first nonzero entry, scanning top to bottom, left to right", so identical
inputs always produce bit-identical outputs.  Dimensions at desk scale are
small (< 200), so there is no attempt at blocking or sparsity.
"""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

_SMALL_PRIMES = {2, 3, 5, 7, 11, 13}


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p in _SMALL_PRIMES:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def inv_mod(x: int, p: int) -> int:
    """Inverse of a nonzero residue mod p."""
    x %= p
    if x == 0:
        raise ZeroDivisionError("zero has no inverse mod %d" % p)
    return pow(x, p - 2, p)


class Mat:
    """An immutable rows x cols matrix over F_p."""

    __slots__ = ("p", "a")

    def __init__(self, p: int, data):
        a = np.asarray(data, dtype=np.int64)
        if a.ndim != 2:
            raise ValueError("matrix data must be 2-dimensional, got shape %r" % (a.shape,))
        self.p = p
        self.a = np.mod(a, p)
        self.a.setflags(write=False)

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "Mat":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def eye(cls, p: int, n: int) -> "Mat":
        return cls(p, np.eye(n, dtype=np.int64))

    @classmethod
    def column(cls, p: int, entries: Iterable[int]) -> "Mat":
        v = np.asarray(list(entries), dtype=np.int64).reshape(-1, 1)
        return cls(p, v)

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self):
        return self.a.shape

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.p != other.p:
            raise ValueError("modulus mismatch")
        if self.cols != other.rows:
            raise ValueError("shape mismatch: %r @ %r" % (self.shape, other.shape))
        return Mat(self.p, self.a @ other.a)

    def __add__(self, other: "Mat") -> "Mat":
        if self.p != other.p or self.shape != other.shape:
            raise ValueError("mismatched matrices")
        return Mat(self.p, self.a + other.a)

    def __sub__(self, other: "Mat") -> "Mat":
        if self.p != other.p or self.shape != other.shape:
            raise ValueError("mismatched matrices")
        return Mat(self.p, self.a - other.a)

    def __neg__(self) -> "Mat":
        return Mat(self.p, -self.a)

    def scale(self, c: int) -> "Mat":
        return Mat(self.p, self.a * (c % self.p))

    def transpose(self) -> "Mat":
        return Mat(self.p, self.a.T)

    @property
    def T(self) -> "Mat":
        return self.transpose()

    def is_zero(self) -> bool:
        return not self.a.any()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.p == other.p
            and self.shape == other.shape
            and bool(np.array_equal(self.a, other.a))
        )

    def __hash__(self):
        return hash((self.p, self.shape, self.a.tobytes()))

    def __repr__(self):
        return "Mat(p=%d, %r)" % (self.p, self.a.tolist())

    def col(self, j: int) -> "Mat":
        return Mat(self.p, self.a[:, j : j + 1])

    def tolist(self):
        return self.a.tolist()

    def key(self) -> bytes:
        """Stable bytes key for dictionaries/caching."""
        return self.shape[0].to_bytes(4, "little") + self.shape[1].to_bytes(4, "little") + self.a.tobytes()


def hstack(mats: list[Mat]) -> Mat:
    p = mats[0].p
    return Mat(p, np.hstack([m.a for m in mats]))


def vstack(mats: list[Mat]) -> Mat:
    p = mats[0].p
    return Mat(p, np.vstack([m.a for m in mats]))


def block_diag(p: int, mats: list[Mat]) -> Mat:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for m in mats:
        out[r : r + m.rows, c : c + m.cols] = m.a
        r += m.rows
        c += m.cols
    return Mat(p, out)


def rref(m: Mat) -> tuple[Mat, tuple[int, ...], int]:
    """Reduced row echelon form; returns (rref matrix, pivot columns, rank)."""
    p = m.p
    a = np.array(m.a, dtype=np.int64)
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot_row = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                pivot_row = i
                break
        if pivot_row < 0:
            continue
        if pivot_row != r:
            a[[r, pivot_row]] = a[[pivot_row, r]]
        inv = inv_mod(int(a[r, c]), p)
        a[r] = (a[r] * inv) % p
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return Mat(p, a), tuple(pivots), len(pivots)


def rank(m: Mat) -> int:
    return rref(m)[2]


def kernel_basis(m: Mat) -> list[Mat]:
    """Basis of the right null space, as column vectors; count = cols - rank."""
    red, pivots, rk = rref(m)
    p = m.p
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for fc in free:
        v = np.zeros((m.cols, 1), dtype=np.int64)
        v[fc, 0] = 1
        for i, pc in enumerate(pivots):
            v[pc, 0] = (-red.a[i, fc]) % p
        basis.append(Mat(p, v))
    return basis


def image_basis(m: Mat) -> list[Mat]:
    """Basis of the column space: the columns of m sitting at pivot positions."""
    _, pivots, _ = rref(m)
    return [m.col(c) for c in pivots]


def solve_linear(a: Mat, b: Mat) -> tuple[Optional[Mat], list[Mat]]:
    """Solve a @ x = b exactly.

    Returns (particular solution or None, basis of the homogeneous solution
    space of a).  b may have several columns; consistency is required for all
    of them at once.
    """
    if a.rows != b.rows:
        raise ValueError("a and b must have the same number of rows")
    p = a.p
    aug = hstack([a, b])
    red, pivots, _ = rref(aug)
    if any(c >= a.cols for c in pivots):
        return None, kernel_basis(a)
    x = np.zeros((a.cols, b.cols), dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc, :] = red.a[i, a.cols :]
    return Mat(p, x), kernel_basis(a)


def inverse(m: Mat) -> Optional[Mat]:
    """Two-sided inverse, or None if m is singular (or not square)."""
    if m.rows != m.cols:
        return None
    sol, _ = solve_linear(m, Mat.eye(m.p, m.rows))
    if sol is None:
        return None
    if not (m @ sol == Mat.eye(m.p, m.rows)):
        return None
    return sol


def is_invertible(m: Mat) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def span_basis(vectors: list[Mat]) -> list[Mat]:
    """Reduce a list of column vectors to a deterministic basis of their span."""
    if not vectors:
        return []
    p = vectors[0].p
    stacked = hstack(vectors)
    _, pivots, _ = rref(stacked)
    return [vectors[c] for c in pivots]


def in_span(vectors: list[Mat], v: Mat) -> bool:
    """Whether column vector v lies in the span of the given column vectors."""
    if not vectors:
        return v.is_zero()
    sol, _ = solve_linear(hstack(vectors), v)
    return sol is not None
