"""Dense exact linear algebra over GF(q).

Matrices store element indices in int64 numpy arrays; all arithmetic is
routed through :class:`~gradedcodes.gf.FieldSpec`, so results are exact
for prime and extension fields alike.  Row reduction scans columns left to
right and always picks the first nonzero pivot, which makes every derived
object (RREF, rank, null space) deterministic.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .gf import FieldSpec


class MatrixGF:
    """An exact rows x cols matrix over a fixed finite field."""

    __slots__ = ("field", "data", "_rref_cache")

    def __init__(self, field: FieldSpec, data: np.ndarray | Sequence[Sequence[int]]):
        arr = np.asarray(data, dtype=np.int64)
        if arr.ndim != 2:
            arr = arr.reshape(0 if arr.size == 0 else 1, -1)
        if arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise ValueError("matrix entries must be element indices in [0, q)")
        self.field = field
        self.data = arr
        self._rref_cache = None

    # --- constructors ----------------------------------------------------------

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "MatrixGF":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "MatrixGF":
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence[int]], cols: int | None = None) -> "MatrixGF":
        if len(rows) == 0:
            if cols is None:
                raise ValueError("empty matrix needs an explicit column count")
            return cls.zeros(field, 0, cols)
        return cls(field, np.array([list(r) for r in rows], dtype=np.int64))

    # --- basics -----------------------------------------------------------------

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def row(self, i: int) -> np.ndarray:
        return self.data[i]

    def is_zero(self) -> bool:
        return not self.data.any()

    def copy(self) -> "MatrixGF":
        return MatrixGF(self.field, self.data.copy())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatrixGF)
            and self.field == other.field
            and self.data.shape == other.data.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self):
        return hash((self.field, self.data.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"MatrixGF(q={self.field.q}, {self.rows}x{self.cols})"

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.data]

    # --- arithmetic ----------------------------------------------------------------

    def matmul(self, other: "MatrixGF") -> "MatrixGF":
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} x {other.shape}")
        if self.rows == 0 or other.cols == 0:
            return MatrixGF.zeros(self.field, self.rows, other.cols)
        return MatrixGF(self.field, self.field.matmul_arr(self.data, other.data))

    def transpose(self) -> "MatrixGF":
        return MatrixGF(self.field, self.data.T.copy())

    def conjugate(self) -> "MatrixGF":
        """Entry-wise x -> x^q0 (requires square order)."""
        f = self.field
        conj_map = np.array([f.conjugate(x) for x in f.elements()], dtype=np.int64)
        return MatrixGF(f, conj_map[self.data])

    def stack(self, other: "MatrixGF") -> "MatrixGF":
        if self.cols != other.cols or self.field != other.field:
            raise ValueError("stack mismatch")
        return MatrixGF(self.field, np.vstack([self.data, other.data]))

    # --- elimination -----------------------------------------------------------------

    def rref(self) -> tuple["MatrixGF", tuple[int, ...]]:
        """Reduced row-echelon form and its pivot columns (both cached)."""
        if self._rref_cache is not None:
            return self._rref_cache
        f = self.field
        a = self.data.copy()
        m, n = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(n):
            if r >= m:
                break
            pivot_row = None
            for i in range(r, m):
                if a[i, c]:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            if pivot_row != r:
                a[[r, pivot_row]] = a[[pivot_row, r]]
            inv = f.inv(int(a[r, c]))
            if inv != 1:
                a[r] = f.mul_arr(a[r], np.int64(inv))
            for i in range(m):
                if i != r and a[i, c]:
                    factor = int(a[i, c])
                    a[i] = f.sub_arr(a[i], f.mul_arr(a[r], np.int64(factor)))
            pivots.append(c)
            r += 1
        nonzero = [i for i in range(m) if a[i].any()]
        reduced = MatrixGF(f, a[nonzero] if nonzero else np.zeros((0, n), dtype=np.int64))
        self._rref_cache = (reduced, tuple(pivots))
        reduced._rref_cache = self._rref_cache
        return self._rref_cache

    def rank(self) -> int:
        return self.rref()[0].rows

    def nullspace(self) -> "MatrixGF":
        """Row basis of {v : self @ v^T = 0}, itself in RREF."""
        f = self.field
        reduced, pivots = self.rref()
        n = self.cols
        free = [c for c in range(n) if c not in set(pivots)]
        if not free:
            return MatrixGF.zeros(f, 0, n)
        basis = np.zeros((len(free), n), dtype=np.int64)
        for bi, fc in enumerate(free):
            basis[bi, fc] = 1
            for ri, pc in enumerate(pivots):
                basis[bi, pc] = f.neg(int(reduced.data[ri, fc]))
        return MatrixGF(f, basis).rref()[0]

    def reduce_vector(self, v: np.ndarray) -> np.ndarray:
        """Residual of v after elimination against this matrix's RREF."""
        f = self.field
        reduced, pivots = self.rref()
        v = np.asarray(v, dtype=np.int64).copy()
        for ri, pc in enumerate(pivots):
            coef = int(v[pc])
            if coef:
                v = f.sub_arr(v, f.mul_arr(reduced.data[ri], np.int64(coef)))
        return v

    def contains_vector(self, v: np.ndarray) -> bool:
        """Row-space membership."""
        return not self.reduce_vector(v).any()

    def membership_mask(self, vectors: np.ndarray) -> np.ndarray:
        """Vectorised row-space membership for a batch of row vectors.

        Uses the RREF identity: v lies in the row space iff
        v == v[pivots] @ RREF.
        """
        f = self.field
        reduced, pivots = self.rref()
        if not pivots:
            return ~vectors.any(axis=1)
        proj = f.matmul_arr(vectors[:, list(pivots)], reduced.data)
        return (proj == vectors).all(axis=1)


def row_space_equal(a: MatrixGF, b: MatrixGF) -> bool:
    return a.rref()[0] == b.rref()[0]
