"""Immutable dense matrices over a :class:`~tangentoids.rings.BaseRing`.

Entries are canonical raw ring values.  Shapes are explicit so that the
zero-generator module (0-row or 0-column matrices) is representable.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import MixedRings, ShapeMismatch
from .rings import BaseRing


class Matrix:
    __slots__ = ("ring", "rows", "nrows", "ncols", "_hash")

    def __init__(self, ring: BaseRing, rows: Iterable[Sequence], ncols: int | None = None, *, canon=True):
        rows = [tuple(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ShapeMismatch("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ShapeMismatch(f"ragged row of length {len(r)}, expected {ncols}")
        if canon:
            rows = [tuple(ring.canon(x) for x in r) for r in rows]
        self.ring = ring
        self.rows = tuple(rows)
        self.nrows = len(rows)
        self.ncols = ncols
        self._hash = None

    # -- constructors -----------------------------------------------------------
    @classmethod
    def zeros(cls, ring, nrows, ncols):
        z = ring.zero
        return cls(ring, [[z] * ncols for _ in range(nrows)], ncols, canon=False)

    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero, ring.one
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)], n, canon=False)

    @classmethod
    def from_columns(cls, ring, columns: Sequence[Sequence], nrows: int):
        columns = [tuple(c) for c in columns]
        rows = [[c[i] for c in columns] for i in range(nrows)]
        return cls(ring, rows, len(columns))

    @classmethod
    def column_vector(cls, ring, values):
        return cls(ring, [[v] for v in values], 1)

    # -- access -----------------------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.ncols)]

    def select_columns(self, idx) -> "Matrix":
        idx = list(idx)
        return Matrix(self.ring, [[r[j] for j in idx] for r in self.rows], len(idx), canon=False)

    def select_rows(self, idx) -> "Matrix":
        idx = list(idx)
        return Matrix(self.ring, [self.rows[i] for i in idx], self.ncols, canon=False)

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, [self.column(j) for j in range(self.ncols)], self.nrows, canon=False)

    # -- arithmetic ---------------------------------------------------------------
    def _check(self, other):
        if self.ring != other.ring:
            raise MixedRings(f"{self.ring} vs {other.ring}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        add = self.ring.add
        return Matrix(self.ring, [[add(x, y) for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                      self.ncols, canon=False)

    def __neg__(self) -> "Matrix":
        neg = self.ring.neg
        return Matrix(self.ring, [[neg(x) for x in r] for r in self.rows], self.ncols, canon=False)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.ring.canon(c)
        mul = self.ring.mul
        return Matrix(self.ring, [[mul(c, x) for x in r] for r in self.rows], self.ncols, canon=False)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        ring = self.ring
        cols = other.columns()
        dot = ring.dot
        rows = [[dot(r, c) for c in cols] for r in self.rows]
        return Matrix(ring, rows, other.ncols, canon=False)

    def apply(self, vector: Sequence) -> tuple:
        ring = self.ring
        vector = [ring.canon(x) for x in vector]
        return tuple(ring.dot(r, vector) for r in self.rows)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; row/column index of the result is ``i * other.n + j``."""
        self._check(other)
        mul = self.ring.mul
        rows = []
        for r in self.rows:
            for s in other.rows:
                rows.append([mul(x, y) for x in r for y in s])
        return Matrix(self.ring, rows, self.ncols * other.ncols, canon=False)

    def hstack(self, *others: "Matrix") -> "Matrix":
        mats = (self,) + others
        for m in others:
            self._check(m)
            if m.nrows != self.nrows:
                raise ShapeMismatch("hstack row mismatch")
        rows = [sum((m.rows[i] for m in mats), ()) for i in range(self.nrows)]
        return Matrix(self.ring, rows, sum(m.ncols for m in mats), canon=False)

    def vstack(self, *others: "Matrix") -> "Matrix":
        mats = (self,) + others
        for m in others:
            self._check(m)
            if m.ncols != self.ncols:
                raise ShapeMismatch("vstack column mismatch")
        rows = [r for m in mats for r in m.rows]
        return Matrix(self.ring, rows, self.ncols, canon=False)

    def block_diag(self, other: "Matrix") -> "Matrix":
        top = self.hstack(Matrix.zeros(self.ring, self.nrows, other.ncols))
        bottom = Matrix.zeros(self.ring, other.nrows, self.ncols).hstack(other)
        return top.vstack(bottom)

    def is_zero(self) -> bool:
        z = self.ring.zero
        return all(x == z for r in self.rows for x in r)

    # -- identity ------------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.ncols, self.rows))
        return self._hash

    def tolist(self):
        return [list(r) for r in self.rows]

    def __repr__(self):
        return f"Matrix({self.ring}, {self.tolist()!r}, ncols={self.ncols})"
