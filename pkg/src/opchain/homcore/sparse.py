"""Immutable sparse matrices stored as coalesced (row, col, value) triples.

Values are kept in an int64 array when they are machine integers and in an
object array otherwise (big integers, Fractions).
"""
from fractions import Fraction

import numpy as np
import scipy.sparse as sp

_SAFE = 2 ** 62


def _as_values(vals):
    vals = list(vals) if not isinstance(vals, np.ndarray) else vals
    if isinstance(vals, np.ndarray) and vals.dtype.kind in "iub":
        return vals.astype(np.int64, copy=False)
    arr = np.array(vals, dtype=object) if len(vals) else np.zeros(0, dtype=np.int64)
    if arr.dtype == object and len(arr):
        if all(type(v) is int or isinstance(v, np.integer) for v in arr):
            if all(-_SAFE < int(v) < _SAFE for v in arr):
                return np.array([int(v) for v in arr], dtype=np.int64)
            arr = np.array([int(v) for v in arr] + [None], dtype=object)[:-1]
        elif any(isinstance(v, Fraction) for v in arr):
            arr = np.array([Fraction(v) for v in arr] + [None], dtype=object)[:-1]
    return arr


class SparseMatrix:
    __slots__ = ("shape", "rows", "cols", "vals")

    def __init__(self, shape, rows=(), cols=(), vals=(), coalesced=False):
        self.shape = (int(shape[0]), int(shape[1]))
        rows = np.asarray(rows, dtype=np.int64).ravel()
        cols = np.asarray(cols, dtype=np.int64).ravel()
        vals = _as_values(vals)
        if len(rows) and (rows.min() < 0 or rows.max() >= self.shape[0]
                          or cols.min() < 0 or cols.max() >= self.shape[1]):
            raise IndexError("entry outside matrix shape")
        if not coalesced:
            rows, cols, vals = _coalesce(self.shape, rows, cols, vals)
        self.rows, self.cols, self.vals = rows, cols, vals

    # -- constructors -------------------------------------------------
    @classmethod
    def zeros(cls, nrows, ncols):
        return cls((nrows, ncols))

    @classmethod
    def from_dict(cls, shape, entries):
        if not entries:
            return cls(shape)
        keys = list(entries)
        return cls(shape, [k[0] for k in keys], [k[1] for k in keys], [entries[k] for k in keys])

    @classmethod
    def from_dense(cls, A, ncols=None):
        A = [list(row) for row in A]
        nrows = len(A)
        ncols = len(A[0]) if A else (ncols or 0)
        d = {(i, j): v for i, row in enumerate(A) for j, v in enumerate(row) if v}
        return cls.from_dict((nrows, ncols), d)

    @classmethod
    def from_columns(cls, shape, columns):
        """columns: mapping col -> {row: value}."""
        r, c, v = [], [], []
        for j, col in columns.items():
            for i, x in col.items():
                r.append(i)
                c.append(j)
                v.append(x)
        return cls(shape, r, c, v)

    @classmethod
    def identity(cls, n):
        return cls((n, n), np.arange(n), np.arange(n), np.ones(n, dtype=np.int64), coalesced=True)

    # -- views ----------------------------------------------------------
    @property
    def nnz(self):
        return len(self.vals)

    def triples(self):
        return zip(self.rows.tolist(), self.cols.tolist(), _pylist(self.vals))

    def to_dict(self):
        return {(i, j): v for i, j, v in self.triples()}

    def to_dense(self):
        out = [[0] * self.shape[1] for _ in range(self.shape[0])]
        for i, j, v in self.triples():
            out[i][j] = v
        return out

    def columns(self):
        cols = {}
        for i, j, v in self.triples():
            cols.setdefault(j, {})[i] = v
        return cols

    def is_zero(self):
        return self.nnz == 0

    def is_integral(self):
        return self.vals.dtype != object or all(
            not isinstance(v, Fraction) or v.denominator == 1 for v in self.vals)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.shape == other.shape and np.array_equal(self.rows, other.rows)
                and np.array_equal(self.cols, other.cols)
                and _pylist(self.vals) == _pylist(other.vals))

    def __hash__(self):
        return hash((self.shape, self.nnz))

    def __repr__(self):
        return f"SparseMatrix({self.shape[0]}x{self.shape[1]}, nnz={self.nnz})"

    # -- algebra --------------------------------------------------------
    @property
    def T(self):
        return SparseMatrix((self.shape[1], self.shape[0]), self.cols, self.rows, self.vals)

    def scale(self, c):
        if c == 1:
            return self
        if self.vals.dtype != object and isinstance(c, int) and abs(c) < 2 ** 20 \
                and (not self.nnz or np.abs(self.vals).max() < 2 ** 40):
            return SparseMatrix(self.shape, self.rows, self.cols, self.vals * c)
        return SparseMatrix(self.shape, self.rows, self.cols, [v * c for v in _pylist(self.vals)])

    def scale_columns(self, factors):
        """Multiply column j by factors[j] (integer array)."""
        f = np.asarray(factors, dtype=np.int64)
        if self.vals.dtype != object:
            return SparseMatrix(self.shape, self.rows, self.cols, self.vals * f[self.cols])
        fl = f[self.cols].tolist()
        return SparseMatrix(self.shape, self.rows, self.cols, [v * x for v, x in zip(self.vals, fl)])

    def scale_rows(self, factors):
        return self.T.scale_columns(factors).T

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return SparseMatrix(self.shape, np.concatenate([self.rows, other.rows]),
                            np.concatenate([self.cols, other.cols]),
                            _concat_vals(self.vals, other.vals))

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        shape = (self.shape[0], other.shape[1])
        if self.nnz == 0 or other.nnz == 0:
            return SparseMatrix(shape)
        if self.vals.dtype != object and other.vals.dtype != object:
            bound = int(np.abs(self.vals).max()) * int(np.abs(other.vals).max()) * self.shape[1]
            if bound < _SAFE:
                a = sp.csr_matrix((self.vals, (self.rows, self.cols)), shape=self.shape)
                b = sp.csr_matrix((other.vals, (other.rows, other.cols)), shape=other.shape)
                c = (a @ b).tocoo()
                return SparseMatrix(shape, c.row, c.col, c.data.astype(np.int64))
        # exact python fallback
        by_row = {}
        for i, j, v in other.triples():
            by_row.setdefault(i, []).append((j, v))
        acc = {}
        for i, k, v in self.triples():
            for j, w in by_row.get(k, ()):
                acc[(i, j)] = acc.get((i, j), 0) + v * w
        return SparseMatrix.from_dict(shape, acc)

    def apply(self, vec):
        """Matrix times a dense python list."""
        out = [0] * self.shape[0]
        for i, j, v in self.triples():
            if vec[j]:
                out[i] += v * vec[j]
        return out

    def map_values(self, f):
        return SparseMatrix(self.shape, self.rows, self.cols, [f(v) for v in _pylist(self.vals)])

    def over(self, ring):
        """Coerce entries into a coefficient ring (reduction mod p, Fractions over Q)."""
        if ring.kind == "Fp" and self.vals.dtype != object:
            return SparseMatrix(self.shape, self.rows, self.cols, self.vals % ring.p)
        if ring.kind == "Z" and self.vals.dtype != object:
            return self
        return self.map_values(ring)

    def submatrix(self, row_idx, col_idx):
        """Restrict to the given (sorted or not) row and column index lists."""
        rmap = np.full(self.shape[0], -1, dtype=np.int64)
        rmap[np.asarray(row_idx, dtype=np.int64)] = np.arange(len(row_idx))
        cmap = np.full(self.shape[1], -1, dtype=np.int64)
        cmap[np.asarray(col_idx, dtype=np.int64)] = np.arange(len(col_idx))
        nr, nc = rmap[self.rows], cmap[self.cols]
        keep = (nr >= 0) & (nc >= 0)
        return SparseMatrix((len(row_idx), len(col_idx)), nr[keep], nc[keep], self.vals[keep])

    def permute(self, row_perm=None, col_perm=None, row_sign=None, col_sign=None, shape=None):
        """Reindex entries: row i -> row_perm[i], col j -> col_perm[j], with optional signs."""
        rows = self.rows if row_perm is None else np.asarray(row_perm, dtype=np.int64)[self.rows]
        cols = self.cols if col_perm is None else np.asarray(col_perm, dtype=np.int64)[self.cols]
        sign = np.ones(self.nnz, dtype=np.int64)
        if row_sign is not None:
            sign = sign * np.asarray(row_sign, dtype=np.int64)[self.rows]
        if col_sign is not None:
            sign = sign * np.asarray(col_sign, dtype=np.int64)[self.cols]
        if self.vals.dtype != object:
            vals = self.vals * sign
        else:
            vals = [v * int(s) for v, s in zip(self.vals, sign)]
        return SparseMatrix(shape or self.shape, rows, cols, vals)


def _pylist(vals):
    return vals.tolist() if vals.dtype != object else list(vals)


def _concat_vals(a, b):
    if a.dtype != object and b.dtype != object:
        return np.concatenate([a, b])
    return _pylist(a) + _pylist(b)


def _coalesce(shape, rows, cols, vals):
    if len(rows) == 0:
        return rows, cols, np.zeros(0, dtype=np.int64)
    if vals.dtype != object:
        key = cols * max(shape[0], 1) + rows
        order = np.argsort(key, kind="stable")
        key, rows, cols, vals = key[order], rows[order], cols[order], vals[order]
        starts = np.flatnonzero(np.concatenate([[True], key[1:] != key[:-1]]))
        summed = np.add.reduceat(vals, starts)
        keep = summed != 0
        return rows[starts][keep], cols[starts][keep], summed[keep]
    acc = {}
    for i, j, v in zip(rows.tolist(), cols.tolist(), vals):
        acc[(j, i)] = acc.get((j, i), 0) + v
    keys = sorted(k for k, v in acc.items() if v != 0)
    r = np.array([k[1] for k in keys], dtype=np.int64)
    c = np.array([k[0] for k in keys], dtype=np.int64)
    out = _as_values([acc[k] for k in keys])
    return r, c, out
