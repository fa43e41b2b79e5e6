"""Matrices over a :class:`FiniteRing` and their action on powers of a module."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, HypothesisViolated, Unsupported
from .rings import FiniteRing


@dataclass(frozen=True, order=True)
class MatrixOverR:
    """Row-major matrix of ring element indices.  Ordering is canonical (by entries)."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0 or len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> MatrixOverR:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, tuple(int(v) for r in rows for v in r))

    @classmethod
    def from_array(cls, arr: np.ndarray) -> MatrixOverR:
        arr = np.asarray(arr)
        return cls(arr.shape[0], arr.shape[1], tuple(int(v) for v in arr.reshape(-1)))

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols)

    def to_rows(self) -> list[list[int]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]


def identity(R: FiniteRing, k: int) -> MatrixOverR:
    return MatrixOverR(k, k, tuple(R.one if i == j else R.zero for i in range(k) for j in range(k)))


def zero_matrix(R: FiniteRing, rows: int, cols: int) -> MatrixOverR:
    return MatrixOverR(rows, cols, (R.zero,) * (rows * cols))


def mat_mul_arrays(R: FiniteRing, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Batched product over R: a (..., m, l) times b (..., l, n)."""
    terms = R.mul_table[a[..., :, :, None], b[..., None, :, :]]  # (..., m, l, n)
    acc = terms[..., 0, :]
    for t in range(1, terms.shape[-2]):
        acc = R.add_table[acc, terms[..., t, :]]
    if terms.shape[-2] == 0:
        acc = np.full(a.shape[:-1] + b.shape[-1:], R.zero, dtype=np.int64)
    return acc


def mat_mul(R: FiniteRing, a: MatrixOverR, b: MatrixOverR) -> MatrixOverR:
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    return MatrixOverR.from_array(mat_mul_arrays(R, a.array(), b.array()))


def mat_add(R: FiniteRing, a: MatrixOverR, b: MatrixOverR) -> MatrixOverR:
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise DimensionMismatch("shape mismatch in matrix sum")
    return MatrixOverR.from_array(R.add_table[a.array(), b.array()])


def scale(R: FiniteRing, r: int, a: MatrixOverR) -> MatrixOverR:
    return MatrixOverR.from_array(R.mul_table[r, a.array()])


def block_diag_one(R: FiniteRing, a: MatrixOverR) -> MatrixOverR:
    """The block matrix [[1, 0], [0, a]]."""
    k = a.rows + 1
    out = np.full((k, k), R.zero, dtype=np.int64)
    out[0, 0] = R.one
    out[1:, 1:] = a.array()
    return MatrixOverR.from_array(out)


def all_matrices(R: FiniteRing, rows: int, cols: int) -> np.ndarray:
    """Every rows x cols matrix, canonical order, as an array (N, rows, cols)."""
    n = rows * cols
    if n == 0:
        return np.zeros((1, rows, cols), dtype=np.int64)
    grid = np.array(list(itertools.product(range(R.size), repeat=n)), dtype=np.int64)
    return grid.reshape(-1, rows, cols)


def determinant(R: FiniteRing, a: MatrixOverR) -> int:
    if not R.is_commutative:
        raise Unsupported("determinants need a commutative ring")
    if a.rows != a.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    k = a.rows
    total = R.zero
    for perm in itertools.permutations(range(k)):
        term = R.one
        for i, j in enumerate(perm):
            term = int(R.mul_table[term, a[i, j]])
        if _parity(perm):
            term = int(R.neg_table[term])
        total = int(R.add_table[total, term])
    return total


def _parity(perm: Sequence[int]) -> int:
    seen, parity = set(), 0
    for start in range(len(perm)):
        if start in seen:
            continue
        length, j = 0, start
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


def mat_inverse(R: FiniteRing, a: MatrixOverR) -> MatrixOverR:
    """Inverse over a commutative ring via the adjugate; certified by both products."""
    det = determinant(R, a)
    if det not in R.unit_inverse:
        raise HypothesisViolated("matrix is not invertible (determinant is not a unit)")
    k = a.rows
    inv_det = R.unit_inverse[det]
    out = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            minor_rows = [[a[r, c] for c in range(k) if c != i] for r in range(k) if r != j]
            cof = determinant(R, MatrixOverR.from_rows(minor_rows)) if k > 1 else R.one
            if (i + j) % 2:
                cof = int(R.neg_table[cof])
            out[i, j] = R.mul_table[inv_det, cof]
    inv = MatrixOverR.from_array(out)
    eye = identity(R, k)
    if mat_mul(R, a, inv) != eye or mat_mul(R, inv, a) != eye:
        raise AssertionError("adjugate inverse failed its certificate")
    return inv


def apply_to_points(module, mats: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Images of points under matrices.

    ``mats`` has shape (T, rows, cols); ``points`` has shape (P, cols) of module
    element indices.  Returns (T, P, rows).
    """
    T, rows, cols = mats.shape
    n = module.size
    out = np.empty((T, points.shape[0], rows), dtype=np.int64)
    act = module.action.reshape(-1)
    add = module.add_table.reshape(-1)
    for i in range(rows):
        acc = np.full((T, points.shape[0]), module.zero, dtype=np.int64)
        for j in range(cols):
            terms = np.take(act, (mats[:, i, j] * n)[:, None] + points[None, :, j])
            acc = np.take(add, acc * n + terms)
        out[:, :, i] = acc
    return out


def matrices_to_array(mats: Iterable[MatrixOverR]) -> np.ndarray:
    mats = list(mats)
    if not mats:
        return np.zeros((0, 0, 0), dtype=np.int64)
    return np.stack([m.array() for m in mats])
