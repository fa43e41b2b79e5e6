"""Inner rank over finite rings and enumeration of matrices of bounded inner rank.

A k x l matrix m has inner rank <= r iff every column of m lies in the right
span {B c : c in R^r} of some B in R^(k x r).  Both routines below are built on
that observation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .config import RANK_SEARCH_LIMIT
from .errors import SearchTooLarge, SizeLimitExceeded
from .matrices import MatrixOverR, all_matrices, apply_to_points, mat_mul_arrays
from .rings import FiniteRing

_CHUNK = 1 << 16


@dataclass(frozen=True)
class RankQuery:
    ring: FiniteRing
    matrix: MatrixOverR
    bound: int


def _vectors(R: FiniteRing, length: int) -> np.ndarray:
    if length == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(range(R.size), repeat=length)), dtype=np.int64)


def _column_codes(R: FiniteRing, cols: np.ndarray) -> np.ndarray:
    """Encode column vectors (..., rows) as integers, first entry most significant."""
    rows = cols.shape[-1]
    weights = np.array([R.size ** (rows - 1 - i) for i in range(rows)], dtype=np.int64)
    return cols @ weights


def _spans(R: FiniteRing, rows: int, r: int, guard: int):
    """Yield (codes of {Bc}) for every B in R^(rows x r), chunked, without repeats."""
    n_b = R.size ** (rows * r)
    coeffs = _vectors(R, r)  # (C, r)
    work = n_b * len(coeffs) * rows
    if work > guard:
        raise SearchTooLarge(f"inner-rank search at r={r} needs {work} operations (limit {guard})")
    seen = set()
    step = max(1, _CHUNK // max(1, len(coeffs)))
    for start in range(0, n_b, step):
        idx = np.arange(start, min(n_b, start + step), dtype=np.int64)
        digits = (idx[:, None] // (R.size ** np.arange(rows * r - 1, -1, -1))[None, :]) % R.size
        B = digits.reshape(-1, rows, r)
        images = mat_mul_arrays(R, B, np.broadcast_to(coeffs.T, (len(B),) + coeffs.T.shape))  # (nb, rows, C)
        codes = np.sort(_column_codes(R, np.swapaxes(images, 1, 2)), axis=1)
        for row in codes:
            key = row.tobytes()
            if key not in seen:
                seen.add(key)
                yield np.unique(row)


def inner_rank(R: FiniteRing, m: MatrixOverR, guard: int = RANK_SEARCH_LIMIT) -> int:
    """Least r with m = B C, B in R^(rows x r), C in R^(r x cols)."""
    arr = m.array()
    if m.rows == 0 or m.cols == 0 or (arr == R.zero).all():
        return 0
    targets = np.unique(_column_codes(R, arr.T))
    for r in range(1, min(m.rows, m.cols)):
        for span in _spans(R, m.rows, r, guard):
            if np.isin(targets, span).all():
                return r
    return min(m.rows, m.cols)


def matrices_of_rank_at_most(R: FiniteRing, k: int, n: int, dedupe_by_map: bool = False, A=None,
                             guard: int = RANK_SEARCH_LIMIT) -> list[MatrixOverR]:
    """Every k x k matrix of inner rank <= n once, in canonical order."""
    codes = rank_bounded_codes(R, k, n, guard)
    mats = _decode(R, k, codes)
    if dedupe_by_map and A is not None:
        keep, _ = induced_map_classes(A, mats)
        mats = mats[keep]
    return [MatrixOverR.from_array(m) for m in mats]


def rank_bounded_codes(R: FiniteRing, k: int, n: int, guard: int = RANK_SEARCH_LIMIT) -> np.ndarray:
    """Sorted integer codes (row-major, first entry most significant) of k x k matrices of rank <= n."""
    total = R.size ** (k * k)
    if n >= k:
        if total > guard:
            raise SizeLimitExceeded(f"{total} matrices exceed the enumeration guard {guard}")
        return np.arange(total, dtype=np.int64)
    if n == 0:
        return np.zeros(1, dtype=np.int64)
    # matrices whose columns all lie in one span {Bc}; column j has weight |R|^(k-1-j)
    col_weights = np.array([R.size ** (k - 1 - j) for j in range(k)], dtype=np.int64)
    row_weights = np.array([R.size ** (k * (k - 1 - i)) for i in range(k)], dtype=np.int64)
    found = []
    for span in _spans(R, k, n, guard):
        if len(span) ** k > guard:
            raise SizeLimitExceeded("rank-bounded enumeration exceeds the guard")
        cols = (span[:, None] // (R.size ** np.arange(k - 1, -1, -1))[None, :]) % R.size  # (S, k)
        # re-encode each column so that entry i lands at row-major position (i, j)
        col_codes = cols @ row_weights  # (S,)
        grid = np.zeros(1, dtype=np.int64)
        for j in range(k):
            grid = (grid[:, None] + col_codes[None, :] * col_weights[j]).reshape(-1)
        found.append(grid)
    return np.unique(np.concatenate(found))


def _decode(R: FiniteRing, k: int, codes: np.ndarray) -> np.ndarray:
    powers = R.size ** np.arange(k * k - 1, -1, -1, dtype=np.int64)
    return ((codes[:, None] // powers[None, :]) % R.size).reshape(-1, k, k)


def induced_map_classes(A, mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Group matrices by the map they induce on A^k.

    Returns (indices of the least representative per class, class index of every matrix).
    Input must already be in canonical order.
    """
    k = mats.shape[1]
    pts = np.array(list(itertools.product(range(A.size), repeat=k)), dtype=np.int64)[:, ::-1]
    keys = {}
    classes = np.empty(len(mats), dtype=np.int64)
    reps = []
    for start in range(0, len(mats), 4096):
        images = apply_to_points(A, mats[start:start + 4096], pts)
        for t, img in enumerate(images):
            key = img.tobytes()
            if key not in keys:
                keys[key] = len(reps)
                reps.append(start + t)
            classes[start + t] = keys[key]
    return np.array(reps, dtype=np.int64), classes


def gaussian_rank_mod_p(p: int, arr: np.ndarray) -> int:
    """Rank over the prime field Z_p by elimination; an independent oracle for tests."""
    a = np.array(arr, dtype=np.int64) % p
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if a[r, c] % p), None)
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        a[rank] = (a[rank] * pow(int(a[rank, c]), -1, p)) % p
        for r in range(rows):
            if r != rank and a[r, c]:
                a[r] = (a[r] - a[r, c] * a[rank]) % p
        rank += 1
    return rank


__all__ = [
    "RankQuery",
    "all_matrices",
    "gaussian_rank_mod_p",
    "induced_map_classes",
    "inner_rank",
    "matrices_of_rank_at_most",
    "rank_bounded_codes",
]
