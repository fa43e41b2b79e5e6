"""Operators f -> sum_r s(r) f(r x) over k x k matrices, and their calculus.

An operator only stores matrices over the ring and coefficients in Z_E, so the
same operator can be applied to functions on any module over that ring.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, SignatureMismatch
from .funcspace import FuncTable, coder_for, minor_tables, point_index, points
from .matrices import MatrixOverR, apply_to_points, mat_mul_arrays
from .rank import inner_rank, rank_bounded_codes
from .rings import FiniteRing

_PAIR_CHUNK = 1 << 18


@dataclass(frozen=True, eq=False)
class MinorOperator:
    ring: FiniteRing
    arity: int
    E: int
    mats: np.ndarray  # (T, k, k), sorted by canonical code, distinct
    coeffs: np.ndarray  # (T,), nonzero residues mod E

    def __len__(self) -> int:
        return len(self.coeffs)

    def support(self) -> dict[MatrixOverR, int]:
        return {MatrixOverR.from_array(m): int(c) for m, c in zip(self.mats, self.coeffs)}

    def __add__(self, other: MinorOperator) -> MinorOperator:
        _check(self, other)
        return _canonical(self.ring, self.arity, self.E, np.concatenate([self.mats, other.mats]),
                          np.concatenate([self.coeffs, other.coeffs]))

    def __neg__(self) -> MinorOperator:
        return MinorOperator(self.ring, self.arity, self.E, self.mats, (-self.coeffs) % self.E)

    def __sub__(self, other: MinorOperator) -> MinorOperator:
        return self + (-other)

    def scaled(self, c: int) -> MinorOperator:
        return _canonical(self.ring, self.arity, self.E, self.mats, self.coeffs * (c % self.E))

    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "exponent": self.E,
            "support": [{"matrix": m.reshape(-1).tolist(), "coefficient": int(c)}
                        for m, c in zip(self.mats, self.coeffs)],
        }


def _check(a: MinorOperator, b: MinorOperator) -> None:
    if a.arity != b.arity or a.E != b.E or not a.ring.same_as(b.ring):
        raise SignatureMismatch("operators differ in ring, arity or exponent")


def matrix_codes(R: FiniteRing, mats: np.ndarray) -> np.ndarray:
    k2 = mats.shape[1] * mats.shape[2]
    weights = R.size ** np.arange(k2 - 1, -1, -1, dtype=np.int64)
    return mats.reshape(len(mats), k2) @ weights


def _canonical(R: FiniteRing, k: int, E: int, mats: np.ndarray, coeffs: np.ndarray) -> MinorOperator:
    mats = np.asarray(mats, dtype=np.int64).reshape(-1, k, k)
    coeffs = np.asarray(coeffs, dtype=np.int64) % E
    if len(mats) == 0:
        return MinorOperator(R, k, E, np.zeros((0, k, k), dtype=np.int64), np.zeros(0, dtype=np.int64))
    codes = matrix_codes(R, mats)
    uniq, first, inverse = np.unique(codes, return_index=True, return_inverse=True)
    total = np.zeros(len(uniq), dtype=np.int64)
    np.add.at(total, inverse, coeffs)
    total %= E
    keep = total != 0
    return MinorOperator(R, k, E, mats[first][keep], total[keep])


def make_operator(R: FiniteRing, k: int, E: int, terms) -> MinorOperator:
    """Build from (matrix, coefficient) pairs; matrices may be MatrixOverR or nested lists."""
    mats, coeffs = [], []
    for m, c in terms:
        arr = m.array() if isinstance(m, MatrixOverR) else np.asarray(m, dtype=np.int64)
        if arr.shape != (k, k):
            raise DimensionMismatch(f"operator matrices must be {k}x{k}")
        mats.append(arr)
        coeffs.append(int(c))
    return _canonical(R, k, E, np.array(mats, dtype=np.int64).reshape(-1, k, k), np.array(coeffs, dtype=np.int64))


def identity_operator(R: FiniteRing, k: int, E: int) -> MinorOperator:
    eye = np.full((k, k), R.zero, dtype=np.int64)
    eye[np.arange(k), np.arange(k)] = R.one
    return _canonical(R, k, E, eye[None], np.array([1]))


def zero_operator(R: FiniteRing, k: int, E: int) -> MinorOperator:
    return _canonical(R, k, E, np.zeros((0, k, k), dtype=np.int64), np.zeros(0, dtype=np.int64))


def op_compose(d1: MinorOperator, d2: MinorOperator) -> MinorOperator:
    """The operator f -> d1(d2(f)).

    d1(d2 f)(x) = sum_r s1(r) sum_u s2(u) f(u r x), so the support is {u r}.
    """
    _check(d1, d2)
    R, k, E = d1.ring, d1.arity, d1.E
    if len(d1) == 0 or len(d2) == 0:
        return zero_operator(R, k, E)
    out_m, out_c = [], []
    step = max(1, _PAIR_CHUNK // len(d1))
    for s in range(0, len(d2), step):
        u = d2.mats[s:s + step]
        prods = mat_mul_arrays(R, u[:, None], d1.mats[None, :])  # (U, T1, k, k)
        coef = (d2.coeffs[s:s + step, None] * d1.coeffs[None, :]) % E
        part = _canonical(R, k, E, prods.reshape(-1, k, k), coef.reshape(-1))
        out_m.append(part.mats)
        out_c.append(part.coeffs)
    return _canonical(R, k, E, np.concatenate(out_m), np.concatenate(out_c))


def op_combine_difference(d: MinorOperator, t: MinorOperator) -> MinorOperator:
    """Given d and an operator t that reproduces every f - d(f), return one reproducing f.

    f = t(f - d f) + d f = (t + d - t d)(f).
    """
    return t + d - op_compose(t, d)


def op_conjugate(d: MinorOperator, T: MatrixOverR, T_inv: MatrixOverR) -> MinorOperator:
    """f -> d(f o T^-1) o T, i.e. support T^-1 r T."""
    R = d.ring
    mats = mat_mul_arrays(R, mat_mul_arrays(R, np.broadcast_to(T_inv.array(), d.mats.shape), d.mats),
                          np.broadcast_to(T.array(), d.mats.shape))
    return _canonical(R, d.arity, d.E, mats, d.coeffs)


def op_apply(d: MinorOperator, f: FuncTable) -> FuncTable:
    """Pointwise sum_r s(r) f(r x)."""
    if f.arity != d.arity or not f.domain.ring.same_as(d.ring):
        raise SignatureMismatch("operator and function disagree on arity or ring")
    coder = coder_for(f.codomain)
    if coder.E and d.E % coder.E:
        raise SignatureMismatch(f"codomain exponent {coder.E} does not divide the operator exponent {d.E}")
    if len(d) == 0:
        return FuncTable(f.domain, f.codomain, f.arity, np.full(len(f.table), f.codomain.zero))
    total = np.zeros(len(f.table) * coder.width, dtype=np.int64)
    step = 256
    for s in range(0, len(d), step):
        tables = minor_tables(f, d.mats[s:s + step])
        enc = coder.encode(tables)
        total = (total + d.coeffs[s:s + step] @ enc) % coder.E
    return FuncTable(f.domain, f.codomain, f.arity, coder.decode(total))


def transfer_matrix(d: MinorOperator, A) -> np.ndarray:
    """W[x, a] = sum of s(r) over r with r x = a, modulo E.

    The operator fixes every function A^k -> B (B of exponent E) iff W is the identity.
    """
    k = d.arity
    pts = points(A, k)
    P = len(pts)
    W = np.zeros((P, P), dtype=np.int64)
    step = max(1, (1 << 22) // max(1, P * k))
    for s in range(0, len(d), step):
        images = point_index(A, apply_to_points(A, d.mats[s:s + step], pts))  # (t, P)
        coef = np.broadcast_to(d.coeffs[s:s + step, None], images.shape)
        rows = np.broadcast_to(np.arange(P)[None, :], images.shape)
        np.add.at(W, (rows.reshape(-1), images.reshape(-1)), coef.reshape(-1))
    return W % d.E


def is_identity_on(d: MinorOperator, A) -> bool:
    W = transfer_matrix(d, A)
    return bool(np.array_equal(W, np.eye(len(W), dtype=np.int64) % d.E))


def support_rank(d: MinorOperator) -> int:
    """Largest inner rank among the support matrices (0 for the zero operator).

    Tests the codes against the sets of rank <= r matrices for r = 0, 1, ...; falls
    back to one inner-rank search per matrix when those sets are too large.
    """
    if len(d) == 0:
        return 0
    R, k = d.ring, d.arity
    codes = matrix_codes(R, d.mats)
    try:
        for r in range(k):
            if np.isin(codes, rank_bounded_codes(R, k, r)).all():
                return r
        return k
    except SizeLimitExceeded:
        pass
    best = 0
    for m in d.mats:
        best = max(best, inner_rank(R, MatrixOverR.from_array(m)))
    return best


def reduce_by_map(d: MinorOperator, A) -> MinorOperator:
    """Merge support matrices inducing the same map on A^k, keeping the least and summing coefficients."""
    if len(d) == 0:
        return d
    pts = points(A, d.arity)
    images = point_index(A, apply_to_points(A, d.mats, pts))
    _, first, inverse = np.unique(images, axis=0, return_index=True, return_inverse=True)
    inverse = inverse.reshape(-1)
    reps = np.array([min(np.flatnonzero(inverse == c), key=lambda t: tuple(d.mats[t].reshape(-1)))
                     for c in range(len(first))])
    return _canonical(d.ring, d.arity, d.E, d.mats[reps[inverse]], d.coeffs)
