"""Howell normal form of row spans over Z_N, with membership certificates.

A matrix is in Howell form when its nonzero rows have strictly increasing pivot
columns, each pivot divides N, entries above a pivot are reduced modulo it, and
every span element vanishing on the first j columns is spanned by the rows whose
pivot lies beyond column j.  The form is unique for a given row span, so span
equality is array equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_BATCH = 512


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s a + t b = g = gcd(a, b) over the integers."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def unit_normaliser(a: int, N: int) -> int:
    """A unit u of Z_N with u a = gcd(a, N) mod N."""
    a %= N
    if a == 0:
        return 1
    g = math.gcd(a, N)
    n1 = N // g
    u = pow(a // g, -1, n1) if n1 > 1 else 0
    while math.gcd(u, N) != 1:
        u += n1
    return u % N


def _eliminate(W: np.ndarray, N: int, stop: int | None = None):
    """Core Howell elimination on W (rows x cols, entries in [0, N)).

    Only the first ``stop`` columns receive pivots (all by default); rows left over
    after that vanish on those columns and are dropped.  Returns (H, pivots) where H
    holds the pivot rows in order.
    """
    cols = W.shape[1] if stop is None else stop
    W = W[np.any(W != 0, axis=1)]
    H: list[np.ndarray] = []
    pivots: list[int] = []
    for c in range(cols):
        if W.shape[0] == 0:
            break
        col = W[:, c]
        nz = np.flatnonzero(col)
        if len(nz) == 0:
            continue
        g = int(np.gcd.reduce(np.append(col[nz], N)))
        gcds = np.gcd(col[nz], N)
        hit = np.flatnonzero(gcds == g)
        if len(hit):
            p = int(nz[hit[0]])
        else:
            p = int(nz[0])
            for i in nz[1:]:
                a, b = int(W[p, c]), int(W[i, c])
                d, s, t = xgcd(a, b)
                rp = (s * W[p] + t * W[i]) % N
                ri = ((-b // d) * W[p] + (a // d) * W[i]) % N
                W[p], W[i] = rp, ri
                if math.gcd(int(W[p, c]), N) == g:
                    break
        prow = (W[p] * unit_normaliser(int(W[p, c]), N)) % N
        W = np.delete(W, p, axis=0)
        if W.shape[0]:
            W = (W - (W[:, c] // g)[:, None] * prow[None, :]) % N
        ann = (prow * (N // g)) % N
        if ann.any():
            W = np.vstack([W, ann[None, :]])
        W = W[np.any(W != 0, axis=1)]
        if H:
            Hs = np.array(H)
            q = Hs[:, c] // g
            if q.any():
                H = list((Hs - q[:, None] * prow[None, :]) % N)
        H.append(prow)
        pivots.append(c)
    return H, pivots


def howell_form(A, N: int) -> np.ndarray:
    """Howell normal form of the row span of A over Z_N (zero rows removed)."""
    A = np.asarray(A, dtype=np.int64)
    if A.ndim == 1:
        A = A[None, :]
    cols = A.shape[1]
    if N == 1 or A.size == 0:
        return np.zeros((0, cols), dtype=np.int64)
    A = A % N
    # merge in batches so that the working set stays near the span's size
    batch = max(_BATCH, 2 * cols)
    current = np.zeros((0, cols), dtype=np.int64)
    for start in range(0, A.shape[0], batch):
        block = np.vstack([current, A[start:start + batch]])
        H, _ = _eliminate(block.copy(), N)
        current = np.array(H, dtype=np.int64).reshape(-1, cols)
    return current


def pivot_columns(H: np.ndarray) -> np.ndarray:
    return np.argmax(H != 0, axis=1) if len(H) else np.zeros(0, dtype=np.int64)


def span_size(H: np.ndarray, N: int) -> int:
    size = 1
    piv = pivot_columns(H)
    for row, c in zip(H, piv):
        size *= N // int(row[c])
    return size


def reduce_vector(H: np.ndarray, N: int, v) -> tuple[np.ndarray, np.ndarray]:
    """Reduce v by the Howell rows; returns (residue, coefficients on the rows)."""
    v = np.asarray(v, dtype=np.int64) % N
    coeffs = np.zeros(len(H), dtype=np.int64)
    piv = pivot_columns(H)
    for h, c in enumerate(piv):
        g = int(H[h, c])
        q = int(v[c]) // g
        if q:
            v = (v - q * H[h]) % N
            coeffs[h] = q % N
    return v, coeffs


def contains(H: np.ndarray, N: int, v) -> bool:
    residue, _ = reduce_vector(H, N, v)
    return not residue.any()


def same_span(H1: np.ndarray, H2: np.ndarray) -> bool:
    return H1.shape == H2.shape and bool(np.array_equal(H1, H2))


def span_sum(H1: np.ndarray, H2: np.ndarray, N: int) -> np.ndarray:
    return howell_form(np.vstack([H1, H2]), N)


def span_intersection(H1: np.ndarray, H2: np.ndarray, N: int) -> np.ndarray:
    """Zassenhaus: rows (0, v) of the Howell form of [[A, A], [B, 0]] span A ∩ B."""
    cols = H1.shape[1]
    if len(H1) == 0 or len(H2) == 0:
        return np.zeros((0, cols), dtype=np.int64)
    top = np.hstack([H1, H1])
    bottom = np.hstack([H2, np.zeros_like(H2)])
    H = howell_form(np.vstack([top, bottom]), N)
    inter = H[~np.any(H[:, :cols] != 0, axis=1), cols:]
    return howell_form(inter, N)


def span_elements(H: np.ndarray, N: int, limit: int = 1 << 16) -> np.ndarray:
    """All elements of the span, each exactly once."""
    total = span_size(H, N)
    if total > limit:
        raise ValueError(f"span has {total} elements (limit {limit})")
    cols = H.shape[1]
    out = np.zeros((1, cols), dtype=np.int64)
    for row, c in zip(H, pivot_columns(H)):
        mult = np.arange(N // int(row[c]), dtype=np.int64)
        out = ((out[:, None, :] + mult[None, :, None] * row[None, None, :]) % N).reshape(-1, cols)
    return out


@dataclass
class HowellCertificate:
    """Howell form together with a transform: ``basis = transform @ original (mod N)``."""

    basis: np.ndarray
    transform: np.ndarray
    N: int

    def express(self, v) -> np.ndarray | None:
        """Coefficients c with c @ original = v, or None when v is outside the span."""
        residue, coeffs = reduce_vector(self.basis, self.N, v)
        if residue.any():
            return None
        return (coeffs @ self.transform) % self.N


def howell_with_transform(A, N: int) -> HowellCertificate:
    """Howell form of A plus a transform recording each basis row as a combination of A's rows."""
    A = np.asarray(A, dtype=np.int64) % N
    r, cols = A.shape
    aug = np.hstack([A, np.eye(r, dtype=np.int64)]) % N
    H, _ = _eliminate(aug.copy(), N, stop=cols)
    H = np.array(H, dtype=np.int64).reshape(-1, cols + r)
    return HowellCertificate(H[:, :cols], H[:, cols:], N)
