"""Explicit interpolation operators built by induction on the module.

``identity_minor_operator_on(A, k, E)`` returns coefficients s with
f(x) = sum_r s(r) f(r x) for every f: A^k -> B whenever B has exponent dividing E
and gcd(|A|, E) = 1.  The construction only ever produces matrices of small
inner rank; callers should still re-check the support rank and the identity.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .errors import CoprimalityError, HypothesisViolated
from .matrices import mat_inverse
from .modules import (
    FiniteModule,
    Submodule,
    _local_data,
    cover_components,
    find_transitive_matrix,
    generate_submodule,
    maximal_submodules,
    quotient_module,
    radical_submodule,
    submodule_as_module,
)
from .operators import (
    MinorOperator,
    _canonical,
    op_combine_difference,
    op_compose,
    op_conjugate,
    zero_operator,
)
from .rings import ideal_power, jacobson_radical, local_decomposition

_IDENTITY_CACHE: dict = {}
_GM_CACHE: dict = {}


def _inv(x: int, E: int) -> int:
    try:
        return pow(x, -1, E)
    except ValueError:
        raise CoprimalityError(f"{x} is not invertible modulo {E}") from None


def _eye(R, k: int) -> np.ndarray:
    m = np.full((k, k), R.zero, dtype=np.int64)
    m[np.arange(k), np.arange(k)] = R.one
    return m


def _block_index(A: FiniteModule, M: Submodule) -> int:
    dec = local_decomposition(A.ring)
    mask = M.mask()
    outside = [i for i, e in enumerate(dec.idempotents) if not mask[A.action[e]].all()]
    if len(outside) != 1:
        raise HypothesisViolated("a maximal submodule must differ from A in exactly one local block")
    return outside[0]


def gM_operator(A: FiniteModule, M: Submodule, k: int, E: int) -> MinorOperator:
    """An operator sending each f vanishing on M^k to a function supported on A x M^(k-1) that agrees with f there."""
    key = (A.fingerprint, M.elements, k, E)
    if key in _GM_CACHE:
        return _GM_CACHE[key]
    R = A.ring
    dec = local_decomposition(R)
    i0 = _block_index(A, M)
    e0 = dec.idempotents[i0]
    mask = M.mask()
    if (A.action[e0][M.array] == A.zero).all():
        # e0 M = 0: average over translations of the first coordinate by e0 R
        R1 = np.unique(R.mul_table[e0])
        e = int(R.add_table[R.one, R.neg_table[e0]])
        c = _inv(len(R1), E) ** (k - 1) % E if k > 1 else 1
        mats, coeffs = [], []
        for a in itertools.product(R1.tolist(), repeat=k - 1):
            P = _eye(R, k)
            P[0, 1:] = a
            Q = P.copy()
            Q[0, 0] = e
            mats += [P, Q]
            coeffs += [c, -c]
        op = _canonical(R, k, E, np.array(mats), np.array(coeffs))
    else:
        J = jacobson_radical(R)
        block_part = np.unique(A.action[e0])
        m, I = 0, np.unique(R.mul_table[e0])
        while True:
            nxt = np.unique(R.mul_table[e0][np.array(ideal_power(R, J, m + 1), dtype=np.int64)])
            if (A.action[nxt[:, None], block_part[None, :]] == A.zero).all():
                break
            m, I = m + 1, nxt
        N = generate_submodule(A, np.unique(A.action[I[:, None], block_part[None, :]]))
        if len(N) == 1 or not mask[N.array].all():
            raise HypothesisViolated("the socle of the block is not inside M")
        inv_I = _inv(len(I), E)
        eye = _eye(R, k)
        bar_m = [R.add_table[eye, np.array(a).reshape(k, k)] for a in itertools.product(I.tolist(), repeat=k * k)]
        bar = _canonical(R, k, E, np.array(bar_m), np.full(len(bar_m), pow(inv_I, k * k, E)))
        hat_m = []
        for a in itertools.product(I.tolist(), repeat=k * (k - 1)):
            add = np.full((k, k), R.zero, dtype=np.int64)
            add[:, 1:] = np.array(a, dtype=np.int64).reshape(k, k - 1)
            hat_m.append(R.add_table[eye, add])
        hat = _canonical(R, k, E, np.array(hat_m), np.full(len(hat_m), pow(inv_I, k * (k - 1), E)))
        Q, proj = quotient_module(A, N)
        MQ = Submodule(Q, tuple(int(x) for x in np.unique(proj[M.array])))
        lower = gM_operator(Q, MQ, k, E)
        op = hat - bar + op_compose(lower, bar)
    _GM_CACHE[key] = op
    return op


def fN_operator(A: FiniteModule, N: Submodule, k: int, E: int, data=None) -> MinorOperator:
    """For a component N of A^k: an operator keeping f on N and vanishing off N, for f vanishing on M^k (M < A)."""
    R = A.ring
    JA = radical_submodule(A)
    if k == 1 or len(JA) == 1:
        first = np.full((k, k), R.zero, dtype=np.int64)
        first[0, 0] = R.one
        h = _canonical(R, k, E, first[None], np.array([1]))
    else:
        JAmod, _ = submodule_as_module(JA)
        inner = identity_minor_operator_on(JAmod, k - 1, E, ring_check=False)
        mats = np.full((len(inner), k, k), R.zero, dtype=np.int64)
        mats[:, 0, 0] = R.one
        mats[:, 1:, 1:] = inner.mats
        h = _canonical(R, k, E, mats, inner.coeffs)
    for M in maximal_submodules(A):
        h = op_compose(gM_operator(A, M, k, E), h)
    T = find_transitive_matrix(A, k, N, data)
    return op_conjugate(h, T, mat_inverse(R, T))


def identity_minor_operator_on(A: FiniteModule, k: int, E: int, ring_check: bool = True) -> MinorOperator:
    """Coefficients reproducing every f: A^k -> B with exp(B) | E (inductive construction)."""
    if ring_check and math.gcd(A.size, E) != 1:
        raise CoprimalityError(f"gcd(|A|, E) = gcd({A.size}, {E}) != 1")
    key = (A.fingerprint, k, E)
    if key in _IDENTITY_CACHE:
        return _IDENTITY_CACHE[key]
    R = A.ring
    if A.size == 1:
        op = _canonical(R, k, E, np.full((1, k, k), R.zero, dtype=np.int64), np.array([1]))
        _IDENTITY_CACHE[key] = op
        return op
    D = zero_operator(R, k, E)
    for M in maximal_submodules(A):
        Mmod, _ = submodule_as_module(M)
        d = identity_minor_operator_on(Mmod, k, E, ring_check=False)
        D = D + d - op_compose(d, D)
    data = _local_data(A)
    cover = cover_components(A, k)
    if not cover.ok:
        raise HypothesisViolated("the components of A^k do not cover it as required")
    t = zero_operator(R, k, E)
    for N in cover.V:
        t = t + fN_operator(A, N, k, E, data)
    op = op_combine_difference(D, t)
    _IDENTITY_CACHE[key] = op
    return op


def clear_caches() -> None:
    _IDENTITY_CACHE.clear()
    _GM_CACHE.clear()
