"""Strictly ascending chains of clonoids between modules whose orders share a prime."""

from __future__ import annotations

import numpy as np

from .clonoid import clonoid_generate
from .errors import HypothesisViolated, NoCommonPrime
from .funcspace import FuncTable, hom_group, points, span_contains
from .modules import FiniteModule, cyclic_submodule, maximal_submodules, quotient_module
from .report import Timer, VerificationReport


def _primes(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def common_prime(A: FiniteModule, B: FiniteModule) -> int:
    shared = sorted(set(_primes(A.size)) & set(_primes(B.size)))
    if not shared:
        raise NoCommonPrime(f"|A| = {A.size} and |B| = {B.size} are coprime")
    return shared[0]


def _quotient_coordinate(A: FiniteModule, p: int) -> np.ndarray:
    """q: A -> Z_p, a surjective module map onto a quotient of order p (as integers 0..p-1)."""
    for L in maximal_submodules(A):
        if A.size // len(L) != p:
            continue
        Q, proj = quotient_module(A, L)
        g = next(x for x in range(Q.size) if x != Q.zero)
        # Q is cyclic of prime order, so every ring element acts by an integer scalar
        value = np.full(Q.size, -1, dtype=np.int64)
        x = Q.zero
        for c in range(p):
            value[x] = c
            x = int(Q.add_table[x, g])
        return value[proj]
    raise HypothesisViolated(f"A has no quotient of order {p}; matrix-ring expansion is out of scope")


def _submodule_embedding(B: FiniteModule, p: int) -> np.ndarray:
    """iota: Z_p -> B onto a submodule of order p, as the list [0, b, 2b, ...]."""
    for b in range(B.size):
        C = cyclic_submodule(B, b)
        if len(C) == p:
            out = [B.zero]
            for _ in range(p - 1):
                out.append(int(B.add_table[out[-1], b]))
            return np.array(out, dtype=np.int64)
    raise HypothesisViolated(f"B has no submodule of order {p}")


def chain_function(A: FiniteModule, B: FiniteModule, k: int, p: int | None = None) -> FuncTable:
    """x -> iota(q(x_1) q(x_2) ... q(x_k)), the product taken in Z_p."""
    p = p or common_prime(A, B)
    q = _quotient_coordinate(A, p)
    iota = _submodule_embedding(B, p)
    prod = np.ones(A.size ** k, dtype=np.int64)
    for col in points(A, k).T:
        prod = (prod * q[col]) % p
    return FuncTable(A, B, k, iota[prod])


def ascending_chain(A: FiniteModule, B: FiniteModule, kmax: int, seed: int = 0) -> VerificationReport:
    """Certify f_k outside the clonoid generated by Hom(A, B) and f_2, ..., f_(k-1), for 2 <= k <= kmax."""
    if kmax > 4:
        raise HypothesisViolated("kmax is limited to 4")
    instance = {"domain": A.label, "codomain": B.label, "max_k": kmax}
    with Timer() as tm:
        p = common_prime(A, B)
        homs = hom_group(A, B)
        fs = {k: chain_function(A, B, k, p) for k in range(2, kmax + 1)}
        steps = []
        witness = None
        for k in range(2, kmax + 1):
            C = clonoid_generate(homs + [fs[j] for j in range(2, k)], k)
            member = span_contains(C.part(k), fs[k])
            D = clonoid_generate(homs + [fs[j] for j in range(2, k + 1)], k)
            steps.append({
                "k": k,
                "previous_size": C.part(k).size,
                "next_size": D.part(k).size,
                "f_k_in_previous": bool(member),
            })
            if member:
                witness = {"k": k, "coefficients": member.coefficients}
                break
    strict = witness is None
    return VerificationReport("chain", instance, "verified" if strict else "refuted", witness, tm.ms, seed,
                              {"prime": p, "steps": steps, "homomorphisms": len(homs)})


__all__ = ["ascending_chain", "chain_function", "common_prime"]
