"""Pairs of clonoids that agree up to arity n but differ at arity n + 1.

Every relation used here has the diagonal of B as its right-hand side, so a clonoid
Pol(rho_1, =) cap ... is the set of functions constant on the classes of the
equivalence on A^k generated by the k-fold column products of the rho_i.  Equality
of such clonoids at a fixed arity is therefore equality of two partitions (when
|B| >= 2); small cases are additionally scanned function by function.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .chain import chain_function, common_prime
from .clonoid import generated_by_nary
from .errors import (
    HypothesisViolated,
    NoCommonPrime,
    RadicalZero,
    SearchTooLarge,
    SizeLimitExceeded,
)
from .funcspace import FuncTable, RelationalPair, delta_basis, diagonal, point_index, points, pol_check, subpower_generate
from .modules import (
    FiniteModule,
    Submodule,
    generate_submodule,
    min_generators,
    regular_module,
    submodule_as_module,
    submodules,
)
from .rank import rank_bounded_codes
from .report import Timer, VerificationReport
from .rings import FiniteRing, ideal_power, ideal_product, jacobson_radical, nilpotence_degree

SCAN_LIMIT = 1 << 13


def column_pairs(A: FiniteModule, rel: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """All (x, y) in A^k x A^k with (x_i, y_i) in rel for each i, as point indices."""
    choice = np.array(list(itertools.product(range(len(rel)), repeat=k)), dtype=np.int64).reshape(-1, k)
    cols = rel[choice]  # (C, k, 2)
    return point_index(A, cols[:, :, 0]), point_index(A, cols[:, :, 1])


def partition(P: int, pairs: list[tuple[np.ndarray, np.ndarray]]) -> np.ndarray:
    """Class labels (least member) of the equivalence on range(P) generated by the pairs."""
    labels = np.arange(P, dtype=np.int64)
    if not pairs:
        return labels
    xs = np.concatenate([p[0] for p in pairs])
    ys = np.concatenate([p[1] for p in pairs])
    while True:
        m = np.minimum(labels[xs], labels[ys])
        new = labels.copy()
        np.minimum.at(new, xs, m)
        np.minimum.at(new, ys, m)
        new = new[new]
        if np.array_equal(new, labels):
            return labels
        labels = new


def _all_tables(B: FiniteModule, P: int) -> np.ndarray:
    return np.indices((B.size,) * P).reshape(P, -1).T


def _scan(tables: np.ndarray, pairs: list[tuple[np.ndarray, np.ndarray]]) -> np.ndarray:
    """Mask of tables with f(x) = f(y) for every listed pair."""
    ok = np.ones(len(tables), dtype=bool)
    for xs, ys in pairs:
        ok &= (tables[:, xs] == tables[:, ys]).all(axis=1)
    return ok


def _maximal_relations(rels: list[frozenset]) -> list[frozenset]:
    """Drop relations contained in another one: Pol of the larger implies Pol of the smaller."""
    rels = sorted(set(rels), key=lambda r: (-len(r), sorted(r)))
    keep: list[frozenset] = []
    for r in rels:
        if not any(r <= s for s in keep):
            keep.append(r)
    return keep


def _as_array(rel: frozenset) -> np.ndarray:
    return np.array(sorted(rel), dtype=np.int64).reshape(-1, 2)


def _compare_parts(A: FiniteModule, B: FiniteModule, k: int, rels_C: list[np.ndarray], rels_D: list[np.ndarray]) -> dict:
    P = A.size ** k
    pairs_C = [column_pairs(A, r, k) for r in rels_C]
    pairs_D = [column_pairs(A, r, k) for r in rels_D]
    lab_C, lab_D = partition(P, pairs_C), partition(P, pairs_D)
    out = {"arity": k, "classes_C": int(len(np.unique(lab_C))), "classes_D": int(len(np.unique(lab_D))),
           "partition_equal": bool(np.array_equal(lab_C, lab_D))}
    if B.size ** P <= SCAN_LIMIT:
        tables = _all_tables(B, P)
        in_C, in_D = _scan(tables, pairs_C), _scan(tables, pairs_D)
        out["scan_equal"] = bool(np.array_equal(in_C, in_D))
        out["scan_size"] = int(in_C.sum())
        out["functions_scanned"] = len(tables)
    out["equal"] = out["partition_equal"] and out.get("scan_equal", True)
    return out


def _one(B: FiniteModule) -> int:
    return next(b for b in range(B.size) if b != B.zero)


def _find_U(A: FiniteModule, n: int) -> Submodule:
    for U in submodules(A):
        if min_generators(submodule_as_module(U)[0]) > n:
            return U
    raise HypothesisViolated(f"every submodule of {A.label} is generated by {n} elements")


def separation_noncyclic(A: FiniteModule, B: FiniteModule, n: int, seed: int = 0) -> VerificationReport:
    """C = Pol(U^2, =) against D = intersection of Pol(sigma_ab, =) over a, b in U^n."""
    instance = {"domain": A.label, "codomain": B.label, "n": n}
    with Timer() as tm:
        U = _find_U(A, n)
        Uarr = U.array
        rho_U = np.array([(a, b) for a in Uarr for b in Uarr], dtype=np.int64)
        sigmas = set()
        for a in itertools.product(Uarr.tolist(), repeat=n):
            for b in itertools.product(Uarr.tolist(), repeat=n):
                sigmas.add(subpower_generate(A, 2, list(zip(a, b))))
        sigmas = _maximal_relations(list(sigmas))
        sig_arrays = [_as_array(s) for s in sigmas]
        parts = [_compare_parts(A, B, k, [rho_U], sig_arrays) for k in range(1, n + 1)]
        one = _one(B)
        pts = points(A, n + 1)
        gen = np.array([len(generate_submodule(A, row)) == len(U) and set(row) <= U.as_set
                        for row in pts.tolist()])
        g = FuncTable(A, B, n + 1, np.where(gen, one, B.zero))
        eq_B = diagonal(B)
        not_in_C = pol_check(g, RelationalPair(2, frozenset(map(tuple, rho_U.tolist())), eq_B))
        in_D = all(pol_check(g, RelationalPair(2, s, eq_B)) for s in sigmas)
        equal_below = all(p["equal"] for p in parts)
    ok = equal_below and in_D and not not_in_C
    witness = {
        "function": "g(x) = b iff x_1..x_(n+1) generate U",
        "U": list(U.elements),
        "b": one,
        "table": g.table.tolist(),
        "in_D": in_D,
        "in_C": bool(not_in_C),
        "failing_columns": not_in_C.columns,
    }
    return VerificationReport("separate-noncyclic", instance, "verified" if ok else "refuted", witness, tm.ms, seed,
                              {"parts": parts, "sigma_relations": len(sigmas), "U_size": len(U)})


def _radical_square_zero(R: FiniteRing) -> tuple[int, ...]:
    J = jacobson_radical(R)
    if J.is_zero:
        raise RadicalZero(f"J({R.label}) = 0")
    nd = nilpotence_degree(R, J)
    I = ideal_power(R, J, nd - 1)
    if ideal_product(R, I, I) != (R.zero,):
        raise AssertionError("chosen ideal does not square to zero")
    return I


def separation_jacobson(R: FiniteRing, B: FiniteModule, seed: int = 0) -> VerificationReport:
    """Over the regular module: Pol(=_I) against the relations sigma_a = R(1, 1 + a), a in I."""
    instance = {"ring": R.label, "codomain": B.label}
    with Timer() as tm:
        A = regular_module(R)
        I = _radical_square_zero(R)
        cong = np.array([(x, int(R.add_table[x, a])) for x in range(R.size) for a in I], dtype=np.int64)
        proper = [M for M in submodules(A) if len(M) < A.size]
        m_rels = [np.array([(a, b) for a in M.array for b in M.array], dtype=np.int64) for M in proper]
        sigmas = [subpower_generate(A, 2, [(R.one, int(R.add_table[R.one, a]))]) for a in I]
        sig_arrays = [_as_array(s) for s in sigmas]
        unary = _compare_parts(A, B, 1, [cong] + m_rels, sig_arrays + m_rels)
        one = _one(B)
        ones_I = {int(R.add_table[R.one, a]) for a in I}
        g = FuncTable(A, B, 2, np.array(
            [one if x == y and x in ones_I else B.zero for x, y in points(A, 2).tolist()], dtype=np.int64))
        eq_B = diagonal(B)
        fail_C = pol_check(g, RelationalPair(2, frozenset(map(tuple, cong.tolist())), eq_B))
        in_D = all(pol_check(g, RelationalPair(2, s, eq_B)) for s in sigmas) and all(
            pol_check(g, RelationalPair(2, frozenset(map(tuple, r.tolist())), eq_B)) for r in m_rels)
    ok = unary["equal"] and in_D and not fail_C
    witness = {
        "function": "g(x, y) = b iff x = y and x - 1 lies in I",
        "I": list(I),
        "b": one,
        "table": g.table.tolist(),
        "in_D": in_D,
        "in_C": bool(fail_C),
        "failing_columns": fail_C.columns,
    }
    return VerificationReport("separate-jacobson", instance, "verified" if ok else "refuted", witness, tm.ms, seed,
                              {"unary": unary, "proper_submodules": len(proper), "sigma_relations": len(sigmas)})


# ---------------------------------------------------------------- commutative rings


def _arity_feasible(A: FiniteModule, k: int) -> bool:
    if A.size ** k > 256:
        return False
    try:
        return len(rank_bounded_codes(A.ring, k, 1, 1 << 20)) <= 4096
    except (SizeLimitExceeded, SearchTooLarge):
        return False


def commutative_spotcheck(R: FiniteRing, B: FiniteModule, seed: int = 0, max_arity: int = 3,
                          n_random: int = 5) -> VerificationReport:
    """Compare the structural criterion (coprime orders, J(R) = 0) with unary generation of sample functions."""
    if not R.is_commutative:
        raise HypothesisViolated("the spot check is stated for commutative rings")
    instance = {"ring": R.label, "codomain": B.label, "max_arity": max_arity}
    with Timer() as tm:
        A = regular_module(R)
        coprime = math.gcd(R.size, B.size) == 1
        semisimple = jacobson_radical(R).is_zero
        structural = coprime and semisimple
        candidates: list[tuple[str, FuncTable]] = []
        try:
            candidates.append(("chain f_2", chain_function(A, B, 2, common_prime(A, B))))
        except (NoCommonPrime, HypothesisViolated):
            pass
        if not semisimple:
            w = separation_jacobson(R, B, seed).witness
            candidates.append(("radical witness", FuncTable(A, B, 2, np.array(w["table"]))))
        arities = [k for k in range(1, max_arity + 1) if _arity_feasible(A, k)]
        for k in arities:
            for f in delta_basis(A, B, k):
                candidates.append((f"delta arity {k}", f))
        rng = np.random.default_rng(seed)
        for k in arities:
            for _ in range(n_random):
                candidates.append((f"random arity {k}", FuncTable(A, B, k, rng.integers(0, B.size, A.size ** k))))
        counterexample = None
        tested = 0
        for name, f in candidates:
            tested += 1
            if not generated_by_nary(f, 1).generated:
                counterexample = {"kind": name, "arity": f.arity, "table": f.table.tolist()}
                break
        operational = counterexample is None
    agree = operational == structural
    return VerificationReport(
        "spotcheck-commutative", instance, "verified" if agree else "refuted", counterexample, tm.ms, seed,
        {"structural": structural, "coprime": coprime, "radical_zero": semisimple, "operational": operational,
         "functions_tested": tested, "arities": arities},
    )
