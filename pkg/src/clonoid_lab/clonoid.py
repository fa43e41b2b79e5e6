"""Clonoids between finite modules, represented arity by arity up to a working bound."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import howell
from .config import table_guard
from .errors import SignatureMismatch, SizeLimitExceeded
from .funcspace import (
    FuncTable,
    SpanBasis,
    coder_for,
    func_to_json,
    minor_tables,
    point_index,
    points,
    span_from_tables,
    unique_rows,
)
from .matrices import MatrixOverR, all_matrices
from .modules import FiniteModule, Submodule, same_module, submodule_as_module
from .rank import matrices_of_rank_at_most

CANDIDATE_GUARD = 1 << 12


@dataclass(frozen=True, eq=False)
class Clonoid:
    domain: FiniteModule
    codomain: FiniteModule
    max_arity: int
    parts: dict[int, SpanBasis] = field(default_factory=dict)
    empty: bool = False

    def part(self, m: int) -> SpanBasis | None:
        return None if self.empty else self.parts[m]

    def sizes(self) -> dict[int, int]:
        return {} if self.empty else {m: self.parts[m].size for m in sorted(self.parts)}

    def contains(self, f: FuncTable) -> bool:
        if self.empty:
            return False
        return self.parts[f.arity].contains_table(f.table)

    def to_json(self, with_basis: bool = True) -> dict:
        out = {
            "empty": self.empty,
            "max_arity": self.max_arity,
            "parts": {str(m): {"rank": int(len(S.rows)), "size": int(S.size)} for m, S in sorted(self.parts.items())},
        }
        if with_basis:
            out["basis"] = [] if self.empty else [func_to_json(f) for m in sorted(self.parts)
                                                  for f in self.parts[m].basis_functions()]
        return out


def bottom(A: FiniteModule, B: FiniteModule, max_arity: int) -> Clonoid:
    return Clonoid(A, B, max_arity, {}, True)


def _check_generation_size(A: FiniteModule, k: int, m: int) -> None:
    R = A.ring
    work = R.size ** (k * m) * A.size ** m
    if A.size ** m > table_guard() or work > 64 * table_guard():
        raise SizeLimitExceeded(f"generating arity {m} from arity {k} needs {work} table entries")


def clonoid_generate(F: Iterable[FuncTable], max_arity: int, domain: FiniteModule | None = None,
                     codomain: FiniteModule | None = None) -> Clonoid:
    """The clonoid generated by F, computed at arities 1..max_arity.

    Part m is the span of all minors f(Mx) with M ranging over R^(arity(f) x m).
    Minors of minors are minors (matrix products), and spans absorb the
    codomain's term operations, so one pass is enough.
    """
    F = list(F)
    if F:
        domain, codomain = F[0].domain, F[0].codomain
        for f in F:
            if not (same_module(f.domain, domain) and same_module(f.codomain, codomain)):
                raise SignatureMismatch("generators have different domain or codomain")
    if domain is None or codomain is None:
        raise SignatureMismatch("an empty generator set needs an explicit signature")
    if not F:
        return bottom(domain, codomain, max_arity)
    R = domain.ring
    parts = {}
    for m in range(1, max_arity + 1):
        chunks = []
        for f in F:
            _check_generation_size(domain, f.arity, m)
            chunks.append(unique_rows(minor_tables(f, all_matrices(R, f.arity, m))))
        parts[m] = span_from_tables(domain, codomain, m, np.vstack(chunks))
    return Clonoid(domain, codomain, max_arity, parts, False)


def generate_from_parts(C: Clonoid, max_arity: int | None = None) -> Clonoid:
    """Regenerate from the basis functions of every part (used for idempotence checks)."""
    gens = [f for m in sorted(C.parts) for f in C.parts[m].basis_functions()]
    if C.empty:
        return bottom(C.domain, C.codomain, max_arity or C.max_arity)
    if not gens:
        gens = [FuncTable(C.domain, C.codomain, 1, np.full(C.domain.size, C.codomain.zero))]
    return clonoid_generate(gens, max_arity or C.max_arity)


def _check_pair(C: Clonoid, D: Clonoid) -> None:
    if not (same_module(C.domain, D.domain) and same_module(C.codomain, D.codomain)) or C.max_arity != D.max_arity:
        raise SignatureMismatch("clonoids differ in signature or working arity")


def _part_leq(S: SpanBasis, T: SpanBasis) -> bool:
    return all(howell.contains(T.rows, T.E, row) for row in S.rows)


def clonoid_leq(C: Clonoid, D: Clonoid) -> bool:
    _check_pair(C, D)
    if C.empty:
        return True
    if D.empty:
        return False
    return all(_part_leq(C.parts[m], D.parts[m]) for m in C.parts)


def clonoid_compare(C: Clonoid, D: Clonoid) -> str:
    le, ge = clonoid_leq(C, D), clonoid_leq(D, C)
    if le and ge:
        return "equal"
    if le:
        return "strictly-less"
    if ge:
        return "strictly-greater"
    return "incomparable"


def clonoid_join(C: Clonoid, D: Clonoid) -> Clonoid:
    """Arity-wise sum of spans."""
    _check_pair(C, D)
    if C.empty:
        return D
    if D.empty:
        return C
    parts = {m: C.parts[m].with_rows(howell.span_sum(C.parts[m].rows, D.parts[m].rows, C.parts[m].E))
             for m in C.parts}
    return Clonoid(C.domain, C.codomain, C.max_arity, parts, False)


def clonoid_meet(C: Clonoid, D: Clonoid) -> Clonoid:
    """Arity-wise intersection of spans."""
    _check_pair(C, D)
    if C.empty or D.empty:
        return bottom(C.domain, C.codomain, C.max_arity)
    parts = {m: C.parts[m].with_rows(howell.span_intersection(C.parts[m].rows, D.parts[m].rows, C.parts[m].E))
             for m in C.parts}
    return Clonoid(C.domain, C.codomain, C.max_arity, parts, False)


def minor_closure_violation(C: Clonoid) -> tuple[int, int, MatrixOverR] | None:
    """Search every basis function and every matrix for a minor leaving the clonoid."""
    if C.empty:
        return None
    R = C.domain.ring
    for m, S in C.parts.items():
        for f in S.basis_functions():
            for m2 in range(1, C.max_arity + 1):
                mats = all_matrices(R, m, m2)
                tables = minor_tables(f, mats)
                target = C.parts[m2]
                enc = coder_for(C.codomain).encode(tables)
                for t, vec in enumerate(enc):
                    if not howell.contains(target.rows, target.E, vec):
                        return m, m2, MatrixOverR.from_array(mats[t])
    return None


# ---------------------------------------------------------------- n-ary generation


@dataclass(frozen=True)
class NaryGeneration:
    generated: bool
    n: int
    coefficients: dict[MatrixOverR, int] | None = None
    candidates: int = 0

    def __bool__(self) -> bool:
        return self.generated


def generated_by_nary(f: FuncTable, n: int, dedupe: bool = True) -> NaryGeneration:
    """Is f a Z-combination of its minors f(r x) with inner rank of r at most n?"""
    A = f.domain
    mats = matrices_of_rank_at_most(A.ring, f.arity, n, dedupe_by_map=dedupe, A=A)
    arr = np.stack([M.array() for M in mats])
    tables = minor_tables(f, arr)
    coder = coder_for(f.codomain)
    enc = coder.encode(tables)
    target = coder.encode(f.table)
    cert = howell.howell_with_transform(enc, coder.E)
    coeffs = cert.express(target)
    if coeffs is None:
        return NaryGeneration(False, n, None, len(mats))
    assert np.array_equal((coeffs @ enc) % coder.E, target % coder.E)
    support = {mats[i]: int(c) for i, c in enumerate(coeffs) if c}
    return NaryGeneration(True, n, support, len(mats))


# ---------------------------------------------------------------- transport


def lift_table(f: FuncTable, A: FiniteModule, proj: np.ndarray, B: FiniteModule, embed: np.ndarray | None) -> np.ndarray:
    pts = points(A, f.arity)
    vals = f.table[point_index(f.domain, proj[pts])]
    return embed[vals] if embed is not None else vals


def clonoid_lift(C: Clonoid, A: FiniteModule, proj: np.ndarray, B: FiniteModule | None = None,
                 embed: np.ndarray | None = None) -> Clonoid:
    """Transport a clonoid over A/alpha -> B' to A -> B via f'(x) = embed(f(proj x))."""
    B = B if B is not None else C.codomain
    if C.empty:
        return bottom(A, B, C.max_arity)
    parts = {}
    for m, S in C.parts.items():
        basis = S.basis_functions()
        tables = np.array([lift_table(f, A, proj, B, embed) for f in basis], dtype=np.int64)
        parts[m] = span_from_tables(A, B, m, tables.reshape(len(basis), A.size ** m))
    return Clonoid(A, B, C.max_arity, parts, False)


def clonoid_restrict(C: Clonoid, sub: Submodule) -> Clonoid:
    """Restrict every function of C to the points of a submodule of the domain."""
    A2, emb = submodule_as_module(sub)
    if C.empty:
        return bottom(A2, C.codomain, C.max_arity)
    parts = {}
    for m, S in C.parts.items():
        idx = point_index(C.domain, emb[points(A2, m)])
        tables = np.array([f.table[idx] for f in S.basis_functions()], dtype=np.int64)
        parts[m] = span_from_tables(A2, C.codomain, m, tables.reshape(-1, A2.size ** m))
    return Clonoid(A2, C.codomain, C.max_arity, parts, False)


# ---------------------------------------------------------------- enumeration


@dataclass
class ClonoidCensus:
    clonoids: list[Clonoid]
    count: int
    includes_bottom: bool
    status: str  # "complete" or "bound-relative"
    n: int
    max_arity: int


def enumerate_clonoids(A: FiniteModule, B: FiniteModule, n: int) -> ClonoidCensus:
    """All clonoids up to their n-ary parts, plus the bottom element.

    Every minor-closed subspan of the n-ary function space is a sum of the
    minor-closed spans generated by single functions, so the candidates are the
    sum-closure of those principal pieces.  Each candidate is regenerated at
    arity n+1 and must reproduce itself at arity n.
    """
    space = B.size ** (A.size ** n)
    if space > CANDIDATE_GUARD:
        raise SizeLimitExceeded(f"{space} candidate functions exceed the census guard {CANDIDATE_GUARD}")
    R = A.ring
    mats = all_matrices(R, n, n)
    P = A.size ** n
    all_tables = np.array(np.unravel_index(np.arange(space), (B.size,) * P), dtype=np.int64).T[:, ::-1]
    coder = coder_for(B)
    E = coder.E
    pieces: dict[bytes, np.ndarray] = {}
    for t in all_tables:
        f = FuncTable(A, B, n, t)
        H = howell.howell_form(coder.encode(minor_tables(f, mats)), E)
        pieces.setdefault(H.tobytes() + bytes(str(H.shape), "ascii"), H)
    piece_list = list(pieces.values())
    found: dict[bytes, np.ndarray] = {}

    def key(H):
        return H.tobytes() + bytes(str(H.shape), "ascii")

    zero = np.zeros((0, P * coder.width), dtype=np.int64)
    found[key(zero)] = zero
    frontier = [zero]
    while frontier:
        nxt = []
        for H in frontier:
            for piece in piece_list:
                S = howell.span_sum(H, piece, E)
                k = key(S)
                if k not in found:
                    found[k] = S
                    nxt.append(S)
        frontier = nxt
    clonoids = [bottom(A, B, n + 1)]
    for H in sorted(found.values(), key=lambda h: (howell.span_size(h, E), h.tobytes())):
        tables = coder.decode(H) if len(H) else np.full((1, P), B.zero, dtype=np.int64)
        gens = [FuncTable(A, B, n, t) for t in tables.reshape(-1, P)]
        C = clonoid_generate(gens, n + 1)
        if not howell.same_span(C.parts[n].rows, H):
            continue
        clonoids.append(C)
    status = "complete" if math.gcd(A.size, B.size) == 1 else "bound-relative"
    return ClonoidCensus(clonoids, len(clonoids), True, status, n, n + 1)


def brute_force_clonoid_count(A: FiniteModule, B: FiniteModule, n: int) -> int:
    """Independent oracle: scan every subset of the n-ary function space.

    A subset counts when it contains 0, is closed under pointwise addition and
    under every n x n minor.  The bottom element is added at the end.
    """
    P = A.size ** n
    space = B.size ** P
    if space > 16:
        raise SizeLimitExceeded("the subset oracle only handles function spaces of at most 16 functions")
    tables = np.array(np.unravel_index(np.arange(space), (B.size,) * P), dtype=np.int64).T[:, ::-1]
    radix = B.size ** np.arange(P, dtype=np.int64)
    codes = tables @ radix
    order = np.argsort(codes)
    pos = {int(codes[i]): int(i) for i in order}
    add = np.array([[pos[int(B.add_table[tables[i], tables[j]] @ radix)] for j in range(space)] for i in range(space)])
    mats = all_matrices(A.ring, n, n)
    minors = []
    for i in range(space):
        f = FuncTable(A, B, n, tables[i])
        minors.append({pos[int(t @ radix)] for t in minor_tables(f, mats)})
    zero = pos[int(np.full(P, B.zero) @ radix)]
    count = 0
    for mask in range(1 << space):
        if not (mask >> zero) & 1:
            continue
        members = [i for i in range(space) if (mask >> i) & 1]
        ok = all((mask >> add[i, j]) & 1 for i in members for j in members)
        ok = ok and all((mask >> g) & 1 for i in members for g in minors[i])
        count += ok
    return count + 1


__all__ = [
    "Clonoid",
    "ClonoidCensus",
    "NaryGeneration",
    "bottom",
    "brute_force_clonoid_count",
    "clonoid_compare",
    "clonoid_generate",
    "clonoid_join",
    "clonoid_leq",
    "clonoid_lift",
    "clonoid_meet",
    "clonoid_restrict",
    "enumerate_clonoids",
    "generate_from_parts",
    "generated_by_nary",
    "minor_closure_violation",
]
