"""Function tables A^k -> B, minors, canonical spans and polymorphism checks.

A table lists codomain element indices over the points of A^k in mixed-radix
order with x_1 least significant.  Spans are taken over the integers; since the
codomain has exponent E they are Z_E-row-spans of the encoded tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from . import howell
from .config import table_guard
from .errors import DimensionMismatch, SignatureMismatch, SizeLimitExceeded
from .matrices import MatrixOverR, apply_to_points
from .modules import FiniteModule, PowerSpace, generate_submodule, module_make, same_module

_POINTS: dict[tuple[int, int], np.ndarray] = {}


def points(A: FiniteModule, k: int) -> np.ndarray:
    """All points of A^k as an array (|A|^k, k), first coordinate varying fastest."""
    key = (A.size, k)
    if key not in _POINTS:
        if A.size ** k > table_guard():
            raise SizeLimitExceeded(f"|A|^k = {A.size}^{k} exceeds the table guard {table_guard()}")
        idx = np.arange(A.size ** k, dtype=np.int64)
        radix = A.size ** np.arange(k, dtype=np.int64)
        _POINTS[key] = (idx[:, None] // radix[None, :]) % A.size
    return _POINTS[key]


def point_index(A: FiniteModule, pts) -> np.ndarray:
    pts = np.asarray(pts, dtype=np.int64)
    return pts @ (A.size ** np.arange(pts.shape[-1], dtype=np.int64))


@dataclass(frozen=True, eq=False)
class FuncTable:
    domain: FiniteModule
    codomain: FiniteModule
    arity: int
    table: np.ndarray

    def __post_init__(self):
        table = np.asarray(self.table, dtype=np.int64)
        if table.shape != (self.domain.size ** self.arity,):
            raise DimensionMismatch(f"a {self.arity}-ary table over {self.domain.size} elements "
                                    f"needs {self.domain.size ** self.arity} entries, got {table.shape}")
        if table.size and (table.min() < 0 or table.max() >= self.codomain.size):
            raise DimensionMismatch("table entry is not a codomain element")
        object.__setattr__(self, "table", table)

    def __eq__(self, other) -> bool:
        return (isinstance(other, FuncTable) and same_signature(self, other)
                and bool(np.array_equal(self.table, other.table)))

    def __hash__(self) -> int:
        return hash((self.arity, self.table.tobytes()))

    def __call__(self, *xs: int) -> int:
        return int(self.table[int(point_index(self.domain, xs))])

    def __add__(self, other: FuncTable) -> FuncTable:
        _check_same(self, other)
        return FuncTable(self.domain, self.codomain, self.arity, self.codomain.add_table[self.table, other.table])

    def __neg__(self) -> FuncTable:
        return FuncTable(self.domain, self.codomain, self.arity, self.codomain.neg_table[self.table])

    def __sub__(self, other: FuncTable) -> FuncTable:
        return self + (-other)

    def times(self, n: int) -> FuncTable:
        """Integer multiple n f."""
        return FuncTable(self.domain, self.codomain, self.arity, int_multiple(self.codomain, self.table, n))

    def is_zero(self) -> bool:
        return bool((self.table == self.codomain.zero).all())


def same_signature(f: FuncTable, g: FuncTable) -> bool:
    return same_module(f.domain, g.domain) and same_module(f.codomain, g.codomain) and f.arity == g.arity


def _check_same(f: FuncTable, g: FuncTable) -> None:
    if not same_signature(f, g):
        raise SignatureMismatch("functions have different domain, codomain or arity")


def int_multiple(B: FiniteModule, values: np.ndarray, n: int) -> np.ndarray:
    n %= B.exponent
    out = np.full_like(values, B.zero)
    base = values.copy()
    while n:
        if n & 1:
            out = B.add_table[out, base]
        base = B.add_table[base, base]
        n >>= 1
    return out


def func_from_callable(A: FiniteModule, B: FiniteModule, k: int, fn: Callable[..., int]) -> FuncTable:
    pts = points(A, k)
    return FuncTable(A, B, k, np.array([fn(*row) for row in pts.tolist()], dtype=np.int64))


def zero_function(A: FiniteModule, B: FiniteModule, k: int) -> FuncTable:
    return FuncTable(A, B, k, np.full(A.size ** k, B.zero, dtype=np.int64))


def constant_function(A: FiniteModule, B: FiniteModule, k: int, b: int) -> FuncTable:
    return FuncTable(A, B, k, np.full(A.size ** k, b, dtype=np.int64))


def delta(A: FiniteModule, B: FiniteModule, k: int, a: int, b: int) -> FuncTable:
    """The function with value b at point index a and 0 elsewhere."""
    table = np.full(A.size ** k, B.zero, dtype=np.int64)
    table[a] = b
    return FuncTable(A, B, k, table)


# ---------------------------------------------------------------- minors


def unique_rows(arr: np.ndarray) -> np.ndarray:
    """Distinct rows of a 2-d integer array (order unspecified); faster than np.unique(axis=0)."""
    arr = np.ascontiguousarray(arr)
    if len(arr) == 0:
        return arr
    small = arr.astype(np.uint8) if arr.min() >= 0 and arr.max() < 256 else arr
    small = np.ascontiguousarray(small)
    view = small.view(np.dtype((np.void, small.dtype.itemsize * small.shape[1]))).reshape(-1)
    _, first = np.unique(view, return_index=True)
    return arr[np.sort(first)]


def minor_tables(f: FuncTable, mats: np.ndarray) -> np.ndarray:
    """Tables of x -> f(M x) for a stack of matrices (T, arity, m); returns (T, |A|^m)."""
    if mats.ndim != 3 or mats.shape[1] != f.arity:
        raise DimensionMismatch(f"minor matrices need {f.arity} rows")
    A = f.domain
    pts = points(A, mats.shape[2])
    out = np.empty((mats.shape[0], len(pts)), dtype=np.int64)
    step = max(1, (1 << 22) // max(1, len(pts) * f.arity))
    for s in range(0, mats.shape[0], step):
        images = apply_to_points(A, mats[s:s + step], pts)  # (t, P, arity)
        out[s:s + step] = f.table[point_index(A, images)]
    return out


def func_minor(f: FuncTable, M: MatrixOverR) -> FuncTable:
    if M.rows != f.arity or M.cols < 1:
        raise DimensionMismatch(f"minor of a {f.arity}-ary function needs {f.arity} rows and at least one column")
    return FuncTable(f.domain, f.codomain, M.cols, minor_tables(f, M.array()[None])[0])


# ---------------------------------------------------------------- additive maps


def group_generators(A: FiniteModule) -> list[int]:
    """A generating set of (A, +): greedily add an element of largest order outside the span."""
    gens: list[int] = []
    span = np.array([A.zero], dtype=np.int64)
    orders = np.array([A.additive_order(a) for a in range(A.size)])
    while len(span) < A.size:
        outside = np.setdiff1d(np.arange(A.size), span)
        best = outside[np.argmax(orders[outside])]
        gens.append(int(best))
        span = _group_closure(A, span, int(best))
    return gens


def _group_closure(A: FiniteModule, span: np.ndarray, g: int) -> np.ndarray:
    multiples = [A.zero]
    x = g
    while x != A.zero:
        multiples.append(x)
        x = int(A.add_table[x, g])
    return np.unique(A.add_table[span[:, None], np.array(multiples)[None, :]])


def hom_group(A: FiniteModule, B: FiniteModule) -> list[FuncTable]:
    """All additive maps A -> B, by generator images checked for consistency."""
    if A.size > 256:
        raise SizeLimitExceeded("hom_group is limited to domains of at most 256 elements")
    gens = group_generators(A)
    # spanning tree of the Cayley graph from 0
    parent_gen = np.full(A.size, -1, dtype=np.int64)
    parent = np.full(A.size, -1, dtype=np.int64)
    order = [A.zero]
    seen = {A.zero}
    for x in order:
        for gi, g in enumerate(gens):
            y = int(A.add_table[x, g])
            if y not in seen:
                seen.add(y)
                parent[y], parent_gen[y] = x, gi
                order.append(y)
    b_orders = np.array([B.additive_order(b) for b in range(B.size)])
    choices = [np.flatnonzero(A.additive_order(g) % b_orders == 0) for g in gens]
    if not gens:
        return [zero_function(A, B, 1)]
    cands = np.array(list(itertools.product(*choices)), dtype=np.int64)  # (C, t)
    img = np.full((len(cands), A.size), -1, dtype=np.int64)
    img[:, A.zero] = B.zero
    for y in order[1:]:
        img[:, y] = B.add_table[img[:, parent[y]], cands[:, parent_gen[y]]]
    ok = np.ones(len(cands), dtype=bool)
    for gi, g in enumerate(gens):
        ok &= (img[:, A.add_table[np.arange(A.size), g]] == B.add_table[img, cands[:, [gi]]]).all(axis=1)
    return [FuncTable(A, B, 1, row) for row in img[ok]]


def is_additive(f: FuncTable) -> bool:
    if f.arity != 1:
        return False
    A, B, t = f.domain, f.codomain, f.table
    return bool(np.array_equal(t[A.add_table], B.add_table[t[:, None], t[None, :]]))


# ---------------------------------------------------------------- codomain encoding


def _cyclic_module(E: int) -> FiniteModule:
    return module_make({"kind": "abelian", "invariants": [E]})


class CodomainCoder:
    """An injective group homomorphism B -> (Z_E)^c built from characters of B."""

    def __init__(self, B: FiniteModule):
        self.B = B
        self.E = B.exponent
        chars: list[np.ndarray] = []
        if B.size > 1:
            ZE = _cyclic_module(self.E)
            kernel = np.ones(B.size, dtype=bool)
            for chi in hom_group(B, ZE):
                new = kernel & (chi.table == 0)
                if new.sum() < kernel.sum():
                    chars.append(chi.table)
                    kernel = new
                if kernel.sum() == 1:
                    break
        self.codes = np.stack(chars, axis=1) if chars else np.zeros((B.size, 0), dtype=np.int64)
        self.width = self.codes.shape[1]
        weights = self.E ** np.arange(self.width, dtype=np.int64)
        keys = self.codes @ weights
        self._order = np.argsort(keys)
        self._keys = keys[self._order]
        if len(np.unique(keys)) != B.size:
            raise AssertionError("codomain characters failed to separate points")

    def encode(self, tables: np.ndarray) -> np.ndarray:
        """(..., P) element indices -> (..., P * width) vectors over Z_E."""
        coded = self.codes[tables]
        return coded.reshape(tables.shape[:-1] + (-1,))

    def decode(self, vectors: np.ndarray) -> np.ndarray:
        v = np.asarray(vectors, dtype=np.int64) % self.E
        v = v.reshape(v.shape[:-1] + (-1, self.width))
        keys = v @ (self.E ** np.arange(self.width, dtype=np.int64))
        pos = np.searchsorted(self._keys, keys)
        pos = np.clip(pos, 0, len(self._keys) - 1)
        if not np.array_equal(self._keys[pos], keys):
            raise ValueError("vector does not encode a codomain table")
        return self._order[pos]


_CODERS: dict[bytes, CodomainCoder] = {}


def coder_for(B: FiniteModule) -> CodomainCoder:
    key = B.fingerprint
    if key not in _CODERS:
        _CODERS[key] = CodomainCoder(B)
    return _CODERS[key]


def delta_basis(A: FiniteModule, B: FiniteModule, k: int) -> list[FuncTable]:
    """delta_a * b for every point a of A^k and every generator b of (B, +)."""
    gens = group_generators(B)
    return [delta(A, B, k, a, b) for a in range(A.size ** k) for b in gens]


def delta_basis_tables(A: FiniteModule, B: FiniteModule, k: int) -> np.ndarray:
    gens = group_generators(B)
    P = A.size ** k
    out = np.full((P * len(gens), P), B.zero, dtype=np.int64)
    for j, b in enumerate(gens):
        out[np.arange(P) * len(gens) + j, np.arange(P)] = b
    return out


# ---------------------------------------------------------------- spans


@dataclass(frozen=True, eq=False)
class SpanBasis:
    domain: FiniteModule
    codomain: FiniteModule
    arity: int
    E: int
    rows: np.ndarray
    generators: np.ndarray | None = None  # encoded generator rows, kept for certificates

    def __eq__(self, other) -> bool:
        return (isinstance(other, SpanBasis) and same_module(other.domain, self.domain)
                and same_module(other.codomain, self.codomain) and other.arity == self.arity and howell.same_span(self.rows, other.rows))

    def __hash__(self) -> int:
        return hash((self.arity, self.rows.tobytes()))

    @cached_property
    def size(self) -> int:
        return howell.span_size(self.rows, self.E)

    @property
    def coder(self) -> CodomainCoder:
        return coder_for(self.codomain)

    def contains_table(self, table: np.ndarray) -> bool:
        return howell.contains(self.rows, self.E, self.coder.encode(np.asarray(table)))

    def functions(self, limit: int = 1 << 16) -> list[FuncTable]:
        vecs = howell.span_elements(self.rows, self.E, limit)
        tables = self.coder.decode(vecs)
        return [FuncTable(self.domain, self.codomain, self.arity, t) for t in tables]

    def basis_functions(self) -> list[FuncTable]:
        tables = self.coder.decode(self.rows) if len(self.rows) else np.zeros((0, self.domain.size ** self.arity))
        return [FuncTable(self.domain, self.codomain, self.arity, t) for t in tables]

    def with_rows(self, rows: np.ndarray) -> SpanBasis:
        return SpanBasis(self.domain, self.codomain, self.arity, self.E, rows)


def span_from_tables(A: FiniteModule, B: FiniteModule, k: int, tables: np.ndarray, keep: bool = False) -> SpanBasis:
    coder = coder_for(B)
    tables = np.asarray(tables, dtype=np.int64).reshape(-1, A.size ** k)
    enc = coder.encode(tables)
    if len(enc) == 0:
        enc = np.zeros((0, A.size ** k * coder.width), dtype=np.int64)
    rows = howell.howell_form(enc, coder.E)
    return SpanBasis(A, B, k, coder.E, rows, enc if keep else None)


def span_basis(fs: Sequence[FuncTable], domain: FiniteModule | None = None, codomain: FiniteModule | None = None,
               arity: int | None = None, keep_generators: bool = True) -> SpanBasis:
    fs = list(fs)
    if fs:
        first = fs[0]
        for f in fs[1:]:
            _check_same(first, f)
        domain, codomain, arity = first.domain, first.codomain, first.arity
    if domain is None or codomain is None or arity is None:
        raise SignatureMismatch("an empty span needs an explicit signature")
    tables = np.array([f.table for f in fs], dtype=np.int64).reshape(len(fs), domain.size ** arity)
    return span_from_tables(domain, codomain, arity, tables, keep=keep_generators)


@dataclass(frozen=True)
class Membership:
    member: bool
    coefficients: tuple[int, ...] | None = None
    residue: np.ndarray | None = None

    def __bool__(self) -> bool:
        return self.member


def span_contains(S: SpanBasis, f: FuncTable, certificate: bool = True) -> Membership:
    if not same_module(f.domain, S.domain) or not same_module(f.codomain, S.codomain) or f.arity != S.arity:
        raise SignatureMismatch("function signature differs from the span")
    vec = S.coder.encode(f.table)
    residue, _ = howell.reduce_vector(S.rows, S.E, vec)
    if residue.any():
        return Membership(False, None, residue)
    if not certificate or S.generators is None:
        return Membership(True)
    if len(S.generators) == 0:
        return Membership(True, ())
    cert = howell.howell_with_transform(S.generators, S.E)
    coeffs = cert.express(vec)
    assert coeffs is not None and np.array_equal((coeffs @ S.generators) % S.E, vec % S.E)
    return Membership(True, tuple(int(c) for c in coeffs))


def full_space(A: FiniteModule, B: FiniteModule, k: int) -> SpanBasis:
    return span_from_tables(A, B, k, delta_basis_tables(A, B, k))


# ---------------------------------------------------------------- relations


@dataclass(frozen=True)
class RelationalPair:
    m: int
    rho: frozenset
    sigma: frozenset

    @cached_property
    def rho_array(self) -> np.ndarray:
        return np.array(sorted(self.rho), dtype=np.int64).reshape(-1, self.m)

    @cached_property
    def sigma_codes(self) -> np.ndarray:
        return np.array(sorted(self.sigma), dtype=np.int64).reshape(-1, self.m)


@dataclass(frozen=True)
class PolResult:
    ok: bool
    columns: tuple | None = None
    image: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def pol_check(f: FuncTable, P: RelationalPair) -> PolResult:
    """Does f map every k-tuple of rho-columns into sigma?  Reports the first failure."""
    rho = P.rho_array
    k = f.arity
    if len(rho) == 0:
        return PolResult(True)
    if len(rho) ** k > table_guard():
        raise SizeLimitExceeded(f"{len(rho)}^{k} column choices exceed the table guard")
    B = f.codomain
    sig_keys = np.unique(P.sigma_codes @ (B.size ** np.arange(P.m, dtype=np.int64))) if P.sigma else np.zeros(0)
    choice = np.array(list(itertools.product(range(len(rho)), repeat=k)), dtype=np.int64)  # (C, k)
    for s in range(0, len(choice), 1 << 16):
        ch = choice[s:s + (1 << 16)]
        args = rho[ch]  # (C, k, m)
        idx = point_index(f.domain, np.swapaxes(args, 1, 2))  # (C, m)
        vals = f.table[idx]
        keys = vals @ (B.size ** np.arange(P.m, dtype=np.int64))
        bad = np.flatnonzero(~np.isin(keys, sig_keys))
        if len(bad):
            b = bad[0]
            return PolResult(False, tuple(tuple(int(v) for v in row) for row in args[b]),
                             tuple(int(v) for v in vals[b]))
    return PolResult(True)


def subpower_generate(A: FiniteModule, m: int, gens: Iterable[Sequence[int]]) -> frozenset:
    """Closure of gens under the componentwise module operations of A^m."""
    space = PowerSpace(A, m)
    idx = [int(space.encode(np.array(g, dtype=np.int64))) for g in gens]
    sub = generate_submodule(space, idx)
    return frozenset(tuple(int(v) for v in row) for row in space.decode(sub.array))


def diagonal(B: FiniteModule, m: int = 2) -> frozenset:
    return frozenset((b,) * m for b in range(B.size))


# ---------------------------------------------------------------- serialisation


def func_to_json(f: FuncTable) -> dict:
    return {
        "domain": f.domain.spec,
        "codomain": f.codomain.spec,
        "arity": f.arity,
        "table": [int(v) for v in f.table],
    }


def func_from_json(obj: dict, domain: FiniteModule | None = None, codomain: FiniteModule | None = None) -> FuncTable:
    A = domain or module_make(obj["domain"])
    B = codomain or module_make(obj["codomain"])
    return FuncTable(A, B, int(obj["arity"]), np.array(obj["table"], dtype=np.int64))
