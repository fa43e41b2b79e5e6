"""Finite modules over finite rings, their submodule lattices and the GL_k cover of A^k.

Module elements are indices ``0..size-1`` with ``zero`` the index of 0.  Points of
``A^k`` are indexed mixed-radix with the first coordinate least significant.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np

from .config import MAX_MODULE_SIZE, SUBMODULE_LIMIT, table_guard
from .errors import AxiomViolation, HypothesisViolated, SizeLimitExceeded, SpecError
from .matrices import MatrixOverR, apply_to_points, identity, mat_inverse, mat_mul
from .rings import FiniteRing, jacobson_radical, local_decomposition, ring_make, zmod

_EXHAUSTIVE_CHECK = 1 << 24


@dataclass(frozen=True, eq=False)
class FiniteModule:
    ring: FiniteRing
    size: int
    add_table: np.ndarray
    neg_table: np.ndarray
    zero: int
    action: np.ndarray
    label: str
    elements: tuple = ()
    spec: dict | None = None

    def __repr__(self) -> str:
        return f"FiniteModule({self.label}, size={self.size})"

    def add_idx(self, x, y):
        return self.add_table[x, y]

    def act_idx(self, r, x):
        return self.action[r, x]

    def neg_idx(self, x):
        return self.neg_table[x]

    def element_label(self, i: int):
        return self.elements[i] if self.elements else i

    @cached_property
    def fingerprint(self) -> bytes:
        return b"|".join((self.ring.fingerprint, self.add_table.tobytes(), self.action.tobytes()))

    def additive_order(self, a: int) -> int:
        x, n = a, 1
        while x != self.zero:
            x = int(self.add_table[x, a])
            n += 1
        return n

    @cached_property
    def exponent(self) -> int:
        return reduce(math.lcm, (self.additive_order(a) for a in range(self.size)), 1)

    def all_elements(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class Submodule:
    """A submodule of ``parent`` (a FiniteModule or a PowerSpace), as sorted element indices."""

    parent: object
    elements: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return int(x) in self.as_set

    def __eq__(self, other) -> bool:
        return isinstance(other, Submodule) and other.parent is self.parent and other.elements == self.elements

    def __hash__(self) -> int:
        return hash((id(self.parent), self.elements))

    @cached_property
    def as_set(self) -> frozenset:
        return frozenset(self.elements)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.elements, dtype=np.int64)

    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.size, dtype=bool)
        m[self.array] = True
        return m


class PowerSpace:
    """The module A^k with vectorised operations on point indices."""

    def __init__(self, A: FiniteModule, k: int):
        if A.size ** k > table_guard():
            raise SizeLimitExceeded(f"|A|^k = {A.size}^{k} exceeds the table guard {table_guard()}")
        self.base = A
        self.k = k
        self.ring = A.ring
        self.size = A.size ** k
        self.radix = np.array([A.size ** i for i in range(k)], dtype=np.int64)
        self.zero = int(self.encode(np.full((1, k), A.zero))[0])

    def __repr__(self) -> str:
        return f"PowerSpace({self.base.label}^{self.k})"

    @cached_property
    def points(self) -> np.ndarray:
        idx = np.arange(self.size, dtype=np.int64)
        return (idx[:, None] // self.radix[None, :]) % self.base.size

    def encode(self, pts) -> np.ndarray:
        pts = np.asarray(pts, dtype=np.int64)
        return pts @ self.radix

    def decode(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        return (idx[..., None] // self.radix) % self.base.size

    def add_idx(self, x, y):
        return self.encode(self.base.add_table[self.decode(x), self.decode(y)])

    def act_idx(self, r, x):
        r = np.asarray(r)
        return self.encode(self.base.action[r[..., None], self.decode(x)])

    def neg_idx(self, x):
        return self.encode(self.base.neg_table[self.decode(x)])

    def apply_matrix(self, T: MatrixOverR, idx) -> np.ndarray:
        pts = self.decode(np.atleast_1d(idx))
        return self.encode(apply_to_points(self.base, T.array()[None], pts)[0])

    def power_of(self, sub: Submodule | Sequence[int]) -> np.ndarray:
        """Point indices of L^k for a subset L of the base module."""
        elems = np.array(sub.elements if isinstance(sub, Submodule) else sorted(sub), dtype=np.int64)
        grid = np.array(list(itertools.product(elems, repeat=self.k)), dtype=np.int64)
        return np.sort(self.encode(grid)) if len(grid) else np.zeros(0, dtype=np.int64)


def same_module(A, B) -> bool:
    return A is B or (A.size == B.size and A.fingerprint == B.fingerprint)


# ---------------------------------------------------------------- construction


def verify_module_axioms(A: FiniteModule) -> None:
    R, n = A.ring, A.size
    add, neg, act = A.add_table, A.neg_table, A.action
    idx = np.arange(n)
    if add.shape != (n, n) or neg.shape != (n,) or act.shape != (R.size, n):
        raise AxiomViolation("table shapes do not match the module size")
    for t in (add, neg, act):
        if t.min() < 0 or t.max() >= n:
            raise AxiomViolation("table entry out of range")
    if not np.array_equal(add, add.T):
        raise AxiomViolation("addition is not commutative")
    if not np.array_equal(add[A.zero], idx) or not np.all(add[idx, neg] == A.zero):
        raise AxiomViolation("zero or negation is wrong")
    rng = np.random.default_rng(0)
    if n ** 3 <= _EXHAUSTIVE_CHECK:
        if not np.array_equal(add[add[:, :, None], idx[None, None, :]], add[idx[:, None, None], add[None, :, :]]):
            raise AxiomViolation("addition is not associative")
    else:
        a, b, c = rng.integers(0, n, (3, 200000))
        if not np.array_equal(add[add[a, b], c], add[a, add[b, c]]):
            raise AxiomViolation("addition is not associative")
    if not np.array_equal(act[R.one], idx):
        raise AxiomViolation("the ring identity does not act trivially")
    ridx = np.arange(R.size)
    if R.size * n * n <= _EXHAUSTIVE_CHECK:
        lhs = act[ridx[:, None, None], add[None, :, :]]
        rhs = add[act[:, :, None], act[:, None, :]]
        if not np.array_equal(lhs, rhs):
            raise AxiomViolation("r(a+b) != ra + rb")
    else:
        r, a, b = rng.integers(0, R.size, 200000), rng.integers(0, n, 200000), rng.integers(0, n, 200000)
        if not np.array_equal(act[r, add[a, b]], add[act[r, a], act[r, b]]):
            raise AxiomViolation("r(a+b) != ra + rb")
    if R.size * R.size * n <= _EXHAUSTIVE_CHECK:
        lhs = act[R.add_table[:, :, None], idx[None, None, :]]
        rhs = add[act[:, None, :], act[None, :, :]]
        if not np.array_equal(lhs, rhs):
            raise AxiomViolation("(r+s)a != ra + sa")
        lhs = act[R.mul_table[:, :, None], idx[None, None, :]]
        rhs = act[ridx[:, None, None], act[None, :, :]]
        if not np.array_equal(lhs, rhs):
            raise AxiomViolation("(rs)a != r(sa)")
    else:
        r, s, a = rng.integers(0, R.size, 200000), rng.integers(0, R.size, 200000), rng.integers(0, n, 200000)
        if not np.array_equal(act[R.add_table[r, s], a], add[act[r, a], act[s, a]]):
            raise AxiomViolation("(r+s)a != ra + sa")
        if not np.array_equal(act[R.mul_table[r, s], a], act[r, act[s, a]]):
            raise AxiomViolation("(rs)a != r(sa)")


def _cyclic_over_zm(d: int, R: FiniteRing, label: str, spec: dict) -> FiniteModule:
    # R is Z_m with residues as indices and d | m
    idx = np.arange(d, dtype=np.int64)
    add = (idx[:, None] + idx[None, :]) % d
    action = (np.arange(R.size, dtype=np.int64)[:, None] * idx[None, :]) % d
    return FiniteModule(R, d, add, (-idx) % d, 0, action, label, tuple(range(d)), spec)


def regular_module(R: FiniteRing, spec: dict | None = None) -> FiniteModule:
    if spec is None and R.spec is not None:
        spec = {"kind": "regular", "ring": R.spec}
    action = R.mul_table.copy()
    return FiniteModule(R, R.size, R.add_table, R.neg_table, R.zero, action, R.label,
                        tuple(R.element_label(i) for i in range(R.size)), spec)


def module_product(factors: Sequence[FiniteModule], spec: dict | None = None) -> FiniteModule:
    """Direct product; elements are lexicographic tuples, first factor most significant."""
    if not factors:
        raise SpecError("a module product needs at least one factor")
    R = factors[0].ring
    for F in factors[1:]:
        if not F.ring.same_as(R):
            raise SpecError("module product factors must share the ring")
    sizes = [F.size for F in factors]
    total = math.prod(sizes)
    if total > MAX_MODULE_SIZE:
        raise SizeLimitExceeded(f"module of size {total} exceeds the cap {MAX_MODULE_SIZE}")
    digits = np.array(list(itertools.product(*[range(s) for s in sizes])), dtype=np.int64)
    strides = np.array([math.prod(sizes[i + 1:]) for i in range(len(sizes))], dtype=np.int64)
    add = np.zeros((total, total), dtype=np.int64)
    neg = np.zeros(total, dtype=np.int64)
    action = np.zeros((R.size, total), dtype=np.int64)
    zero = 0
    for i, F in enumerate(factors):
        d = digits[:, i]
        add += F.add_table[d[:, None], d[None, :]] * strides[i]
        neg += F.neg_table[d] * strides[i]
        action += F.action[:, d] * strides[i]
        zero += F.zero * strides[i]
    labels = tuple(tuple(factors[i].element_label(int(v)) for i, v in enumerate(row)) for row in digits)
    label = " x ".join(F.label for F in factors)
    if spec is None and all(F.spec is not None for F in factors):
        spec = {"kind": "product", "factors": [F.spec for F in factors]}
    return FiniteModule(R, total, add, neg, int(zero), action, label, labels, spec)


def module_make(spec) -> FiniteModule:
    """Build a module from a module-spec dictionary and verify its axioms."""
    if isinstance(spec, FiniteModule):
        return spec
    if not isinstance(spec, dict) or "kind" not in spec:
        raise SpecError(f"malformed module spec: {spec!r}")
    kind = spec["kind"]
    try:
        if kind == "regular":
            R = ring_make(spec["ring"])
            if R.size > MAX_MODULE_SIZE:
                raise SizeLimitExceeded(f"module of size {R.size} exceeds the cap {MAX_MODULE_SIZE}")
            A = regular_module(R, dict(spec))
        elif kind == "zd-over-zm":
            d, m = int(spec["d"]), int(spec["m"])
            if d < 1 or m < 1 or m % d:
                raise SpecError(f"zd-over-zm needs d | m, got d={d}, m={m}")
            if d > MAX_MODULE_SIZE:
                raise SizeLimitExceeded(f"module of size {d} exceeds the cap {MAX_MODULE_SIZE}")
            A = _cyclic_over_zm(d, zmod(m), f"Z{d} over Z{m}", dict(spec))
        elif kind == "product":
            A = module_product([module_make(f) for f in spec["factors"]], dict(spec))
        elif kind == "abelian":
            inv = [int(e) for e in spec["invariants"]]
            if not inv or min(inv) < 1:
                raise SpecError("abelian invariants must be positive integers")
            if math.prod(inv) > MAX_MODULE_SIZE:
                raise SizeLimitExceeded(f"module of size {math.prod(inv)} exceeds the cap {MAX_MODULE_SIZE}")
            R = zmod(reduce(math.lcm, inv, 1))
            parts = [_cyclic_over_zm(e, R, f"Z{e}", None) for e in inv]
            A = parts[0] if len(parts) == 1 else module_product(parts)
            A = FiniteModule(R, A.size, A.add_table, A.neg_table, A.zero, A.action,
                             "+".join(f"Z{e}" for e in inv), A.elements, dict(spec))
        else:
            raise SpecError(f"unknown module kind {kind!r}")
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"malformed module spec {spec!r}: {exc}") from exc
    verify_module_axioms(A)
    return A


# ---------------------------------------------------------------- submodules


def _sum_sets(space, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    return np.unique(space.add_idx(X[:, None], Y[None, :]))


def cyclic_submodule(space, a: int) -> np.ndarray:
    return np.unique(space.act_idx(np.arange(space.ring.size), np.int64(a)))


def generate_submodule(space, gens: Iterable[int]) -> Submodule:
    """Submodule of ``space`` generated by ``gens``: the sum of the cyclic submodules R g."""
    acc = np.array([space.zero], dtype=np.int64)
    for g in gens:
        acc = _sum_sets(space, acc, cyclic_submodule(space, int(g)))
    return Submodule(space, tuple(int(x) for x in acc))


def check_submodule(sub: Submodule) -> bool:
    space = sub.parent
    X = sub.array
    if space.zero not in sub.as_set:
        return False
    members = sub.mask()
    if not members[space.add_idx(X[:, None], X[None, :])].all():
        return False
    if not members[space.neg_idx(X)].all():
        return False
    return bool(members[space.act_idx(np.arange(space.ring.size)[:, None], X[None, :])].all())


def _canonical_key(sub: Submodule):
    return (len(sub.elements), sub.elements)


_LATTICE_CACHE: dict[bytes, list[tuple[int, ...]]] = {}


def submodules(A: FiniteModule) -> list[Submodule]:
    """All submodules, sorted by (size, elements)."""
    if A.size > SUBMODULE_LIMIT:
        raise SizeLimitExceeded(f"submodule enumeration is limited to {SUBMODULE_LIMIT} elements")
    key = A.fingerprint
    if key not in _LATTICE_CACHE:
        cyclics = {tuple(int(x) for x in cyclic_submodule(A, a)) for a in range(A.size)}
        cyclic_arrays = [np.array(c, dtype=np.int64) for c in sorted(cyclics)]
        found = {(A.zero,)}
        frontier = [(A.zero,)]
        while frontier:
            nxt = []
            for X in frontier:
                xa = np.array(X, dtype=np.int64)
                for C in cyclic_arrays:
                    S = tuple(int(v) for v in _sum_sets(A, xa, C))
                    if S not in found:
                        found.add(S)
                        nxt.append(S)
            frontier = nxt
        _LATTICE_CACHE[key] = sorted(found, key=lambda s: (len(s), s))
    return [Submodule(A, s) for s in _LATTICE_CACHE[key]]


def submodule_sum(X: Submodule, Y: Submodule) -> Submodule:
    return Submodule(X.parent, tuple(int(v) for v in _sum_sets(X.parent, X.array, Y.array)))


def submodule_meet(X: Submodule, Y: Submodule) -> Submodule:
    return Submodule(X.parent, tuple(sorted(X.as_set & Y.as_set)))


def maximal_submodules(A: FiniteModule) -> list[Submodule]:
    subs = submodules(A)
    proper = [S for S in subs if len(S) < A.size]
    return [S for S in proper if not any(len(T) > len(S) and S.as_set < T.as_set for T in proper)]


def is_distributive(A: FiniteModule) -> tuple[bool, tuple[Submodule, Submodule, Submodule] | None]:
    """Check X∩(Y+Z) = (X∩Y)+(X∩Z) for all triples; return a violating triple if any."""
    subs = submodules(A)
    n = len(subs)
    pos = {S.elements: i for i, S in enumerate(subs)}
    masks = [sum(1 << e for e in S.elements) for S in subs]
    mask_pos = {m: i for i, m in enumerate(masks)}
    join = np.zeros((n, n), dtype=np.int64)
    meet = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i, n):
            join[i, j] = join[j, i] = pos[submodule_sum(subs[i], subs[j]).elements]
            meet[i, j] = meet[j, i] = mask_pos[masks[i] & masks[j]]
    for x in range(n):
        lhs = meet[x][join]  # (y, z) -> x ∩ (y + z)
        rhs = join[meet[x][:, None], meet[x][None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            y, z = bad[0]
            return False, (subs[x], subs[int(y)], subs[int(z)])
    return True, None


def radical_submodule(A: FiniteModule) -> Submodule:
    J = np.array(jacobson_radical(A.ring).elements, dtype=np.int64)
    products = np.unique(A.action[J[:, None], np.arange(A.size)[None, :]])
    return generate_submodule(A, products)


def min_generators(A: FiniteModule) -> int:
    if A.size == 1:
        return 0
    if A.size > SUBMODULE_LIMIT:
        raise SizeLimitExceeded(f"generator search is limited to {SUBMODULE_LIMIT} elements")
    cyclics = sorted({tuple(int(x) for x in cyclic_submodule(A, a)) for a in range(A.size)}, key=len, reverse=True)
    arrays = [np.array(c, dtype=np.int64) for c in cyclics]
    for g in range(1, len(arrays) + 1):
        for combo in itertools.combinations(arrays, g):
            acc = np.array([A.zero], dtype=np.int64)
            for C in combo:
                acc = _sum_sets(A, acc, C)
            if len(acc) == A.size:
                return g
    raise AssertionError("the module is generated by all its cyclic submodules")


def quotient_module(A: FiniteModule, M: Submodule) -> tuple[FiniteModule, np.ndarray]:
    """A/M on least-index coset representatives, with the projection table."""
    cosets = A.add_table[:, M.array]  # row a: the coset a + M
    reps = cosets.min(axis=1)
    rep_list = np.unique(reps)
    index = np.full(A.size, -1, dtype=np.int64)
    index[rep_list] = np.arange(len(rep_list))
    proj = index[reps]
    add = proj[A.add_table[rep_list[:, None], rep_list[None, :]]]
    neg = proj[A.neg_table[rep_list]]
    action = proj[A.action[:, rep_list]]
    labels = tuple(A.element_label(int(r)) for r in rep_list)
    Q = FiniteModule(A.ring, len(rep_list), add, neg, int(proj[A.zero]), action,
                     f"{A.label}/<{len(M)}>", labels, None)
    return Q, proj


def submodule_as_module(sub: Submodule) -> tuple[FiniteModule, np.ndarray]:
    """A submodule of a FiniteModule as a module in its own right, with the embedding."""
    A = sub.parent
    emb = sub.array
    index = np.full(A.size, -1, dtype=np.int64)
    index[emb] = np.arange(len(emb))
    add = index[A.add_table[emb[:, None], emb[None, :]]]
    neg = index[A.neg_table[emb]]
    action = index[A.action[:, emb]]
    if (add < 0).any() or (neg < 0).any() or (action < 0).any():
        raise AxiomViolation("subset is not a submodule")
    labels = tuple(A.element_label(int(e)) for e in emb)
    S = FiniteModule(A.ring, len(emb), add, neg, int(index[A.zero]), action, f"{A.label}|{len(emb)}", labels, None)
    return S, emb


# ---------------------------------------------------------------- GL_k cover


@dataclass
class _LocalData:
    A: FiniteModule
    JA: Submodule
    proj: np.ndarray  # A -> A/JA
    idempotents: tuple[int, ...]
    residue_sizes: tuple[int, ...]  # |A_i / J A_i| per block
    field_sizes: tuple[int, ...]


def _local_data(A: FiniteModule) -> _LocalData:
    R = A.ring
    dec = local_decomposition(R)
    JA = radical_submodule(A)
    _, proj = quotient_module(A, JA)
    residue, fields = [], []
    for e, block in zip(dec.idempotents, dec.blocks):
        part = np.unique(A.action[e])
        residue.append(len(np.unique(proj[part])))
        fields.append(block.size // len(jacobson_radical(block)))
    data = _LocalData(A, JA, proj, dec.idempotents, tuple(residue), tuple(fields))
    for r, f in zip(residue, fields):
        if r not in (1, f):
            raise HypothesisViolated("A/JA has a repeated simple summand; the GL_k cover needs a distributive module")
    return data


def _classes(data: _LocalData, space: PowerSpace, idx: np.ndarray) -> set:
    return {tuple(row) for row in data.proj[space.decode(idx)]}


def find_transitive_matrix(A: FiniteModule, k: int, M: Submodule, _data: _LocalData | None = None) -> MatrixOverR:
    """An invertible T with TM inside A x (JA)^(k-1), equal to it when M/(JA)^k is isomorphic to A/JA."""
    data = _data or _local_data(A)
    R = A.ring
    space = M.parent if isinstance(M.parent, PowerSpace) else PowerSpace(A, k)
    rad_k = space.power_of(data.JA)
    if not np.isin(rad_k, M.array).all():
        raise HypothesisViolated("M does not contain (JA)^k")
    ja = data.JA.mask()
    pts = space.decode(M.array)
    eye = identity(R, k)
    T = np.zeros((k, k), dtype=np.int64)
    T[:] = R.zero
    full = True
    for i, e in enumerate(data.idempotents):
        part = A.action[e][pts]  # e_i m for every m in M
        classes = len({tuple(row) for row in data.proj[part]})
        if classes > data.residue_sizes[i]:
            raise HypothesisViolated("M/(JA)^k does not embed into A/JA")
        full = full and classes == data.residue_sizes[i]
        outside = np.flatnonzero(~ja[part].all(axis=1))
        if len(outside) == 0:
            Ti = eye.array()
        else:
            v = part[outside[0]]
            p = int(np.flatnonzero(~ja[v])[0])
            order = list(range(k))
            order[0], order[p] = order[p], order[0]
            w = v[order]
            P = np.full((k, k), R.zero, dtype=np.int64)
            for row, col in enumerate(order):
                P[row, col] = R.one
            E = eye.array().copy()
            for j in range(1, k):
                diffs = A.add_table[A.action[:, w[0]], A.neg_table[w[j]]]  # c*w_1 - w_j for every c
                c = int(np.flatnonzero(ja[diffs])[0])
                E[j, 0] = R.neg_table[c]
            Ti = mat_mul(R, MatrixOverR.from_array(E), MatrixOverR.from_array(P)).array()
        T = R.add_table[T, R.mul_table[e, Ti]]
    Tm = MatrixOverR.from_array(T)
    mat_inverse(R, Tm)  # raises unless invertible
    image = space.apply_matrix(Tm, M.array)
    target_pts = space.decode(image)
    if k > 1 and not ja[target_pts[:, 1:]].all():
        raise AssertionError("transitive matrix failed its image certificate")
    if full:
        expected = A.size * len(data.JA) ** (k - 1)
        if len(np.unique(image)) != expected:
            raise AssertionError("transitive matrix image is not A x (JA)^(k-1)")
    return Tm


@dataclass
class CoverReport:
    V: list[Submodule]
    proper: list[Submodule]
    transitive: list[MatrixOverR]
    transitivity_ok: bool
    intersections_ok: bool
    cover_ok: bool
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.transitivity_ok and self.intersections_ok and self.cover_ok


def cover_components(A: FiniteModule, k: int) -> CoverReport:
    """The components V of A^k and the three structural checks on them."""
    data = _local_data(A)
    space = PowerSpace(A, k)
    rad = generate_submodule(space, space.power_of(data.JA))
    quotient_size = A.size // len(data.JA)
    target = len(rad) * quotient_size
    covered = np.zeros(space.size, dtype=bool)
    V: list[Submodule] = []
    for a in range(space.size):
        if covered[a]:
            continue
        Ma = Submodule(space, tuple(int(x) for x in _sum_sets(space, cyclic_submodule(space, a), rad.array)))
        if len(Ma) == target:
            V.append(Ma)
            covered[Ma.array] = True
    V.sort(key=_canonical_key)
    mats = [find_transitive_matrix(A, k, M, data) for M in V]
    R = A.ring
    transitive = True
    for i, j in itertools.combinations(range(len(V)), 2):
        T = mat_mul(R, mat_inverse(R, mats[j]), mats[i])
        if tuple(np.unique(space.apply_matrix(T, V[i].array))) != V[j].elements:
            transitive = False
    proper = maximal_submodules(A) if A.size > 1 else []
    powers = [space.power_of(L) for L in proper]
    used: set[int] = set()
    intersections = True
    for i, j in itertools.combinations(range(len(V)), 2):
        inter = np.array(sorted(V[i].as_set & V[j].as_set), dtype=np.int64)
        hit = next((t for t, P in enumerate(powers) if np.isin(inter, P).all()), None)
        if hit is None:
            intersections = False
        else:
            used.add(hit)
    union = np.zeros(space.size, dtype=bool)
    for M in V:
        union[M.array] = True
    for t, P in enumerate(powers):
        fresh = P[~union[P]]
        if len(fresh):
            used.add(t)
        union[P] = True
    cover = bool(union.all())
    used_subs = [proper[t] for t in sorted(used)]
    return CoverReport(V, used_subs, mats, transitive, intersections, cover,
                       {"components": len(V), "points": space.size})
