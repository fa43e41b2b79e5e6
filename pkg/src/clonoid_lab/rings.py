"""Finite rings given by dense operation tables.

Elements are integer indices ``0..size-1``.  The built-in constructors fix the
canonical indexing: residues for ``Z_m``; lexicographic tuples (first
component most significant) for products, triangular and full matrix rings.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Sequence

import numpy as np

from .config import MAX_RING_SIZE, VERIFY_LIMIT
from .errors import AxiomViolation, NotNilpotent, SizeLimitExceeded, SpecError, Unsupported


@dataclass(frozen=True, eq=False)
class FiniteRing:
    size: int
    add_table: np.ndarray
    mul_table: np.ndarray
    neg_table: np.ndarray
    zero: int
    one: int
    label: str
    elements: tuple = ()
    spec: dict | None = None

    def __repr__(self) -> str:
        return f"FiniteRing({self.label}, size={self.size})"

    def add(self, a, b):
        return self.add_table[a, b]

    def mul(self, a, b):
        return self.mul_table[a, b]

    def neg(self, a):
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add_table[a, self.neg_table[b]]

    def element_label(self, i: int) -> Any:
        return self.elements[i] if self.elements else i

    @cached_property
    def fingerprint(self) -> bytes:
        return b"|".join((self.add_table.tobytes(), self.mul_table.tobytes(), bytes([self.zero % 256, self.one % 256])))

    def same_as(self, other: FiniteRing) -> bool:
        return self is other or (
            self.size == other.size
            and self.zero == other.zero
            and self.one == other.one
            and np.array_equal(self.add_table, other.add_table)
            and np.array_equal(self.mul_table, other.mul_table)
        )

    @cached_property
    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.mul_table, self.mul_table.T))

    @cached_property
    def unit_inverse(self) -> dict[int, int]:
        both = (self.mul_table == self.one) & (self.mul_table.T == self.one)
        inverse = {}
        for a in range(self.size):
            hits = np.flatnonzero(both[a])
            if hits.size:
                inverse[a] = int(hits[0])
        return inverse

    @cached_property
    def unit_mask(self) -> np.ndarray:
        mask = np.zeros(self.size, dtype=bool)
        mask[list(self.unit_inverse)] = True
        return mask

    def additive_order(self, a: int) -> int:
        x, n = a, 1
        while x != self.zero:
            x = int(self.add_table[x, a])
            n += 1
        return n

    @cached_property
    def characteristic(self) -> int:
        return self.additive_order(self.one)


@dataclass(frozen=True)
class RingIdeal:
    ring: FiniteRing
    elements: tuple[int, ...]
    sidedness: str = "two-sided"

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self._set

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    @property
    def is_zero(self) -> bool:
        return len(self.elements) == 1


@dataclass(frozen=True)
class LocalDecomposition:
    idempotents: tuple[int, ...]
    blocks: tuple[FiniteRing, ...]
    embeddings: tuple[np.ndarray, ...] = field(repr=False)


def _check_size(size: int) -> None:
    if size > MAX_RING_SIZE:
        raise SizeLimitExceeded(f"ring of size {size} exceeds the cap {MAX_RING_SIZE}")


def verify_ring_axioms(R: FiniteRing) -> None:
    """Exhaustive axiom check; raises :class:`AxiomViolation`."""
    s = R.size
    A, M, N = R.add_table, R.mul_table, R.neg_table
    if A.shape != (s, s) or M.shape != (s, s) or N.shape != (s,):
        raise AxiomViolation("table shapes do not match the ring size")
    idx = np.arange(s)
    if not np.array_equal(A, A.T):
        raise AxiomViolation("addition is not commutative")
    if not np.array_equal(A[R.zero], idx):
        raise AxiomViolation("zero is not additively neutral")
    if not np.all(A[idx, N] == R.zero):
        raise AxiomViolation("negation table is wrong")
    if not (np.array_equal(M[R.one], idx) and np.array_equal(M[:, R.one], idx)):
        raise AxiomViolation("one is not a two-sided identity")
    if not (np.all(M[R.zero] == R.zero) and np.all(M[:, R.zero] == R.zero)):
        raise AxiomViolation("zero does not annihilate")
    if s > VERIFY_LIMIT:
        return
    if not _assoc(A):
        raise AxiomViolation("addition is not associative")
    if not _assoc(M):
        raise AxiomViolation("multiplication is not associative")
    # a(b+c) = ab+ac and (b+c)a = ba+ca
    left = M[:, A]  # [a, b, c] -> a*(b+c)
    right = A[M[:, :, None], M[:, None, :]]  # [a, b, c] -> ab + ac
    if not np.array_equal(left, right):
        raise AxiomViolation("left distributivity fails")
    left = M.T[:, A]  # [a, b, c] -> (b+c)*a
    right = A[M.T[:, :, None], M.T[:, None, :]]
    if not np.array_equal(left, right):
        raise AxiomViolation("right distributivity fails")


def _assoc(T: np.ndarray) -> bool:
    # (a.b).c == a.(b.c) for all a, b, c
    idx = np.arange(T.shape[0])
    return bool(np.array_equal(T[T[:, :, None], idx[None, None, :]], T[idx[:, None, None], T[None, :, :]]))


def _zmod(m: int) -> FiniteRing:
    if m < 1:
        raise SpecError("zmod needs m >= 1")
    _check_size(m)
    idx = np.arange(m)
    add = (idx[:, None] + idx[None, :]) % m
    mul = (idx[:, None] * idx[None, :]) % m
    neg = (-idx) % m
    return FiniteRing(m, add, mul, neg, 0, 1 % m, f"Z{m}", tuple(range(m)), {"kind": "zmod", "m": m})


def _from_digit_rings(radix: int, length: int, mul_digits, one_digits, label: str, spec: dict) -> FiniteRing:
    """Ring on Z_radix^length with componentwise addition and the given product."""
    size = radix**length
    _check_size(size)
    digits = np.array(list(itertools.product(range(radix), repeat=length)), dtype=np.int64).reshape(size, length)
    weights = radix ** np.arange(length - 1, -1, -1)
    add_d = (digits[:, None, :] + digits[None, :, :]) % radix
    add = add_d @ weights
    neg = ((-digits) % radix) @ weights
    mul = mul_digits(digits) @ weights
    one = int(np.asarray(one_digits) @ weights)
    elements = tuple(tuple(int(v) for v in row) for row in digits)
    return FiniteRing(size, add, mul, neg, 0, one, label, elements, spec)


def _matrix_ring(p: int, d: int) -> FiniteRing:
    if p < 2 or d < 1:
        raise SpecError("matrix ring needs p >= 2 and d >= 1")
    _check_size(p ** (d * d))

    def mul_digits(digits):
        mats = digits.reshape(-1, d, d)
        prod = np.einsum("aij,bjk->abik", mats, mats) % p
        return prod.reshape(len(digits), len(digits), d * d)

    one = np.eye(d, dtype=np.int64).reshape(-1)
    return _from_digit_rings(p, d * d, mul_digits, one, f"M{d}(Z{p})", {"kind": "matrix", "p": p, "d": d})


def _triangular_ring(p: int) -> FiniteRing:
    if p < 2:
        raise SpecError("triangular ring needs p >= 2")

    def mul_digits(digits):
        a, b, c = digits[:, 0], digits[:, 1], digits[:, 2]
        aa = a[:, None] * a[None, :]
        bb = a[:, None] * b[None, :] + b[:, None] * c[None, :]
        cc = c[:, None] * c[None, :]
        return np.stack([aa, bb, cc], axis=-1) % p

    return _from_digit_rings(p, 3, mul_digits, [1, 0, 1], f"T2(Z{p})", {"kind": "triangular", "p": p})


def ring_product(factors: Sequence[FiniteRing], spec: dict | None = None) -> FiniteRing:
    if not factors:
        raise SpecError("product needs at least one factor")
    R = factors[0]
    add, mul, neg = R.add_table, R.mul_table, R.neg_table
    zero, one, size = R.zero, R.one, R.size
    elements = [(e,) for e in (R.elements or range(R.size))]
    for S in factors[1:]:
        _check_size(size * S.size)
        t = S.size
        add = (add[:, None, :, None] * t + S.add_table[None, :, None, :]).reshape(size * t, size * t)
        mul = (mul[:, None, :, None] * t + S.mul_table[None, :, None, :]).reshape(size * t, size * t)
        neg = (neg[:, None] * t + S.neg_table[None, :]).reshape(-1)
        zero, one = zero * t + S.zero, one * t + S.one
        elements = [e + (f,) for e in elements for f in (S.elements or range(S.size))]
        size *= t
    label = "x".join(F.label for F in factors)
    if spec is None:
        spec = {"kind": "product", "factors": [F.spec for F in factors]}
    return FiniteRing(size, add, mul, neg, zero, one, label, tuple(elements), spec)


def ring_make(spec: dict | FiniteRing) -> FiniteRing:
    """Build a ring from a ring-spec dictionary and verify its axioms."""
    if isinstance(spec, FiniteRing):
        return spec
    if not isinstance(spec, dict) or "kind" not in spec:
        raise SpecError(f"malformed ring spec: {spec!r}")
    kind = spec["kind"]
    try:
        if kind == "zmod":
            R = _zmod(int(spec["m"]))
        elif kind == "product":
            R = ring_product([ring_make(f) for f in spec["factors"]], spec=dict(spec))
        elif kind == "triangular":
            R = _triangular_ring(int(spec["p"]))
        elif kind == "matrix":
            R = _matrix_ring(int(spec["p"]), int(spec["d"]))
        else:
            raise SpecError(f"unknown ring kind {kind!r}")
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"malformed ring spec {spec!r}: {exc}") from exc
    verify_ring_axioms(R)
    return R


def zmod(m: int) -> FiniteRing:
    return ring_make({"kind": "zmod", "m": m})


def ring_units(R: FiniteRing) -> tuple[list[int], dict[int, int]]:
    inverse = R.unit_inverse
    return sorted(inverse), dict(inverse)


def additive_closure(R: FiniteRing, elements) -> tuple[int, ...]:
    """Subgroup of (R, +) generated by ``elements``."""
    span = {R.zero}
    frontier = [R.zero]
    gens = sorted(set(int(e) for e in elements))
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(R.add_table[x, g])
                if y not in span:
                    span.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(span))


def jacobson_radical(R: FiniteRing) -> RingIdeal:
    """J(R) = {x : 1 - r x is a unit for every r}."""
    one_minus = R.add_table[R.one, R.neg_table[R.mul_table]]  # [r, x] -> 1 - r x
    members = np.all(R.unit_mask[one_minus], axis=0)
    return RingIdeal(R, tuple(int(i) for i in np.flatnonzero(members)), "two-sided")


def ideal_product(R: FiniteRing, I, J) -> tuple[int, ...]:
    I, J = np.asarray(tuple(I)), np.asarray(tuple(J))
    products = np.unique(R.mul_table[I[:, None], J[None, :]])
    return additive_closure(R, products)


def ideal_power(R: FiniteRing, J: RingIdeal | Sequence[int], k: int) -> tuple[int, ...]:
    base = tuple(J.elements) if isinstance(J, RingIdeal) else tuple(J)
    power = base
    for _ in range(k - 1):
        power = ideal_product(R, power, base)
    return power


def nilpotence_degree(R: FiniteRing, J: RingIdeal) -> int:
    """Least n >= 1 with J^n = 0."""
    power = tuple(J.elements)
    n = 1
    while power != (R.zero,):
        nxt = ideal_product(R, power, J.elements)
        if nxt == power:
            raise NotNilpotent(f"powers of the ideal stabilise at {len(power)} elements")
        power = nxt
        n += 1
    return n


def idempotents(R: FiniteRing) -> list[int]:
    diag = R.mul_table[np.arange(R.size), np.arange(R.size)]
    return [int(e) for e in np.flatnonzero(diag == np.arange(R.size))]


def subring(R: FiniteRing, elements: Sequence[int], one: int, label: str) -> tuple[FiniteRing, np.ndarray]:
    """Ring on a multiplicatively closed additive subgroup with its own identity."""
    embed = np.array(sorted(int(e) for e in elements), dtype=np.int64)
    index = np.full(R.size, -1, dtype=np.int64)
    index[embed] = np.arange(len(embed))
    add = index[R.add_table[embed[:, None], embed[None, :]]]
    mul = index[R.mul_table[embed[:, None], embed[None, :]]]
    neg = index[R.neg_table[embed]]
    if (add < 0).any() or (mul < 0).any() or (neg < 0).any():
        raise AxiomViolation("subset is not closed under the ring operations")
    labels = tuple(R.element_label(int(e)) for e in embed)
    S = FiniteRing(len(embed), add, mul, neg, int(index[R.zero]), int(index[one]), label, labels, None)
    verify_ring_axioms(S)
    return S, embed


def is_local(R: FiniteRing) -> bool:
    """A finite ring is local iff its non-units form an additive subgroup (then equal to J)."""
    nonunits = np.flatnonzero(~R.unit_mask)
    if len(nonunits) == 0:
        return False
    sums = R.add_table[nonunits[:, None], nonunits[None, :]]
    return not R.unit_mask[sums].any()


def local_decomposition(R: FiniteRing) -> LocalDecomposition:
    if not R.is_commutative:
        raise Unsupported("local decomposition is implemented for commutative rings only")
    nonzero = [e for e in idempotents(R) if e != R.zero]
    primitive = []
    for e in nonzero:
        below = [f for f in nonzero if f != e and int(R.mul_table[e, f]) == f]
        if not below:
            primitive.append(e)
    total = R.zero
    for e in primitive:
        total = int(R.add_table[total, e])
    assert total == R.one, "primitive idempotents must sum to one"
    blocks, embeds = [], []
    for e in primitive:
        block_elems = np.unique(R.mul_table[e])
        S, emb = subring(R, block_elems, e, f"{R.label}[e={R.element_label(e)}]")
        if not is_local(S):
            raise AxiomViolation(f"block for idempotent {e} is not local")
        blocks.append(S)
        embeds.append(emb)
    return LocalDecomposition(tuple(primitive), tuple(blocks), tuple(embeds))


def ring_summary(R: FiniteRing) -> dict:
    units, _ = ring_units(R)
    J = jacobson_radical(R)
    info = {
        "label": R.label,
        "size": R.size,
        "commutative": R.is_commutative,
        "characteristic": R.characteristic,
        "units": units,
        "jacobson_radical": list(J.elements),
        "nilpotence_degree": nilpotence_degree(R, J),
    }
    if R.is_commutative:
        dec = local_decomposition(R)
        info["local_idempotents"] = list(dec.idempotents)
        info["block_sizes"] = [b.size for b in dec.blocks]
    return info


def gcd_all(values) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, int(v))
    return g
