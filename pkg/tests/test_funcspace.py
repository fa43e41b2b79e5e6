import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clonoid_lab.errors import DimensionMismatch
from clonoid_lab.funcspace import (
    FuncTable,
    RelationalPair,
    coder_for,
    delta_basis,
    diagonal,
    func_from_json,
    func_minor,
    func_to_json,
    full_space,
    hom_group,
    is_additive,
    point_index,
    points,
    pol_check,
    span_basis,
    span_contains,
    subpower_generate,
)
from clonoid_lab.matrices import MatrixOverR, mat_mul
from clonoid_lab.modules import module_make


def minor_by_hand(f, M):
    """x -> f(M x), evaluated coordinate by coordinate."""
    A = f.domain
    out = []
    for x in points(A, M.cols).tolist():
        y = []
        for i in range(M.rows):
            acc = A.zero
            for j in range(M.cols):
                acc = A.add_table[acc, A.action[M[i, j], x[j]]]
            y.append(int(acc))
        out.append(f(*y))
    return np.array(out)


def test_points_order(Z):
    pts = points(Z(3), 2)
    assert pts[:4].tolist() == [[0, 0], [1, 0], [2, 0], [0, 1]]
    assert np.array_equal(point_index(Z(3), pts), np.arange(9))


def test_minor_composition_exhaustive_over_z2(Z):
    A = Z(2)
    mats = [MatrixOverR.from_array(np.array(e).reshape(2, 2)) for e in itertools.product(range(2), repeat=4)]
    for table in itertools.product(range(2), repeat=4):
        f = FuncTable(A, A, 2, np.array(table))
        for M in mats:
            fm = func_minor(f, M)
            assert np.array_equal(fm.table, minor_by_hand(f, M))
            for N in mats[::3]:
                assert func_minor(fm, N) == func_minor(f, mat_mul(A.ring, M, N))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_minor_composition_sampled_over_z4(seed):
    A = module_make({"kind": "regular", "ring": {"kind": "zmod", "m": 4}})
    B = module_make({"kind": "regular", "ring": {"kind": "zmod", "m": 3}})
    rng = np.random.default_rng(seed)
    f = FuncTable(A, B, 2, rng.integers(0, 3, 16))
    M = MatrixOverR.from_array(rng.integers(0, 4, (2, 3)))
    N = MatrixOverR.from_array(rng.integers(0, 4, (3, 2)))
    assert np.array_equal(func_minor(f, M).table, minor_by_hand(f, M))
    assert func_minor(func_minor(f, M), N) == func_minor(f, mat_mul(A.ring, M, N))


@pytest.mark.parametrize("m,n", [(4, 2), (6, 4), (3, 5), (12, 8), (9, 3)])
def test_hom_counts_between_cyclic_groups(m, n, Z):
    homs = hom_group(Z(m), Z(n))
    assert len(homs) == math.gcd(m, n)
    assert all(is_additive(h) for h in homs)


def test_hom_counts_klein(Z, klein):
    assert len(hom_group(klein, Z(4))) == 4
    assert len(hom_group(Z(4), klein)) == 4
    assert len(hom_group(klein, klein)) == 16


def test_hom_group_brute_force(Z):
    A, B = Z(6), Z(4)
    brute = [t for t in itertools.product(range(4), repeat=6)
             if all(t[(x + y) % 6] == (t[x] + t[y]) % 4 for x in range(6) for y in range(6))]
    assert sorted(tuple(h.table.tolist()) for h in hom_group(A, B)) == sorted(brute)


@pytest.mark.parametrize("spec", [{"kind": "abelian", "invariants": [2, 4]},
                                  {"kind": "abelian", "invariants": [3, 3]},
                                  {"kind": "regular", "ring": {"kind": "zmod", "m": 12}}])
def test_coder_is_injective_homomorphism(spec):
    B = module_make(spec)
    coder = coder_for(B)
    tables = np.arange(B.size)[None, :]
    codes = coder.encode(tables).reshape(B.size, -1)
    assert len({tuple(r) for r in codes.tolist()}) == B.size
    for x in range(B.size):
        for y in range(B.size):
            assert np.array_equal((codes[x] + codes[y]) % coder.E, codes[B.add_table[x, y]])
    assert np.array_equal(coder.decode(coder.encode(tables)), tables)


def test_delta_basis_spans_everything(Z, klein):
    for A, B, k in ((Z(2), Z(3), 2), (Z(3), klein, 1)):
        S = span_basis(delta_basis(A, B, k), A, B)
        assert S.size == B.size ** (A.size ** k)
        assert S == full_space(A, B, k)


def test_span_membership_certificate(Z):
    A, B = Z(2), Z(4)
    f = FuncTable(A, B, 1, np.array([1, 0]))
    g = FuncTable(A, B, 1, np.array([0, 2]))
    S = span_basis([f, g])
    assert span_contains(S, FuncTable(A, B, 1, np.array([3, 2])))
    assert not span_contains(S, FuncTable(A, B, 1, np.array([0, 1])))


def test_pol_check(Z):
    A, B = Z(4), Z(2)
    rho = subpower_generate(A, 2, [(0, 2)])  # congruence mod 2 restricted to the pair (0, 2)
    P = RelationalPair(2, rho, diagonal(B))
    constant_on_cosets = FuncTable(A, B, 1, np.array([1, 0, 1, 0]))
    assert pol_check(constant_on_cosets, P)
    res = pol_check(FuncTable(A, B, 1, np.array([1, 0, 0, 0])), P)
    assert not res and res.columns is not None


def test_json_roundtrip_and_shape_checks(Z):
    f = FuncTable(Z(3), Z(2), 2, np.arange(9) % 2)
    assert func_from_json(func_to_json(f)) == f
    with pytest.raises(DimensionMismatch):
        FuncTable(Z(3), Z(2), 2, np.zeros(8, dtype=int))
    with pytest.raises(DimensionMismatch):
        FuncTable(Z(3), Z(2), 1, np.array([0, 1, 2]))
