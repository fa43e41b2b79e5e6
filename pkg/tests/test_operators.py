import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clonoid_lab.errors import SignatureMismatch
from clonoid_lab.funcspace import FuncTable, delta, func_minor
from clonoid_lab.matrices import MatrixOverR, mat_inverse
from clonoid_lab.operators import (
    identity_operator,
    is_identity_on,
    make_operator,
    op_apply,
    op_combine_difference,
    op_compose,
    op_conjugate,
    reduce_by_map,
    support_rank,
    transfer_matrix,
    zero_operator,
)
from clonoid_lab.specs import parse_module


def apply_by_hand(op, f):
    """sum_r s(r) f(r x) with integer arithmetic in a cyclic codomain."""
    n = f.codomain.size
    total = np.zeros(len(f.table), dtype=np.int64)
    for M, c in op.support().items():
        total = (total + c * func_minor(f, M).table) % n
    return total


def random_operator(rng, R, k, E, terms):
    mats = rng.integers(0, R.size, (terms, k, k))
    return make_operator(R, k, E, [(m, int(rng.integers(1, E))) for m in mats])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_compose_law_on_random_functions(seed):
    A, B = parse_module("z4"), parse_module("z3")
    rng = np.random.default_rng(seed)
    d1 = random_operator(rng, A.ring, 2, 3, 4)
    d2 = random_operator(rng, A.ring, 2, 3, 4)
    f = FuncTable(A, B, 2, rng.integers(0, 3, 16))
    assert op_apply(op_compose(d1, d2), f) == op_apply(d1, op_apply(d2, f))
    assert np.array_equal(op_apply(d1, f).table, apply_by_hand(d1, f))
    assert op_apply(d1 + d2, f) == op_apply(d1, f) + op_apply(d2, f)


def test_identity_and_zero():
    A, B = parse_module("z3"), parse_module("z2")
    R = A.ring
    f = FuncTable(A, B, 2, np.arange(9) % 2)
    assert op_apply(identity_operator(R, 2, 2), f) == f
    assert op_apply(zero_operator(R, 2, 2), f).is_zero()
    assert is_identity_on(identity_operator(R, 2, 2), A)


def test_canonical_form_merges_terms():
    R = parse_module("z2").ring
    op = make_operator(R, 1, 3, [([[1]], 1), ([[1]], 2), ([[0]], 1)])
    assert len(op) == 1
    assert op.support() == {MatrixOverR.from_rows([[0]]): 1}


def test_transfer_matrix_matches_delta_images():
    A, B = parse_module("z3"), parse_module("z2")
    rng = np.random.default_rng(1)
    op = random_operator(rng, A.ring, 2, 2, 6)
    W = transfer_matrix(op, A)
    for a in range(9):
        image = op_apply(op, delta(A, B, 2, a, 1)).table
        assert np.array_equal(image, W[:, a] % 2)


def test_combine_difference_reproduces():
    # if t reproduces f - d f then t + d - t d reproduces f; check with t the identity
    A, B = parse_module("z4"), parse_module("z3")
    R = A.ring
    rng = np.random.default_rng(3)
    d = random_operator(rng, R, 1, 3, 3)
    combined = op_combine_difference(d, identity_operator(R, 1, 3))
    assert is_identity_on(combined, A)


def test_conjugate_formula():
    A, B = parse_module("z4"), parse_module("z3")
    R = A.ring
    rng = np.random.default_rng(11)
    d = random_operator(rng, R, 2, 3, 5)
    T = MatrixOverR.from_rows([[1, 1], [0, 1]])
    T_inv = mat_inverse(R, T)
    f = FuncTable(A, B, 2, rng.integers(0, 3, 16))
    lhs = op_apply(op_conjugate(d, T, T_inv), f)
    rhs = func_minor(op_apply(d, func_minor(f, T_inv)), T)
    assert lhs == rhs


def test_exhaustive_binary_functions_z3():
    # all 3^4 functions Z2^2 -> Z3 under a random operator, against the hand evaluation
    A, B = parse_module("z2"), parse_module("z3")
    rng = np.random.default_rng(9)
    op = random_operator(rng, A.ring, 2, 3, 5)
    for table in itertools.product(range(3), repeat=4):
        f = FuncTable(A, B, 2, np.array(table))
        assert np.array_equal(op_apply(op, f).table, apply_by_hand(op, f))


def test_support_rank_and_reduce():
    R = parse_module("z4").ring
    op = make_operator(R, 2, 3, [([[2, 0], [0, 2]], 1), ([[1, 1], [1, 1]], 1)])
    assert support_rank(op) == 2
    A = parse_module("z2/z4")
    merged = reduce_by_map(make_operator(R, 1, 3, [([[1]], 1), ([[3]], 1)]), A)
    assert len(merged) == 1 and merged.support() == {MatrixOverR.from_rows([[1]]): 2}


def test_signature_checks():
    R = parse_module("z2").ring
    with pytest.raises(SignatureMismatch):
        identity_operator(R, 1, 3) + identity_operator(R, 2, 3)
    f = FuncTable(parse_module("z2"), parse_module("z4"), 1, np.array([0, 1]))
    with pytest.raises(SignatureMismatch):
        op_apply(identity_operator(R, 1, 3), f)
