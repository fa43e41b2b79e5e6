import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clonoid_lab.matrices import MatrixOverR, mat_mul
from clonoid_lab.rank import gaussian_rank_mod_p, inner_rank, matrices_of_rank_at_most, rank_bounded_codes
from clonoid_lab.rings import ring_make, zmod


def product_codes(m, k, r):
    """Codes of every product B C with B k x r, C r x k over Z_m, by plain integer arithmetic."""
    out = set()
    for b in itertools.product(range(m), repeat=k * r):
        for c in itertools.product(range(m), repeat=r * k):
            entries = [sum(b[i * r + t] * c[t * k + j] for t in range(r)) % m for i in range(k) for j in range(k)]
            code = 0
            for e in entries:
                code = code * m + e
            out.add(code)
    return out


@pytest.mark.parametrize("m,k,r", [(2, 2, 1), (3, 2, 1), (4, 2, 1), (6, 2, 1), (2, 3, 1), (2, 3, 2)])
def test_rank_bounded_codes_match_product_oracle(m, k, r):
    assert set(rank_bounded_codes(zmod(m), k, r).tolist()) == product_codes(m, k, r)


@pytest.mark.parametrize("m,k,expected", [(2, 2, 10), (3, 2, 33), (4, 2, 82)])
def test_rank_one_counts(m, k, expected):
    assert len(rank_bounded_codes(zmod(m), k, 1)) == expected


def test_examples():
    Z4 = zmod(4)
    assert inner_rank(Z4, MatrixOverR.from_rows([[2, 0], [0, 2]])) == 2
    assert inner_rank(Z4, MatrixOverR.from_rows([[2, 2], [2, 2]])) == 1
    assert inner_rank(Z4, MatrixOverR.from_rows([[0, 0], [0, 0]])) == 0
    assert inner_rank(Z4, MatrixOverR.from_rows([[1, 2], [2, 0]])) == 1  # (1, 2)^T (1, 2)
    assert inner_rank(Z4, MatrixOverR.from_rows([[1, 0], [0, 2]])) == 2
    Z6 = zmod(6)
    # diag(2, 3) factors through one coordinate since 2 and 3 are orthogonal up to units
    assert inner_rank(Z6, MatrixOverR.from_rows([[2, 0], [0, 3]])) == 1


def test_noncommutative_ring():
    R = ring_make({"kind": "triangular", "p": 2})
    mats = matrices_of_rank_at_most(R, 2, 1)
    assert all(inner_rank(R, m) <= 1 for m in mats[::25])
    assert len(mats) < R.size ** 4


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.lists(st.integers(0, 4), min_size=9, max_size=9))
def test_inner_rank_equals_gaussian_rank_over_fields(p, entries):
    arr = np.array(entries).reshape(3, 3) % p
    assert inner_rank(zmod(p), MatrixOverR.from_array(arr)) == gaussian_rank_mod_p(p, arr)


def test_submultiplicative_on_seeded_pairs():
    R = zmod(4)
    rng = np.random.default_rng(7)
    for _ in range(200):
        a = MatrixOverR.from_array(rng.integers(0, 4, (2, 2)))
        b = MatrixOverR.from_array(rng.integers(0, 4, (2, 2)))
        ab = inner_rank(R, mat_mul(R, a, b))
        assert ab <= min(inner_rank(R, a), inner_rank(R, b))


def test_gaussian_oracle_sanity():
    assert gaussian_rank_mod_p(2, np.array([[1, 1], [1, 1]])) == 1
    assert gaussian_rank_mod_p(3, np.eye(3, dtype=int)) == 3
