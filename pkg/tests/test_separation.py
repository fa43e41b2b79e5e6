import itertools

import numpy as np
import pytest

from clonoid_lab.errors import HypothesisViolated, RadicalZero
from clonoid_lab.funcspace import points, subpower_generate
from clonoid_lab.separation import (
    commutative_spotcheck,
    partition,
    separation_jacobson,
    separation_noncyclic,
)
from clonoid_lab.specs import parse_module, parse_ring


def preserves(table, A, k, rel):
    """f(x) = f(y) whenever (x_i, y_i) lies in rel for every i, checked tuple by tuple."""
    idx = {tuple(p): i for i, p in enumerate(points(A, k).tolist())}
    for cols in itertools.product(sorted(rel), repeat=k):
        x = tuple(c[0] for c in cols)
        y = tuple(c[1] for c in cols)
        if table[idx[x]] != table[idx[y]]:
            return False
    return True


def unary_part(A, B, rels):
    return {t for t in itertools.product(range(B.size), repeat=A.size)
            if all(preserves(t, A, 1, r) for r in rels)}


def test_partition_is_generated_equivalence():
    labels = partition(6, [(np.array([0, 2]), np.array([2, 4]))])
    assert labels.tolist() == [0, 1, 0, 3, 0, 5]


def test_noncyclic_separation():
    A, B = parse_module("z2+z2"), parse_module("z3")
    rep = separation_noncyclic(A, B, 1)
    assert rep.status == "verified"
    part = rep.details["parts"][0]
    assert part["scan_equal"] and part["functions_scanned"] == 81
    # brute-force unary parts: U = A, sigma_ab = submodule of A^2 generated by (a, b)
    U = list(range(A.size))
    C = unary_part(A, B, [{(a, b) for a in U for b in U}])
    sigmas = [subpower_generate(A, 2, [(a, b)]) for a in U for b in U]
    D = unary_part(A, B, sigmas)
    assert C == D and len(C) == 3
    g = rep.witness["table"]
    assert not preserves(g, A, 2, {(a, b) for a in U for b in U})
    assert all(preserves(g, A, 2, s) for s in sigmas)


@pytest.mark.parametrize("ring", ["z4", "tri2"])
def test_jacobson_separation(ring):
    R = parse_ring(ring)
    rep = separation_jacobson(R, parse_module("z3"))
    assert rep.status == "verified"
    assert rep.details["unary"]["equal"]
    g = rep.witness["table"]
    I = rep.witness["I"]
    A = parse_module(ring)
    cong = {(x, int(R.add_table[x, a])) for x in range(R.size) for a in I}
    assert not preserves(g, A, 2, cong)


def test_jacobson_needs_radical():
    with pytest.raises(RadicalZero):
        separation_jacobson(parse_ring("z6"), parse_module("z5"))


def test_noncyclic_needs_large_submodule():
    with pytest.raises(HypothesisViolated):
        separation_noncyclic(parse_module("z4"), parse_module("z3"), 1)


@pytest.mark.parametrize("ring,codomain,expected", [("z6", "z5", True), ("z4", "z3", False), ("z2", "z2", False)])
def test_commutative_spotcheck(ring, codomain, expected):
    rep = commutative_spotcheck(parse_ring(ring), parse_module(codomain), max_arity=2)
    assert rep.status == "verified"
    assert rep.details["structural"] == expected == rep.details["operational"]
