import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clonoid_lab.errors import SpecError
from clonoid_lab.modules import (
    PowerSpace,
    cover_components,
    generate_submodule,
    is_distributive,
    maximal_submodules,
    min_generators,
    module_make,
    quotient_module,
    radical_submodule,
    same_module,
    submodule_meet,
    submodule_sum,
    submodules,
    verify_module_axioms,
)


def brute_submodules(A):
    """Every subset containing 0 closed under + and the ring action."""
    others = [a for a in range(A.size) if a != A.zero]
    found = set()
    for mask in range(1 << len(others)):
        S = {A.zero} | {others[i] for i in range(len(others)) if mask >> i & 1}
        if all(A.add_table[x, y] in S for x in S for y in S) and \
                all(A.action[r, x] in S for r in range(A.ring.size) for x in S):
            found.add(frozenset(S))
    return found


SPECS = ["z4", "z6", "z8", "z2+z2", "z2^3", "z2/z4", "tri2"]


@pytest.mark.parametrize("spec", SPECS)
def test_submodules_match_subset_oracle(spec):
    from clonoid_lab.specs import parse_module
    A = parse_module(spec)
    assert {S.as_set for S in submodules(A)} == brute_submodules(A)


@pytest.mark.parametrize("spec,count", [("z4", 3), ("z2+z2", 5), ("z6", 4), ("z2^3", 16), ("z8", 4)])
def test_submodule_counts(spec, count):
    from clonoid_lab.specs import parse_module
    assert len(submodules(parse_module(spec))) == count


def test_module_axioms_hold(Z, klein):
    for A in (Z(4), Z(6), klein):
        verify_module_axioms(A)


def test_distributivity(Z, klein):
    assert is_distributive(Z(12))[0]
    ok, triple = is_distributive(klein)
    assert not ok and len(triple) == 3


def test_min_generators(Z, klein):
    assert min_generators(Z(12)) == 1
    assert min_generators(klein) == 2
    assert min_generators(module_make({"kind": "abelian", "invariants": [2, 2, 2]})) == 3


def test_radical_and_maximal(Z):
    A = Z(12)
    assert radical_submodule(A).as_set == frozenset({0, 6})
    assert sorted(len(M) for M in maximal_submodules(A)) == [4, 6]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 100), st.integers(0, 100), st.integers(0, 100))
def test_lattice_laws_on_z2_cubed(i, j, l):
    A = module_make({"kind": "abelian", "invariants": [2, 2, 2]})
    subs = submodules(A)
    X, Y, W = subs[i % len(subs)], subs[j % len(subs)], subs[l % len(subs)]
    assert submodule_meet(X, Y).as_set == X.as_set & Y.as_set
    S = submodule_sum(X, Y).as_set
    assert S == {int(A.add_table[x, y]) for x in X.as_set for y in Y.as_set}
    assert submodule_sum(X, submodule_meet(X, Y)).as_set == X.as_set
    if X.as_set <= W.as_set:
        # modular law
        lhs = submodule_meet(submodule_sum(X, Y), W).as_set
        rhs = submodule_sum(X, submodule_meet(Y, W)).as_set
        assert lhs == rhs


def test_generate_is_least_submodule(Z):
    A = Z(12)
    assert generate_submodule(A, [8]).as_set == frozenset({0, 4, 8})
    assert generate_submodule(A, [4, 6]).as_set == frozenset(range(0, 12, 2))


def test_quotient(Z):
    A = Z(12)
    M = generate_submodule(A, [4])
    Q, proj = quotient_module(A, M)
    assert Q.size == 4
    for x in range(12):
        for y in range(12):
            assert proj[A.add_table[x, y]] == Q.add_table[proj[x], proj[y]]


def test_power_space_roundtrip(Z):
    S = PowerSpace(Z(3), 3)
    pts = S.points
    assert np.array_equal(S.decode(S.encode(pts)), pts)
    assert np.array_equal(pts[1], [1, 0, 0])


@pytest.mark.parametrize("spec,k", [("z4", 2), ("z2", 3), ("z6", 2), ("z8", 2), ("z12", 2)])
def test_cover_components(spec, k):
    from clonoid_lab.specs import parse_module
    A = parse_module(spec)
    cover = cover_components(A, k)
    assert cover.ok
    space = PowerSpace(A, k)
    union = set()
    for V in cover.V:
        union |= V.as_set
    for L in cover.proper:
        union |= set(space.power_of(L).tolist())
    assert union == set(range(space.size))
    # components are exactly the submodules a R + (JA)^k of full size, by direct generation
    JA = radical_submodule(A)
    rad = set(space.power_of(JA).tolist())
    target = len(rad) * A.size // len(JA)
    direct = set()
    for a in range(space.size):
        Ma = generate_submodule(space, [a] + sorted(rad))
        if len(Ma) == target:
            direct.add(Ma.as_set)
    assert direct == {V.as_set for V in cover.V}


def test_cover_hypotheses_enforced(klein, tri2):
    from clonoid_lab.errors import HypothesisViolated, Unsupported
    from clonoid_lab.modules import regular_module
    with pytest.raises(HypothesisViolated):
        cover_components(klein, 2)
    with pytest.raises(Unsupported):
        cover_components(regular_module(tri2), 2)


def test_same_module_and_specs(Z):
    assert same_module(Z(4), module_make({"kind": "regular", "ring": {"kind": "zmod", "m": 4}}))
    assert not same_module(Z(4), module_make({"kind": "abelian", "invariants": [2, 2]}))
    with pytest.raises(SpecError):
        module_make({"kind": "mystery"})


def test_abelian_group_is_sum_of_cycles():
    A = module_make({"kind": "abelian", "invariants": [2, 4]})
    assert A.size == 8
    assert A.exponent == 4
    orders = sorted(A.additive_order(a) for a in range(8))
    assert orders == sorted(
        max(1, np.lcm(2 // np.gcd(x, 2), 4 // np.gcd(y, 4))) for x, y in itertools.product(range(2), range(4)))
