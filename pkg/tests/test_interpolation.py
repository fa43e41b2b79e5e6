import itertools

import numpy as np
import pytest

from clonoid_lab.errors import CoprimalityError, EvenExponent
from clonoid_lab.funcspace import FuncTable
from clonoid_lab.interpolation import (
    Infeasible,
    build_identity_operator,
    example_direct,
    example_operator,
    solve_coeffs_linear,
    verify_affine_malcev,
    verify_example_binary,
)
from clonoid_lab.operators import is_identity_on, make_operator, op_apply, support_rank
from clonoid_lab.specs import parse_module


def reproduces_all(op, A, E):
    B = parse_module(f"z{E}")
    P = A.size ** op.arity
    for table in itertools.product(range(E), repeat=P):
        f = FuncTable(A, B, op.arity, np.array(table))
        if op_apply(op, f) != f:
            return False
    return True


@pytest.mark.parametrize("E", [3, 5, 7, 9])
def test_example_identity(E):
    rep = verify_example_binary(E)
    assert rep.status == "verified"
    assert rep.details["terms"] == 12


def test_example_direct_exhaustive_e3():
    for table in itertools.product(range(3), repeat=4):
        assert example_direct(table, 3) == list(table)


def test_example_needs_odd_exponent():
    with pytest.raises(EvenExponent):
        example_operator(4)


@pytest.mark.parametrize("spec,k,n,E", [("z2", 1, 1, 3), ("z2", 2, 1, 3), ("z2", 3, 1, 3), ("z4", 1, 2, 3),
                                        ("z4", 2, 2, 3), ("z6", 2, 1, 5), ("z3", 2, 1, 2)])
def test_linear_solver_finds_verified_coefficients(spec, k, n, E):
    sol = solve_coeffs_linear(parse_module(spec), k, n, E)
    assert sol and sol.verified
    assert sol.checks["support_rank"] <= n


def test_linear_solution_rederived_on_every_function():
    # delta sufficiency: the coefficients were only fitted on delta functions
    A = parse_module("z2")
    sol = solve_coeffs_linear(A, 2, 1, 3)
    assert reproduces_all(sol.operator, A, 3)


def test_delta_criterion_detects_failures():
    A = parse_module("z2")
    op = make_operator(A.ring, 2, 3, [([[1, 0], [0, 0]], 1), ([[0, 0], [0, 1]], 1)])
    assert not is_identity_on(op, A)
    assert not reproduces_all(op, A, 3)


def test_rank_one_infeasible_over_z4():
    res = solve_coeffs_linear(parse_module("z4"), 2, 1, 3)
    assert isinstance(res, Infeasible) and not res
    assert res.classes == 82
    w = res.witness()
    assert w["residue"] != 0


@pytest.mark.parametrize("spec,k,E", [("z2", 3, 3), ("z4", 2, 3), ("z9", 2, 2), ("z6", 2, 5)])
def test_constructive_solution(spec, k, E):
    sol = build_identity_operator(parse_module(spec), k, E)
    assert sol.verified
    assert support_rank(sol.operator) <= sol.rank_bound


def test_constructive_requires_coprime():
    with pytest.raises(CoprimalityError):
        build_identity_operator(parse_module("z4"), 2, 2)


@pytest.mark.parametrize("m,E,k", [(2, 3, 1), (4, 3, 1), (3, 2, 1), (2, 3, 2), (4, 3, 2)])
def test_affine_malcev(m, E, k):
    assert verify_affine_malcev(m, E, k).status == "verified"


def test_affine_malcev_coprime():
    with pytest.raises(CoprimalityError):
        verify_affine_malcev(2, 2, 1)
