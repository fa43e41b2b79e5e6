"""Acceptance criteria, one test each; every test records a PASS/FAIL line with its runtime."""

import contextlib
import itertools
import math
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from clonoid_lab.chain import ascending_chain
from clonoid_lab.clonoid import brute_force_clonoid_count, clonoid_compare, enumerate_clonoids, generate_from_parts
from clonoid_lab.funcspace import FuncTable
from clonoid_lab.interpolation import (
    Infeasible,
    build_identity_operator,
    solve_coeffs_linear,
    verify_affine_malcev,
    verify_example_binary,
    verify_operator,
)
from clonoid_lab.matrices import MatrixOverR, mat_inverse, mat_mul
from clonoid_lab.modules import PowerSpace, cover_components
from clonoid_lab.operators import op_apply
from clonoid_lab.rank import inner_rank
from clonoid_lab.separation import separation_jacobson, separation_noncyclic
from clonoid_lab.specs import parse_module, parse_ring

from conftest import ACCEPTANCE_LINES

pytestmark = pytest.mark.acceptance

LINEAR_INSTANCES = [("z2", k, 1, 3) for k in (1, 2, 3)] + [("z4", k, 2, 3) for k in (1, 2)] + \
    [("z6", k, 1, 5) for k in (1, 2)]


@contextlib.contextmanager
def criterion(label, limit):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < limit
        verdict = "PASS" if ok and within else "FAIL"
        line = f"{verdict} {label} ({elapsed:.2f} s, limit {limit} s)"
        ACCEPTANCE_LINES.append(line)
        print(line)
    assert within, line


def exhaustive_check(op, A, E, limit=6561):
    """Apply op to every function A^k -> Z_E when there are at most `limit` of them."""
    P = A.size ** op.arity
    if E ** P > limit:
        return None
    B = parse_module(f"z{E}")
    for table in itertools.product(range(E), repeat=P):
        f = FuncTable(A, B, op.arity, np.array(table))
        if op_apply(op, f) != f:
            return False
    return True


def test_c01_example_identity():
    with criterion("1 example identity on all 81 functions Z2^2 -> Z3", 1):
        rep = verify_example_binary(3)
        assert rep.status == "verified"
        assert rep.details["exhaustive"] and rep.details["functions_checked"] == 81


@pytest.mark.parametrize("spec,k,n,E", LINEAR_INSTANCES)
def test_c02_linear_feasible(spec, k, n, E):
    with criterion(f"2 linear solver {spec} k={k} n={n} E={E}", 10):
        A = parse_module(spec)
        sol = solve_coeffs_linear(A, k, n, E)
        assert sol and sol.verified
        assert sol.checks["transfer_identity"] and sol.checks["delta_basis"]
        assert exhaustive_check(sol.operator, A, E) in (True, None)


@pytest.mark.parametrize("spec,k,n,E", LINEAR_INSTANCES)
def test_c03_constructive_cross_check(spec, k, n, E):
    with criterion(f"3 constructive operator {spec} k={k} n={n} E={E}", 60):
        A = parse_module(spec)
        sol = build_identity_operator(A, k, E)
        checks = verify_operator(sol.operator, A, seed=1)
        assert checks["delta_basis"] and checks["transfer_identity"]
        for m in sol.operator.mats:
            assert inner_rank(A.ring, MatrixOverR.from_array(m)) <= n
        linear = solve_coeffs_linear(A, k, n, E)
        for f in (FuncTable(A, parse_module(f"z{E}"), k, np.random.default_rng(s).integers(0, E, A.size ** k))
                  for s in range(5)):
            assert op_apply(sol.operator, f) == op_apply(linear.operator, f) == f


def test_c04_negative_control():
    with criterion("4 linear solver infeasible for Z4 k=2 n=1 E=3", 10):
        res = solve_coeffs_linear(parse_module("z4"), 2, 1, 3)
        assert isinstance(res, Infeasible)
        assert res.witness()["residue"] != 0


def test_c05_chain_z2():
    with criterion("5 ascending chain Z2 -> Z2 up to k=4", 30):
        rep = ascending_chain(parse_module("z2"), parse_module("z2"), 4)
        assert rep.status == "verified"
        assert [s["k"] for s in rep.details["steps"]] == [2, 3, 4]
        assert all(not s["f_k_in_previous"] and s["next_size"] > s["previous_size"] for s in rep.details["steps"])


def test_c05_chain_z4_z2():
    with criterion("5 ascending chain Z4 -> Z2 up to k=3", 30):
        rep = ascending_chain(parse_module("z4"), parse_module("z2"), 3)
        assert rep.status == "verified"
        assert [s["k"] for s in rep.details["steps"]] == [2, 3]
        assert all(not s["f_k_in_previous"] for s in rep.details["steps"])


def test_c06_noncyclic_separation():
    with criterion("6 noncyclic separation Z2^2 -> Z3, n=1", 10):
        rep = separation_noncyclic(parse_module("z2+z2"), parse_module("z3"), 1)
        assert rep.status == "verified"
        unary = rep.details["parts"][0]
        assert unary["scan_equal"] and unary["partition_equal"] and unary["functions_scanned"] == 3 ** 4
        assert rep.witness["in_D"] and not rep.witness["in_C"]


@pytest.mark.parametrize("ring", ["z4", "tri2"])
def test_c07_jacobson_separation(ring):
    with criterion(f"7 radical separation R={ring} -> Z3", 30):
        rep = separation_jacobson(parse_ring(ring), parse_module("z3"))
        assert rep.status == "verified"
        assert rep.details["unary"]["equal"]
        assert rep.witness["in_D"] and not rep.witness["in_C"]


def test_c08_cover_components():
    with criterion("8 cover of Z4^2 by three components", 5):
        A = parse_module("z4")
        cover = cover_components(A, 2)
        assert len(cover.V) == 3 and cover.ok
        R = A.ring
        space = PowerSpace(A, 2)
        for (Vi, Ti), (Vj, Tj) in itertools.permutations(zip(cover.V, cover.transitive), 2):
            T = mat_mul(R, mat_inverse(R, Tj), Ti)
            assert set(space.apply_matrix(T, Vi.array).tolist()) == Vj.as_set
        rad = set(space.power_of([0, 2]).tolist())
        for Vi, Vj in itertools.combinations(cover.V, 2):
            assert Vi.as_set & Vj.as_set <= rad
        covered = set(rad)
        for V in cover.V:
            covered |= V.as_set
        assert covered == set(range(16))


def test_c09_census():
    with criterion("9 clonoid census Z2 -> Z3 and Z3 -> Z2", 10):
        census = enumerate_clonoids(parse_module("z2"), parse_module("z3"), 1)
        assert census.count == 5 and census.includes_bottom and census.clonoids[0].empty
        for C in census.clonoids[1:]:
            assert C.max_arity == 2
            assert clonoid_compare(C, generate_from_parts(C)) == "equal"
        A, B = parse_module("z3"), parse_module("z2")
        expected = brute_force_clonoid_count(A, B, 1)
        assert enumerate_clonoids(A, B, 1).count == expected


@pytest.mark.parametrize("m", [2, 4])
def test_c10_affine_malcev(m):
    with criterion(f"10 affine identity over Z{m}, E=3, k=1", 30):
        rep = verify_affine_malcev(m, 3, 1)
        assert rep.status == "verified"


def test_c11_property_suites():
    # the property suites live in their own modules; run them in a fresh interpreter and time them
    with criterion("11 property suites (Howell, minors, rank, delta sufficiency)", 300):
        here = Path(__file__).parent
        files = [str(here / name) for name in
                 ("test_howell.py", "test_funcspace.py", "test_rank.py", "test_interpolation.py")]
        proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *files],
                              capture_output=True, text=True, cwd=here.parent)
        assert proc.returncode == 0, proc.stdout[-2000:]
