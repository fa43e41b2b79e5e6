"""Interpolation coefficients s with f(x) = sum_r s(r) f(r x), found by linear algebra.

Testing the identity on the functions delta_a (value 1 at a, 0 elsewhere) turns
it into the finite system  sum_{r : r x = a} s(r) = [x = a]  (mod E)  over all
x, a in A^k.  Since the identity is Z-linear in f and delta functions span every
function into a group of exponent E, the codomain only matters through E.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import table_guard
from .constructive import identity_minor_operator_on
from .errors import CoprimalityError, EvenExponent, SizeLimitExceeded
from .funcspace import FuncTable, _cyclic_module, delta_basis, point_index, points
from .howell import howell_with_transform, reduce_vector
from .matrices import apply_to_points
from .modules import FiniteModule, regular_module
from .operators import MinorOperator, _canonical, is_identity_on, op_apply, support_rank, transfer_matrix
from .rank import _decode, induced_map_classes, rank_bounded_codes
from .report import Timer, VerificationReport
from .rings import jacobson_radical, nilpotence_degree, zmod

MAX_POINTS = 1 << 10


@dataclass
class CoeffSolution:
    module: FiniteModule
    arity: int
    rank_bound: int
    E: int
    operator: MinorOperator
    method: str
    verified: bool
    checks: dict = field(default_factory=dict)

    @property
    def coefficients(self) -> dict:
        return self.operator.support()

    def instance(self) -> dict:
        return {"module": self.module.label, "arity": self.arity, "rank": self.rank_bound, "exponent": self.E}


@dataclass
class Infeasible:
    module: FiniteModule
    arity: int
    rank_bound: int
    E: int
    residue_point: tuple[int, int]
    residue_value: int
    classes: int

    def __bool__(self) -> bool:
        return False

    def instance(self) -> dict:
        return {"module": self.module.label, "arity": self.arity, "rank": self.rank_bound, "exponent": self.E}

    def witness(self) -> dict:
        x, a = self.residue_point
        return {
            "equation": {"x": x, "a": a},
            "residue": self.residue_value,
            "classes": self.classes,
            "statement": "the congruence system has no solution over Z_E; Howell elimination leaves this residue",
        }


def _exponent_module(E: int) -> FiniteModule:
    return _cyclic_module(E)


def verify_operator(op: MinorOperator, A: FiniteModule, seed: int = 0, n_random: int = 100,
                    delta: bool = True) -> dict:
    """Check that op reproduces every function A^k -> Z_E.

    Three routes: the transfer matrix equals the identity, application to each delta
    function returns it, and application to seeded random functions returns them.
    """
    k, E = op.arity, op.E
    B = _exponent_module(E)
    checks = {"transfer_identity": is_identity_on(op, A)}
    P = A.size ** k
    if delta:
        ok = True
        for f in delta_basis(A, B, k):
            if not np.array_equal(op_apply(op, f).table, f.table):
                ok = False
                break
        checks["delta_basis"] = ok
    rng = np.random.default_rng(seed)
    ok = True
    for _ in range(n_random):
        f = FuncTable(A, B, k, rng.integers(0, B.size, P))
        if not np.array_equal(op_apply(op, f).table, f.table):
            ok = False
            break
    checks["random_functions"] = ok
    checks["random_count"] = n_random
    return checks


def _rank_bounded_matrices(A: FiniteModule, k: int, n: int) -> np.ndarray:
    codes = rank_bounded_codes(A.ring, k, n, table_guard())
    mats = _decode(A.ring, k, codes)
    reps, _ = induced_map_classes(A, mats)
    return mats[reps]


def solve_coeffs_linear(A: FiniteModule, k: int, n: int, E: int, seed: int = 0, verify: bool = True):
    """Solve the delta system over matrix classes of inner rank <= n.

    Matrices inducing the same map on A^k are merged (least code kept).  Returns a
    CoeffSolution, or Infeasible carrying the first equation left unsatisfied.
    """
    P = A.size ** k
    if P > MAX_POINTS:
        raise SizeLimitExceeded(f"|A|^k = {P} exceeds {MAX_POINTS}")
    mats = _rank_bounded_matrices(A, k, n)
    images = point_index(A, apply_to_points(A, mats, points(A, k)))  # (C, P)
    C = len(mats)
    cols_all = np.arange(P)[None, :] * P + images  # column (x, a) -> x * P + a
    diag = np.arange(P) * P + np.arange(P)
    used = np.union1d(np.unique(cols_all), diag)
    pos = np.searchsorted(used, cols_all)
    system = np.zeros((C, len(used)), dtype=np.int64)
    np.add.at(system, (np.repeat(np.arange(C), P), pos.reshape(-1)), 1)
    target = np.isin(used, diag).astype(np.int64)
    cert = howell_with_transform(system % E, E)
    s = cert.express(target)
    if s is None:
        residue, _ = reduce_vector(cert.basis, E, target)
        j = int(np.flatnonzero(residue)[0])
        x, a = divmod(int(used[j]), P)
        return Infeasible(A, k, n, E, (x, a), int(residue[j]), C)
    if not np.array_equal((s @ system) % E, target):
        raise AssertionError("Howell certificate did not reproduce the target")
    op = _canonical(A.ring, k, E, mats, s)
    checks = verify_operator(op, A, seed) if verify else {}
    checks["support_rank"] = support_rank(op)
    verified = all(v for key, v in checks.items() if key not in ("support_rank", "random_count"))
    verified = verified and checks["support_rank"] <= n
    return CoeffSolution(A, k, n, E, op, "linear", verified, checks)


def build_identity_operator(A: FiniteModule, k: int, E: int, seed: int = 0, verify: bool = True) -> CoeffSolution:
    """Constructive coefficients; the rank bound is the nilpotence degree of J(R)."""
    if math.gcd(A.size, E) != 1:
        raise CoprimalityError(f"gcd({A.size}, {E}) != 1")
    op = identity_minor_operator_on(A, k, E)
    n = min(k, nilpotence_degree(A.ring, jacobson_radical(A.ring)))
    checks = verify_operator(op, A, seed) if verify else {}
    checks["support_rank"] = support_rank(op)
    verified = all(v for key, v in checks.items() if key not in ("support_rank", "random_count"))
    verified = verified and checks["support_rank"] <= n
    return CoeffSolution(A, k, n, E, op, "constructive", verified, checks)


# ---------------------------------------------------------------- the binary example over Z_2


def example_operator(E: int) -> MinorOperator:
    """The 12-term unary-minor identity for binary functions on Z_2 (2 invertible mod E)."""
    if E % 2 == 0:
        raise EvenExponent(f"2 is not invertible modulo {E}")
    h = pow(2, -1, E)
    terms = [
        ([[0, 0], [0, 0]], 1),
        ([[1, 0], [0, 0]], h), ([[1, 1], [0, 0]], h), ([[0, 0], [0, 0]], -h), ([[0, 1], [0, 0]], -h),
        ([[0, 0], [0, 1]], h), ([[0, 0], [1, 1]], h), ([[0, 0], [0, 0]], -h), ([[0, 0], [1, 0]], -h),
        ([[1, 0], [1, 0]], h), ([[0, 1], [0, 1]], h), ([[0, 0], [0, 0]], -h), ([[1, 1], [1, 1]], -h),
    ]
    R = zmod(2)
    return _canonical(R, 2, E, np.array([t[0] for t in terms]), np.array([t[1] for t in terms]))


def example_direct(table, E: int) -> list[int]:
    """Right-hand side of the example identity, evaluated term by term on a table indexed x1 + 2 x2."""
    h = pow(2, -1, E)

    def f(a, b):
        return int(table[(a % 2) + 2 * (b % 2)])

    out = []
    for x2 in range(2):
        for x1 in range(2):
            v = f(0, 0) + h * (
                f(x1, 0) + f(x1 + x2, 0) - f(0, 0) - f(x2, 0)
                + f(0, x2) + f(0, x1 + x2) - f(0, 0) - f(0, x1)
                + f(x1, x1) + f(x2, x2) - f(0, 0) - f(x1 + x2, x1 + x2)
            )
            out.append(v % E)
    return out


def verify_example_binary(E: int, seed: int = 0) -> VerificationReport:
    """Check the example identity for every function Z_2^2 -> Z_E (all of them when E^4 <= 2^16)."""
    with Timer() as tm:
        op = example_operator(E)
        A = regular_module(zmod(2))
        B = _exponent_module(E)
        exhaustive = E ** 4 <= 1 << 16
        if exhaustive:
            grid = np.indices((E,) * 4).reshape(4, -1).T
        else:
            grid = np.eye(4, dtype=np.int64)
        bad = None
        for row in grid:
            direct = example_direct(row, E)
            via_op = op_apply(op, FuncTable(A, B, 2, np.array(row, dtype=np.int64))).table.tolist()
            if direct != list(row) or via_op != list(row):
                bad = {"table": list(map(int, row)), "direct": direct, "operator": via_op}
                break
        W_ok = is_identity_on(op, A)
    status = "verified" if bad is None and W_ok else "refuted"
    return VerificationReport(
        "verify-example", {"domain": "Z2", "codomain_exponent": E, "arity": 2}, status, bad, tm.ms, seed,
        {"functions_checked": int(len(grid)), "exhaustive": exhaustive, "transfer_identity": W_ok,
         "terms": 12, "support_size": len(op)},
    )


# ---------------------------------------------------------------- affine reducts of Z_m


def verify_affine_malcev(m: int, E: int, k: int, seed: int = 0) -> VerificationReport:
    """f(x, z) = sum_r s(r) f(r (x - z) + z, z) for all f: Z_m^(k+1) -> Z_E.

    x is a k-tuple and z one element; r acts on x - z = (x_i - z) coordinatewise as a
    matrix over Z_m, the translation by z turning the module identity into one for the
    affine reduct (Z_m, x - y + z).  The coefficients come from the linear solver with
    rank bound equal to the nilpotence degree of J(Z_m).
    """
    if math.gcd(m, E) != 1:
        raise CoprimalityError(f"gcd({m}, {E}) != 1")
    with Timer() as tm:
        R = zmod(m)
        A = regular_module(R)
        if m ** (k + 1) > table_guard():
            raise SizeLimitExceeded("affine check exceeds the table guard")
        n = min(k, nilpotence_degree(R, jacobson_radical(R)))
        sol = solve_coeffs_linear(A, k, n, E, seed)
        if not sol:
            return VerificationReport("verify-malcev", {"modulus": m, "exponent": E, "arity": k}, "infeasible",
                                      sol.witness(), 0, seed)
        op = sol.operator
        # W[p, q] = sum of s(r) over r with (r (x - z) + z, z) = q, p = (x, z)
        pts = np.indices((m,) * (k + 1)).reshape(k + 1, -1).T[:, ::-1]  # first coordinate fastest
        x, z = pts[:, :k], pts[:, k:]
        diff = (x - z) % m
        W = np.zeros((len(pts), len(pts)), dtype=np.int64)
        weights = m ** np.arange(k + 1)
        for r, c in zip(op.mats, op.coeffs):
            moved = (diff @ r.T + z) % m
            q = np.hstack([moved, z]) @ weights
            np.add.at(W, (np.arange(len(pts)), q), c)
        W %= E
        ok = bool(np.array_equal(W, np.eye(len(pts), dtype=np.int64)))
        # second route: random functions evaluated term by term
        rng = np.random.default_rng(seed)
        sample_ok = True
        for _ in range(20):
            f = rng.integers(0, E, len(pts))
            lhs = f
            rhs = np.zeros(len(pts), dtype=np.int64)
            for r, c in zip(op.mats, op.coeffs):
                moved = (diff @ r.T + z) % m
                rhs = (rhs + c * f[np.hstack([moved, z]) @ weights]) % E
            if not np.array_equal(lhs % E, rhs):
                sample_ok = False
                break
        witness = None
        if not ok:
            bad = np.argwhere(W != np.eye(len(pts), dtype=np.int64))[0]
            witness = {"point": pts[bad[0]].tolist(), "target": pts[bad[1]].tolist()}
    status = "verified" if ok and sample_ok else "refuted"
    return VerificationReport(
        "verify-malcev", {"modulus": m, "exponent": E, "arity": k}, status, witness, tm.ms, seed,
        {"rank_bound": n, "support_size": len(op), "support_rank": sol.checks.get("support_rank"),
         "points": len(pts), "random_functions": sample_ok},
    )
