"""Report builders for the informational and solver commands."""

from __future__ import annotations

from .clonoid import brute_force_clonoid_count, enumerate_clonoids
from .errors import SizeLimitExceeded
from .interpolation import build_identity_operator, solve_coeffs_linear
from .matrices import MatrixOverR
from .modules import (
    FiniteModule,
    cover_components,
    is_distributive,
    maximal_submodules,
    min_generators,
    radical_submodule,
    submodules,
)
from .rank import inner_rank, rank_bounded_codes
from .report import Timer, VerificationReport
from .rings import FiniteRing, ring_summary


def ring_info_report(R: FiniteRing, seed: int = 0) -> VerificationReport:
    with Timer() as tm:
        info = ring_summary(R)
    return VerificationReport("ring-info", {"ring": R.label}, "verified", None, tm.ms, seed, info)


def module_lattice_report(A: FiniteModule, cover_arity: int | None = None, seed: int = 0) -> VerificationReport:
    with Timer() as tm:
        subs = submodules(A)
        dist, triple = is_distributive(A)
        details = {
            "size": A.size,
            "submodules": [list(S.elements) for S in subs],
            "maximal": [list(S.elements) for S in maximal_submodules(A)] if A.size > 1 else [],
            "radical": list(radical_submodule(A).elements),
            "distributive": dist,
            "non_distributive_witness": None if dist else [list(S.elements) for S in triple],
            "min_generators": min_generators(A),
        }
        status = "verified"
        witness = None
        if cover_arity:
            cover = cover_components(A, cover_arity)
            details["cover"] = {
                "arity": cover_arity,
                "components": [list(V.elements) for V in cover.V],
                "transitive_matrices": [T.to_rows() for T in cover.transitive],
                "proper_used": [list(S.elements) for S in cover.proper],
                "transitivity_ok": cover.transitivity_ok,
                "intersections_ok": cover.intersections_ok,
                "cover_ok": cover.cover_ok,
            }
            if not cover.ok:
                status = "refuted"
                witness = details["cover"]
    return VerificationReport("module-lattice", {"module": A.label}, status, witness, tm.ms, seed, details)


def rank_report(R: FiniteRing, matrix: list[list[int]] | None = None, count: tuple[int, int] | None = None,
                seed: int = 0) -> VerificationReport:
    details: dict = {}
    with Timer() as tm:
        if matrix is not None:
            details["inner_rank"] = inner_rank(R, MatrixOverR.from_rows(matrix))
            details["matrix"] = matrix
        if count is not None:
            k, n = count
            details["count"] = {"arity": k, "bound": n, "matrices": int(len(rank_bounded_codes(R, k, n)))}
    return VerificationReport("rank", {"ring": R.label}, "verified", None, tm.ms, seed, details)


def interpolation_report(A: FiniteModule, k: int, n: int, E: int, method: str = "linear",
                         seed: int = 0) -> VerificationReport:
    instance = {"module": A.label, "arity": k, "rank": n, "exponent": E, "method": method}
    details: dict = {}
    witness = None
    status = "verified"
    with Timer() as tm:
        if method in ("linear", "both"):
            sol = solve_coeffs_linear(A, k, n, E, seed)
            if not sol:
                status = "infeasible"
                witness = sol.witness()
                details["linear"] = {"feasible": False, "classes": sol.classes}
            else:
                details["linear"] = {"feasible": True, "verified": sol.verified, "support": len(sol.operator),
                                     "checks": sol.checks, "operator": sol.operator.to_json()}
                if not sol.verified:
                    status = "refuted"
        if method in ("constructive", "both"):
            op = build_identity_operator(A, k, E, seed)
            details["constructive"] = {"verified": op.verified, "support": len(op.operator),
                                       "rank_bound": op.rank_bound, "checks": op.checks,
                                       "within_requested_rank": op.checks["support_rank"] <= n}
            if not op.verified:
                status = "refuted"
            elif method == "constructive" and op.checks["support_rank"] > n:
                status = "infeasible"
                witness = {"support_rank": op.checks["support_rank"], "requested": n,
                           "statement": "the constructive operator needs a larger rank bound"}
            elif status == "infeasible":
                # the constructive side succeeded where the requested bound failed
                details["constructive"]["note"] = "constructive support rank exceeds the requested bound"
    return VerificationReport("verify-interpolation", instance, status, witness, tm.ms, seed, details)


def census_report(A: FiniteModule, B: FiniteModule, n: int, oracle: bool = False, seed: int = 0) -> VerificationReport:
    instance = {"domain": A.label, "codomain": B.label, "n": n}
    with Timer() as tm:
        census = enumerate_clonoids(A, B, n)
        details = {
            "count": census.count,
            "includes_bottom": census.includes_bottom,
            "max_arity": census.max_arity,
            "clonoids": [C.to_json(with_basis=False) for C in census.clonoids],
            "completeness": census.status,
        }
        witness = None
        status = "verified" if census.status == "complete" else "bound-relative"
        if oracle:
            try:
                expected = brute_force_clonoid_count(A, B, n)
            except SizeLimitExceeded as exc:
                details["oracle"] = {"skipped": str(exc)}
            else:
                details["oracle"] = {"count": expected}
                if expected != census.count:
                    status = "refuted"
                    witness = {"census": census.count, "oracle": expected}
    return VerificationReport("enumerate-clonoids", instance, status, witness, tm.ms, seed, details)


__all__ = [
    "census_report",
    "interpolation_report",
    "module_lattice_report",
    "rank_report",
    "ring_info_report",
]
