"""Command-line front end.  Each subcommand parses its instance and hands it to the library."""

from __future__ import annotations

import argparse
import json
import os
import shlex
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import commands
from .chain import ascending_chain
from .errors import ClonoidLabError, SpecError
from .interpolation import verify_affine_malcev, verify_example_binary
from .report import VerificationReport
from .separation import commutative_spotcheck, separation_jacobson, separation_noncyclic
from .specs import parse_module, parse_ring

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


@dataclass
class CliConfig:
    seed: int = 0
    max_arity: int = 3
    table_guard: int | None = None
    parallelism: int = 1
    report_path: str | None = None

    def __post_init__(self):
        if self.table_guard is not None and self.table_guard <= 0:
            raise SpecError("--table-guard must be positive")
        if self.parallelism < 1:
            raise SpecError("--parallelism must be at least 1")
        if self.max_arity < 1:
            raise SpecError("--max-arity must be at least 1")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise SpecError(message)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-arity", type=int, default=3)
    p.add_argument("--table-guard", type=int, default=None)
    p.add_argument("--parallelism", type=int, default=1)
    p.add_argument("--report", default=None, help="write the JSON report here instead of stdout")
    p.add_argument("--spec", default=None, help="JSON file whose keys fill in instance options")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="clonoid-lab", description="Exact computations with clonoids between finite modules.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ring-info", parents=[common])
    p.add_argument("--ring")

    p = sub.add_parser("module-lattice", parents=[common])
    p.add_argument("--module")
    p.add_argument("--cover-arity", type=int, default=None)

    p = sub.add_parser("rank", parents=[common])
    p.add_argument("--ring")
    p.add_argument("--matrix", help='rows separated by ";", entries by ",", e.g. "1,0;0,2"')
    p.add_argument("--count", nargs=2, type=int, metavar=("K", "N"))

    p = sub.add_parser("verify-interpolation", parents=[common])
    p.add_argument("--module")
    p.add_argument("--arity", type=int)
    p.add_argument("--rank", type=int)
    p.add_argument("--exponent", type=int)
    p.add_argument("--method", choices=["linear", "constructive", "both"], default="linear")

    p = sub.add_parser("verify-example", parents=[common])
    p.add_argument("--exponent", type=int, default=3)

    p = sub.add_parser("verify-malcev", parents=[common])
    p.add_argument("--modulus", type=int)
    p.add_argument("--exponent", type=int)
    p.add_argument("--arity", type=int, default=1)

    p = sub.add_parser("chain", parents=[common])
    p.add_argument("--domain")
    p.add_argument("--codomain")
    p.add_argument("--max-k", type=int, default=4)

    p = sub.add_parser("separate", parents=[common])
    p.add_argument("kind", choices=["noncyclic", "jacobson"])
    p.add_argument("--domain", help="module (noncyclic)")
    p.add_argument("--ring", help="ring (jacobson)")
    p.add_argument("--codomain")
    p.add_argument("--n", type=int, default=1)

    p = sub.add_parser("enumerate-clonoids", parents=[common])
    p.add_argument("--domain")
    p.add_argument("--codomain")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--oracle", action="store_true", help="also run the exhaustive subset oracle")

    p = sub.add_parser("spotcheck-commutative", parents=[common])
    p.add_argument("--ring")
    p.add_argument("--codomain")

    p = sub.add_parser("batch", parents=[common])
    p.add_argument("manifest", help="file with one invocation per line, or a JSON list of argument lists")
    return parser


def _fill_from_spec(args: argparse.Namespace) -> None:
    if not args.spec:
        return
    try:
        data = json.loads(Path(args.spec).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot load --spec {args.spec}: {exc}") from exc
    if not isinstance(data, dict):
        raise SpecError("--spec must hold a JSON object")
    for key, value in data.items():
        attr = key.replace("-", "_")
        if getattr(args, attr, None) is None:
            setattr(args, attr, json.dumps(value) if isinstance(value, dict) else value)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise SpecError("missing option(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _parse_matrix(text: str) -> list[list[int]]:
    try:
        return [[int(v) for v in row.split(",")] for row in text.split(";")]
    except ValueError as exc:
        raise SpecError(f"bad matrix {text!r}") from exc


def dispatch(args: argparse.Namespace) -> VerificationReport:
    seed = args.seed
    c = args.command
    if c == "ring-info":
        _need(args, "ring")
        return commands.ring_info_report(parse_ring(args.ring), seed)
    if c == "module-lattice":
        _need(args, "module")
        return commands.module_lattice_report(parse_module(args.module), args.cover_arity, seed)
    if c == "rank":
        _need(args, "ring")
        matrix = _parse_matrix(args.matrix) if args.matrix else None
        return commands.rank_report(parse_ring(args.ring), matrix, tuple(args.count) if args.count else None, seed)
    if c == "verify-interpolation":
        _need(args, "module", "arity", "rank", "exponent")
        return commands.interpolation_report(parse_module(args.module), args.arity, args.rank, args.exponent,
                                             args.method, seed)
    if c == "verify-example":
        return verify_example_binary(args.exponent, seed)
    if c == "verify-malcev":
        _need(args, "modulus", "exponent")
        return verify_affine_malcev(args.modulus, args.exponent, args.arity, seed)
    if c == "chain":
        _need(args, "domain", "codomain")
        return ascending_chain(parse_module(args.domain), parse_module(args.codomain), args.max_k, seed)
    if c == "separate":
        _need(args, "codomain")
        if args.kind == "noncyclic":
            _need(args, "domain")
            return separation_noncyclic(parse_module(args.domain), parse_module(args.codomain), args.n, seed)
        _need(args, "ring")
        return separation_jacobson(parse_ring(args.ring), parse_module(args.codomain), seed)
    if c == "enumerate-clonoids":
        _need(args, "domain", "codomain")
        return commands.census_report(parse_module(args.domain), parse_module(args.codomain), args.n,
                                      args.oracle, seed)
    if c == "spotcheck-commutative":
        _need(args, "ring", "codomain")
        return commutative_spotcheck(parse_ring(args.ring), parse_module(args.codomain), seed, args.max_arity)
    raise SpecError(f"unknown command {c!r}")


def exit_code(report: VerificationReport) -> int:
    # infeasible is a solver verdict, reported and exited with 0
    return EXIT_NEGATIVE if report.status in ("refuted", "error") else EXIT_OK


def _error_report(args, exc: ClonoidLabError) -> VerificationReport:
    instance = {k: v for k, v in vars(args).items() if k not in ("report", "spec") and v is not None}
    return VerificationReport(getattr(args, "command", "unknown"), instance, "error",
                              {"code": exc.code, "message": str(exc)}, 0, getattr(args, "seed", 0))


def _run_one(argv: list[str]) -> tuple[int, dict]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = CliConfig(args.seed, args.max_arity, args.table_guard, args.parallelism, args.report)
        if config.table_guard:
            os.environ["CLONOID_LAB_GUARD"] = str(config.table_guard)
        _fill_from_spec(args)
        if args.command == "batch":
            return _run_batch(args.manifest, config)
        report = dispatch(args)
    except SpecError as exc:
        return EXIT_USAGE, {"status": "error", "error": {"code": exc.code, "message": str(exc)}, "argv": argv}
    except ClonoidLabError as exc:
        report = _error_report(args, exc)
    return exit_code(report), report.to_dict()


def _read_manifest(path: str) -> list[list[str]]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecError(f"cannot read manifest {path}: {exc}") from exc
    if text.lstrip().startswith("["):
        entries = json.loads(text)
        return [e if isinstance(e, list) else shlex.split(e) for e in entries]
    return [shlex.split(line) for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]


def _run_batch(manifest: str, config: CliConfig) -> tuple[int, dict]:
    jobs = _read_manifest(manifest)
    if any(j and j[0] == "batch" for j in jobs):
        raise SpecError("batch manifests cannot nest")
    if config.parallelism > 1:
        with ProcessPoolExecutor(config.parallelism) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    code = max((r[0] for r in results), default=EXIT_OK)
    return code, {"command": "batch", "manifest": manifest, "reports": [r[1] for r in results],
                  "exit_codes": [r[0] for r in results]}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] in ("-h", "--help") or not argv:
        build_parser().print_help()
        return EXIT_OK if argv else EXIT_USAGE
    code, payload = _run_one(argv)
    text = json.dumps(payload, sort_keys=True, indent=2)
    try:
        target = build_parser().parse_args(argv).report
    except SpecError:
        target = None
    if target:
        Path(target).write_text(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
