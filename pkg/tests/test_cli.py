import json
import subprocess
import sys

import pytest

from clonoid_lab.cli import main
from clonoid_lab.errors import SpecError
from clonoid_lab.report import VerificationReport
from clonoid_lab.specs import module_spec, parse_module, ring_spec


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def strip_time(obj):
    if isinstance(obj, dict):
        return {k: strip_time(v) for k, v in obj.items() if k != "elapsed_ms"}
    if isinstance(obj, list):
        return [strip_time(v) for v in obj]
    return obj


def test_verify_example(capsys):
    code, rep = run(["verify-example", "--exponent", "3"], capsys)
    assert code == 0 and rep["status"] == "verified"
    assert set(rep) == {"command", "instance", "status", "witness", "elapsed_ms", "seed", "details"}


def test_chain(capsys):
    code, rep = run(["chain", "--domain", "zmod2", "--codomain", "zmod2", "--max-k", "4"], capsys)
    assert code == 0 and rep["status"] == "verified"


def test_infeasible_exits_zero(capsys):
    code, rep = run(["verify-interpolation", "--module", "zmod4", "--arity", "2", "--rank", "1",
                     "--exponent", "3"], capsys)
    assert code == 0 and rep["status"] == "infeasible"
    assert rep["witness"]["classes"] == 82


def test_refuted_and_error_exit_one(capsys):
    code, rep = run(["chain", "--domain", "z2", "--codomain", "z3"], capsys)
    assert code == 1 and rep["status"] == "error"
    assert rep["witness"]["code"]


def test_usage_errors_exit_two(capsys):
    code, rep = run(["no-such-command"], capsys)
    assert code == 2 and rep["status"] == "error"
    code, rep = run(["verify-interpolation", "--module", "zmod4"], capsys)
    assert code == 2 and "--arity" in rep["error"]["message"]
    code, _ = run(["ring-info", "--ring", "zmod0x"], capsys)
    assert code == 2
    code, _ = run(["ring-info", "--ring", "z2", "--table-guard", "0"], capsys)
    assert code == 2


def test_deterministic_modulo_time(capsys):
    argv = ["verify-interpolation", "--module", "z2", "--arity", "2", "--rank", "1", "--exponent", "3",
            "--seed", "4", "--method", "both"]
    _, a = run(argv, capsys)
    _, b = run(argv, capsys)
    assert strip_time(a) == strip_time(b)
    assert a["status"] == "verified"


def test_spec_file_and_report(tmp_path, capsys):
    spec = tmp_path / "inst.json"
    spec.write_text(json.dumps({"module": {"kind": "regular", "ring": {"kind": "zmod", "m": 4}}, "cover-arity": 2}))
    out = tmp_path / "out.json"
    code = main(["module-lattice", "--spec", str(spec), "--report", str(out)])
    assert code == 0 and capsys.readouterr().out == ""
    rep = json.loads(out.read_text())
    assert len(rep["details"]["cover"]["components"]) == 3


def test_batch(tmp_path, capsys):
    manifest = tmp_path / "jobs.txt"
    manifest.write_text("# two jobs\nverify-example --exponent 5\nrank --ring z4 --matrix 2,0;0,2\n")
    code, rep = run(["batch", str(manifest), "--parallelism", "2"], capsys)
    assert code == 0
    assert [r["status"] for r in rep["reports"]] == ["verified", "verified"]
    assert rep["reports"][1]["details"]["inner_rank"] == 2


def test_env_guard_and_console_script():
    proc = subprocess.run([sys.executable, "-m", "clonoid_lab.cli", "ring-info", "--ring", "tri2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["details"]["nilpotence_degree"] == 2


def test_shorthand():
    assert ring_spec("zmod2*z3") == {"kind": "product", "factors": [{"kind": "zmod", "m": 2}, {"kind": "zmod", "m": 3}]}
    assert module_spec("z2+z2") == {"kind": "abelian", "invariants": [2, 2]}
    assert module_spec("z2/z4") == {"kind": "zd-over-zm", "d": 2, "m": 4}
    assert parse_module("zmod2^3").size == 8
    assert ring_spec("mat2x2p3") == {"kind": "matrix", "p": 3, "d": 2}
    with pytest.raises(SpecError):
        ring_spec("banana")
    with pytest.raises(SpecError):
        parse_module("{not json")


def test_report_validation():
    with pytest.raises(ValueError):
        VerificationReport("x", {}, "maybe", None, 0, 0)
    rep = VerificationReport("x", {"b": 1, "a": 2}, "verified", None, 1.5, 0, {})
    assert rep.ok and rep.to_json().index('"command"') < rep.to_json().index('"status"')
