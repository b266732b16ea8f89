import io
import json
import pathlib
import subprocess
import sys

import pytest

from hyperoct.cli import main

ALGEBRAS = pathlib.Path(__file__).resolve().parent.parent / "algebras"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_ho0_golden():
    code, out, _ = run("ho0", str(ALGEBRAS / "m2_f3.alg"))
    assert code == 0
    assert "dimension 0" in out.splitlines()
    code, out, _ = run("ho0", str(ALGEBRAS / "f5_x3.alg"))
    assert "dimension 3" in out.splitlines()


def test_ho0_integral():
    code, out, _ = run("ho0", str(ALGEBRAS / "gauss_z.alg"))
    assert code == 0
    assert "free rank 0" in out and "torsion 2 2" in out


def test_ring_override():
    code, out, _ = run("ho0", str(ALGEBRAS / "q.alg"), "--ring", "F7")
    assert code == 0 and "over F7" in out


def test_hom_enumerate_golden():
    code, out, _ = run("hom", "enumerate", "1", "0")
    lines = out.splitlines()
    assert code == 0
    assert len(lines) == 9 and lines[-1] == "count 8"
    assert lines[0] == "HOM 1 0 : 0^+ 1^+"


def test_hom_compose():
    code, out, _ = run("hom", "compose", "HOM 0 0 : 0^-", "HOM 1 0 : 1^+ 0^+")
    assert code == 0 and out.strip() == "HOM 1 0 : 0^- 1^-"


def test_reduce_and_verify(tmp_path):
    code, out, _ = run("reduce", "--morphism", "HOM 1 0 : 1^+ 0^+")
    assert code == 0
    assert sum(1 for line in out.splitlines() if line.startswith("STEP")) == 1
    cert = tmp_path / "c.txt"
    cert.write_text(out)
    code, out, _ = run("verify-cert", str(cert))
    assert code == 0 and "certificate valid" in out


def test_bad_certificate_exit_codes(tmp_path):
    cert = tmp_path / "c.txt"
    cert.write_text("START HOM 0 0 : 0^-\n")
    code, out, _ = run("verify-cert", str(cert))
    assert code == 1 and "terminal" in out
    cert.write_text("garbage\n")
    assert run("verify-cert", str(cert))[0] == 1
    assert run("verify-cert", str(tmp_path / "missing.txt"))[0] == 2


def test_usage_errors():
    code, _, err = run("reduce", "--morphism", "bad")
    assert code == 2 and "HOM n m" in err
    assert run("frobnicate")[0] == 2
    assert run("ho0")[0] == 2
    assert run("hom", "enumerate", "x", "0")[0] == 2


def test_invalid_algebra(tmp_path):
    p = tmp_path / "bad.alg"
    p.write_text("ring Q\nbasis a b\nmul a a = b\nunit = a\ninv a = a\ninv b = b\n")
    code, out, _ = run("algebra", "check", str(p))
    assert code == 1 and out.startswith("invalid")


def test_json_output():
    code, out, _ = run("ho0", "--format", "json", str(ALGEBRAS / "f5_x3.alg"))
    data = json.loads(out)
    assert code == 0 and data["dimension"] == 3 and data["quotient_basis"] == ["one", "x", "x2"]
    code, out, _ = run("verify", "exactness", "--n", "1", "--format", "json")
    assert code == 0 and json.loads(out)


def test_verify_commands():
    assert run("verify", "exactness", "--n", "1")[0] == 0
    assert run("verify", "simplicial", "--samples", "20")[0] == 0
    assert run("verify", "operad", "--max", "2")[0] == 0


@pytest.mark.parametrize("argv", [["ho0", "m2_f3.alg"], ["hom", "enumerate", "2", "0"], ["reduce", "--morphism", "HOM 2 0 : 2^- 0^+ 1^-"]])
def test_deterministic_subprocess(argv):
    cmd = [sys.executable, "-m", "hyperoct.cli"] + [str(ALGEBRAS / a) if a.endswith(".alg") else a for a in argv]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first
