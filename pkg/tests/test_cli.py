import io
import json
import os
import subprocess
import sys

import pytest

from virtwist.cli import parse_module_spec, run
from virtwist.modules import KQuotient, Omega, VPrime00
from virtwist.sampling import DEFAULT_SEED, SEED_ENV


def call(*argv):
    buf = io.StringIO()
    code, reports = run(list(argv), out=buf)
    return code, reports, buf.getvalue()


def test_construct_reports_example():
    code, (rep,), text = call("factor", "construct", "--h", "t - 3/2", "--poles", "1", "--json")
    assert code == 0 and rep["details"]["f"] == "t^2 - 4*t + 1/4"
    assert json.loads(text) == rep
    assert rep["seed"] == DEFAULT_SEED


def test_exit_codes():
    assert call("factor", "verify", "--f", "t^3", "--h", "t")[0] == 1
    assert call("factor", "verify", "--f", "t^2 - t", "--h", "t")[0] == 0
    assert call("check", "bracket", "--module", "omega:lambda=2;b=1/2", "--range", "3", "--basis", "4")[0] == 0
    code, (rep,), _ = call("ore", "mul", "--x", "Th", "--y", "t(")
    assert code == 2 and rep["details"]["error"] == "ParseError"
    assert call("factor", "construct", "--h", "t", "--poles", "1")[0] == 2


def test_certify_and_search():
    _, (rep,), _ = call("factor", "certify", "--f", "t^3 + 1", "--json")
    assert rep["details"]["certificate"]["kind"] == "ODD_TOP_DEGREE"
    code, (rep,), _ = call("factor", "search", "--f", "t^3 + 1", "--candidates", "1,2", "--lo", "-2", "--hi", "2")
    assert code == 0 and rep["status"] == "verdict"


def test_iso_and_probe():
    _, (rep,), _ = call("iso", "--left", "omega:lambda=2;b=3", "--right", "omega:lambda=5;b=3", "--json")
    assert rep["details"]["verdict"] == "NOT_ISOMORPHIC"
    _, (rep,), _ = call("probe", "--module", "omega:lambda=2;b=1", "--seed-vec", "E1", "--json")
    assert rep["details"]["verdict"] == "PROPER_SUBSPACE_WITNESS"
    assert rep["details"]["certificate_verified"]


def test_module_specs():
    assert parse_module_spec("omega:lambda=2;b=3") == Omega(2, 3)
    assert isinstance(parse_module_spec("kquotient:beta=Th^2-t;b=2"), KQuotient)
    assert isinstance(parse_module_spec("vprime"), VPrime00)
    with pytest.raises(ValueError):
        parse_module_spec("nope:b=1")


def test_reports_are_byte_identical():
    argv = ["probe", "--module", "kquotient:beta=Th^2-(t^2-t);b=1/2", "--seed-vec", "B(0,0)", "--window", "9", "--json"]
    a = call(*argv)[2]
    b = call(*argv, "--workers", "8")[2]
    assert a == call(*argv)[2]
    assert json.loads(a)["details"] == json.loads(b)["details"]


def test_batch_mode(tmp_path):
    src = tmp_path / "fs.txt"
    src.write_text("# comment\nt^3 + 1\n\nt^2 - 4*t + 1/4  # example\nt^(\n")
    code, reports, text = call("factor", "certify", "--batch", str(src))
    assert code == 2
    lines = text.strip().splitlines()
    assert len(lines) == len(reports) == 3
    assert [r["inputs"]["lineno"] for r in reports] == [2, 4, 5]
    assert reports[-1]["status"] == "error"


def test_seed_env_override(monkeypatch):
    monkeypatch.setenv(SEED_ENV, "7")
    assert call("factor", "certify", "--f", "t^3", "--json")[1][0]["seed"] == 7
    assert call("factor", "certify", "--f", "t^3", "--seed", "9", "--json")[1][0]["seed"] == 9


def test_seeded_random_vectors_repeat():
    argv = ["check", "hvir", "--module", "omega:lambda=2;b=3", "--range", "2", "--basis", "3", "--random-vectors", "3", "--json"]
    assert call(*argv, "--seed", "5")[2] == call(*argv, "--seed", "5")[2]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "virtwist.cli", "factor", "construct", "--h", "t", "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["details"]["f"] == "t^2 - t"


def test_reports_identical_across_hash_seeds():
    argv = [sys.executable, "-m", "virtwist.cli", "iso", "--left", "kquotient:beta=Th^2-t;b=2",
            "--right", "kquotient:beta=Th^2-t^3;b=2", "--json"]
    outs = []
    for hs in ("0", "12345"):
        env = {k: v for k, v in os.environ.items() if k != SEED_ENV}
        env["PYTHONHASHSEED"] = hs
        outs.append(subprocess.run(argv, capture_output=True, text=True, env=env, check=True).stdout)
    assert outs[0] == outs[1]
