import json
import shutil
import subprocess

import pytest

from conftest import T
from triperm import fastforward as ff
from triperm import oracle
from triperm.cli import run
from triperm.documents import emit_map, parse_map
from triperm.trigroup import ConjugationCertificate, apply, delta_map, identity, power, zeta_inv


@pytest.fixture
def maximal_map(tmp_path):
    path = tmp_path / "map.json"
    assert run(["gen", "--p", "3", "--n", "3", "--seed", "5", "--maximal", "--out", str(path)]) == 0
    return path


def last_json(capsys):
    return json.loads(capsys.readouterr().out.strip().splitlines()[-1])


def test_gen_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert run(["gen", "--p", "5", "--n", "4", "--budget", "4", "--seed", "9", "--wrap", "--out", str(path)]) == 0
    assert a.read_text() == b.read_text()
    assert parse_map(a.read_text()) == ff.sparse_generate(5, 4, 4, 9, wrap=True)


def test_gen_wrap_needs_budget(capsys):
    assert run(["gen", "--p", "3", "--n", "2", "--wrap"]) == 2


def test_inspect(maximal_map, capsys):
    assert run(["inspect", "--in", str(maximal_map)]) == 0
    rec = last_json(capsys)
    assert rec["maximal_orbit"] is True and len(rec["invariants"]) == 3


def test_canon(maximal_map, tmp_path):
    out = tmp_path / "cert.json"
    assert run(["canon", "--in", str(maximal_map), "--out", str(out)]) == 0
    cert = parse_map(out.read_text())
    assert isinstance(cert, ConjugationCertificate)
    assert cert.verify(parse_map(maximal_map.read_text()))
    doc = json.loads(out.read_text())
    sigma = parse_map(maximal_map.read_text())
    assert power(sigma, doc["exponent"]).to_dict() == doc["representative"]


def test_canon_identity_is_domain_error(tmp_path, capsys):
    path = tmp_path / "id.json"
    path.write_text(emit_map(identity(2, 2)))
    assert run(["canon", "--in", str(path)]) == 1
    assert "Ostafe" in capsys.readouterr().err


def test_iter_matches_oracle(maximal_map, capsys):
    sigma = parse_map(maximal_map.read_text())
    assert run(["iter", "--in", str(maximal_map), "-m", "12345", "-v", "0,1,2", "--count-mults"]) == 0
    rec = last_json(capsys)
    want = oracle.naive_orbit_power(oracle.to_table(sigma), 12345, zeta_inv((0, 1, 2), 3))
    assert zeta_inv(rec["point"], 3) == want
    assert rec["mults"] >= 0 and rec["method"] == "fast-forward"
    assert run(["iter", "--in", str(maximal_map), "-m", "12345", "-v", "0,1,2", "--naive"]) == 0
    assert last_json(capsys)["point"] == rec["point"]


def test_eval(tmp_path, capsys):
    path = tmp_path / "d.json"
    s = T(3, {(): 1}, {(1,): 2})
    path.write_text(emit_map(s))
    assert run(["eval", "--in", str(path), "-v", "2,1"]) == 0
    assert tuple(last_json(capsys)["point"]) == apply(s, (2, 1))


def test_flow_pipeline(tmp_path, capsys):
    src, flow, spec = tmp_path / "s.json", tmp_path / "f.json", tmp_path / "m.json"
    s = T(2, {}, {(1,): 1}, {(1, 0): 1, (0, 1): 1})
    src.write_text(emit_map(s))
    assert run(["flow", "build", "--in", str(src), "--out", str(flow)]) == 0
    assert run(["flow", "specialize", "--in", str(flow), "-m", "3", "--out", str(spec)]) == 0
    assert parse_map(spec.read_text()) == power(s, 3)
    assert run(["flow", "check-w", "--in", str(flow)]) == 0
    assert last_json(capsys)["ok"] is True
    lvl = tmp_path / "l.json"
    assert run(["flow", "level", "--in", str(src), "-i", "1", "--out", str(lvl)]) == 0
    assert run(["flow", "specialize", "--in", str(lvl), "-m", "1", "--out", str(spec)]) == 0
    assert parse_map(spec.read_text()) == power(s, 2)


def test_flow_missing_m(tmp_path):
    path = tmp_path / "f.json"
    path.write_text(emit_map(delta_map(2, 2)))
    assert run(["flow", "specialize", "--in", str(path)]) == 2


def test_usage_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["inspect", "--in", str(bad)]) == 2
    assert run(["inspect", "--in", str(tmp_path / "missing.json")]) == 2
    assert run(["eval", "--in", str(bad), "-v", "x"]) == 2
    assert run(["nosuchcommand"]) == 2


def test_bench(capsys):
    assert run(["bench", "--p", "2,5", "--n", "4", "--trials", "5"]) == 0
    recs = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert [(r["p"], r["n"], r["budget"]) for r in recs] == [(2, 4, 4), (5, 4, 4)]
    assert all(r["ff_mults_mean"] == r["ff_mults_max"] for r in recs)


def test_verify_quick(capsys):
    assert run(["verify", "--quick"]) == 0
    summary = last_json(capsys)
    assert summary["passed"] and len(summary["results"]) == 10


@pytest.mark.skipif(shutil.which("triperm") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["triperm", "gen", "--p", "2", "--n", "2"], capture_output=True, text=True)
    assert res.returncode == 0
    assert parse_map(res.stdout).n == 2
