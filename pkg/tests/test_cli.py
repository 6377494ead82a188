import io
import json
import subprocess
import sys

import pytest

from stringc.cgroup import verify
from stringc.cli import CSV_FIELDS, main, record_from_json


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_verify_construction():
    code, text = run("verify", "--construction", "theorem1b", "--param", "10", "--format", "json")
    data = json.loads(text)
    assert code == 0
    assert data["rank"] == 6 and data["string_c_group"] and data["group_order"] == 3840


def test_verify_klein_file_reports_witness(tmp_path):
    path = write(tmp_path, "klein.txt", "degree 4\n(1,2)(3,4)\n(1,3)(2,4)\n(1,4)(2,3)\n")
    code, text = run("verify", "--file", path)
    assert code == 1
    assert "witness" in text
    code, text = run("verify", "--file", path, "--format", "json")
    assert code == 1 and json.loads(text)["intersection_witness"] is not None


def test_verify_input_errors(tmp_path):
    path = write(tmp_path, "bad.txt", "degree 4\n(1,2)(2,3)\n(1,3)\n")
    assert run("verify", "--file", path)[0] == 2
    assert run("verify", "--gens", "(1,2)")[0] == 2
    assert run("verify", "--gens", "(1,9)", "--degree", "4")[0] == 2
    assert run("verify", "--file", str(tmp_path / "missing.txt"))[0] == 2
    assert run("verify")[0] == 2
    assert run("frobnicate")[0] == 2


def test_verify_gens():
    code, _ = run("verify", "--gens", "(1,2)", "(2,3)", "(3,4)", "--degree", "4")
    assert code == 0


def test_construct_round_trip(tmp_path):
    code, text = run("construct", "theorem1b", "--n", "14")
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "degree 14"
    path = write(tmp_path, "t14.txt", text)
    code, out = run("verify", "--file", path, "--format", "json")
    assert code == 0 and json.loads(out)["rank"] == 8
    code, text = run("construct", "psl2", "--n", "5", "--format", "json")
    assert code == 0 and json.loads(text)["kind"] == "group"
    assert run("construct", "theorem1b", "--n", "7")[0] == 2


def test_enumerate_json_round_trip():
    code, text = run("enumerate", "--degree", "6", "--rank-min", "4", "--transitive", "--imprimitive",
                     "--proper")
    assert code == 0
    data = json.loads(text)
    assert data["complete"]
    for rec in data["records"]:
        assert set(rec) == set(CSV_FIELDS)
        rep = verify(record_from_json(rec))
        assert rep.is_string_c_group
        assert rep.group_order == rec["group_order"] and rep.schlafli == rec["schlafli"]


def test_enumerate_output_independent_of_workers():
    base = ("enumerate", "--degree", "6", "--rank-min", "3", "--transitive")
    outs = {run(*base, "--workers", w, "--format", f)[1] for w in ("1", "2") for f in ("json",)}
    assert len(outs) == 1
    csv1 = run(*base, "--format", "csv")[1]
    csv2 = run(*base, "--format", "csv", "--workers", "2")[1]
    assert csv1 == csv2
    assert csv1.splitlines()[0] == ",".join(CSV_FIELDS)


def test_enumerate_scope_and_config(tmp_path):
    cfg = write(tmp_path, "cfg.json", json.dumps(
        {"degree": 6, "rank_min": 3, "scope": "psl2", "scope_params": [5], "predicates": ["full-group"]}))
    code, text = run("enumerate", "--config", cfg, "--format", "csv")
    assert code == 0
    types = sorted(line.split(",")[2] for line in text.splitlines()[1:])
    assert types == ["3-5", "5-5"] or types == ["5-3", "5-5"]
    bad = write(tmp_path, "bad.json", json.dumps({"degree": 6, "colour": "red"}))
    assert run("enumerate", "--config", bad)[0] == 2
    assert run("enumerate", "--degree", "6", "--scope", "psl2", "--param", "7")[0] == 2
    assert run("enumerate", "--degree", "5", "--rank-max", "5")[0] == 2


def test_budget_exit_code(monkeypatch):
    assert run("enumerate", "--degree", "6", "--node-budget", "5")[0] == 3
    monkeypatch.setenv("STRINGC_NODE_BUDGET", "5")
    assert run("enumerate", "--degree", "6")[0] == 3
    monkeypatch.setenv("STRINGC_NODE_BUDGET", "lots")
    assert run("enumerate", "--degree", "6")[0] == 2


def test_bounds_commands():
    code, text = run("bounds", "--n", "16")
    data = json.loads(text)
    assert code == 0 and data["maroti_order_bound"] == 322560 and data["rank_bound"] == 10
    code, text = run("bounds", "--sweep", "23:1000")
    rows = text.splitlines()
    assert code == 0 and len(rows) == 979
    assert all(r.split(",")[4] == "below" for r in rows[1:])
    assert run("bounds")[0] == 2
    assert run("bounds", "--sweep", "9")[0] == 2


def test_tables_commands():
    assert run("tables", "1", "--node-budget", "10")[0] == 3
    code, text = run("tables", "2")
    assert code == 0 and text.startswith("table 2: PASS")


def test_entry_point():
    proc = subprocess.run([sys.executable, "-m", "stringc.cli", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("stringc")
