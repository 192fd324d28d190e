import json
import subprocess
import sys

import pytest

from ffcycles.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_json(capsys):
    code, out, _ = run_cli(capsys, "count", "--q", "5", "--d", "2", "--gen", "randn:m=9", "--seed", "1",
                           "--n", "3", "--n", "4", "--nondegenerate", "--tree-bound", "--oracle", "--paths", "2")
    data = json.loads(out)
    assert code == 0 and data["oracle_match"] is True
    assert set(data["cycles"]) == {"3", "4"} and len(data["paths"]) == 3


def test_count_from_file(tmp_path, capsys):
    f = tmp_path / "e.txt"
    f.write_text("5 2\n0 0\n1 0\n0 1\n")
    adj = tmp_path / "adj.txt"
    code, out, _ = run_cli(capsys, "count", "--set", str(f), "--n", "4", "--tree-bound",
                           "--export-adjacency", str(adj))
    data = json.loads(out)
    assert code == 0 and data["cycles"]["4"] == {"total": "8", "degenerate_bound": "40"}
    assert adj.read_text().splitlines()[0] == "0 1 2"


def test_verify_writes_json(tmp_path, capsys):
    out = tmp_path / "v.json"
    code, _, err = run_cli(capsys, "verify", "--q", "5", "--d", "3", "--relation", "prod", "--gen",
                           "randn:m=110", "--theorem", "CHAINS", "--k", "2", "--theorem", "main", "--n", "4",
                           "--json", str(out))
    assert code == 0
    reps = json.loads(out.read_text())["reports"]
    assert [r["status"] for r in reps] == ["pass", "vacuous"]
    assert "CHAINS: pass" in err


def test_verify_tree(capsys):
    code, out, _ = run_cli(capsys, "verify", "--q", "5", "--d", "2", "--gen", "randn:m=20", "--theorem",
                           "TREE", "--tree", "1,1", "--epsilon", "0.2")
    assert code == 0 and json.loads(out)["reports"][0]["extra"]["tree_pruefer"] == ["1", "1"]


def test_exit_codes(capsys):
    assert run_cli(capsys, "count", "--q", "4", "--d", "2", "--gen", "full", "--n", "3")[0] == 1
    assert run_cli(capsys, "count", "--q", "5", "--d", "2", "--n", "3")[0] == 1
    assert run_cli(capsys, "count", "--q", "5", "--d", "2", "--gen", "full", "--n", "99")[0] == 3
    assert run_cli(capsys, "verify", "--q", "5", "--d", "2", "--gen", "full", "--theorem", "XYZ")[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def test_sweep_config_and_csv(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"jobs": [{"q": 5, "d": 2, "t": 1, "relation": "prod", "recipe": "randn:m=9",
                                         "seed": 2, "theorems": ["EDGES", "CHIKR"]}]}))
    csv_path, js = tmp_path / "o.csv", tmp_path / "o.json"
    code, _, _ = run_cli(capsys, "sweep", "--config", str(cfg), "--csv", str(csv_path), "--json", str(js))
    assert code == 0
    assert len(csv_path.read_text().splitlines()) == 3
    assert len(json.loads(js.read_text())["records"]) == 1


def test_sweep_bad_config(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"jobs": [], "unexpected": 1}))
    assert run_cli(capsys, "sweep", "--config", str(cfg))[0] == 1


def test_inline_sweep(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--q", "5", "--d", "2", "--relation", "prod", "--gen", "rand:p=0.5",
                           "--theorem", "CHIKR", "--reps", "4", "--seed", "3")
    assert code == 0 and json.loads(out)["tallies"] == {"CHIKR": {"pass": "4"}}


def test_spectra_and_trees(capsys):
    code, out, _ = run_cli(capsys, "spectra", "--q", "5", "--d", "2", "--t", "1")
    data = json.loads(out)
    assert code == 0 and data["sphere"]["passes"] and data["smoothing"]["passes_c2"]
    code, out, _ = run_cli(capsys, "trees", "--v", "5", "--gen", "randn:m=6", "--q", "5", "--d", "2")
    data = json.loads(out)
    assert data["labelled_trees"] == data["cayley"] == "125"
    assert len(data["classes"]) == 3 and all("n_T" in c for c in data["classes"])


def test_selftest_is_byte_identical(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"s{i}.json"
        proc = subprocess.run([sys.executable, "-m", "ffcycles.cli", "selftest", "--json", str(path)],
                              capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
