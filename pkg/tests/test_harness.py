import csv
import io
import json

import pytest

from ffcycles.errors import ConfigError
from ffcycles.harness import (ExperimentConfig, bundled_config, exit_code, run, to_csv, to_json,
                              to_tsv, write_outputs)


def small_job(i, **kw):
    job = {"id": f"j{i}", "q": 5, "d": 2, "t": 1, "relation": "dist", "recipe": "randn:m=8", "seed": i,
           "cycles": [3, 4], "nondegenerate": [4], "tree_classes": [3], "oracle": True,
           "theorems": ["EDGES", {"id": "UPPER", "k": 2}]}
    job.update(kw)
    return job


def test_zero_jobs(tmp_path):
    recs = run({"jobs": []})
    assert recs == [] and exit_code(recs) == 0
    write_outputs(recs, {"json": str(tmp_path / "o.json")})
    assert json.loads((tmp_path / "o.json").read_text()) == {"records": []}


def test_unknown_keys_rejected():
    with pytest.raises(ConfigError, match="colour"):
        ExperimentConfig.from_dict({"jobs": [], "colour": "red"})
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"jobs": [dict(small_job(0), extra=1)]})
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"jobs": [dict(small_job(0), theorems=["NOPE"])]})


def test_oracle_cross_checks_on_ten_instances():
    recs = run({"jobs": [small_job(i) for i in range(10)]})
    assert len(recs) == 10
    assert all(r.oracle_match is True and r.error is None for r in recs)
    assert exit_code(recs) == 0


def test_counts_are_strings_and_output_is_deterministic():
    cfg = {"jobs": [small_job(i) for i in range(4)]}
    a, b = to_json(run(cfg)), to_json(run(cfg, threads=3))
    assert a == b
    rec = json.loads(a)["records"][0]
    assert isinstance(rec["counts"]["cycles"]["4"], str)
    assert "timing_s" not in rec
    assert [r["index"] for r in json.loads(a)["records"]] == [0, 1, 2, 3]


def test_csv_rows_one_per_job_theorem():
    recs = run({"jobs": [small_job(i) for i in range(3)]})
    rows = list(csv.reader(io.StringIO(to_csv(recs))))
    assert len(rows) - 1 == sum(len(r.reports) for r in recs) == 6
    assert rows[0][:3] == ["job_id", "theorem", "status"]
    tsv = to_tsv(recs).splitlines()
    assert tsv[0].startswith("#") and len(tsv) == 7


def test_job_errors_are_recorded():
    recs = run({"jobs": [small_job(0, q=4), small_job(1, cycles=[99])]})
    assert recs[0].error_type == "NotPrime"
    assert recs[1].error_type == "TooLong"
    assert exit_code(recs) == 0


def test_bundled_configs_run_clean():
    for name in ("selftest", "acceptance"):
        recs = run(bundled_config(name))
        assert exit_code(recs) == 0
        assert not [r.error for r in recs if r.error]


def test_custom_relation_job():
    recs = run({"jobs": [small_job(0, relation="custom", phi="prod", theorems=[])]})
    assert recs[0].oracle_match is True
