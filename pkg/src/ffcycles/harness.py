"""Experiment configs, job execution and result serialisation.

A config is a JSON object::

    {
      "jobs": [
        {"id": "small", "q": 5, "d": 2, "t": 1, "relation": "dist",
         "recipe": "randn:m=10", "seed": 3,
         "cycles": [3, 4], "paths": [1, 2], "nondegenerate": [4],
         "oracle": true,
         "theorems": ["EDGES", {"id": "UPPER", "k": 3}]}
      ],
      "output": {"json": "out.json", "csv": "out.csv"}
    }

Unknown keys are rejected before anything runs.  JSON output is the
source of truth: exact integers are written as decimal strings, keys are
sorted and timing is left out unless asked for, so the same config always
produces the same bytes.
"""
from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema

from . import counting
from .bounds import THEOREMS, instance_reports
from .ensembles import generate_set, parse_recipe
from .errors import ConfigError, FFCyclesError
from .field import make_context
from .graphs import BUILTIN_PHI, GraphSpec, build_graph
from .reports import BoundReport, _jsonable
from .rng import Rng
from .trees import tree_classes

_INT_LIST = {"type": "array", "items": {"type": "integer", "minimum": 0}}

THEOREM_ENTRY = {
    "oneOf": [
        {"type": "string", "enum": list(THEOREMS)},
        {
            "type": "object",
            "properties": {
                "id": {"type": "string", "enum": list(THEOREMS)},
                "n": {"type": "integer"},
                "k": {"type": "integer"},
                "delta": {"type": "number"},
                "epsilon": {"type": "number"},
                "lam": {"type": "number"},
                "tree_vertices": {"type": "integer", "minimum": 2},
                "tree": {"type": "array", "items": {"type": "integer", "minimum": 0}},
            },
            "required": ["id"],
            "additionalProperties": False,
        },
    ]
}

JOB_SCHEMA = {
    "type": "object",
    "properties": {
        "id": {"type": "string"},
        "q": {"type": "integer"},
        "d": {"type": "integer"},
        "t": {"type": "integer"},
        "relation": {"type": "string", "enum": ["dist", "prod", "custom"]},
        "phi": {"type": "string", "enum": sorted(BUILTIN_PHI)},
        "loops": {"type": "boolean"},
        "recipe": {"type": "string"},
        "seed": {"type": "integer", "minimum": 0},
        "cycles": _INT_LIST,
        "paths": _INT_LIST,
        "nondegenerate": _INT_LIST,
        "degenerate_bound": _INT_LIST,
        "tree_classes": _INT_LIST,
        "oracle": {"type": "boolean"},
        "fmax": {"type": "integer", "minimum": 0},
        "theorems": {"type": "array", "items": THEOREM_ENTRY},
    },
    "required": ["q", "d", "t", "relation", "recipe"],
    "additionalProperties": False,
}

CONFIG_SCHEMA = {
    "type": "object",
    "properties": {
        "jobs": {"type": "array", "items": JOB_SCHEMA},
        "output": {
            "type": "object",
            "properties": {"json": {"type": "string"}, "csv": {"type": "string"},
                           "tsv": {"type": "string"}},
            "additionalProperties": False,
        },
        "threads": {"type": "integer", "minimum": 1},
    },
    "required": ["jobs"],
    "additionalProperties": False,
}


@dataclass
class ExperimentConfig:
    jobs: list
    output: dict = field(default_factory=dict)
    threads: int = 1

    @classmethod
    def from_dict(cls, data) -> "ExperimentConfig":
        try:
            jsonschema.validate(data, CONFIG_SCHEMA)
        except jsonschema.ValidationError as exc:
            where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
            raise ConfigError(f"invalid config at {where}: {exc.message}") from None
        return cls(jobs=list(data["jobs"]), output=dict(data.get("output", {})),
                   threads=int(data.get("threads", 1)))

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: not valid JSON ({exc})") from None
        return cls.from_dict(data)


def bundled_config(name: str) -> ExperimentConfig:
    """Load one of the configs shipped in ``ffcycles/data`` (e.g. ``selftest``)."""
    text = resources.files("ffcycles").joinpath("data", f"{name}.json").read_text()
    return ExperimentConfig.from_dict(json.loads(text))


@dataclass
class ResultRecord:
    index: int
    job_id: str
    inputs: dict
    counts: dict = field(default_factory=dict)
    reports: list = field(default_factory=list)
    oracle_match: bool | None = None
    oracle_checks: int = 0
    error: str | None = None
    error_type: str | None = None
    timing: float | None = None

    @property
    def violations(self) -> list[BoundReport]:
        return [r for r in self.reports if r.violation]

    @property
    def failed(self) -> bool:
        return bool(self.violations) or self.oracle_match is False

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "index": self.index,
            "job_id": self.job_id,
            "input": _jsonable(self.inputs),
            "counts": _jsonable(self.counts),
            "reports": [r.to_dict() for r in self.reports],
            "oracle_match": self.oracle_match,
            "oracle_checks": self.oracle_checks,
            "error": self.error,
            "error_type": self.error_type,
        }
        if timing:
            out["timing_s"] = self.timing
        return out


def _spec(job: dict) -> GraphSpec:
    loops = job.get("loops", True)
    if job["relation"] == "dist":
        return GraphSpec.dist(job["t"], loops=loops)
    if job["relation"] == "prod":
        return GraphSpec.prod(job["t"], loops=loops)
    if "phi" not in job:
        raise ConfigError("custom relation needs a 'phi' name")
    return GraphSpec.custom(job["phi"], job["t"], loops=loops)


def _oracle_fits(m: int, v: int) -> bool:
    return m ** v <= counting.ORACLE_BUDGET


def run_job(index: int, job: dict) -> ResultRecord:
    start = time.perf_counter()
    job_id = job.get("id", f"job{index}")
    seed = job.get("seed")
    inputs = {"q": job["q"], "d": job["d"], "t": job["t"], "relation": job["relation"],
              "recipe": job["recipe"], "seed": seed}
    rec = ResultRecord(index, job_id, inputs)
    try:
        ctx = make_context(job["q"], job["d"])
        E = generate_set(ctx, parse_recipe(job["recipe"], seed=seed))
        G = build_graph(E, _spec(job))
        m = len(G)
        inputs["size"] = m
        counts, matches = rec.counts, []
        oracle = job.get("oracle", False)

        if job.get("paths"):
            P = counting.path_counts(G, max(job["paths"]))
            counts["paths"] = {str(k): P[k] for k in job["paths"]}
        if job.get("cycles"):
            counts["cycles"] = {}
            for n in job["cycles"]:
                C = counting.cycle_count(G, n).total
                counts["cycles"][str(n)] = C
                if oracle and _oracle_fits(m, n):
                    matches.append(C == counting.oracle_count(G, "cycles", n))
        if job.get("nondegenerate"):
            counts["nondegenerate"] = {}
            for n in job["nondegenerate"]:
                N = counting.nondegenerate_count(G, n)
                counts["nondegenerate"][str(n)] = N
                if oracle and _oracle_fits(m, n):
                    matches.append(N == counting.oracle_count(G, "nondegenerate", n))
        if job.get("degenerate_bound"):
            counts["degenerate_bound"] = {str(n): counting.degenerate_bound(G, n)
                                          for n in job["degenerate_bound"]}
        if job.get("tree_classes"):
            counts["trees"] = {}
            for v in job["tree_classes"]:
                for T, mult in tree_classes(v):
                    key = "pruefer:" + ",".join(map(str, T.canonical_pruefer())) if v > 2 else "edge"
                    nT = counting.tree_embeddings(G, T)
                    counts["trees"][f"{v}/{key}"] = {"n_T": nT, "labelled_copies": mult}
                    if oracle and _oracle_fits(m, v):
                        matches.append(nT == counting.oracle_count(G, "tree", tree=T))
        if job.get("theorems"):
            rec.reports = instance_reports(G, job["theorems"], Rng(seed or 0, stream=7),
                                           job.get("fmax", 5))
        rec.oracle_checks = len(matches)
        if matches:
            rec.oracle_match = all(matches)
    except FFCyclesError as exc:
        rec.error, rec.error_type = str(exc), type(exc).__name__
    rec.timing = time.perf_counter() - start
    return rec


def run(config: ExperimentConfig | dict, threads: int | None = None) -> list[ResultRecord]:
    """Run every job; records come back in job order whatever the thread count."""
    if isinstance(config, dict):
        config = ExperimentConfig.from_dict(config)
    workers = threads or config.threads or 1
    jobs = list(enumerate(config.jobs))
    if workers <= 1 or len(jobs) <= 1:
        return [run_job(i, j) for i, j in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda ij: run_job(*ij), jobs))


def exit_code(records) -> int:
    """2 when any record holds a hard theorem failure or an oracle mismatch, else 0."""
    return 2 if any(r.failed for r in records) else 0


def to_json(records, timing: bool = False) -> str:
    payload = {"records": [r.to_dict(timing) for r in records]}
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


CSV_FIELDS = ["job_id", "theorem", "status", "hypothesis_satisfied", "lhs", "rhs", "slack", "size"]


def _rows(records):
    for rec in records:
        for r in rec.reports:
            d = r.to_dict()
            yield [rec.job_id, r.theorem, r.status, r.hypothesis_satisfied, d["lhs"], d["rhs"],
                   d["slack"], rec.inputs.get("size", "")]


def to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    w.writerows(_rows(records))
    return buf.getvalue()


def to_tsv(records) -> str:
    """Gnuplot-friendly: numeric lhs/rhs as floats, comment header."""
    lines = ["# job_id\ttheorem\tstatus\tsize\tlhs\trhs\tslack"]
    for rec in records:
        for r in rec.reports:
            lines.append("\t".join([rec.job_id, r.theorem, r.status, str(rec.inputs.get("size", "")),
                                    repr(float(r.lhs)), repr(float(r.rhs)), repr(r.slack)]))
    return "\n".join(lines) + "\n"


def write_outputs(records, output: dict, timing: bool = False) -> None:
    if output.get("json"):
        Path(output["json"]).write_text(to_json(records, timing))
    if output.get("csv"):
        Path(output["csv"]).write_text(to_csv(records))
    if output.get("tsv"):
        Path(output["tsv"]).write_text(to_tsv(records))
