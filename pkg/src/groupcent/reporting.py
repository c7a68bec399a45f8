"""Run configuration and machine-readable run reports."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

from .graph import Graph


@dataclass
class AlgoConfig:
    k: int
    eps: float = 0.01
    p: int = 1
    trials: int = 100
    seed: int = 0
    workers: int | None = None  # None -> logical core count
    deterministic: bool = False

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.eps <= 0:
            raise ValueError("eps must be positive")
        if self.p < 1:
            raise ValueError("p must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")

    def effective_workers(self) -> int:
        if self.deterministic:
            return 1
        return self.workers or os.cpu_count() or 1

    def echo(self) -> dict:
        return {
            "k": self.k,
            "eps": self.eps,
            "p": self.p,
            "trials": self.trials,
            "seed": self.seed,
            "workers": self.effective_workers(),
            "deterministic": self.deterministic,
        }


def graph_summary(g: Graph) -> dict:
    return {
        "n": g.n,
        "m": g.num_edges,
        "directed": g.directed,
        "weighted": not g.unit_weights,
        "hash": g.content_hash(),
    }


@dataclass
class RunReport:
    algorithm: str
    group: list[int]
    objective_kind: str
    objective_value: float
    raw_farness: int | None
    iterations: int
    swaps_committed: int
    candidates_evaluated: int
    traversals_pruned: int
    wall_time_millis: float
    config: dict
    graph: dict
    # internals for tests and comparisons, not serialized
    swap_sequence: list = field(default_factory=list, compare=False, repr=False)
    round_gains: list = field(default_factory=list, compare=False, repr=False)

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "group": list(self.group),
            "objectiveKind": self.objective_kind,
            "objectiveValue": self.objective_value,
            "rawFarness": self.raw_farness,
            "iterations": self.iterations,
            "swapsCommitted": self.swaps_committed,
            "candidatesEvaluated": self.candidates_evaluated,
            "traversalsPruned": self.traversals_pruned,
            "wallTimeMillis": self.wall_time_millis,
            "config": self.config,
            "graph": self.graph,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


CSV_COLUMNS = [
    "algorithm", "k", "group", "objectiveKind", "objectiveValue", "rawFarness",
    "iterations", "swapsCommitted", "candidatesEvaluated", "traversalsPruned",
    "wallTimeMillis", "n", "m", "directed", "weighted", "hash", "eps", "p",
    "trials", "seed", "workers", "deterministic",
]


def report_to_csv_row(report: RunReport) -> str:
    d = report.to_dict()
    cells = [
        d["algorithm"], d["config"]["k"], " ".join(map(str, d["group"])),
        d["objectiveKind"], d["objectiveValue"],
        "" if d["rawFarness"] is None else d["rawFarness"],
        d["iterations"], d["swapsCommitted"], d["candidatesEvaluated"],
        d["traversalsPruned"], d["wallTimeMillis"],
        d["graph"]["n"], d["graph"]["m"], d["graph"]["directed"],
        d["graph"]["weighted"], d["graph"]["hash"],
        d["config"]["eps"], d["config"]["p"], d["config"]["trials"],
        d["config"]["seed"], d["config"]["workers"], d["config"]["deterministic"],
    ]
    return ",".join(str(c) for c in cells)
