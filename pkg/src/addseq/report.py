"""JSON run reports shared by every CLI command.

Shape (``schema = "addseq.run_report/1"``)::

    {
      "schema": "addseq.run_report/1",
      "command": "solve" | "verify" | "bounds" | "sweep-depth" | "bench-cuts",
      "status": "optimal" | "valid" | "invalid" | "timeout" | "resource" | "ok",
      "instance": {"targets": [...], "cost_mult": 2, "cost_sqr": 1,
                   "max_depth": null, "cuts": true},
      "solver": "dfs" | "bnb" | null,
      "solution": {"elements": [...], "steps": [[k, i, j], ...],
                   "n_mult": 0, "n_sqr": 0, "weighted_cost": 0,
                   "depth": {"1": 0, ...}, "max_depth": 0} | null,
      "stats": {...} | null,
      "bounds": {...} | null,
      "extra": {...}
    }

Depth maps are keyed by the element as a string so the structure survives
a JSON round trip unchanged.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import bounds as B
from .core import CostModel, FormationStep, SequenceSolution, TargetSet, solution_from_steps
from .errors import Undefined

SCHEMA = "addseq.run_report/1"


@dataclass
class RunReport:
    command: str
    status: str
    instance: dict = field(default_factory=dict)
    solver: Optional[str] = None
    solution: Optional[dict] = None
    stats: Optional[dict] = None
    bounds: Optional[dict] = None
    extra: dict = field(default_factory=dict)
    schema: str = SCHEMA

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)

    @classmethod
    def from_dict(cls, data: dict) -> "RunReport":
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {data.get('schema')!r}")
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls.from_dict(json.loads(text))


def instance_dict(T: TargetSet, cm: CostModel, max_depth=None, cuts=None) -> dict:
    return {
        "targets": list(T.targets),
        "cost_mult": cm.c_m,
        "cost_sqr": cm.c_s,
        "max_depth": max_depth,
        "cuts": cuts,
    }


def solution_dict(sol: SequenceSolution) -> dict:
    return {
        "elements": list(sol.elements),
        "steps": [[s.k, s.i, s.j] for s in sol.steps],
        "n_mult": sol.n_mult,
        "n_sqr": sol.n_sqr,
        "weighted_cost": sol.weighted_cost,
        "depth": {str(e): sol.depth[e] for e in sol.elements},
        "max_depth": sol.max_depth,
    }


def solution_from_dict(data: dict, T: TargetSet, cm: CostModel) -> SequenceSolution:
    steps = [FormationStep(k, i, j) for k, i, j in data["steps"]]
    return solution_from_steps(data["elements"], steps, T, cm)


def bounds_dict(T: TargetSet) -> dict:
    per_target = []
    for t in T:
        cb = B.chain_bounds(t)
        per_target.append(
            {
                "n": t,
                "g": cb.g,
                "lower_real": round(cb.lower_real, 6),
                "lower_int": cb.lower_int,
                "upper_binary": cb.upper_int,
                "min_depth": B.min_depth(t),
            }
        )
    try:
        upper, kind = B.sequence_upper_yao(T), "yao"
    except Undefined:
        upper, kind = B.sequence_upper(T), "binary_sum"
    return {
        "per_target": per_target,
        "lower_int": max(p["lower_int"] for p in per_target),
        "sequence_upper": round(upper, 6),
        "sequence_upper_kind": kind,
        "min_depth": B.min_depth(T.n_r),
    }
