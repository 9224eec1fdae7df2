"""Turn a solver assignment back into a checked addition sequence."""

from __future__ import annotations

from typing import Mapping

from ..core import FormationStep, SequenceSolution, solution_from_steps
from ..errors import DecodeError
from .model import IlpModel, VarKind, VarRef

INT_TOL = 1e-6


def decode(model: IlpModel, assignment: Mapping[VarRef, float]) -> SequenceSolution:
    """Decode an integral feasible assignment of ``model``.

    Variables missing from ``assignment`` take their fixed value, or 0.
    Depth in the result is the one induced by the decoded formations; any
    ``d`` variables only need to dominate it.
    """
    values = {}
    for v, dom in model.var_domains.items():
        val = float(assignment.get(v, dom.lo if dom.kind == "fixed" else 0.0))
        r = round(val)
        if abs(val - r) > INT_TOL:
            raise DecodeError(v.name, f"fractional value {val}")
        if r < dom.lo or r > dom.hi:
            raise DecodeError(v.name, f"value {r} outside [{dom.lo}, {dom.hi}]")
        values[v] = r
    for con in model.constraints:
        if not con.satisfied(values, INT_TOL):
            raise DecodeError(con.label, "constraint violated")

    elements = sorted(v.k for v, val in values.items() if v.kind is VarKind.X and val == 1)
    steps = [
        FormationStep(v.i + v.j, v.i, v.j)
        for v, val in values.items()
        if v.kind is VarKind.Y and val == 1
    ]
    sol = solution_from_steps(elements, steps, model.meta.targets, model.meta.cost)
    for v, val in values.items():
        if v.kind is VarKind.D and v.k in sol.depth and val < sol.depth[v.k]:
            raise DecodeError(v.name, f"depth {val} below induced depth {sol.depth[v.k]}")
    return sol


def encode(model: IlpModel, solution: SequenceSolution) -> dict[VarRef, int]:
    """Assignment of ``model`` variables that represents ``solution``."""
    present = set(solution.elements)
    used = {(s.i, s.j) for s in solution.steps}
    out = {}
    for v in model.var_domains:
        if v.kind is VarKind.X:
            out[v] = int(v.k in present)
        elif v.kind is VarKind.Y:
            out[v] = int((v.i, v.j) in used)
        else:
            out[v] = solution.depth.get(v.k, 0) if v.k in present else 0
    return out
