"""Best-bound branch-and-bound over the ILP models.

Every node's relaxation is solved by one shared LP object; the dense backend
warm-starts each LP from the basis left by the previous one.  Objective
coefficients are integers, so a node's LP value is rounded up before it is
compared against the incumbent.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import SequenceSolution
from .errors import ResourceExhausted, Timeout
from .ilpgen.decode import decode
from .ilpgen.model import IlpModel
from .simplex import DEFAULT_TOL, LpStatus, Tolerances, make_lp, resolve_backend

INT_TOL = 1e-6
MAX_OPEN_NODES = 1_000_000


@dataclass
class SolveStats:
    nodes_explored: int = 0
    lp_solves: int = 0
    lp_iterations: int = 0
    root_relaxation: float = math.nan
    incumbent_updates: int = 0
    wall_time: float = 0.0
    bound: float = math.nan
    lp_backend: str = "dense"

    def as_dict(self) -> dict:
        """Plain dict with non-finite floats mapped to None (JSON-safe)."""
        return {
            k: None if isinstance(v, float) and not math.isfinite(v) else v
            for k, v in self.__dict__.items()
        }


def _round_up(value: float) -> float:
    return math.ceil(value - INT_TOL)


def _branch_variable(x: np.ndarray, integral: np.ndarray) -> int:
    """Most fractional integer variable; ties go to the lowest index."""
    frac = x - np.floor(x)
    score = np.where(integral, np.minimum(frac, 1.0 - frac), 0.0)
    best = score.max() if score.size else 0.0
    if best <= INT_TOL:
        return -1
    return int(np.flatnonzero(score >= best - 1e-9)[0])


def solve_milp(
    model: IlpModel,
    time_limit: Optional[float] = None,
    max_open_nodes: int = MAX_OPEN_NODES,
    tol: Tolerances = DEFAULT_TOL,
    lp_backend: str = "dense",
) -> tuple[SequenceSolution, SolveStats]:
    """Solve ``model`` to proven optimality.

    ``lp_backend`` selects the relaxation solver: ``"dense"`` (the in-house
    simplex), ``"highs"`` or ``"auto"`` (dense for small models).

    Raises :class:`Timeout` (with the incumbent and bound) when
    ``time_limit`` seconds elapse, and :class:`ResourceExhausted` when the
    open-node queue exceeds ``max_open_nodes``.
    """
    start = time.perf_counter()
    comp = model.compiled
    integral = np.ones(len(comp.variables), dtype=bool)
    stats = SolveStats(lp_backend=resolve_backend(model, lp_backend))
    lp = make_lp(model, stats.lp_backend, tol)

    incumbent_x = None
    incumbent_obj = math.inf
    counter = 0
    # (bound, fifo, lo, hi)
    heap = [(-math.inf, counter, comp.lo.copy(), comp.hi.copy())]

    def finish():
        stats.wall_time = time.perf_counter() - start
        stats.lp_iterations = lp.total_iterations

    while heap:
        bound, _, lo, hi = heapq.heappop(heap)
        if bound >= incumbent_obj:
            heap.clear()
            break
        if time_limit is not None and time.perf_counter() - start > time_limit:
            stats.bound = bound
            finish()
            inc = None if incumbent_x is None else _decode(model, comp, incumbent_x)
            raise Timeout(inc, bound, stats)

        stats.nodes_explored += 1
        res = lp.solve(lo, hi)
        stats.lp_solves += 1
        if stats.nodes_explored == 1 and res.status is LpStatus.OPTIMAL:
            stats.root_relaxation = res.objective
        if res.status is not LpStatus.OPTIMAL:
            continue
        node_bound = _round_up(res.objective)
        if node_bound >= incumbent_obj:
            continue
        v = _branch_variable(res.x, integral)
        if v < 0:
            incumbent_x = np.round(res.x)
            incumbent_obj = float(comp.c @ incumbent_x)
            stats.incumbent_updates += 1
            continue
        val = res.x[v]
        down_hi = hi.copy()
        down_hi[v] = math.floor(val)
        up_lo = lo.copy()
        up_lo[v] = math.ceil(val)
        for child_lo, child_hi in ((lo, down_hi), (up_lo, hi)):
            counter += 1
            heapq.heappush(heap, (node_bound, counter, child_lo, child_hi))
        if len(heap) > max_open_nodes:
            finish()
            raise ResourceExhausted(f"more than {max_open_nodes} open nodes")

    finish()
    if incumbent_x is None:
        raise ResourceExhausted("model has no integral solution")
    stats.bound = incumbent_obj
    return _decode(model, comp, incumbent_x), stats


def _decode(model, comp, x) -> SequenceSolution:
    return decode(model, dict(zip(comp.variables, x.tolist())))
