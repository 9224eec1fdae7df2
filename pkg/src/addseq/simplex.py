"""Dense bounded-variable primal simplex for the continuous relaxation.

Every row ``a x (<=, =, >=) b`` gets a slack ``s`` with ``a x + s = b``
and bounds ``[0, inf)``, ``[0, 0]`` or ``(-inf, 0]``.  The solver keeps a
condensed tableau over the nonbasic columns plus a right-hand-side column
and works from whatever basis it currently holds, so a sequence of solves
with different variable bounds (as in branch-and-bound) is warm-started.

Phase 1 minimises the sum of bound violations of the basic variables;
phase 2 minimises the objective.  Dantzig pricing is used until the
iteration count passes ``bland_factor * (rows + cols)``, after which
Bland's smallest-index rule guarantees termination.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from ._accel import NUMBA_ENABLED, njit
from .errors import NumericalFailure
from .ilpgen.model import CompiledModel, IlpModel, VarRef


@dataclass(frozen=True)
class Tolerances:
    pivot: float = 1e-9
    feasibility: float = 1e-7
    optimality: float = 1e-9
    bound: float = 1e-9
    bland_factor: int = 5
    stall_factor: int = 50
    refresh_every: int = 100


DEFAULT_TOL = Tolerances()


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass
class LpResult:
    status: LpStatus
    objective: float
    values: dict = field(repr=False)
    iterations: int
    x: Optional[np.ndarray] = field(default=None, repr=False)


@njit
def _pivot_kernel(M, r, s):
    m, w = M.shape
    inv = 1.0 / M[r, s]
    nzc = np.empty(w, dtype=np.int64)
    cnt = 0
    for j in range(w):
        if M[r, j] != 0.0:
            M[r, j] *= inv
            nzc[cnt] = j
            cnt += 1
    M[r, s] = inv
    for i in range(m):
        if i == r:
            continue
        f = M[i, s]
        if f != 0.0:
            for t in range(cnt):
                j = nzc[t]
                M[i, j] -= f * M[r, j]
            M[i, s] = -f * inv


def _pivot_numpy(M, r, s):
    inv = 1.0 / M[r, s]
    col = M[:, s].copy()
    M[r] *= inv
    M[r, s] = inv
    rows = np.flatnonzero(col)
    rows = rows[rows != r]
    cols = np.flatnonzero(M[r])
    if rows.size and cols.size:
        M[np.ix_(rows, cols)] -= np.outer(col[rows], M[r, cols])
    M[rows, s] = -col[rows] * inv


pivot = _pivot_kernel if NUMBA_ENABLED else _pivot_numpy


class DenseSimplex:
    """Reusable simplex state for one compiled model."""

    def __init__(self, model: CompiledModel | IlpModel, tol: Tolerances = DEFAULT_TOL):
        if isinstance(model, IlpModel):
            model = model.compiled
        self.model = model
        self.tol = tol
        m, n = model.A.shape
        self.m, self.n = m, n
        slack_lo = np.where(model.sense <= 0, 0.0, -np.inf)
        slack_hi = np.where(model.sense >= 0, 0.0, np.inf)
        self.lo = np.concatenate([model.lo, slack_lo])
        self.hi = np.concatenate([model.hi, slack_hi])
        self.cost = np.concatenate([model.c, np.zeros(m)])
        self.total_iterations = 0
        self.reset()

    def reset(self):
        """Return to the all-slack basis."""
        m, n = self.m, self.n
        self.M = np.ascontiguousarray(np.hstack([self.model.A, self.model.b[:, None]]))
        self.basis = np.arange(n, n + m)
        self.nonbasic = np.arange(n)
        self.x = np.zeros(n + m)
        self.x[:n] = np.where(np.isfinite(self.lo[:n]), self.lo[:n], self.hi[:n])
        self._recompute_basic()

    def _recompute_basic(self):
        n = self.n
        self.x[self.basis] = self.M[:, n] - self.M[:, :n] @ self.x[self.nonbasic]

    def _set_bounds(self, lo, hi):
        n = self.n
        old_hi = self.hi[:n].copy()
        self.lo[:n] = lo
        self.hi[:n] = hi
        nb = self.nonbasic
        struct = nb[nb < n]
        xs = self.x[struct]
        at_hi = (xs >= old_hi[struct]) & np.isfinite(self.hi[struct])
        self.x[struct] = np.where(at_hi, self.hi[struct], self.lo[struct])
        self._recompute_basic()

    # -- iteration helpers -------------------------------------------------

    def _entering(self, d, bland):
        nb = self.nonbasic
        xn = self.x[nb]
        lo, hi = self.lo[nb], self.hi[nb]
        movable = hi > lo
        at_hi = xn >= hi
        opt = self.tol.optimality
        inc = movable & ~at_hi & (d < -opt)
        dec = movable & at_hi & (d > opt)
        cand = np.flatnonzero(inc | dec)
        if cand.size == 0:
            return -1, 0
        if bland:
            s = cand[np.argmin(nb[cand])]
        else:
            s = cand[np.argmax(np.abs(d[cand]))]
        return int(s), (1 if inc[s] else -1)

    def _ratio(self, s, direction, phase1, bland):
        """Return (step, leaving row or -1 for a bound flip, leaving value)."""
        tol = self.tol
        q = self.nonbasic[s]
        alpha = -self.M[:, s] * direction
        xb = self.x[self.basis]
        lo, hi = self.lo[self.basis], self.hi[self.basis]
        step = np.full(self.m, np.inf)
        target = np.zeros(self.m)
        up = alpha > tol.pivot
        down = alpha < -tol.pivot
        if phase1:
            below = xb < lo - tol.feasibility
            above = xb > hi + tol.feasibility
            feas = ~(below | above)
        else:
            below = above = np.zeros(self.m, dtype=bool)
            feas = np.ones(self.m, dtype=bool)
        with np.errstate(invalid="ignore", divide="ignore"):
            sel = feas & up & np.isfinite(hi)
            step[sel] = (hi[sel] - xb[sel]) / alpha[sel]
            target[sel] = hi[sel]
            sel = feas & down & np.isfinite(lo)
            step[sel] = (lo[sel] - xb[sel]) / alpha[sel]
            target[sel] = lo[sel]
            sel = below & up
            step[sel] = (lo[sel] - xb[sel]) / alpha[sel]
            target[sel] = lo[sel]
            sel = above & down
            step[sel] = (hi[sel] - xb[sel]) / alpha[sel]
            target[sel] = hi[sel]
        np.maximum(step, 0.0, out=step)
        flip = self.hi[q] - self.lo[q]
        best = step.min() if self.m else np.inf
        if flip <= best:
            return flip, -1, 0.0
        if not np.isfinite(best):
            return np.inf, -1, 0.0
        ties = np.flatnonzero(step <= best + 1e-12)
        if bland:
            r = ties[np.argmin(self.basis[ties])]
        else:
            r = ties[np.argmax(np.abs(alpha[ties]))]
        return float(step[r]), int(r), float(target[r])

    def _move(self, s, direction, t, r, target):
        q = self.nonbasic[s]
        if t:
            self.x[self.basis] -= self.M[:, s] * (direction * t)
            self.x[q] += direction * t
        if r < 0:
            self.x[q] = self.hi[q] if direction > 0 else self.lo[q]
            return
        leaving = self.basis[r]
        self.x[leaving] = target
        pivot(self.M, r, s)
        self.basis[r] = q
        self.nonbasic[s] = leaving

    def _phase2_costs(self):
        n = self.n
        return self.cost[self.nonbasic] - self.cost[self.basis] @ self.M[:, :n]

    # -- main loop ---------------------------------------------------------

    def solve(self, lo=None, hi=None) -> LpResult:
        """Optimise over the structural bounds ``lo``/``hi`` (defaults: model bounds)."""
        model = self.model
        lo = model.lo if lo is None else np.asarray(lo, dtype=float)
        hi = model.hi if hi is None else np.asarray(hi, dtype=float)
        if np.any(lo > hi + self.tol.bound):
            return self._result(LpStatus.INFEASIBLE, 0)
        self._set_bounds(lo, hi)
        status, iters = self._iterate()
        if status is LpStatus.OPTIMAL and not self._residual_ok():
            self.reset()
            self._set_bounds(lo, hi)
            status, more = self._iterate()
            iters += more
            if status is LpStatus.OPTIMAL and not self._residual_ok():
                raise NumericalFailure("residual check failed after refactorisation")
        return self._result(status, iters)

    def _iterate(self):
        tol = self.tol
        m, n = self.m, self.n
        bland_after = tol.bland_factor * (m + n)
        limit = bland_after + tol.stall_factor * (m + n)
        it = 0
        phase1 = True
        d = None
        since_refresh = 0
        while True:
            if it > limit:
                raise NumericalFailure(f"no convergence after {it} iterations")
            bland = it >= bland_after
            if phase1:
                xb = self.x[self.basis]
                lob, hib = self.lo[self.basis], self.hi[self.basis]
                below = xb < lob - tol.feasibility
                above = xb > hib + tol.feasibility
                if not (below.any() or above.any()):
                    phase1 = False
                    d = self._phase2_costs()
                    since_refresh = 0
                    continue
                cb = above.astype(float) - below.astype(float)
                rows = np.flatnonzero(cb)
                d = -(cb[rows] @ self.M[rows, :n])
            elif since_refresh >= tol.refresh_every:
                d = self._phase2_costs()
                self._recompute_basic()
                since_refresh = 0
            s, direction = self._entering(d, bland)
            if s < 0:
                status = LpStatus.INFEASIBLE if phase1 else LpStatus.OPTIMAL
                break
            t, r, target = self._ratio(s, direction, phase1, bland)
            if not np.isfinite(t):
                if phase1:
                    raise NumericalFailure("unbounded phase-1 ray")
                status = LpStatus.UNBOUNDED
                break
            it += 1
            since_refresh += 1
            if r >= 0 and not phase1:
                ds = d[s]
                piv = self.M[r, s]
                self._move(s, direction, t, r, target)
                d = d - ds * self.M[r, :n]
                d[s] = -ds / piv
            else:
                self._move(s, direction, t, r, target)
        self.total_iterations += it
        return status, it

    def _residual_ok(self) -> bool:
        n = self.n
        A, b = self.model.A, self.model.b
        xs = self.x[:n]
        slack = b - A @ xs
        scale = 1.0 + np.abs(b)
        slo, shi = self.lo[n:], self.hi[n:]
        f = self.tol.feasibility * 10
        if np.any(slack < slo - f * scale) or np.any(slack > shi + f * scale):
            return False
        return not (np.any(xs < self.lo[:n] - f) or np.any(xs > self.hi[:n] + f))

    def _result(self, status, iters) -> LpResult:
        n = self.n
        if status is not LpStatus.OPTIMAL:
            return LpResult(status, np.nan, {}, iters, None)
        xs = np.clip(self.x[:n], self.lo[:n], self.hi[:n])
        obj = float(self.model.c @ xs)
        values = dict(zip(self.model.variables, xs.tolist()))
        return LpResult(status, obj, values, iters, xs)


def solve_lp(
    model: IlpModel,
    extra_bounds: Optional[Mapping[VarRef, tuple[float, float]]] = None,
    tol: Tolerances = DEFAULT_TOL,
) -> LpResult:
    """Solve the continuous relaxation of ``model``.

    ``extra_bounds`` tightens individual variables to ``(lo, hi)``;
    contradictory bounds yield an infeasible result, not an exception.
    """
    comp = model.compiled
    lo, hi = comp.lo.copy(), comp.hi.copy()
    for v, (a, b) in (extra_bounds or {}).items():
        idx = comp.index[v]
        lo[idx] = max(lo[idx], a)
        hi[idx] = min(hi[idx], b)
    return DenseSimplex(comp, tol).solve(lo, hi)


class HighsLp:
    """Same interface as :class:`DenseSimplex`, backed by scipy's HiGHS.

    Each call is a cold solve; used for models too large for the dense
    tableau to be practical inside branch-and-bound.
    """

    def __init__(self, model: CompiledModel | IlpModel, tol: Tolerances = DEFAULT_TOL):
        from scipy.optimize import linprog  # noqa: F401  (fail early if scipy is missing)

        if isinstance(model, IlpModel):
            model = model.compiled
        self.model = model
        self.tol = tol
        ub = model.sense < 0
        ge = model.sense > 0
        eq = model.sense == 0
        self._A_ub = np.vstack([model.A[ub], -model.A[ge]])
        self._b_ub = np.concatenate([model.b[ub], -model.b[ge]])
        self._A_eq = model.A[eq]
        self._b_eq = model.b[eq]
        self.total_iterations = 0

    def solve(self, lo=None, hi=None) -> LpResult:
        from scipy.optimize import linprog

        model = self.model
        lo = model.lo if lo is None else np.asarray(lo, dtype=float)
        hi = model.hi if hi is None else np.asarray(hi, dtype=float)
        if np.any(lo > hi + self.tol.bound):
            return LpResult(LpStatus.INFEASIBLE, np.nan, {}, 0, None)
        res = linprog(
            model.c,
            A_ub=self._A_ub if self._A_ub.size else None,
            b_ub=self._b_ub if self._A_ub.size else None,
            A_eq=self._A_eq if self._A_eq.size else None,
            b_eq=self._b_eq if self._A_eq.size else None,
            bounds=np.column_stack([lo, hi]),
            method="highs-ds",
        )
        iters = int(getattr(res, "nit", 0) or 0)
        self.total_iterations += iters
        if res.status == 2:
            return LpResult(LpStatus.INFEASIBLE, np.nan, {}, iters, None)
        if res.status == 3:
            return LpResult(LpStatus.UNBOUNDED, np.nan, {}, iters, None)
        if res.status != 0:
            raise NumericalFailure(f"HiGHS: {res.message}")
        xs = np.clip(res.x, lo, hi)
        obj = float(model.c @ xs)
        return LpResult(LpStatus.OPTIMAL, obj, dict(zip(model.variables, xs.tolist())), iters, xs)


LP_BACKENDS = {"dense": DenseSimplex, "highs": HighsLp}
# rows * columns above which "auto" picks HiGHS
AUTO_DENSE_LIMIT = 400_000


def make_lp(model: IlpModel, backend: str = "dense", tol: Tolerances = DEFAULT_TOL):
    backend = resolve_backend(model, backend)
    try:
        cls = LP_BACKENDS[backend]
    except KeyError:
        raise ValueError(f"unknown LP backend {backend!r}") from None
    return cls(model.compiled, tol)


def resolve_backend(model: IlpModel, backend: str) -> str:
    if backend != "auto":
        return backend
    m, n = model.compiled.A.shape
    return "dense" if m * n <= AUTO_DENSE_LIMIT else "highs"
