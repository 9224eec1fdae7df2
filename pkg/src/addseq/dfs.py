"""Exact search for minimum-cost addition sequences.

Iterative deepening on the integer cost budget over strictly ascending
chains.  A child of a chain appends any sum of two chain elements larger
than the current maximum.  In pruned mode a child may not jump over the
smallest target not yet reached, and a node is cut when its cost plus an
admissible cost-to-go estimate exceeds the budget.  The estimate combines:

* the doubling bound: the chain maximum at most doubles per step and
  every remaining target costs one step of its own (odd targets need a
  multiplier);
* the depth bound: with a depth cap D, an element built through h new
  elements at depth <= D is at most ``2**h * A(D - h)``, where ``A(x)`` is
  the largest current element of depth <= x.

Brute-force mode keeps only the ascending ordering and the budget, and is
the reference the pruned mode is tested against.

Each appended element carries its best formation for the objective: the
cheapest one when depth is free, otherwise the Pareto pair of (lowest
depth, cheapest) formations.
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._accel import njit
from .bounds import min_depth
from .core import CostModel, FormationStep, SequenceSolution, TargetSet, solution_from_steps
from .errors import InfeasibleDepth, ResourceExhausted

FOUND, EXHAUSTED, LIMIT = 1, 0, -1
_BIG = 1 << 60


class Mode(enum.Enum):
    PRUNED = "pruned"
    BRUTE_FORCE = "brute"


@dataclass(frozen=True)
class SearchConfig:
    cost: CostModel = field(default_factory=CostModel)
    d_max: Optional[int] = None
    mode: Mode = Mode.PRUNED
    node_limit: Optional[int] = None


@dataclass
class SearchStats:
    nodes: int = 0
    budgets: int = 0
    final_budget: int = 0
    wall_time: float = 0.0


@njit
def _steps_to_reach(frm, to):
    s = 0
    v = frm
    while v < to:
        v *= 2
        s += 1
    return s


@njit
def _lower_bound(chain, dep, level, targets, tp, cm, cs, dmax):
    """Admissible cost-to-go from chain[0..level] with targets[tp:] unmet."""
    nt = targets.shape[0]
    if tp >= nt:
        return 0
    cmin = min(cm, cs)
    prev = chain[level]
    seg = 0
    for q in range(tp, nt):
        t = targets[q]
        s = _steps_to_reach(prev, t)
        if s < 1:
            s = 1
        seg += (s - 1) * cmin + (cm if t % 2 == 1 else cmin)
        prev = t
    if dmax < 0:
        return seg
    # A[x]: largest element of depth <= x
    A = np.zeros(dmax + 1, dtype=np.int64)
    for p in range(level + 1):
        d = dep[p]
        if d <= dmax and chain[p] > A[d]:
            A[d] = chain[p]
    for x in range(1, dmax + 1):
        if A[x - 1] > A[x]:
            A[x] = A[x - 1]
    best = seg
    odd = 0
    for q in range(nt - 1, tp - 1, -1):
        t = targets[q]
        if t % 2 == 1:
            odd += 1
        h = -1
        for hh in range(1, dmax + 1):
            if (A[dmax - hh] << hh) >= t:
                h = hh
                break
        if h < 0:
            return _BIG
        above = nt - 1 - q
        c = (h + above) * cmin + (cm - cmin) * odd if cm > cmin else (h + above) * cmin
        if c > best:
            best = c
    return best


@njit
def _gen_children(chain, dep, level, hi_val, cm, cs, dmax, budget_left,
                  md, mdc, mdi, mc, mcd, mci, out_e, out_c, out_d, out_i):
    """Fill candidate buffers for extending chain[0..level]; returns count."""
    cnow = chain[level]
    span = hi_val - cnow
    if span <= 0:
        return 0
    for o in range(span + 1):
        md[o] = _BIG
        mc[o] = _BIG
    for a in range(level + 1):
        va = chain[a]
        for b in range(a, level + 1):
            e = va + chain[b]
            if e <= cnow:
                continue
            if e > hi_val:
                break
            o = e - cnow
            c = cs if a == b else cm
            d = max(dep[a], dep[b]) + 1
            if dmax >= 0 and d > dmax:
                continue
            i = va
            # lowest depth, then cheapest, then smallest first operand
            if d < md[o] or (d == md[o] and (c < mdc[o] or (c == mdc[o] and i < mdi[o]))):
                md[o] = d
                mdc[o] = c
                mdi[o] = i
            # cheapest, then lowest depth, then smallest first operand
            if c < mc[o] or (c == mc[o] and (d < mcd[o] or (d == mcd[o] and i < mci[o]))):
                mc[o] = c
                mcd[o] = d
                mci[o] = i
    n = 0
    for o in range(1, span + 1):
        if md[o] == _BIG:
            continue
        e = cnow + o
        if dmax < 0:
            if mc[o] <= budget_left:
                out_e[n] = e
                out_c[n] = mc[o]
                out_d[n] = mcd[o]
                out_i[n] = mci[o]
                n += 1
            continue
        if mdc[o] <= budget_left:
            out_e[n] = e
            out_c[n] = mdc[o]
            out_d[n] = md[o]
            out_i[n] = mdi[o]
            n += 1
        if mc[o] < mdc[o] and mc[o] <= budget_left:
            out_e[n] = e
            out_c[n] = mc[o]
            out_d[n] = mcd[o]
            out_i[n] = mci[o]
            n += 1
    return n


@njit
def _search(targets, cm, cs, dmax, budget, brute, node_limit, max_level, width,
            out_chain, out_dep, out_pair, counters):
    """One depth-first pass under ``budget``.

    Returns FOUND, EXHAUSTED or LIMIT; ``counters[0]`` accumulates nodes and
    ``counters[1]`` receives the length of the solution chain.
    """
    nt = targets.shape[0]
    n_r = targets[nt - 1]
    L = max_level + 1
    chain = np.zeros(L, dtype=np.int64)
    dep = np.zeros(L, dtype=np.int64)
    pair = np.zeros(L, dtype=np.int64)
    acc = np.zeros(L, dtype=np.int64)
    tp = np.zeros(L, dtype=np.int64)
    cov = np.zeros(L, dtype=np.int64)
    ce = np.zeros((L, width), dtype=np.int64)
    cc = np.zeros((L, width), dtype=np.int64)
    cd = np.zeros((L, width), dtype=np.int64)
    ci = np.zeros((L, width), dtype=np.int64)
    ncand = np.zeros(L, dtype=np.int64)
    pos = np.zeros(L, dtype=np.int64)
    md = np.zeros(n_r + 1, dtype=np.int64)
    mdc = np.zeros(n_r + 1, dtype=np.int64)
    mdi = np.zeros(n_r + 1, dtype=np.int64)
    mc = np.zeros(n_r + 1, dtype=np.int64)
    mcd = np.zeros(n_r + 1, dtype=np.int64)
    mci = np.zeros(n_r + 1, dtype=np.int64)

    chain[0] = 1
    if brute:
        hi_val = n_r
    else:
        hi_val = targets[0]
        if budget < _lower_bound(chain, dep, 0, targets, 0, cm, cs, dmax):
            return EXHAUSTED
    ncand[0] = _gen_children(chain, dep, 0, hi_val, cm, cs, dmax, budget,
                             md, mdc, mdi, mc, mcd, mci, ce[0], cc[0], cd[0], ci[0])
    level = 0
    while level >= 0:
        if pos[level] >= ncand[level]:
            level -= 1
            continue
        k = pos[level]
        pos[level] += 1
        cost = acc[level] + cc[level, k]
        if cost > budget:
            continue
        counters[0] += 1
        if node_limit > 0 and counters[0] > node_limit:
            return LIMIT
        nxt = level + 1
        e = ce[level, k]
        chain[nxt] = e
        dep[nxt] = cd[level, k]
        pair[nxt] = ci[level, k]
        acc[nxt] = cost
        p = tp[level]
        covered = cov[level]
        while p < nt and targets[p] < e:
            p += 1
        if p < nt and targets[p] == e:
            p += 1
            covered += 1
        tp[nxt] = p
        cov[nxt] = covered
        if covered == nt:
            for q in range(nxt + 1):
                out_chain[q] = chain[q]
                out_dep[q] = dep[q]
                out_pair[q] = pair[q]
            counters[1] = nxt + 1
            return FOUND
        if nxt >= max_level:
            continue
        if brute:
            if e >= n_r:
                continue
            hi_val = n_r
        else:
            if cost + _lower_bound(chain, dep, nxt, targets, p, cm, cs, dmax) > budget:
                continue
            hi_val = targets[p]
        ncand[nxt] = _gen_children(chain, dep, nxt, hi_val, cm, cs, dmax, budget - cost,
                                   md, mdc, mdi, mc, mcd, mci, ce[nxt], cc[nxt], cd[nxt], ci[nxt])
        pos[nxt] = 0
        level = nxt
    return EXHAUSTED


def _target_array(T: TargetSet) -> np.ndarray:
    return np.array([t for t in T if t > 1], dtype=np.int64)


def _check_depth(T: TargetSet, d_max: Optional[int]) -> int:
    if d_max is None:
        return -1
    floor_depth = min_depth(T.n_r)
    if d_max < floor_depth:
        raise InfeasibleDepth(f"d_max={d_max} below minimum depth {floor_depth} for {T.n_r}")
    return min(int(d_max), 62)


def lower_bound(T: TargetSet, cfg: SearchConfig = SearchConfig()) -> int:
    """Admissible lower bound on the optimal cost from the bare chain (1)."""
    targets = _target_array(T)
    if targets.size == 0:
        return 0
    dmax = _check_depth(T, cfg.d_max)
    one = np.ones(1, dtype=np.int64)
    zero = np.zeros(1, dtype=np.int64)
    return int(_lower_bound(one, zero, 0, targets, 0, cfg.cost.c_m, cfg.cost.c_s, dmax))


def solve_exact_with_stats(
    T: TargetSet, cfg: SearchConfig = SearchConfig()
) -> tuple[SequenceSolution, SearchStats]:
    start = time.perf_counter()
    cm = cfg.cost
    stats = SearchStats()
    targets = _target_array(T)
    dmax = _check_depth(T, cfg.d_max)
    if targets.size == 0:
        stats.wall_time = time.perf_counter() - start
        return solution_from_steps((1,), (), T, cm), stats

    n_r = int(targets[-1])
    brute = cfg.mode is Mode.BRUTE_FORCE
    budget = 0 if brute else lower_bound(T, cfg)
    out_chain = np.zeros(n_r + 1, dtype=np.int64)
    out_dep = np.zeros(n_r + 1, dtype=np.int64)
    out_pair = np.zeros(n_r + 1, dtype=np.int64)
    counters = np.zeros(2, dtype=np.int64)
    limit = cfg.node_limit or 0
    while True:
        max_level = n_r - 1 if cm.cheapest == 0 else min(n_r - 1, budget // cm.cheapest)
        width = 2 * min(n_r, (max_level + 1) * (max_level + 2) // 2) + 2
        stats.budgets += 1
        status = _search(targets, cm.c_m, cm.c_s, dmax, budget, brute, limit,
                         max_level, width, out_chain, out_dep, out_pair, counters)
        if status == LIMIT:
            stats.nodes = int(counters[0])
            raise ResourceExhausted(f"node limit {limit} exceeded at budget {budget}")
        if status == FOUND:
            break
        budget += 1
    stats.nodes = int(counters[0])
    stats.final_budget = budget
    n = int(counters[1])
    elements = [int(v) for v in out_chain[:n]]
    steps = [FormationStep(e, int(i), e - int(i)) for e, i in zip(elements[1:], out_pair[1:n])]
    sol = solution_from_steps(elements, steps, T, cm)
    stats.wall_time = time.perf_counter() - start
    return sol, stats


def solve_exact(T: TargetSet, cfg: SearchConfig = SearchConfig()) -> SequenceSolution:
    """Minimum weighted-cost addition sequence for ``T`` (and depth cap, if set).

    Among optimal sequences the lexicographically smallest element list is
    returned.
    """
    return solve_exact_with_stats(T, cfg)[0]


def enumerate_all(
    T: TargetSet, max_cost: int, cfg: SearchConfig = SearchConfig()
) -> list[SequenceSolution]:
    """Every ascending addition sequence covering ``T`` with cost <= ``max_cost``.

    Distinct formations of the same element set are reported separately.
    Meant for small instances; the count grows exponentially.
    """
    cm = cfg.cost
    dmax = _check_depth(T, cfg.d_max)
    targets = _target_array(T)
    n_r = T.n_r
    brute = cfg.mode is Mode.BRUTE_FORCE
    limit = cfg.node_limit
    out: list[SequenceSolution] = []
    if targets.size == 0:
        return [solution_from_steps((1,), (), T, cm)] if max_cost >= 0 else []

    chain = np.zeros(n_r + 1, dtype=np.int64)
    dep = np.zeros(n_r + 1, dtype=np.int64)
    chain[0] = 1
    steps: list[FormationStep] = []
    seen = set()
    nodes = 0

    def rec(level, cost, tp):
        nonlocal nodes
        if tp == len(targets):
            elems = tuple(int(v) for v in chain[: level + 1])
            key = (elems, tuple(sorted(steps)))
            if key not in seen:
                seen.add(key)
                out.append(solution_from_steps(elems, steps, T, cm))
            return
        cnow = int(chain[level])
        if cnow >= n_r:
            return
        if not brute:
            lb = _lower_bound(chain, dep, level, targets, tp, cm.c_m, cm.c_s, dmax)
            if cost + lb > max_cost:
                return
        hi_val = n_r if brute else int(targets[tp])
        members = [int(v) for v in chain[: level + 1]]
        depth_of = dict(zip(members, (int(d) for d in dep[: level + 1])))
        for e in range(cnow + 1, hi_val + 1):
            for i in members:
                j = e - i
                if j < i:
                    break
                if j not in depth_of:
                    continue
                c = cm.c_s if i == j else cm.c_m
                d = max(depth_of[i], depth_of[j]) + 1
                if cost + c > max_cost or (dmax >= 0 and d > dmax):
                    continue
                nodes += 1
                if limit and nodes > limit:
                    raise ResourceExhausted(f"node limit {limit} exceeded")
                chain[level + 1] = e
                dep[level + 1] = d
                steps.append(FormationStep(e, i, j))
                ntp = tp
                while ntp < len(targets) and targets[ntp] < e:
                    ntp += 1
                if ntp < len(targets) and targets[ntp] == e:
                    ntp += 1
                skipped = any(int(t) < e and int(t) not in depth_of for t in targets)
                if not skipped:
                    rec(level + 1, cost + c, ntp)
                steps.pop()

    rec(0, 0, 0)
    out.sort(key=lambda s: (s.elements, s.steps))
    return out
