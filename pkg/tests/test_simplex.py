import itertools

import numpy as np
import pytest
from scipy.optimize import linprog

from addseq import simplex
from addseq.core import CostModel, normalize_targets
from addseq.dfs import SearchConfig, solve_exact
from addseq.ilpgen import X, build_basic, build_depth, build_weighted, encode
from addseq.ilpgen.model import CompiledModel
from addseq.simplex import DenseSimplex, HighsLp, LpStatus, solve_lp

from conftest import random_target_sets


def highs_value(comp, lo=None, hi=None):
    lo = comp.lo if lo is None else lo
    hi = comp.hi if hi is None else hi
    le = comp.sense == -1
    ge = comp.sense == 1
    eq = comp.sense == 0
    A_ub = np.vstack([comp.A[le], -comp.A[ge]])
    b_ub = np.concatenate([comp.b[le], -comp.b[ge]])
    res = linprog(
        comp.c, A_ub=A_ub if len(b_ub) else None, b_ub=b_ub if len(b_ub) else None,
        A_eq=comp.A[eq] if eq.any() else None, b_eq=comp.b[eq] if eq.any() else None,
        bounds=list(zip(lo, hi)), method="highs",
    )
    return res.fun if res.status == 0 else None


def vertex_minimum(comp):
    """Minimum objective over all vertices, by trying every active set."""
    n = comp.A.shape[1]
    rows, rhs, always = [], [], []
    for r in range(comp.A.shape[0]):
        rows.append(comp.A[r])
        rhs.append(comp.b[r])
        if comp.sense[r] == 0:
            always.append(len(rows) - 1)
    for v in range(n):
        e = np.zeros(n)
        e[v] = 1.0
        for bound in {comp.lo[v], comp.hi[v]}:
            rows.append(e)
            rhs.append(bound)
        if comp.lo[v] == comp.hi[v]:
            always.append(len(rows) - 1)
    rows, rhs = np.array(rows), np.array(rhs)
    optional = [i for i in range(len(rows)) if i not in always]
    need = n - np.linalg.matrix_rank(rows[always]) if always else n
    best = np.inf
    for extra in itertools.combinations(optional, need):
        act = list(always) + list(extra)
        Aa = rows[act]
        if np.linalg.matrix_rank(Aa) < n:
            continue
        x = np.linalg.lstsq(Aa, rhs[act], rcond=None)[0]
        if not np.allclose(Aa @ x, rhs[act], atol=1e-9):
            continue
        ax = comp.A @ x
        ok = (
            np.all(ax[comp.sense == -1] <= comp.b[comp.sense == -1] + 1e-9)
            and np.all(ax[comp.sense == 1] >= comp.b[comp.sense == 1] - 1e-9)
            and np.all(np.abs(ax[comp.sense == 0] - comp.b[comp.sense == 0]) <= 1e-9)
            and np.all(x >= comp.lo - 1e-9)
            and np.all(x <= comp.hi + 1e-9)
        )
        if ok:
            best = min(best, float(comp.c @ x))
    return best


def assert_feasible(comp, res, lo=None, hi=None):
    lo = comp.lo if lo is None else lo
    hi = comp.hi if hi is None else hi
    x = res.x
    ax = comp.A @ x
    tol = 1e-7
    assert np.all(ax[comp.sense == -1] <= comp.b[comp.sense == -1] + tol)
    assert np.all(ax[comp.sense == 1] >= comp.b[comp.sense == 1] - tol)
    assert np.all(np.abs(ax[comp.sense == 0] - comp.b[comp.sense == 0]) <= tol)
    assert np.all(x >= lo - 1e-9) and np.all(x <= hi + 1e-9)


def test_relaxation_of_4_is_tight_and_matches_vertices():
    model = build_basic(normalize_targets([4]))
    res = solve_lp(model)
    assert res.status is LpStatus.OPTIMAL
    assert res.objective == pytest.approx(2.0)
    assert vertex_minimum(model.compiled) == pytest.approx(2.0)
    assert_feasible(model.compiled, res)


def test_vertex_check_with_cuts_and_weights():
    for model in (build_basic(normalize_targets([5]), True), build_weighted(normalize_targets([3, 5]), CostModel(2, 1))):
        assert solve_lp(model).objective == pytest.approx(vertex_minimum(model.compiled))


def test_contradictory_bounds_are_infeasible():
    model = build_basic(normalize_targets([3, 7, 11]))
    res = solve_lp(model, {X(5): (1, 1), X(6): (1, 1)})
    assert res.status is LpStatus.OPTIMAL
    res = solve_lp(model, {X(3): (0, 0)})
    assert res.status is LpStatus.INFEASIBLE
    lp = DenseSimplex(model)
    lo, hi = model.compiled.lo.copy(), model.compiled.hi.copy()
    lo[model.compiled.index[X(5)]] = 1
    hi[model.compiled.index[X(5)]] = 0
    assert lp.solve(lo, hi).status is LpStatus.INFEASIBLE


def test_unbounded_status():
    # minimise -a - b subject to a - b <= 1 with both unbounded above
    comp = CompiledModel(
        ("a", "b"), np.array([-1.0, -1.0]), np.array([[1.0, -1.0]]), np.array([1.0]),
        np.array([-1]), np.zeros(2), np.full(2, np.inf), {"a": 0, "b": 1},
    )
    assert DenseSimplex(comp).solve().status is LpStatus.UNBOUNDED


def test_cuts_raise_relaxation_table_row():
    T = normalize_targets([1, 49, 54, 59])
    plain = solve_lp(build_basic(T, False)).objective
    cut = solve_lp(build_basic(T, True)).objective
    assert cut >= plain - 1e-9
    assert cut == pytest.approx(highs_value(build_basic(T, True).compiled))


@pytest.mark.parametrize("idx", range(12))
def test_matches_highs_on_random_models(idx):
    T = random_target_sets(100 + idx, 1, 5, 24)[0]
    cm = CostModel(2, 1)
    kind = idx % 3
    if kind == 0:
        model = build_basic(T, idx % 2 == 0)
    elif kind == 1:
        model = build_weighted(T, cm, True)
    else:
        from addseq.bounds import min_depth

        model = build_depth(T, cm, min_depth(T.n_r) + 1, False)
    res = solve_lp(model)
    ref = highs_value(model.compiled)
    assert res.status is LpStatus.OPTIMAL
    assert res.objective == pytest.approx(ref, abs=1e-7)
    assert_feasible(model.compiled, res)


def test_warm_started_sequence_matches_cold_solves():
    T = normalize_targets([3, 7, 11, 13])
    model = build_basic(T, True)
    comp = model.compiled
    lp = DenseSimplex(model)
    rng = np.random.default_rng(7)
    free = [i for i in range(len(comp.variables)) if comp.lo[i] != comp.hi[i]]
    for _ in range(40):
        lo, hi = comp.lo.copy(), comp.hi.copy()
        for i in rng.choice(free, size=4, replace=False):
            if rng.random() < 0.5:
                hi[i] = 0
            else:
                lo[i] = 1
        warm = lp.solve(lo, hi)
        ref = highs_value(comp, lo, hi)
        if ref is None:
            assert warm.status is LpStatus.INFEASIBLE
        else:
            assert warm.status is LpStatus.OPTIMAL
            assert warm.objective == pytest.approx(ref, abs=1e-7)
            assert_feasible(comp, warm, lo, hi)


def test_highs_backend_agrees():
    model = build_weighted(normalize_targets([5, 9, 13]), CostModel(2, 1), True)
    a = DenseSimplex(model).solve()
    b = HighsLp(model).solve()
    assert a.objective == pytest.approx(b.objective, abs=1e-7)
    assert simplex.resolve_backend(model, "auto") == "dense"


def test_weak_duality_against_oracle():
    for T in random_target_sets(3, 8, 4, 30):
        sol = solve_exact(T, SearchConfig(cost=CostModel(1, 1)))
        model = build_basic(T, True)
        res = solve_lp(model)
        assert res.objective <= sol.weighted_cost + 1e-7
        values = encode(model, sol)
        assert all(c.satisfied(values) for c in model.constraints)


def test_pivot_kernels_agree():
    rng = np.random.default_rng(1)
    M = rng.normal(size=(6, 9))
    M[2, 4] = 0.0
    a, b = M.copy(), M.copy()
    simplex._pivot_kernel(a, 3, 5)
    simplex._pivot_numpy(b, 3, 5)
    assert np.allclose(a, b)
