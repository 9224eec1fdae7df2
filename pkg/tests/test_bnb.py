import math

import pytest

from addseq.bnb import solve_milp
from addseq.core import CostModel, normalize_targets
from addseq.dfs import SearchConfig, solve_exact
from addseq.errors import ResourceExhausted, Timeout
from addseq.ilpgen import build_basic, build_depth, build_weighted

from conftest import random_target_sets

UNIT = CostModel(1, 1)


def test_basic_3_7_11_matches_oracle():
    T = normalize_targets([3, 7, 11])
    sol, stats = solve_milp(build_basic(T, True))
    assert sol.weighted_cost == 5 == solve_exact(T, SearchConfig(cost=UNIT)).weighted_cost
    assert stats.nodes_explored >= 1 and stats.lp_solves == stats.nodes_explored
    assert stats.root_relaxation <= 5 + 1e-9
    assert stats.bound == 5


def test_weighted_table_row_one():
    sol, stats = solve_milp(build_weighted(normalize_targets([1, 49, 54, 59]), CostModel(2, 1), True), lp_backend="auto")
    assert sol.weighted_cost == 15
    assert stats.lp_backend == "highs"


@pytest.mark.parametrize("d_max", [4, 5, 6])
def test_depth_model_matches_capped_oracle(d_max):
    T = normalize_targets([7, 11])
    sol, _ = solve_milp(build_depth(T, UNIT, d_max, True), lp_backend="dense")
    ref = solve_exact(T, SearchConfig(cost=UNIT, d_max=d_max))
    assert sol.weighted_cost == ref.weighted_cost
    assert sol.max_depth <= d_max


def test_depth_model_for_4():
    sol, _ = solve_milp(build_depth(normalize_targets([4]), UNIT, 2))
    assert sol.weighted_cost == 2
    assert [sol.depth[e] for e in sol.elements] == [0, 1, 2]


def test_trivial_model():
    sol, stats = solve_milp(build_basic(normalize_targets([1])))
    assert sol.elements == (1,) and sol.weighted_cost == 0


@pytest.mark.parametrize("T", random_target_sets(11, 6, 4, 20), ids=str)
def test_dense_random_with_and_without_cuts(T):
    ref = solve_exact(T, SearchConfig(cost=CostModel(2, 1))).weighted_cost
    a, sa = solve_milp(build_weighted(T, CostModel(2, 1), True), lp_backend="dense")
    b, sb = solve_milp(build_weighted(T, CostModel(2, 1), False), lp_backend="dense")
    assert a.weighted_cost == b.weighted_cost == ref
    assert sa.root_relaxation >= sb.root_relaxation - 1e-7


def test_backends_agree():
    T = normalize_targets([5, 13, 21])
    a, _ = solve_milp(build_basic(T, True), lp_backend="dense")
    b, _ = solve_milp(build_basic(T, True), lp_backend="highs")
    assert a.weighted_cost == b.weighted_cost


def test_timeout_carries_incumbent_and_gap():
    model = build_basic(normalize_targets([37, 52, 55]), False)
    with pytest.raises(Timeout) as err:
        solve_milp(model, time_limit=0.0, lp_backend="highs")
    exc = err.value
    assert exc.incumbent is None and exc.gap is None
    assert exc.stats is not None


def test_open_node_limit():
    model = build_basic(normalize_targets([23, 41, 67]), False)
    with pytest.raises(ResourceExhausted):
        solve_milp(model, max_open_nodes=1, lp_backend="highs")


def test_stats_as_dict_is_json_safe():
    _, stats = solve_milp(build_basic(normalize_targets([4])))
    d = stats.as_dict()
    assert all(not (isinstance(v, float) and math.isnan(v)) for v in d.values())
    assert set(d) >= {"nodes_explored", "lp_solves", "root_relaxation", "wall_time"}
