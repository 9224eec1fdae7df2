import json
import os
import subprocess
import sys

SCRIPT = r"""
import json
from addseq._accel import NUMBA_ENABLED
from addseq.bnb import solve_milp
from addseq.core import CostModel, normalize_targets
from addseq.dfs import Mode, SearchConfig, solve_exact_with_stats
from addseq.ilpgen import build_depth

out = {"numba": NUMBA_ENABLED, "dfs": []}
for t, cm, d in [([3, 7, 11], (1, 1), None), ([1, 49, 54, 59], (2, 1), None), ([7, 11], (1, 1), 4)]:
    sol, st = solve_exact_with_stats(normalize_targets(t), SearchConfig(cost=CostModel(*cm), d_max=d))
    out["dfs"].append([list(sol.elements), sol.weighted_cost, st.nodes])
sol, st = solve_exact_with_stats(normalize_targets([3, 7, 11]), SearchConfig(cost=CostModel(1, 1), mode=Mode.BRUTE_FORCE))
out["brute"] = [sol.weighted_cost, st.nodes]
sol, st = solve_milp(build_depth(normalize_targets([7, 11]), CostModel(1, 1), 5, True), lp_backend="dense")
out["bnb"] = [sol.weighted_cost, st.nodes_explored]
print(json.dumps(out))
"""


def run(disable):
    env = dict(os.environ)
    env.pop("ADDSEQ_DISABLE_NUMBA", None)
    if disable:
        env["ADDSEQ_DISABLE_NUMBA"] = "1"
    proc = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def test_fallback_matches_compiled_kernels():
    fast, slow = run(False), run(True)
    assert slow["numba"] is False
    for key in ("dfs", "brute", "bnb"):
        assert fast[key] == slow[key]
    assert [r[1] for r in slow["dfs"]] == [5, 15, 5]
