"""Compare the numba kernels with the pure numpy/Python fallback.

Each backend runs in its own interpreter because the choice is made at
import time from ``ADDSEQ_DISABLE_NUMBA``.  Numba timings exclude the
first (compiling) call.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys
import time

WORKLOAD = r"""
import json, sys, time
from addseq._accel import NUMBA_ENABLED
from addseq.bnb import solve_milp
from addseq.core import CostModel, normalize_targets
from addseq.dfs import SearchConfig, solve_exact_with_stats
from addseq.ilpgen import build_basic

repeat = int(sys.argv[1])
dfs_cases = [[1, 5, 51, 63], [1, 22, 39, 50], [1, 27, 50, 58, 61], [1, 37, 39, 51, 55, 57]]
lp_case = normalize_targets([5, 13, 22, 29, 31])

def dfs_run():
    nodes = 0
    for t in dfs_cases:
        _, st = solve_exact_with_stats(normalize_targets(t), SearchConfig(cost=CostModel(1, 1)))
        nodes += st.nodes
    return nodes

def bnb_run():
    _, st = solve_milp(build_basic(lp_case, True), lp_backend="dense")
    return st.lp_iterations

out = {"numba": NUMBA_ENABLED}
for name, fn in (("dfs", dfs_run), ("bnb_dense", bnb_run)):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        work = fn()
        times.append(time.perf_counter() - t0)
    out[name] = {"best_s": min(times), "work": work}
print(json.dumps(out))
"""


def run(disable: bool, repeat: int) -> dict:
    env = dict(os.environ)
    if disable:
        env["ADDSEQ_DISABLE_NUMBA"] = "1"
    else:
        env.pop("ADDSEQ_DISABLE_NUMBA", None)
    proc = subprocess.run(
        [sys.executable, "-c", WORKLOAD, str(repeat)], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    start = time.perf_counter()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    rows = []
    for key in ("dfs", "bnb_dense"):
        assert fast[key]["work"] == slow[key]["work"], f"{key}: backends disagree on work done"
        rows.append(
            {
                "kernel": key,
                "numba_s": fast[key]["best_s"],
                "fallback_s": slow[key]["best_s"],
                "speedup": slow[key]["best_s"] / max(fast[key]["best_s"], 1e-12),
                "work": fast[key]["work"],
            }
        )
    if args.json:
        print(json.dumps({"numba_available": fast["numba"], "rows": rows}, indent=2))
    else:
        if not fast["numba"]:
            print("numba not importable; both columns use the fallback")
        print(f"{'kernel':<10} {'numba s':>10} {'fallback s':>11} {'speedup':>8} {'work':>10}")
        for r in rows:
            print(f"{r['kernel']:<10} {r['numba_s']:>10.4f} {r['fallback_s']:>11.4f} {r['speedup']:>7.1f}x {r['work']:>10}")
        print(f"total wall {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
