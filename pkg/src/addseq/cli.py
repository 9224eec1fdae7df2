"""Command-line entry point: ``addseq {solve,verify,bounds,sweep-depth,bench-cuts}``.

Every command can print a JSON :class:`~addseq.report.RunReport`.  Exit
codes: 0 success, 2 invalid input, 3 timeout or resource limit.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .bnb import solve_milp
from .core import CostModel, TargetSet, normalize_targets, validate_sequence
from .dfs import SearchConfig, solve_exact_with_stats
from .errors import (
    AddSeqError,
    EmptyTargets,
    InfeasibleDepth,
    InvalidArgument,
    InvalidTarget,
    MissingTarget,
    NotAChain,
    ResourceExhausted,
    Timeout,
)
from .ilpgen import build_basic, build_depth, build_weighted, emit_lp, emit_mps
from .report import RunReport, bounds_dict, instance_dict, solution_dict
from .simplex import LP_BACKENDS

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_LIMIT = 3

GENERATOR_NAME = "numpy.random.Generator(PCG64)"

_INPUT_ERRORS = (InvalidTarget, EmptyTargets, InvalidArgument, InfeasibleDepth, NotAChain, MissingTarget)


class CommandError(Exception):
    """Carries a report together with the exit code it should produce."""

    def __init__(self, report: RunReport, code: int, message: str):
        super().__init__(message)
        self.report = report
        self.code = code


def parse_int_list(text: str) -> list[int]:
    """Integers separated by commas and/or whitespace; ``#`` starts a comment."""
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    tokens = [t for t in re.split(r"[\s,]+", body) if t]
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise InvalidArgument(f"not an integer list: {exc}") from None


def parse_targets(values: Sequence[str] | str) -> TargetSet:
    if isinstance(values, str):
        values = [values]
    return normalize_targets(parse_int_list(" ".join(values)))


def _model_for(T: TargetSet, cm: CostModel, d_max: Optional[int], cuts: bool):
    if d_max is not None:
        return build_depth(T, cm, d_max, cuts)
    if cm == CostModel(1, 1):
        return build_basic(T, cuts)
    return build_weighted(T, cm, cuts)


def _run_solver(T, cm, d_max, solver, cuts, lp_backend, time_limit, node_limit):
    """Returns ``(solution, stats_dict)``; raises Timeout/ResourceExhausted."""
    if solver == "dfs":
        sol, st = solve_exact_with_stats(T, SearchConfig(cost=cm, d_max=d_max, node_limit=node_limit))
        return sol, dict(st.__dict__)
    model = _model_for(T, cm, d_max, cuts)
    sol, st = solve_milp(model, time_limit=time_limit, lp_backend=lp_backend)
    return sol, st.as_dict()


def _limit_report(base: RunReport, exc: Exception) -> CommandError:
    if isinstance(exc, Timeout):
        base.status = "timeout"
        if exc.incumbent is not None:
            base.solution = solution_dict(exc.incumbent)
        base.stats = exc.stats.as_dict() if exc.stats is not None else None
        base.extra["gap"] = exc.gap
        finite = exc.bound is not None and math.isfinite(exc.bound)
        base.extra["bound"] = exc.bound if finite else None
        if not finite:
            base.extra["gap"] = None
    else:
        base.status = "resource"
    base.extra["error"] = str(exc)
    return CommandError(base, EXIT_LIMIT, str(exc))


def cmd_solve(
    targets,
    cost_mult: int = 2,
    cost_sqr: int = 1,
    max_depth: Optional[int] = None,
    solver: str = "dfs",
    cuts: bool = True,
    emit_lp_path: Optional[str] = None,
    emit_mps_path: Optional[str] = None,
    no_solve: bool = False,
    lp_backend: str = "auto",
    time_limit: Optional[float] = None,
    node_limit: Optional[int] = None,
) -> RunReport:
    T = targets if isinstance(targets, TargetSet) else parse_targets(targets)
    cm = CostModel(cost_mult, cost_sqr)
    report = RunReport(
        command="solve",
        status="ok",
        instance=instance_dict(T, cm, max_depth, cuts if solver == "bnb" else None),
        solver=None if no_solve else solver,
        bounds=bounds_dict(T),
    )
    if emit_lp_path or emit_mps_path:
        model = _model_for(T, cm, max_depth, cuts)
        if emit_lp_path:
            Path(emit_lp_path).write_text(emit_lp(model))
            report.extra["lp_file"] = str(emit_lp_path)
        if emit_mps_path:
            Path(emit_mps_path).write_text(emit_mps(model))
            report.extra["mps_file"] = str(emit_mps_path)
    if no_solve:
        return report
    try:
        sol, stats = _run_solver(T, cm, max_depth, solver, cuts, lp_backend, time_limit, node_limit)
    except (Timeout, ResourceExhausted) as exc:
        raise _limit_report(report, exc) from None
    report.status = "optimal"
    report.solution = solution_dict(sol)
    report.stats = stats
    return report


def cmd_verify(sequence, targets, cost_mult: int = 2, cost_sqr: int = 1) -> RunReport:
    """``sequence`` is a path, raw text, or a list of integers."""
    if isinstance(sequence, (list, tuple)):
        elements = [int(v) for v in sequence]
    else:
        p = Path(sequence)
        elements = parse_int_list(p.read_text() if p.exists() else str(sequence))
    T = targets if isinstance(targets, TargetSet) else parse_targets(targets)
    cm = CostModel(cost_mult, cost_sqr)
    report = RunReport(command="verify", status="valid", instance=instance_dict(T, cm))
    report.extra["sequence"] = elements
    try:
        sol = validate_sequence(elements, T, cm)
    except NotAChain as exc:
        report.status = "invalid"
        report.extra.update(error="not_a_chain", offending=exc.element, message=str(exc))
        raise CommandError(report, EXIT_INPUT, str(exc)) from None
    except MissingTarget as exc:
        report.status = "invalid"
        report.extra.update(error="missing_target", offending=exc.target, message=str(exc))
        raise CommandError(report, EXIT_INPUT, str(exc)) from None
    except InvalidArgument as exc:
        report.status = "invalid"
        report.extra.update(error="invalid_sequence", message=str(exc))
        raise CommandError(report, EXIT_INPUT, str(exc)) from None
    report.solution = solution_dict(sol)
    return report


def cmd_bounds(targets) -> RunReport:
    T = targets if isinstance(targets, TargetSet) else parse_targets(targets)
    return RunReport(command="bounds", status="ok", instance={"targets": list(T.targets)}, bounds=bounds_dict(T))


def cmd_sweep_depth(
    targets,
    d_from: int,
    d_to: int,
    solver: str = "dfs",
    cuts: bool = True,
    lp_backend: str = "auto",
    time_limit: Optional[float] = None,
) -> RunReport:
    """Unit-cost optimum for every depth cap in ``d_from..d_to``."""
    T = targets if isinstance(targets, TargetSet) else parse_targets(targets)
    if d_to < d_from:
        raise InvalidArgument("--to must not be below --from")
    cm = CostModel(1, 1)
    report = RunReport(
        command="sweep-depth",
        status="optimal",
        instance=instance_dict(T, cm, None, cuts if solver == "bnb" else None),
        solver=solver,
    )
    points, runs = [], []
    for d in range(d_from, d_to + 1):
        try:
            sol, stats = _run_solver(T, cm, d, solver, cuts, lp_backend, time_limit, None)
        except (Timeout, ResourceExhausted) as exc:
            report.extra.update(points=points, runs=runs, failed_at=d)
            raise _limit_report(report, exc) from None
        points.append([d, sol.weighted_cost])
        runs.append({"d_max": d, "solution": solution_dict(sol), "stats": stats})
    report.extra.update(points=points, runs=runs)
    return report


def random_instances(seed: int, count: int, max_targets: int, max_value: int) -> list[TargetSet]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        size = int(rng.integers(1, max_targets + 1))
        values = rng.integers(1, max_value + 1, size=size)
        out.append(normalize_targets(int(v) for v in values))
    return out


def _bench_side(T, cuts, lp_backend, time_limit):
    try:
        sol, st = solve_milp(build_basic(T, cuts), time_limit=time_limit, lp_backend=lp_backend)
    except (Timeout, ResourceExhausted) as exc:
        return {"status": "timeout" if isinstance(exc, Timeout) else "resource", "error": str(exc)}
    return {
        "status": "optimal",
        "optimum": sol.weighted_cost,
        "root_relaxation": st.root_relaxation,
        "nodes_explored": st.nodes_explored,
        "lp_iterations": st.lp_iterations,
        "wall_time": st.wall_time,
    }


def _mean(values):
    return float(np.mean(values)) if values else math.nan


def cmd_bench_cuts(
    seed: int = 0,
    instances: int = 100,
    max_targets: int = 10,
    max_value: int = 63,
    solver: str = "bnb",
    lp_backend: str = "auto",
    time_limit: Optional[float] = 300.0,
    progress=None,
) -> RunReport:
    """Solve seeded random basic models with and without halving cuts."""
    if instances < 1 or max_targets < 1 or max_value < 1:
        raise InvalidArgument("--instances, --max-targets and --max-value must be positive")
    if solver != "bnb":
        raise InvalidArgument("the cut benchmark needs the bnb solver")
    rows, excluded = [], []
    for idx, T in enumerate(random_instances(seed, instances, max_targets, max_value)):
        with_cuts = _bench_side(T, True, lp_backend, time_limit)
        without = _bench_side(T, False, lp_backend, time_limit)
        row = {"index": idx, "targets": list(T.targets), "with_cuts": with_cuts, "without_cuts": without}
        done = with_cuts["status"] == "optimal" and without["status"] == "optimal"
        if done:
            row["optima_equal"] = with_cuts["optimum"] == without["optimum"]
            row["root_monotone"] = with_cuts["root_relaxation"] >= without["root_relaxation"] - 1e-6
        else:
            excluded.append(idx)
        rows.append(row)
        if progress is not None:
            progress(row)
    done_rows = [r for r in rows if r["index"] not in excluded]

    def col(side, key):
        return [r[side][key] for r in done_rows]

    summary = {
        "completed": len(done_rows),
        "excluded": excluded,
        "mean_nodes_with_cuts": _mean(col("with_cuts", "nodes_explored")),
        "mean_nodes_without_cuts": _mean(col("without_cuts", "nodes_explored")),
        "mean_root_with_cuts": _mean(col("with_cuts", "root_relaxation")),
        "mean_root_without_cuts": _mean(col("without_cuts", "root_relaxation")),
        "optima_equal_all": all(r["optima_equal"] for r in done_rows),
        "root_monotone_all": all(r["root_monotone"] for r in done_rows),
    }
    return RunReport(
        command="bench-cuts",
        status="ok",
        instance={
            "seed": seed,
            "generator": GENERATOR_NAME,
            "instances": instances,
            "max_targets": max_targets,
            "max_value": max_value,
        },
        solver=solver,
        extra={"summary": summary, "per_instance": rows, "lp_backend": lp_backend},
    )


def _human(report: RunReport) -> str:
    lines = [f"command: {report.command}", f"status: {report.status}"]
    inst = report.instance
    if "targets" in inst:
        lines.append("targets: " + ",".join(map(str, inst["targets"])))
    sol = report.solution
    if sol is not None:
        lines.append("sequence: " + ",".join(map(str, sol["elements"])))
        lines.append(
            f"operations: {sol['n_mult'] + sol['n_sqr']} "
            f"(multipliers {sol['n_mult']}, squarers {sol['n_sqr']})"
        )
        lines.append(f"weighted_cost: {sol['weighted_cost']}")
        lines.append(f"depth: {sol['max_depth']}")
    b = report.bounds
    if b is not None and report.command == "bounds":
        for p in b["per_target"]:
            lines.append(
                f"n={p['n']} g={p['g']} lower={p['lower_real']:.3f} lower_int={p['lower_int']} "
                f"upper_binary={p['upper_binary']} min_depth={p['min_depth']}"
            )
        lines.append(f"sequence_upper ({b['sequence_upper_kind']}): {b['sequence_upper']:.3f}")
    if "points" in report.extra:
        for d, ops in report.extra["points"]:
            lines.append(f"d_max={d} ops={ops}")
    if "summary" in report.extra:
        for k, v in report.extra["summary"].items():
            lines.append(f"{k}: {v}")
    for key in ("gap", "error", "offending"):
        if key in report.extra:
            lines.append(f"{key}: {report.extra[key]}")
    return "\n".join(lines)


def _on_off(text: str) -> bool:
    if text not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected on or off")
    return text == "on"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="addseq", description="Minimum-cost addition sequences.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def cost_flags(sp):
        sp.add_argument("--cost-mult", type=int, default=2, help="cost of a multiplier (default 2)")
        sp.add_argument("--cost-sqr", type=int, default=1, help="cost of a squarer (default 1)")

    def solver_flags(sp):
        sp.add_argument("--solver", choices=("dfs", "bnb"), default="dfs")
        sp.add_argument("--cuts", type=_on_off, default=True, metavar="{on,off}")
        sp.add_argument("--lp-backend", choices=("auto", *LP_BACKENDS), default="auto")
        sp.add_argument("--time-limit", type=float, default=None, help="seconds (bnb only)")

    sp = sub.add_parser("solve", help="solve one instance")
    sp.add_argument("targets", nargs="+", help="targets, e.g. 3,7,11")
    cost_flags(sp)
    solver_flags(sp)
    sp.add_argument("--max-depth", type=int, default=None)
    sp.add_argument("--node-limit", type=int, default=None, help="dfs node cap")
    sp.add_argument("--emit-lp", metavar="PATH")
    sp.add_argument("--emit-mps", metavar="PATH")
    sp.add_argument("--no-solve", action="store_true")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("verify", help="check a sequence file against targets")
    sp.add_argument("sequence_file")
    sp.add_argument("targets", nargs="+")
    cost_flags(sp)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("bounds", help="closed-form bounds for n or a target set")
    sp.add_argument("targets", nargs="+")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("sweep-depth", help="unit-cost optimum for a range of depth caps")
    sp.add_argument("targets", nargs="+")
    sp.add_argument("--from", dest="d_from", type=int, default=None, help="default: minimum depth")
    sp.add_argument("--to", dest="d_to", type=int, default=None, help="default: --from + 3")
    solver_flags(sp)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("bench-cuts", help="seeded benchmark of the halving cuts")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--instances", type=int, default=100)
    sp.add_argument("--max-targets", type=int, default=10)
    sp.add_argument("--max-value", type=int, default=63)
    sp.add_argument("--solver", choices=("bnb",), default="bnb")
    sp.add_argument("--lp-backend", choices=("auto", *LP_BACKENDS), default="auto")
    sp.add_argument("--time-limit", type=float, default=300.0, help="seconds per solve")
    sp.add_argument("--json", action="store_true")
    return p


def _dispatch(args) -> RunReport:
    if args.command == "solve":
        return cmd_solve(
            args.targets, args.cost_mult, args.cost_sqr, args.max_depth, args.solver, args.cuts,
            args.emit_lp, args.emit_mps, args.no_solve, args.lp_backend, args.time_limit,
            args.node_limit,
        )
    if args.command == "verify":
        return cmd_verify(args.sequence_file, args.targets, args.cost_mult, args.cost_sqr)
    if args.command == "bounds":
        return cmd_bounds(args.targets)
    if args.command == "sweep-depth":
        T = parse_targets(args.targets)
        from .bounds import min_depth

        d_from = min_depth(T.n_r) if args.d_from is None else args.d_from
        d_to = d_from + 3 if args.d_to is None else args.d_to
        return cmd_sweep_depth(T, d_from, d_to, args.solver, args.cuts, args.lp_backend, args.time_limit)
    return cmd_bench_cuts(
        args.seed, args.instances, args.max_targets, args.max_value, args.solver,
        args.lp_backend, args.time_limit,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    as_json = getattr(args, "json", False)
    try:
        report, code = _dispatch(args), EXIT_OK
    except CommandError as exc:
        report, code = exc.report, exc.code
        print(f"addseq: {exc}", file=sys.stderr)
    except _INPUT_ERRORS as exc:
        print(f"addseq: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, AddSeqError) as exc:
        print(f"addseq: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(report.to_json() if as_json else _human(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
