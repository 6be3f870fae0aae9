"""Command line entry point: ``edgeoff {solve,compare,experiment,validate}``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from . import harness
from .costmodel import budget_of
from .errors import ConfigError, EdgeOffError, InfeasibleError
from .solvers import SOLVERS, epsilon_bound, solve


def _parser():
    parser = argparse.ArgumentParser(prog="edgeoff", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="YAML scenario/experiment file")
        p.add_argument("--seed", type=int, default=None, help="override experiment.seed")
        p.add_argument("--budget", default=None, help="seconds, or 'auto'")

    p = sub.add_parser("solve", help="solve one scenario with one solver")
    common(p)
    p.add_argument("--solver", choices=SOLVERS, default="gain")
    p = sub.add_parser("compare", help="run every solver on one scenario")
    common(p)
    p = sub.add_parser("experiment", help="run the config-driven sweep, write CSV")
    common(p)
    p.add_argument("--out", default=None, help="CSV path (default: experiment.output_path)")
    p = sub.add_parser("validate", help="check a config file")
    p.add_argument("--config", required=True)
    return parser


def _load(args) -> harness.ExperimentConfig:
    config = harness.load_config(args.config)
    if getattr(args, "seed", None) is not None:
        config = replace(config, seed=args.seed)
    budget = getattr(args, "budget", None)
    if budget is not None:
        value = "auto" if budget == "auto" else float(budget)
        config = replace(config, scenario=config.scenario.replace(budget=value))
    return config


def _solution_dict(scenario, sol):
    out = {"solver": sol.solver, "feasible": sol.feasible, "iterations": sol.iterations,
           "wall_time": sol.wall_time, "budget": budget_of(scenario)}
    if sol.policy is None:
        out["policy"] = None
        return out
    r = sol.report
    out.update(
        policy=str(sol.policy),
        total_energy=r.total_energy,
        total_time=r.total_time,
        edge_utility=r.edge_utility,
        per_task_time=list(r.per_task_time),
        per_task_energy=list(r.per_task_energy),
        violations=list(r.violations),
    )
    return out


def _run_one(scenario, solver, config):
    sa = replace(config.sa, seed=config.seed)
    try:
        return _solution_dict(scenario, solve(scenario, solver, sa, max_n=config.brute_force_cap))
    except InfeasibleError as exc:
        out = {"solver": solver, "feasible": False, "error": str(exc)}
        if exc.policy is not None:
            out["policy"] = str(exc.policy)
            out["violations"] = list(exc.report.violations)
        return out


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        config = _load(args)
    except (ConfigError, ValueError) as exc:
        print(f"edgeoff: configuration error: {exc}", file=sys.stderr)
        return 2

    if args.command == "validate":
        print(f"ok: {config.scenario.n} subtasks, solvers={','.join(config.solvers)}")
        return 0

    scenario = harness.generate_instance(config, 0)
    try:
        if args.command == "solve":
            print(json.dumps(_run_one(scenario, args.solver, config), indent=2))
        elif args.command == "compare":
            results = [_run_one(scenario, s, config) for s in SOLVERS]
            try:
                bound = epsilon_bound(scenario)
                eps = {"lower": bound.lower, "upper": bound.upper, "epsilon": bound.epsilon}
            except ZeroDivisionError:
                eps = None
            print(json.dumps({"solutions": results, "epsilon_bound": eps}, indent=2))
        else:
            out = args.out or config.output_path
            if out is None:
                print("edgeoff: no --out given and experiment.output_path unset", file=sys.stderr)
                return 2
            report = harness.run_experiment(config)
            path = harness.emit_report(report, out)
            print(f"wrote {len(report.rows)} rows to {path}")
    except (EdgeOffError, OSError) as exc:
        print(f"edgeoff: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
