"""Config-driven experiments: instance generation, solver sweeps, CSV reports."""

from __future__ import annotations

import csv
import io
import math
import os
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields, replace
from importlib import resources
from pathlib import Path
from typing import Any

import numpy as np
import yaml

from .costmodel import Scenario, Uplink, budget_of, warn_unused
from .errors import (
    ConfigError,
    GraphError,
    InfeasibleError,
    ParseError,
    ValidationError,
)
from .solvers import SOLVERS, SAParams, solve
from .taskgraph import Subtask, TaskGraph, build_graph

__all__ = [
    "GeneratorSpec",
    "Sweep",
    "ExperimentConfig",
    "TrialRow",
    "TrialReport",
    "load_config",
    "parse_config",
    "dump_config",
    "save_config",
    "canonical_graph",
    "generate_instance",
    "apply_sweep",
    "run_experiment",
    "emit_report",
    "read_report",
    "worker_count",
]

SWEEP_PARAMETERS = ("workload_scale", "budget_scale")

# parsed for completeness, not used by the model
UNUSED_SCENARIO_KEYS = ("downlink_rate", "relay_downlink_bandwidth", "p_tx_edge")

_SCENARIO_NUMBERS = (
    "f_local", "f_edge", "f_cloud", "k_energy", "alpha_edge", "beta_edge",
    "alpha_cloud", "beta_cloud", "sigma_exp", "p_tx_device", "p_relay",
    "relay_bandwidth", "service_price",
)
_UPLINK_NUMBERS = (
    "rate", "bandwidth_hz", "channel_gain", "noise_power", "interference",
    "distance", "path_loss_exp", "fading",
)


@dataclass(frozen=True)
class GeneratorSpec:
    """Uniform bounds for random workloads and data sizes.

    ``n`` and ``edge_prob`` are only used when the config has no graph: the
    topology is then a random DAG with forward edges ``i -> j`` (i < j), each
    present with probability ``edge_prob``.
    """

    workload: tuple[float, float]
    data_size: tuple[float, float]
    n: int | None = None
    edge_prob: float = 0.3


@dataclass(frozen=True)
class Sweep:
    parameter: str
    values: tuple[float, ...]


@dataclass(frozen=True)
class ExperimentConfig:
    scenario: Scenario
    generator: GeneratorSpec | None = None
    solvers: tuple[str, ...] = SOLVERS
    trials: int = 1
    sweep: Sweep | None = None
    seed: int = 0
    output_path: str | None = None
    sa: SAParams = SAParams()
    timing: bool = False
    brute_force_cap: int = 12
    has_graph: bool = True
    unused: tuple[tuple[str, float], ...] = ()


@dataclass(frozen=True)
class TrialRow:
    trial_index: int
    sweep_value: float
    solver: str
    energy: float
    completion_time: float
    budget: float
    utility: float
    feasible: bool
    n_local: int
    n_edge: int
    n_cloud: int
    wall_time: float
    iterations: int
    placement: str


ROW_FIELDS = tuple(f.name for f in fields(TrialRow))


@dataclass(frozen=True)
class TrialReport:
    rows: tuple[TrialRow, ...]


# -- config parsing -------------------------------------------------------------

def _num(value, field_name, *, positive=False, nonneg=False, allow_none=False):
    if value is None and allow_none:
        return None
    if isinstance(value, bool):
        raise ValidationError(field_name, f"expected a number, got {value!r}")
    if isinstance(value, str):
        # YAML 1.1 reads 5e6 (no dot) as a string
        try:
            value = float(value)
        except ValueError:
            raise ValidationError(field_name, f"expected a number, got {value!r}") from None
    if not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ValidationError(field_name, f"expected a finite number, got {value!r}")
    if positive and not value > 0:
        raise ValidationError(field_name, f"must be > 0, got {value!r}")
    if nonneg and not value >= 0:
        raise ValidationError(field_name, f"must be >= 0, got {value!r}")
    return float(value)


def _int(value, field_name, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(field_name, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ValidationError(field_name, f"must be >= {minimum}, got {value}")
    return value


def _section(doc, key, where):
    value = doc.get(key)
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise ValidationError(f"{where}{key}", "expected a mapping")
    return value


def _reject_unknown(section: dict, allowed, where):
    extra = sorted(set(section) - set(allowed))
    if extra:
        raise ValidationError(f"{where}{extra[0]}", "unknown key")


def _bounds(value, field_name):
    if not (isinstance(value, (list, tuple)) and len(value) == 2):
        raise ValidationError(field_name, "expected [low, high]")
    lo = _num(value[0], f"{field_name}[0]", nonneg=True)
    hi = _num(value[1], f"{field_name}[1]", nonneg=True)
    if lo > hi:
        raise ValidationError(field_name, f"low {lo} exceeds high {hi}")
    return lo, hi


def canonical_graph() -> TaskGraph:
    """The shipped 8-subtask graph with its default workloads."""
    text = resources.files("edgeoff").joinpath("data/canonical_graph.yaml").read_text()
    return _parse_graph(yaml.safe_load(text), None, "graph.")


def _parse_graph(section, generator, where) -> TaskGraph:
    if section == "canonical":
        graph = canonical_graph()
        if generator is not None:
            graph = _fill_midpoints(graph, generator)
        return graph
    if not isinstance(section, dict):
        raise ValidationError(where.rstrip("."), "expected a mapping or 'canonical'")
    _reject_unknown(section, ("subtasks", "edges"), where)
    raw_tasks = section.get("subtasks") or []
    if not isinstance(raw_tasks, list):
        raise ValidationError(f"{where}subtasks", "expected a list")
    subtasks = []
    for idx, entry in enumerate(raw_tasks):
        here = f"{where}subtasks[{idx}]"
        if not isinstance(entry, dict):
            raise ValidationError(here, "expected a mapping with id, workload, data_size")
        _reject_unknown(entry, ("id", "workload", "data_size"), here + ".")
        if "id" not in entry:
            raise ValidationError(f"{here}.id", "missing")
        sid = _int(entry["id"], f"{here}.id", minimum=0)
        values = []
        for key in ("workload", "data_size"):
            if key in entry:
                values.append(_num(entry[key], f"{here}.{key}", nonneg=True))
            elif generator is not None:
                lo, hi = getattr(generator, key)
                values.append(0.5 * (lo + hi))
            else:
                raise ValidationError(f"{here}.{key}", "missing (and no generator to draw it)")
        subtasks.append(Subtask(sid, values[0], values[1]))
    raw_edges = section.get("edges") or []
    if not isinstance(raw_edges, list):
        raise ValidationError(f"{where}edges", "expected a list of [from, to] pairs")
    edges = []
    for idx, e in enumerate(raw_edges):
        if not (isinstance(e, (list, tuple)) and len(e) == 2):
            raise ValidationError(f"{where}edges[{idx}]", "expected [from, to]")
        edges.append((_int(e[0], f"{where}edges[{idx}][0]"), _int(e[1], f"{where}edges[{idx}][1]")))
    try:
        return build_graph(subtasks, edges)
    except GraphError as exc:
        raise ValidationError(where.rstrip("."), str(exc)) from exc


def _fill_midpoints(graph, generator):
    w = 0.5 * sum(generator.workload)
    d = 0.5 * sum(generator.data_size)
    return graph.with_subtasks(Subtask(s.id, w, d) for s in graph.subtasks)


def _parse_uplink(section) -> Uplink:
    _reject_unknown(section, ("mode",) + _UPLINK_NUMBERS, "scenario.uplink.")
    kwargs: dict[str, Any] = {}
    if "mode" in section:
        kwargs["mode"] = section["mode"]
    for key in _UPLINK_NUMBERS:
        if key in section:
            kwargs[key] = _num(section[key], f"scenario.uplink.{key}", allow_none=True)
    if kwargs.get("mode") == "shannon" and "rate" not in kwargs:
        kwargs["rate"] = None
    return Uplink(**kwargs)


def parse_config(doc: dict, base_dir: Path | None = None) -> ExperimentConfig:
    """Validate an already-decoded config document."""
    if doc is None:
        doc = {}
    if not isinstance(doc, dict):
        raise ValidationError("<root>", "expected a mapping")
    _reject_unknown(doc, ("graph", "scenario", "generator", "experiment", "sa"), "")

    gen_doc = _section(doc, "generator", "")
    generator = None
    if gen_doc:
        _reject_unknown(gen_doc, ("workload", "data_size", "n", "edge_prob"), "generator.")
        for key in ("workload", "data_size"):
            if key not in gen_doc:
                raise ValidationError(f"generator.{key}", "missing")
        n_gen = gen_doc.get("n")
        edge_prob = _num(gen_doc.get("edge_prob", 0.3), "generator.edge_prob", nonneg=True)
        if edge_prob > 1:
            raise ValidationError("generator.edge_prob", "must lie in [0, 1]")
        generator = GeneratorSpec(
            workload=_bounds(gen_doc["workload"], "generator.workload"),
            data_size=_bounds(gen_doc["data_size"], "generator.data_size"),
            n=None if n_gen is None else _int(n_gen, "generator.n", minimum=0),
            edge_prob=edge_prob,
        )

    has_graph = "graph" in doc and doc["graph"] is not None
    if has_graph:
        graph_doc = doc["graph"]
        if isinstance(graph_doc, dict) and set(graph_doc) == {"file"}:
            path = Path(graph_doc["file"])
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            graph_doc = _read_yaml(path)
        graph = _parse_graph(graph_doc, generator, "graph.")
        if generator is not None and generator.n is not None and generator.n != graph.n:
            raise ValidationError("generator.n", f"is {generator.n} but the graph has {graph.n} subtasks")
    elif generator is not None and generator.n is not None:
        graph = build_graph(
            [Subtask(i, 0.5 * sum(generator.workload), 0.5 * sum(generator.data_size))
             for i in range(generator.n)],
            [],
        )
    else:
        raise ValidationError("graph", "missing (give a graph, 'canonical', or generator.n)")

    sc_doc = dict(_section(doc, "scenario", ""))
    allowed = _SCENARIO_NUMBERS + (
        "uplink", "budget", "budget_norm_freq", "transfer_size", "edge_cloud_fetch",
    ) + UNUSED_SCENARIO_KEYS
    _reject_unknown(sc_doc, allowed, "scenario.")
    kwargs: dict[str, Any] = {"graph": graph}
    for key in _SCENARIO_NUMBERS:
        if key in sc_doc:
            kwargs[key] = _num(sc_doc[key], f"scenario.{key}")
    if "uplink" in sc_doc:
        up = sc_doc["uplink"]
        if not isinstance(up, dict):
            raise ValidationError("scenario.uplink", "expected a mapping")
        kwargs["uplink"] = _parse_uplink(up)
    if "budget" in sc_doc:
        b = sc_doc["budget"]
        kwargs["budget"] = "auto" if b == "auto" else _num(b, "scenario.budget", positive=True)
    if "budget_norm_freq" in sc_doc:
        kwargs["budget_norm_freq"] = _num(
            sc_doc["budget_norm_freq"], "scenario.budget_norm_freq", positive=True, allow_none=True
        )
    if "transfer_size" in sc_doc:
        kwargs["transfer_size"] = sc_doc["transfer_size"]
    if "edge_cloud_fetch" in sc_doc:
        kwargs["edge_cloud_fetch"] = sc_doc["edge_cloud_fetch"]
    unused = tuple(
        (key, _num(sc_doc[key], f"scenario.{key}", positive=True))
        for key in UNUSED_SCENARIO_KEYS if key in sc_doc
    )
    if unused:
        warn_unused(key for key, _ in unused)
    scenario = Scenario(**kwargs)

    ex_doc = _section(doc, "experiment", "")
    _reject_unknown(
        ex_doc,
        ("solvers", "trials", "sweep", "seed", "output_path", "timing", "brute_force_cap"),
        "experiment.",
    )
    solvers = ex_doc.get("solvers", list(SOLVERS))
    if not isinstance(solvers, list) or not solvers:
        raise ValidationError("experiment.solvers", "expected a non-empty list")
    for s in solvers:
        if s not in SOLVERS:
            raise ValidationError("experiment.solvers", f"unknown solver {s!r}; expected {SOLVERS}")
    sweep = None
    if ex_doc.get("sweep") is not None:
        sw = ex_doc["sweep"]
        if not isinstance(sw, dict):
            raise ValidationError("experiment.sweep", "expected a mapping")
        _reject_unknown(sw, ("parameter", "values"), "experiment.sweep.")
        if sw.get("parameter") not in SWEEP_PARAMETERS:
            raise ValidationError(
                "experiment.sweep.parameter", f"expected one of {SWEEP_PARAMETERS}"
            )
        values = sw.get("values")
        if not isinstance(values, list) or not values:
            raise ValidationError("experiment.sweep.values", "expected a non-empty list")
        sweep = Sweep(
            sw["parameter"],
            tuple(_num(v, f"experiment.sweep.values[{i}]", positive=True) for i, v in enumerate(values)),
        )
    output_path = ex_doc.get("output_path")
    if output_path is not None and not isinstance(output_path, str):
        raise ValidationError("experiment.output_path", "expected a string")
    timing = ex_doc.get("timing", False)
    if not isinstance(timing, bool):
        raise ValidationError("experiment.timing", "expected true or false")

    sa_doc = _section(doc, "sa", "")
    _reject_unknown(sa_doc, ("t0", "cool", "t_min"), "sa.")
    sa = SAParams(
        t0=_num(sa_doc.get("t0"), "sa.t0", positive=True, allow_none=True),
        cool=_num(sa_doc.get("cool", 0.95), "sa.cool"),
        t_min=_num(sa_doc.get("t_min", 0.1), "sa.t_min"),
    )

    return ExperimentConfig(
        scenario=scenario,
        generator=generator,
        solvers=tuple(solvers),
        trials=_int(ex_doc.get("trials", 1), "experiment.trials", minimum=1),
        sweep=sweep,
        seed=_int(ex_doc.get("seed", 0), "experiment.seed", minimum=0),
        output_path=output_path,
        sa=sa,
        timing=timing,
        brute_force_cap=_int(ex_doc.get("brute_force_cap", 12), "experiment.brute_force_cap", minimum=0),
        has_graph=has_graph,
        unused=unused,
    )


def _read_yaml(path: Path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    try:
        return yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        raise ParseError(
            f"{path}: {exc.problem}",
            line=None if mark is None else mark.line + 1,
            column=None if mark is None else mark.column + 1,
        ) from exc
    except yaml.YAMLError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    return parse_config(_read_yaml(path), base_dir=path.parent)


def config_to_dict(config: ExperimentConfig) -> dict:
    sc = config.scenario
    doc: dict[str, Any] = {}
    if config.has_graph:
        doc["graph"] = {
            "subtasks": [
                {"id": s.id, "workload": s.workload, "data_size": s.data_size}
                for s in sc.graph.subtasks
            ],
            "edges": [list(e) for e in sc.graph.edges],
        }
    scen: dict[str, Any] = {key: float(getattr(sc, key)) for key in _SCENARIO_NUMBERS}
    up = {"mode": sc.uplink.mode}
    for key in _UPLINK_NUMBERS:
        value = getattr(sc.uplink, key)
        if value is not None:
            up[key] = float(value)
    if sc.uplink.mode == "shannon" and sc.uplink.rate is None:
        up.pop("rate", None)
    scen["uplink"] = up
    scen["budget"] = sc.budget if sc.budget == "auto" else float(sc.budget)
    scen["budget_norm_freq"] = sc.budget_norm_freq
    scen["transfer_size"] = sc.transfer_size
    scen["edge_cloud_fetch"] = sc.edge_cloud_fetch
    for key, value in config.unused:
        scen[key] = value
    doc["scenario"] = scen
    if config.generator is not None:
        g = config.generator
        gen: dict[str, Any] = {
            "workload": list(g.workload),
            "data_size": list(g.data_size),
            "edge_prob": g.edge_prob,
        }
        if g.n is not None:
            gen["n"] = g.n
        doc["generator"] = gen
    doc["experiment"] = {
        "solvers": list(config.solvers),
        "trials": config.trials,
        "sweep": None if config.sweep is None else {
            "parameter": config.sweep.parameter, "values": list(config.sweep.values)
        },
        "seed": config.seed,
        "output_path": config.output_path,
        "timing": config.timing,
        "brute_force_cap": config.brute_force_cap,
    }
    doc["sa"] = {"t0": config.sa.t0, "cool": config.sa.cool, "t_min": config.sa.t_min}
    return doc


def dump_config(config: ExperimentConfig) -> str:
    return yaml.safe_dump(config_to_dict(config), sort_keys=False, default_flow_style=None)


def save_config(config: ExperimentConfig, path):
    Path(path).write_text(dump_config(config))


# -- instances and sweeps -------------------------------------------------------

def generate_instance(config: ExperimentConfig, trial_index: int) -> Scenario:
    """Draw trial ``trial_index``'s workloads and data sizes.

    The random stream depends only on ``(config.seed, trial_index)``.
    """
    gen = config.generator
    if gen is None:
        return config.scenario
    rng = np.random.default_rng([config.seed, trial_index])
    if config.has_graph:
        n = config.scenario.n
        edges = config.scenario.graph.edges
    else:
        n = gen.n
        edges = [
            (i, j) for i in range(n) for j in range(i + 1, n)
            if rng.random() < gen.edge_prob
        ]
    workloads = rng.uniform(gen.workload[0], gen.workload[1], size=n)
    data = rng.uniform(gen.data_size[0], gen.data_size[1], size=n)
    graph = build_graph(
        [Subtask(i, float(workloads[i]), float(data[i])) for i in range(n)], edges
    )
    return config.scenario.replace(graph=graph)


def apply_sweep(scenario: Scenario, parameter: str | None, value: float) -> Scenario:
    if parameter is None:
        return scenario
    if parameter == "workload_scale":
        return scenario.scale_workloads(value)
    if parameter == "budget_scale":
        return scenario.replace(budget=value * budget_of(scenario))
    raise ValueError(f"unknown sweep parameter {parameter!r}")


def _sa_seed(seed, trial_index, sweep_index):
    return int(np.random.SeedSequence([seed, trial_index, sweep_index]).generate_state(1)[0])


def _row(trial_index, sweep_value, solver, scenario, sol=None, error=None, timing=False):
    if sol is not None:
        policy, report = sol.policy, sol.report
        wall, iterations = sol.wall_time, sol.iterations
    else:
        policy, report = error.policy, error.report
        wall, iterations = 0.0, 0
    budget = budget_of(scenario)
    if policy is None:
        return TrialRow(
            trial_index, sweep_value, solver, math.nan, math.nan, budget, math.nan,
            False, 0, 0, 0, wall if timing else 0.0, iterations, "",
        )
    n_local, n_edge, n_cloud = policy.counts()
    return TrialRow(
        trial_index, sweep_value, solver,
        report.total_energy, report.total_time, budget, report.edge_utility,
        report.feasible and error is None, n_local, n_edge, n_cloud,
        wall if timing else 0.0, iterations, str(policy),
    )


def _run_unit(config: ExperimentConfig, sweep_index: int, trial_index: int) -> list[TrialRow]:
    parameter = config.sweep.parameter if config.sweep else None
    value = config.sweep.values[sweep_index] if config.sweep else 1.0
    scenario = apply_sweep(generate_instance(config, trial_index), parameter, value)
    rows = []
    for solver in config.solvers:
        sa = replace(config.sa, seed=_sa_seed(config.seed, trial_index, sweep_index))
        try:
            sol = solve(scenario, solver, sa, max_n=config.brute_force_cap)
        except InfeasibleError as exc:
            rows.append(_row(trial_index, value, solver, scenario, error=exc, timing=config.timing))
        except Exception as exc:  # a failing solver must not abort the sweep
            err = InfeasibleError(str(exc))
            rows.append(_row(trial_index, value, solver, scenario, error=err, timing=config.timing))
        else:
            rows.append(_row(trial_index, value, solver, scenario, sol=sol, timing=config.timing))
    return rows


def worker_count() -> int:
    """Worker processes from ``EDGEOFF_THREADS`` (unset: 1, 0: all cores)."""
    raw = os.environ.get("EDGEOFF_THREADS", "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"EDGEOFF_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ConfigError("EDGEOFF_THREADS must be >= 0")
    return n or (os.cpu_count() or 1)


def run_experiment(config: ExperimentConfig, workers: int | None = None) -> TrialReport:
    """Solve every (sweep value, trial, solver) combination.

    Rows come out ordered by sweep index, trial index and solver position in
    the config, however the work was scheduled.
    """
    n_sweep = len(config.sweep.values) if config.sweep else 1
    units = [(s, t) for s in range(n_sweep) for t in range(config.trials)]
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(units) <= 1:
        chunks = [_run_unit(config, s, t) for s, t in units]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_unit, config, s, t) for s, t in units]
            chunks = [f.result() for f in futures]
    keyed = []
    for (s, t), rows in zip(units, chunks):
        for rank, row in enumerate(rows):
            keyed.append(((s, t, rank), row))
    keyed.sort(key=lambda kv: kv[0])
    return TrialReport(tuple(row for _, row in keyed))


# -- reports --------------------------------------------------------------------

def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def summary_path(path) -> Path:
    path = Path(path)
    return path.with_name(path.stem + ".summary" + (path.suffix or ".csv"))


def _summary(report: TrialReport) -> list[list[str]]:
    groups: dict[tuple[float, str], list[TrialRow]] = {}
    for row in report.rows:
        groups.setdefault((row.sweep_value, row.solver), []).append(row)
    out = []
    for (value, solver), rows in groups.items():
        line = [_fmt(value), solver, str(len(rows)), str(sum(r.feasible for r in rows))]
        for attr in ("energy", "completion_time", "wall_time"):
            data = [getattr(r, attr) for r in rows if r.feasible]
            if data:
                line += [_fmt(float(statistics.fmean(data))), _fmt(float(min(data))), _fmt(float(max(data)))]
            else:
                line += ["nan", "nan", "nan"]
        line += [str(sum(getattr(r, k) for r in rows)) for k in ("n_local", "n_edge", "n_cloud")]
        out.append(line)
    return out


SUMMARY_FIELDS = (
    "sweep_value", "solver", "rows", "feasible_rows",
    "energy_mean", "energy_min", "energy_max",
    "completion_time_mean", "completion_time_min", "completion_time_max",
    "wall_time_mean", "wall_time_min", "wall_time_max",
    "n_local_sum", "n_edge_sum", "n_cloud_sum",
)


def emit_report(report: TrialReport, path, summary: bool = True) -> Path:
    """Write ``report`` as CSV (header + one line per row).

    The per-solver, per-sweep-value summary goes to a sibling
    ``<name>.summary.csv`` so the main table stays a plain rectangle.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(ROW_FIELDS)
    for row in report.rows:
        writer.writerow([_fmt(getattr(row, name)) for name in ROW_FIELDS])
    path.write_text(buf.getvalue())
    if summary:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(SUMMARY_FIELDS)
        writer.writerows(_summary(report))
        summary_path(path).write_text(buf.getvalue())
    return path


def read_report(path) -> TrialReport:
    casts = {f.name: f.type for f in fields(TrialRow)}
    rows = []
    with open(path, newline="") as fh:
        for raw in csv.DictReader(fh):
            values = {}
            for name in ROW_FIELDS:
                kind = casts[name]
                text = raw[name]
                if kind == "bool":
                    values[name] = text == "true"
                elif kind == "int":
                    values[name] = int(text)
                elif kind == "float":
                    values[name] = float(text)
                else:
                    values[name] = text
            rows.append(TrialRow(**values))
    return TrialReport(tuple(rows))
