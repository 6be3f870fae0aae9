"""Energy-minimising task offloading across device, edge server and cloud."""

from .costmodel import (
    CostReport,
    OffloadPolicy,
    Scenario,
    Site,
    Uplink,
    budget_of,
    completion_energy,
    completion_time,
    evaluate,
    exec_cost,
    relay_to_cloud,
    tx_to_edge,
    uplink_rate,
)
from .errors import (
    CycleError,
    DanglingEdgeError,
    DuplicateIdError,
    EdgeOffError,
    IncompletePolicyError,
    InfeasibleError,
    InstanceTooLargeError,
    ParseError,
    UnknownIdError,
    ValidationError,
    ZeroRateError,
)
from .harness import (
    ExperimentConfig,
    TrialReport,
    emit_report,
    generate_instance,
    load_config,
    run_experiment,
)
from .solvers import (
    EpsilonBound,
    SAParams,
    Solution,
    brute_force,
    epsilon_bound,
    gain,
    simulated_annealing,
)
from .taskgraph import Subtask, TaskGraph, build_graph, predecessors, topological_order

__version__ = "0.1.0"
