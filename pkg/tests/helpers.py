"""Random instance builders shared by the test modules."""

import random

from edgeoff import Scenario, Subtask, Uplink, build_graph
from edgeoff.harness import canonical_graph

CANONICAL_EDGES = canonical_graph().edges


def random_dag_edges(rng, n, p=0.4):
    return [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]


def random_scenario(rng: random.Random, n: int, edges=None, *, variants=False, budget_frac=None):
    """Scenario with device, edge and cloud costs of comparable magnitude.

    Per-cycle edge and cloud energies are drawn as multiples of the local
    one, so no site dominates and the solvers face real trade-offs.
    ``variants`` also randomises the transfer-size and edge-to-cloud fetch switches and the
    uplink mode.
    """
    if edges is None:
        edges = random_dag_edges(rng, n)
    subtasks = [Subtask(i, rng.uniform(1e8, 1e9), rng.uniform(1e4, 1e6)) for i in range(n)]
    graph = build_graph(subtasks, edges)

    f_local = rng.uniform(0.5e9, 1.5e9)
    k = rng.uniform(0.5e-27, 2e-27)
    local_per_cycle = k * f_local ** 2
    sigma = rng.uniform(2.5, 3.0)

    def server(f):
        ratio = rng.uniform(0.2, 3.0)
        beta = 0.1 * ratio * local_per_cycle * f
        alpha = 0.9 * ratio * local_per_cycle * f / f ** sigma
        return alpha, beta

    f_edge = rng.uniform(2e9, 5e9)
    f_cloud = rng.uniform(4e9, 1e10)
    a_f, b_f = server(f_edge)
    a_c, b_c = server(f_cloud)

    uplink = Uplink(mode="fixed_rate", rate=rng.uniform(1e6, 1e7))
    transfer_size, fetch = "consumer", "relay"
    if variants:
        if rng.random() < 0.5:
            uplink = Uplink(
                mode="shannon", rate=None, bandwidth_hz=rng.uniform(1e6, 5e6),
                channel_gain=rng.uniform(1, 50), noise_power=rng.uniform(0.1, 1),
                interference=rng.uniform(0, 0.5),
            )
        transfer_size = rng.choice(["consumer", "predecessor"])
        fetch = "edge_exec" if rng.random() < 0.3 else "relay"

    local_time = sum(s.workload for s in subtasks) / f_local
    frac = rng.uniform(0.3, 1.2) if budget_frac is None else budget_frac
    budget = max(frac * local_time, 1e-9)
    return Scenario(
        graph=graph,
        f_local=f_local,
        f_edge=f_edge,
        f_cloud=f_cloud,
        k_energy=k,
        alpha_edge=a_f,
        beta_edge=b_f,
        alpha_cloud=a_c,
        beta_cloud=b_c,
        sigma_exp=sigma,
        p_tx_device=rng.uniform(0.05, 0.5),
        p_relay=rng.uniform(0.5, 3.0),
        uplink=uplink,
        relay_bandwidth=rng.uniform(1e7, 1e8),
        service_price=rng.uniform(0.01, 1.0),
        budget=budget,
        transfer_size=transfer_size,
        edge_cloud_fetch=fetch,
    )


def reference_scenario(rng: random.Random, workload=(5e7, 1.25e8), data_size=(1e5, 1e6)):
    """Canonical 8-subtask graph with the reference constants and auto budget."""
    subtasks = [
        Subtask(i, rng.uniform(*workload), rng.uniform(*data_size)) for i in range(8)
    ]
    return Scenario(graph=build_graph(subtasks, CANONICAL_EDGES))


def rel_err(a, b):
    if a == b:
        return 0.0
    return abs(a - b) / max(abs(a), abs(b))
