"""Placement solvers: exhaustive search, the Gain greedy and simulated annealing."""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field

from .costmodel import CostReport, OffloadPolicy, Scenario, evaluate
from .errors import InfeasibleError, InstanceTooLargeError, ValidationError
from .taskgraph import topological_order

__all__ = [
    "Solution",
    "SAParams",
    "EpsilonBound",
    "brute_force",
    "gain",
    "simulated_annealing",
    "epsilon_bound",
    "accept_probability",
    "SOLVERS",
]

BRUTE_FORCE = "brute_force"
GAIN = "gain"
SA = "sa"
SOLVERS = (BRUTE_FORCE, GAIN, SA)
SITE_VALUES = (0, 1, 2)

# moves the budget repair may try, by current site
_BUDGET_MOVES = {0: (1,), 1: (0,), 2: (0, 1)}


@dataclass
class Solution:
    policy: OffloadPolicy | None
    report: CostReport | None
    solver: str
    iterations: int = 0
    wall_time: float = 0.0
    meta: dict = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return self.report is not None and self.report.feasible

    @property
    def energy(self) -> float:
        return self.report.total_energy if self.report is not None else math.nan


@dataclass(frozen=True)
class SAParams:
    """Annealing schedule. ``t0=None`` means 10x the energy of the Gain start."""

    t0: float | None = None
    cool: float = 0.95
    t_min: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.cool < 1:
            raise ValidationError("cool", f"must lie in (0, 1), got {self.cool!r}")
        if not self.t_min > 0:
            raise ValidationError("t_min", f"must be > 0, got {self.t_min!r}")
        if self.t0 is not None and not self.t0 > self.t_min:
            raise ValidationError("t0", f"must exceed t_min={self.t_min}, got {self.t0!r}")


@dataclass(frozen=True)
class EpsilonBound:
    lower: float
    upper: float
    epsilon: float


def brute_force(scenario: Scenario, max_n: int = 12) -> Solution:
    """Exhaustive search over all 3**N placements.

    Returns the feasible placement with least energy; among equal energies the
    lexicographically smallest vector (Local < Edge < Cloud) wins.  When no
    placement is feasible the solution carries no policy.
    """
    n = scenario.n
    if n > max_n:
        raise InstanceTooLargeError(f"brute force capped at N={max_n}, got N={n}")
    start = time.perf_counter()
    tab = scenario.tables
    best = None
    best_energy = math.inf
    count = 0
    for sites in itertools.product(SITE_VALUES, repeat=n):
        count += 1
        total_time, energy, utility = tab.totals(sites)
        if utility > 0 and total_time < tab.budget and energy < best_energy:
            best, best_energy = sites, energy
    wall = time.perf_counter() - start
    if best is None:
        return Solution(None, None, BRUTE_FORCE, iterations=count, wall_time=wall)
    policy = OffloadPolicy(best)
    return Solution(policy, evaluate(scenario, policy), BRUTE_FORCE, count, wall)


def _move_delta(tab, sites, i, target):
    """Change in (TF_m, E_m) when subtask ``i`` moves to ``target``.

    Only ``i`` and its successors see a different cost, so the rest of the
    placement is not re-evaluated.
    """
    affected = (i,) + tuple(tab.succ[i])
    old_t = old_e = 0.0
    for j in affected:
        t, e = tab.task_cost(sites, j)
        old_t += t
        old_e += e
    current = sites[i]
    sites[i] = target
    new_t = new_e = 0.0
    for j in affected:
        t, e = tab.task_cost(sites, j)
        new_t += t
        new_e += e
    sites[i] = current
    return new_t - old_t, new_e - old_e


def _cheapest(candidates):
    # candidates: (delta_e, task, target); min() keeps the first on ties,
    # and the lists are built in (task, site) order
    best = None
    for cand in candidates:
        if best is None or cand[0] < best[0]:
            best = cand
    return best


def gain(scenario: Scenario, max_moves: int | None = None) -> Solution:
    """Greedy per-subtask minimum-energy placement followed by feasibility repair.

    Phase 1 visits subtasks in topological order and gives each the site with
    the least completion energy given its (already placed) predecessors.

    Phase 2 repeats until ``U > 0`` and ``TF < budget``:

    * utility repair: if ``U <= 0``, move the Cloud subtask whose move to Edge
      or Local changes energy least.  With nothing on Cloud, ``U <= 0`` means
      nothing is on Edge either, so the cheapest Local -> Edge move is used.
    * budget repair: if ``TF >= budget``, among the admissible moves
      (Local -> Edge, Edge -> Local, Cloud -> Edge/Local) that strictly reduce
      ``TF``, apply the one that changes energy least.

    A subtask never returns to a site it has left.  Local and Edge subtasks
    can therefore move once and Cloud subtasks twice, so Phase 2 makes at
    most ``N + initial_cloud`` moves.  ``iterations`` reports that count.
    """
    start = time.perf_counter()
    tab = scenario.tables
    n = scenario.n
    sites = [0] * n
    for i in topological_order(scenario.graph):
        best_site, best_e = 0, math.inf
        for s in SITE_VALUES:
            sites[i] = s
            e = tab.task_cost(sites, i)[1]
            if e < best_e:
                best_site, best_e = s, e
        sites[i] = best_site

    initial = OffloadPolicy(tuple(sites))
    initial_cloud = sites.count(2)
    cap = n + initial_cloud if max_moves is None else max_moves
    left = [set() for _ in range(n)]  # sites each subtask has moved away from
    moves = utility_moves = budget_moves = 0
    trace = []  # (kind, subtask, from, to, TF before, TF after)
    total_time, _, utility = tab.totals(sites)

    def _meta():
        return {
            "initial_policy": str(initial),
            "initial_cloud": initial_cloud,
            "utility_moves": utility_moves,
            "budget_moves": budget_moves,
            "trace": [tuple(step) for step in trace],
        }

    def fail(reason):
        policy = OffloadPolicy(tuple(sites))
        raise InfeasibleError(
            f"gain: {reason}", policy=policy, report=evaluate(scenario, policy),
            iterations=moves, meta=_meta(),
        )

    while not (utility > 0 and total_time < tab.budget):
        moved = False
        if utility <= 0:
            cands = [
                (_move_delta(tab, sites, i, t)[1], i, t)
                for i in range(n) if sites[i] == 2
                for t in (0, 1) if t not in left[i]
            ]
            if not cands:
                cands = [
                    (_move_delta(tab, sites, i, 1)[1], i, 1)
                    for i in range(n) if sites[i] == 0 and 1 not in left[i]
                ]
            pick = _cheapest(cands)
            if pick is not None:
                _, i, t = pick
                before = total_time
                left[i].add(sites[i])
                trace.append(["utility", i, sites[i], t, before])
                sites[i] = t
                moves += 1
                utility_moves += 1
                moved = True
                total_time, _, utility = tab.totals(sites)
                trace[-1].append(total_time)

        if total_time >= tab.budget:
            cands = []
            for i in range(n):
                for t in _BUDGET_MOVES[sites[i]]:
                    if t in left[i]:
                        continue
                    d_time, d_energy = _move_delta(tab, sites, i, t)
                    if d_time < 0:
                        cands.append((d_energy, i, t))
            pick = _cheapest(cands)
            if pick is not None:
                _, i, t = pick
                before = total_time
                left[i].add(sites[i])
                trace.append(["budget", i, sites[i], t, before])
                sites[i] = t
                moves += 1
                budget_moves += 1
                moved = True
                total_time, _, utility = tab.totals(sites)
                trace[-1].append(total_time)

        if not moved:
            fail("no admissible repair move left")
        if moves > cap and not (utility > 0 and total_time < tab.budget):
            fail(f"repair exceeded {cap} moves")

    policy = OffloadPolicy(tuple(sites))
    return Solution(
        policy, evaluate(scenario, policy), GAIN, moves, time.perf_counter() - start, _meta()
    )


def accept_probability(delta_energy: float, temperature: float) -> float:
    """Metropolis rule, clamped to 1 for non-worsening moves."""
    if delta_energy <= 0:
        return 1.0
    return math.exp(-delta_energy / temperature)


def simulated_annealing(scenario: Scenario, params: SAParams | None = None) -> Solution:
    """Anneal from the Gain placement, keeping only feasible states.

    Each step reassigns one uniformly chosen subtask to a uniformly chosen
    site; feasible proposals are accepted by the Metropolis rule, infeasible
    ones are dropped.  The temperature is multiplied by ``cool`` every step
    until it reaches ``t_min``.  The best feasible placement seen is returned.
    """
    params = params or SAParams()
    start = time.perf_counter()
    seed_sol = gain(scenario)
    tab = scenario.tables
    rng = random.Random(params.seed)
    n = scenario.n

    sites = list(seed_sol.policy.sites)
    current_e = seed_sol.report.total_energy
    best, best_e = tuple(sites), current_e
    t0 = params.t0 if params.t0 is not None else 10.0 * current_e
    temp = t0
    steps = accepted = 0
    while temp > params.t_min and n > 0:
        steps += 1
        i = rng.randrange(n)
        site = rng.randrange(3)
        old = sites[i]
        sites[i] = site
        total_time, energy, utility = tab.totals(sites)
        keep = False
        if utility > 0 and total_time < tab.budget:
            p = accept_probability(energy - current_e, temp)
            keep = p >= 1.0 or rng.random() < p
        if keep:
            accepted += 1
            current_e = energy
            if energy < best_e:
                best, best_e = tuple(sites), energy
        else:
            sites[i] = old
        temp *= params.cool

    policy = OffloadPolicy(best)
    meta = {"accepted": accepted, "gain_energy": seed_sol.report.total_energy, "t0": t0}
    return Solution(
        policy, evaluate(scenario, policy), SA, steps, time.perf_counter() - start, meta
    )


def epsilon_bound(scenario: Scenario) -> EpsilonBound:
    """Per-subtask extreme completion energies and the resulting ratio.

    ``lower`` sums, over subtasks, the least completion energy over the
    subtask's own site and every site combination of its predecessors;
    ``upper`` sums the greatest.  The fetch energy of each predecessor only
    depends on its own site, so the extremes decompose per predecessor.
    """
    tab = scenario.tables
    lower = upper = 0.0
    for i in range(scenario.n):
        lo = hi = None
        for s in SITE_VALUES:
            base = tab.exec_e[s][i]
            fetch_lo = sum(min(e9[3 * a + s] for a in SITE_VALUES) for _, _, e9 in tab.pred[i])
            fetch_hi = sum(max(e9[3 * a + s] for a in SITE_VALUES) for _, _, e9 in tab.pred[i])
            lo = base + fetch_lo if lo is None else min(lo, base + fetch_lo)
            hi = base + fetch_hi if hi is None else max(hi, base + fetch_hi)
        lower += lo
        upper += hi
    if lower == 0:
        raise ZeroDivisionError("epsilon bound undefined: every completion energy is zero")
    return EpsilonBound(lower, upper, upper / lower - 1.0)


def solve(scenario: Scenario, solver: str, sa_params: SAParams | None = None,
          max_n: int = 12) -> Solution:
    if solver == BRUTE_FORCE:
        return brute_force(scenario, max_n=max_n)
    if solver == GAIN:
        return gain(scenario)
    if solver == SA:
        return simulated_annealing(scenario, sa_params)
    raise ValueError(f"unknown solver {solver!r}; expected one of {SOLVERS}")
