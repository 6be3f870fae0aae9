"""Three-tier (device / edge / cloud) delay, energy and utility model.

Every quantity here is a pure function of a :class:`Scenario` and an
:class:`OffloadPolicy`.  Per-subtask constants (transfer delays, execution
costs, the 3x3 site-pair transfer tables of every edge) are computed once per
scenario and cached, which keeps :func:`evaluate` cheap enough for exhaustive
search.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from enum import IntEnum
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

from .errors import IncompletePolicyError, ValidationError, ZeroRateError
from .taskgraph import Subtask, TaskGraph

__all__ = [
    "Site",
    "Uplink",
    "Scenario",
    "OffloadPolicy",
    "CostReport",
    "uplink_rate",
    "tx_to_edge",
    "relay_to_cloud",
    "exec_cost",
    "completion_time",
    "completion_energy",
    "evaluate",
    "budget_of",
]

SITES_ORDER = (0, 1, 2)


class Site(IntEnum):
    """Execution site. The integer order doubles as the tie-break order."""

    LOCAL = 0
    EDGE = 1
    CLOUD = 2

    @property
    def letter(self) -> str:
        return "LEC"[self]

    @classmethod
    def parse(cls, value) -> "Site":
        if isinstance(value, Site):
            return value
        if isinstance(value, int):
            return cls(value)
        text = str(value).strip().upper()
        for site in cls:
            if text in (site.name, site.letter):
                return site
        raise ValueError(f"unknown site {value!r}")


@dataclass(frozen=True)
class Uplink:
    """Device-to-edge channel.

    ``fixed_rate`` uses ``rate`` directly.  ``shannon`` evaluates
    ``W log2(1 + P G / (noise + interference))``; the gain is either given as
    ``channel_gain`` or derived as ``distance**-path_loss_exp * fading**2``.
    """

    mode: str = "fixed_rate"
    rate: float | None = 2e6
    bandwidth_hz: float | None = None
    channel_gain: float | None = None
    noise_power: float = 1.0
    interference: float = 0.0
    distance: float | None = None
    path_loss_exp: float | None = None
    fading: float | None = None

    def __post_init__(self):
        if self.mode == "fixed_rate":
            if self.rate is None or not self.rate >= 0:
                raise ValidationError("uplink.rate", "fixed_rate mode needs a rate >= 0")
        elif self.mode == "shannon":
            if self.bandwidth_hz is None or not self.bandwidth_hz > 0:
                raise ValidationError("uplink.bandwidth_hz", "must be > 0")
            if not self.noise_power > 0:
                raise ValidationError("uplink.noise_power", "must be > 0")
            if not self.interference >= 0:
                raise ValidationError("uplink.interference", "must be >= 0")
            if self.channel_gain is None:
                if None in (self.distance, self.path_loss_exp, self.fading):
                    raise ValidationError(
                        "uplink.channel_gain",
                        "give channel_gain or all of distance, path_loss_exp, fading",
                    )
                if not self.distance > 0:
                    raise ValidationError("uplink.distance", "must be > 0")
            elif not self.channel_gain >= 0:
                raise ValidationError("uplink.channel_gain", "must be >= 0")
        else:
            raise ValidationError("uplink.mode", f"expected fixed_rate or shannon, got {self.mode!r}")

    @property
    def gain(self) -> float:
        if self.channel_gain is not None:
            return self.channel_gain
        return self.distance ** (-self.path_loss_exp) * abs(self.fading) ** 2


@dataclass(frozen=True)
class Scenario:
    """Full parameter set for one device's application.

    Defaults are the simulation constants of the reference setup; the service
    price has no published value and defaults to 1.
    """

    graph: TaskGraph
    f_local: float = 5e6
    f_edge: float = 2e9
    f_cloud: float = 4e9
    k_energy: float = 1e-11
    alpha_edge: float = 0.1
    beta_edge: float = 0.1
    alpha_cloud: float = 0.2
    beta_cloud: float = 0.2
    sigma_exp: float = 3.0
    p_tx_device: float = 0.1
    p_relay: float = 3.0
    uplink: Uplink = field(default_factory=Uplink)
    relay_bandwidth: float = 1024e6
    service_price: float = 1.0
    budget: Union[float, str] = "auto"
    # only used by the "auto" budget; None means f_local
    budget_norm_freq: float | None = None
    # "consumer" indexes fetch transfers by the subtask doing the fetching
    transfer_size: str = "consumer"
    # energy charged when a cloud subtask fetches an edge result: the relay
    # energy, or (alternative reading) the consumer's edge execution energy
    edge_cloud_fetch: str = "relay"

    def __post_init__(self):
        for name in (
            "f_local", "f_edge", "f_cloud", "k_energy", "alpha_edge", "beta_edge",
            "alpha_cloud", "beta_cloud", "p_tx_device", "p_relay", "relay_bandwidth",
            "service_price",
        ):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ValidationError(name, f"must be a finite number > 0, got {value!r}")
        if not 2.5 <= self.sigma_exp <= 3.0:
            raise ValidationError("sigma_exp", f"must lie in [2.5, 3], got {self.sigma_exp!r}")
        if isinstance(self.budget, str):
            if self.budget != "auto":
                raise ValidationError("budget", f"expected a number or 'auto', got {self.budget!r}")
        elif not self.budget > 0:
            raise ValidationError("budget", f"must be > 0, got {self.budget!r}")
        if self.budget_norm_freq is not None and not self.budget_norm_freq > 0:
            raise ValidationError("budget_norm_freq", "must be > 0")
        if self.transfer_size not in ("consumer", "predecessor"):
            raise ValidationError("transfer_size", "expected 'consumer' or 'predecessor'")
        if self.edge_cloud_fetch not in ("relay", "edge_exec"):
            raise ValidationError("edge_cloud_fetch", "expected 'relay' or 'edge_exec'")

    @property
    def n(self) -> int:
        return self.graph.n

    def replace(self, **changes) -> "Scenario":
        return replace(self, **changes)

    def scale_workloads(self, factor: float) -> "Scenario":
        graph = self.graph.with_subtasks(
            Subtask(s.id, s.workload * factor, s.data_size) for s in self.graph.subtasks
        )
        return replace(self, graph=graph)

    @cached_property
    def tables(self) -> "_CostTables":
        return _CostTables(self)


@dataclass(frozen=True)
class OffloadPolicy:
    """One site per subtask, indexed by subtask id."""

    sites: tuple[Site, ...]

    def __post_init__(self):
        object.__setattr__(self, "sites", tuple(Site.parse(s) for s in self.sites))

    @classmethod
    def from_string(cls, text: str) -> "OffloadPolicy":
        return cls(tuple(Site.parse(c) for c in text))

    @classmethod
    def from_mapping(cls, placement: Mapping[int, Site], n: int) -> "OffloadPolicy":
        missing = [i for i in range(n) if i not in placement]
        extra = [i for i in placement if not (isinstance(i, int) and 0 <= i < n)]
        if missing or extra:
            raise IncompletePolicyError(f"policy missing ids {missing}, unknown ids {extra}")
        return cls(tuple(placement[i] for i in range(n)))

    @classmethod
    def uniform(cls, site: Site, n: int) -> "OffloadPolicy":
        return cls((Site(site),) * n)

    def __len__(self):
        return len(self.sites)

    def __getitem__(self, n: int) -> Site:
        return self.sites[n]

    def __str__(self):
        return "".join(s.letter for s in self.sites)

    @property
    def placement(self) -> dict[int, Site]:
        return dict(enumerate(self.sites))

    def with_site(self, n: int, site: Site) -> "OffloadPolicy":
        sites = list(self.sites)
        sites[n] = Site(site)
        return OffloadPolicy(tuple(sites))

    def counts(self) -> tuple[int, int, int]:
        """(n_local, n_edge, n_cloud)"""
        return (
            self.sites.count(Site.LOCAL),
            self.sites.count(Site.EDGE),
            self.sites.count(Site.CLOUD),
        )


@dataclass(frozen=True)
class CostReport:
    per_task_time: tuple[float, ...]
    per_task_energy: tuple[float, ...]
    total_time: float
    total_energy: float
    edge_utility: float
    budget: float
    violations: tuple[str, ...]

    @property
    def feasible(self) -> bool:
        return not self.violations


# -- single-link and single-site costs -----------------------------------------

def uplink_rate(scenario: Scenario, n: int | None = None) -> float:
    """Device-to-edge rate in bits/s. The channel is shared by all subtasks."""
    up = scenario.uplink
    if up.mode == "fixed_rate":
        return float(up.rate)
    snr = scenario.p_tx_device * up.gain / (up.noise_power + up.interference)
    return up.bandwidth_hz * math.log2(1.0 + snr)


def tx_to_edge(scenario: Scenario, n: int) -> tuple[float, float]:
    """(delay, device energy) of pushing subtask ``n``'s data over the uplink."""
    d = scenario.graph.subtasks[_valid(scenario, n)].data_size
    if d == 0:
        return 0.0, 0.0
    rate = uplink_rate(scenario, n)
    if rate <= 0:
        raise ZeroRateError(f"subtask {n}: {d} bits over a zero-rate uplink")
    delay = d / rate
    return delay, scenario.p_tx_device * delay


def relay_to_cloud(scenario: Scenario, n: int) -> tuple[float, float]:
    d = scenario.graph.subtasks[_valid(scenario, n)].data_size
    delay = d / scenario.relay_bandwidth
    return delay, scenario.p_relay * delay


def exec_cost(scenario: Scenario, n: int, site: Site) -> tuple[float, float]:
    """(delay, energy) of executing subtask ``n`` at ``site``."""
    w = scenario.graph.subtasks[_valid(scenario, n)].workload
    site = Site.parse(site)
    if site is Site.LOCAL:
        f = scenario.f_local
        return w / f, scenario.k_energy * w * f * f
    if site is Site.EDGE:
        f, a, b = scenario.f_edge, scenario.alpha_edge, scenario.beta_edge
    else:
        f, a, b = scenario.f_cloud, scenario.alpha_cloud, scenario.beta_cloud
    delay = w / f
    return delay, (a * f ** scenario.sigma_exp + b) * delay


def _valid(scenario, n):
    scenario.graph._check(n)
    return n


# -- cached per-scenario tables -------------------------------------------------

class _CostTables:
    """Precomputed per-subtask constants.

    ``pred[n]`` lists ``(k, delay9, energy9)`` for each predecessor k of n,
    where ``delay9[3*site_k + site_n]`` is the fetch delay for that site pair.
    """

    def __init__(self, sc: Scenario):
        g = sc.graph
        n_tasks = g.n
        rate = uplink_rate(sc)
        self.n = n_tasks
        self.budget = budget_of(sc)
        self.price = sc.service_price

        tt, et, tr, er = [], [], [], []
        for s in g.subtasks:
            d = s.data_size
            if d == 0:
                t_up = 0.0
            elif rate > 0:
                t_up = d / rate
            else:
                t_up = math.inf
            t_relay = d / sc.relay_bandwidth
            tt.append(t_up)
            et.append(sc.p_tx_device * t_up)
            tr.append(t_relay)
            er.append(sc.p_relay * t_relay)
        self.t_tx, self.e_tx, self.t_relay, self.e_relay = tt, et, tr, er

        self.exec_t = [[0.0] * n_tasks for _ in SITES_ORDER]
        self.exec_e = [[0.0] * n_tasks for _ in SITES_ORDER]
        for i in range(n_tasks):
            for site in Site:
                t, e = exec_cost(sc, i, site)
                self.exec_t[site][i] = t
                self.exec_e[site][i] = e

        by_consumer = sc.transfer_size == "consumer"
        self.pred = []
        for i in range(n_tasks):
            entries = []
            for k in g.pre(i):
                j = i if by_consumer else k
                a, b = tt[j], tr[j]
                ea, eb = et[j], er[j]
                delay9 = (0.0, a, a + b,
                          a, 0.0, b,
                          a + b, b, 0.0)
                e_ec = self.exec_e[Site.EDGE][i] if sc.edge_cloud_fetch == "edge_exec" else eb
                energy9 = (0.0, ea, ea + eb,
                           ea, 0.0, e_ec,
                           ea + eb, eb, 0.0)
                entries.append((k, delay9, energy9))
            self.pred.append(tuple(entries))
        self.succ = [g.succ(i) for i in range(n_tasks)]

    def task_cost(self, sites: Sequence[int], i: int) -> tuple[float, float]:
        s = sites[i]
        fetch = 0.0
        energy = self.exec_e[s][i]
        for k, delay9, energy9 in self.pred[i]:
            idx = 3 * sites[k] + s
            if delay9[idx] > fetch:
                fetch = delay9[idx]
            energy += energy9[idx]
        return fetch + self.exec_t[s][i], energy

    def costs(self, sites: Sequence[int]) -> tuple[list[float], list[float]]:
        times, energies = [], []
        for i in range(self.n):
            t, e = self.task_cost(sites, i)
            times.append(t)
            energies.append(e)
        return times, energies

    def utility(self, sites: Sequence[int]) -> float:
        u = 0.0
        for i, s in enumerate(sites):
            if s == 1:
                u += self.price
            elif s == 2:
                u -= self.e_relay[i]
        return u

    def totals(self, sites: Sequence[int]) -> tuple[float, float, float]:
        """(TF_m, E_m, U_p^f)"""
        times, energies = self.costs(sites)
        return sum(times), sum(energies), self.utility(sites)

    def feasible(self, total_time: float, utility: float) -> bool:
        return utility > 0 and total_time < self.budget


# -- policy-level evaluation ----------------------------------------------------

def _sites_of(scenario: Scenario, policy) -> tuple[int, ...]:
    if isinstance(policy, Mapping):
        policy = OffloadPolicy.from_mapping(policy, scenario.n)
    elif not isinstance(policy, OffloadPolicy):
        policy = OffloadPolicy(tuple(policy))
    if len(policy) != scenario.n:
        raise IncompletePolicyError(
            f"policy covers {len(policy)} subtasks, graph has {scenario.n}"
        )
    return tuple(int(s) for s in policy.sites)


def completion_time(scenario: Scenario, policy, n: int) -> float:
    """Slowest predecessor-result fetch plus own execution delay."""
    sites = _sites_of(scenario, policy)
    _valid(scenario, n)
    return scenario.tables.task_cost(sites, n)[0]


def completion_energy(scenario: Scenario, policy, n: int) -> float:
    """Sum of predecessor-result fetch energies plus own execution energy."""
    sites = _sites_of(scenario, policy)
    _valid(scenario, n)
    return scenario.tables.task_cost(sites, n)[1]


def budget_of(scenario: Scenario) -> float:
    if scenario.budget != "auto":
        return float(scenario.budget)
    norm = scenario.budget_norm_freq or scenario.f_local
    return 0.5 * (sum(scenario.graph.workloads) / norm)


def violations_of(total_time: float, utility: float, budget: float) -> tuple[str, ...]:
    out = []
    if not utility > 0:
        out.append(f"utility: edge utility {utility:.6g} is not > 0")
    if not total_time < budget:
        out.append(f"budget: completion time {total_time:.6g} is not < budget {budget:.6g}")
    return tuple(out)


def evaluate(scenario: Scenario, policy) -> CostReport:
    """Cost breakdown and feasibility of ``policy``.

    ``policy`` may be an :class:`OffloadPolicy`, a sequence of sites or a
    mapping from id to site.
    """
    sites = _sites_of(scenario, policy)
    tab = scenario.tables
    times, energies = tab.costs(sites)
    total_time = sum(times)
    utility = tab.utility(sites)
    return CostReport(
        per_task_time=tuple(times),
        per_task_energy=tuple(energies),
        total_time=total_time,
        total_energy=sum(energies),
        edge_utility=utility,
        budget=tab.budget,
        violations=violations_of(total_time, utility, tab.budget),
    )


_UNUSED_REASONS = {
    "downlink_rate": "downlink transfers are charged at the uplink rate",
    "relay_downlink_bandwidth": "cloud-to-edge transfers are charged at the relay upstream rate",
    "p_tx_edge": "no cost term uses the edge server's radio power",
}


def warn_unused(keys: Iterable[str]):
    for key in keys:
        reason = _UNUSED_REASONS.get(key, "no cost term uses it")
        warnings.warn(f"{key} is parsed but unused: {reason}", stacklevel=3)
