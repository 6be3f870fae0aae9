"""Dependency DAG of the subtasks belonging to one application."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import CycleError, DanglingEdgeError, DuplicateIdError, GraphError, UnknownIdError

__all__ = ["Subtask", "TaskGraph", "build_graph", "topological_order", "predecessors"]


@dataclass(frozen=True)
class Subtask:
    id: int
    workload: float  # CPU cycles
    data_size: float  # bits

    def __post_init__(self):
        if self.workload < 0 or self.data_size < 0:
            raise GraphError(f"subtask {self.id}: workload and data_size must be >= 0")


@dataclass(frozen=True)
class TaskGraph:
    """Immutable DAG. Subtasks are stored in id order, ids are ``0..N-1``.

    Use :func:`build_graph` rather than the constructor; it validates the
    edge list and rejects cycles.
    """

    subtasks: tuple[Subtask, ...]
    edges: tuple[tuple[int, int], ...]
    _pre: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    _succ: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    _order: tuple[int, ...] = field(repr=False, compare=False)

    def __len__(self):
        return len(self.subtasks)

    @property
    def n(self) -> int:
        return len(self.subtasks)

    @property
    def workloads(self) -> tuple[float, ...]:
        return tuple(s.workload for s in self.subtasks)

    @property
    def data_sizes(self) -> tuple[float, ...]:
        return tuple(s.data_size for s in self.subtasks)

    def pre(self, n: int) -> tuple[int, ...]:
        self._check(n)
        return self._pre[n]

    def succ(self, n: int) -> tuple[int, ...]:
        self._check(n)
        return self._succ[n]

    def _check(self, n):
        if not (isinstance(n, int) and 0 <= n < len(self.subtasks)):
            raise UnknownIdError(f"unknown subtask id {n!r}")

    def with_subtasks(self, subtasks: Iterable[Subtask]) -> "TaskGraph":
        """Same topology, new workloads/data sizes."""
        return build_graph(list(subtasks), self.edges)


def build_graph(subtasks: Sequence[Subtask], edges: Iterable[Sequence[int]]) -> TaskGraph:
    """Validate ``subtasks`` and ``edges`` (pairs ``(k, n)`` meaning k precedes n)."""
    by_id: dict[int, Subtask] = {}
    for s in subtasks:
        if s.id in by_id:
            raise DuplicateIdError(f"duplicate subtask id {s.id}")
        by_id[s.id] = s
    n = len(by_id)
    if sorted(by_id) != list(range(n)):
        raise GraphError(f"subtask ids must be 0..{n - 1}, got {sorted(by_id)}")

    edge_set = set()
    for e in edges:
        k, j = (int(x) for x in e)
        if k not in by_id or j not in by_id:
            raise DanglingEdgeError(f"edge {k}->{j} references an unknown subtask")
        if k == j:
            raise CycleError(f"self-loop on subtask {k}")
        edge_set.add((k, j))
    edge_list = tuple(sorted(edge_set))

    pre: list[list[int]] = [[] for _ in range(n)]
    succ: list[list[int]] = [[] for _ in range(n)]
    for k, j in edge_list:
        pre[j].append(k)
        succ[k].append(j)

    order = _kahn(n, pre, succ)
    return TaskGraph(
        subtasks=tuple(by_id[i] for i in range(n)),
        edges=edge_list,
        _pre=tuple(tuple(p) for p in pre),
        _succ=tuple(tuple(s) for s in succ),
        _order=order,
    )


def _kahn(n, pre, succ):
    indeg = [len(p) for p in pre]
    ready = [i for i in range(n) if indeg[i] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        i = heapq.heappop(ready)
        order.append(i)
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(ready, j)
    if len(order) != n:
        stuck = sorted(i for i in range(n) if indeg[i] > 0)
        raise CycleError(f"task graph contains a cycle through subtasks {stuck}")
    return tuple(order)


def topological_order(graph: TaskGraph) -> list[int]:
    """Execution order with ties broken by ascending id."""
    return list(graph._order)


def predecessors(graph: TaskGraph, n: int) -> set[int]:
    return set(graph.pre(n))
