"""Problem data: tasks, precedence DAG, duration bound, file format, generators."""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from enum import Enum
from functools import cached_property
from typing import Iterable, TextIO

from .rng import make_rng

__all__ = [
    "Coupling",
    "Instance",
    "InstanceError",
    "PrecedenceGraph",
    "Task",
    "generate_case",
    "parse_instance",
    "read_instance",
    "serialize_instance",
    "topological_order",
    "transitive_closure",
    "write_instance",
]

COST_RANGE_CENTS = (50, 1000)  # generated unit costs: 0.50 .. 10.00
DEFAULT_DENSITY = 0.15


class InstanceError(ValueError):
    """Malformed or infeasible instance. ``line`` is set for syntax errors."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Coupling(str, Enum):
    TIGHT = "tight"
    LOOSE = "loose"
    NONE = "none"


@dataclass(frozen=True)
class Task:
    id: int
    duration: int
    unit_cost: Decimal

    def __post_init__(self):
        if self.duration < 1:
            raise InstanceError(f"task {self.id}: duration must be >= 1, got {self.duration}")
        if not self.unit_cost > 0:
            raise InstanceError(f"task {self.id}: unit cost must be > 0, got {self.unit_cost}")


@dataclass(frozen=True)
class PrecedenceGraph:
    """Direct prerequisite pairs ``(i, j)``: task i must not be placed after task j."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset((int(i), int(j)) for i, j in self.edges))
        for i, j in self.edges:
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise InstanceError(f"edge ({i}, {j}) references a task outside 0..{self.n - 1}")
            if i == j:
                raise InstanceError(f"self-edge on task {i}")
        if topological_order(self.n, self.edges) is None:
            raise InstanceError("precedence graph contains a cycle")

    @cached_property
    def predecessors(self) -> tuple[tuple[int, ...], ...]:
        preds: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in sorted(self.edges):
            preds[j].append(i)
        return tuple(tuple(p) for p in preds)

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        succs: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in sorted(self.edges):
            succs[i].append(j)
        return tuple(tuple(s) for s in succs)

    @cached_property
    def edge_list(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))


@dataclass(frozen=True)
class Instance:
    tasks: tuple[Task, ...]
    precedence: PrecedenceGraph
    K: int

    def __post_init__(self):
        object.__setattr__(self, "tasks", tuple(self.tasks))
        if self.K < 1:
            raise InstanceError(f"duration bound K must be >= 1, got {self.K}")
        if len(self.tasks) != self.precedence.n:
            raise InstanceError("task count does not match precedence graph size")
        for idx, t in enumerate(self.tasks):
            if t.id != idx:
                raise InstanceError(f"tasks must be indexed contiguously; position {idx} holds id {t.id}")
            if t.duration > self.K:
                raise InstanceError(f"task {t.id}: duration {t.duration} exceeds K={self.K}")

    @property
    def n(self) -> int:
        return len(self.tasks)

    @cached_property
    def durations(self) -> tuple[int, ...]:
        return tuple(t.duration for t in self.tasks)

    @cached_property
    def costs(self) -> tuple[Decimal, ...]:
        return tuple(t.unit_cost for t in self.tasks)

    @property
    def predecessors(self) -> tuple[tuple[int, ...], ...]:
        return self.precedence.predecessors

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self.precedence.edge_list


def topological_order(n: int, edges: Iterable[tuple[int, int]]) -> list[int] | None:
    """Kahn's algorithm, smallest ready id first. None if the graph has a cycle."""
    indeg = [0] * n
    succs: list[list[int]] = [[] for _ in range(n)]
    for i, j in edges:
        succs[i].append(j)
        indeg[j] += 1
    ready = [v for v in range(n) if indeg[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in succs[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    return order if len(order) == n else None


def transitive_closure(g: PrecedenceGraph) -> set[tuple[int, int]]:
    closure = set()
    for src in range(g.n):
        stack = list(g.successors[src])
        seen = set()
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            closure.add((src, v))
            stack.extend(g.successors[v])
    return closure


def _parse_cost(tok: str, lineno: int) -> Decimal:
    try:
        value = Decimal(tok)
    except InvalidOperation:
        raise InstanceError(f"bad unit cost {tok!r}", lineno) from None
    if not value.is_finite():
        raise InstanceError(f"bad unit cost {tok!r}", lineno)
    return value


def _parse_int(tok: str, what: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InstanceError(f"bad {what} {tok!r}", lineno) from None


def parse_instance(text: str | TextIO) -> Instance:
    """Parse the line-oriented instance format.

    ``N K`` header, then N lines ``id duration unit_cost``, then any number
    of ``i j`` direct precedence edges. Lines starting with ``#`` and blank
    lines are ignored.
    """
    if not isinstance(text, str):
        text = text.read()
    lines = [
        (no, ln.split())
        for no, ln in enumerate(text.splitlines(), start=1)
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise InstanceError("empty instance")

    no, head = lines[0]
    if len(head) != 2:
        raise InstanceError("header must be 'N K'", no)
    n = _parse_int(head[0], "task count", no)
    k = _parse_int(head[1], "duration bound", no)
    if n < 1:
        raise InstanceError("task count must be >= 1", no)
    if len(lines) < n + 1:
        raise InstanceError(f"expected {n} task lines, found {len(lines) - 1}")

    by_id: dict[int, Task] = {}
    for no, toks in lines[1 : n + 1]:
        if len(toks) != 3:
            raise InstanceError("task line must be 'id duration unit_cost'", no)
        tid = _parse_int(toks[0], "task id", no)
        if not 0 <= tid < n:
            raise InstanceError(f"task id {tid} outside 0..{n - 1}", no)
        if tid in by_id:
            raise InstanceError(f"duplicate task id {tid}", no)
        duration = _parse_int(toks[1], "duration", no)
        cost = _parse_cost(toks[2], no)
        try:
            by_id[tid] = Task(tid, duration, cost)
        except InstanceError as exc:
            raise InstanceError(str(exc), no) from None
        if duration > k:
            raise InstanceError(f"task {tid}: duration {duration} exceeds K={k}", no)

    edges = set()
    for no, toks in lines[n + 1 :]:
        if len(toks) != 2:
            raise InstanceError("edge line must be 'i j'", no)
        i = _parse_int(toks[0], "task id", no)
        j = _parse_int(toks[1], "task id", no)
        if not (0 <= i < n and 0 <= j < n):
            raise InstanceError(f"edge ({i}, {j}) references an unknown task", no)
        if i == j:
            raise InstanceError(f"self-edge on task {i}", no)
        edges.add((i, j))

    return Instance(tuple(by_id[i] for i in range(n)), PrecedenceGraph(n, frozenset(edges)), k)


def serialize_instance(inst: Instance) -> str:
    out = [f"{inst.n} {inst.K}"]
    out += [f"{t.id} {t.duration} {t.unit_cost}" for t in inst.tasks]
    out += [f"{i} {j}" for i, j in inst.edges]
    return "\n".join(out) + "\n"


def read_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def write_instance(inst: Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_instance(inst))


def generate_case(
    coupling: Coupling | str,
    n: int,
    k: int,
    seed: int,
    edge_density: float = DEFAULT_DENSITY,
) -> Instance:
    """Random instance of one coupling class.

    tight: chain 0->1->...->n-1; loose: each forward pair (i, j), i < j,
    kept with probability ``edge_density``; none: no edges. Durations are
    uniform on 1..k, unit costs uniform on 0.50..10.00 in cent steps.
    """
    try:
        coupling = Coupling(coupling)
    except ValueError:
        raise InstanceError(f"unknown coupling class {coupling!r}") from None
    if n < 1:
        raise InstanceError("n must be >= 1")
    if k < 1:
        raise InstanceError("k must be >= 1")
    if not 0.0 <= edge_density <= 1.0:
        raise InstanceError("edge density must lie in [0, 1]")

    rng: random.Random = make_rng(seed)
    lo, hi = COST_RANGE_CENTS
    tasks = tuple(
        Task(i, rng.randint(1, k), Decimal(rng.randint(lo, hi)).scaleb(-2)) for i in range(n)
    )
    if coupling is Coupling.TIGHT:
        edges = {(i, i + 1) for i in range(n - 1)}
    elif coupling is Coupling.LOOSE:
        edges = {(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < edge_density}
    else:
        edges = set()
    return Instance(tasks, PrecedenceGraph(n, frozenset(edges)), k)
