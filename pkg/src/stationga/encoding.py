"""Chromosome encodings and their validity predicates.

Task-based (assignment): ``genes[i]`` is the station of task i, in 0..N-1.
Station-based (permutation): an ordering of all task ids, decoded into
stations by greedy first-fit under the duration bound.

Chromosomes are plain tuples of ints.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .instance import Instance, InstanceError

AssignmentChromosome = tuple  # tuple[int, ...], indexed by task id
PermutationChromosome = tuple  # tuple[int, ...], task ids in order


class ChromosomeError(ValueError):
    pass


@dataclass(frozen=True)
class StationPlan:
    """Canonical station grouping. Stations are numbered 0.. with no empty ones;
    tasks inside a station are listed in ascending id."""

    station_of: tuple[int, ...]
    stations: tuple[tuple[int, ...], ...]

    @classmethod
    def from_station_of(cls, station_of: Sequence[int]) -> "StationPlan":
        used = sorted(set(station_of))
        renumber = {s: k for k, s in enumerate(used)}
        compact = tuple(renumber[s] for s in station_of)
        groups: list[list[int]] = [[] for _ in used]
        for task, s in enumerate(compact):
            groups[s].append(task)
        return cls(compact, tuple(tuple(g) for g in groups))

    def loads(self, inst: Instance) -> list[int]:
        d = inst.durations
        return [sum(d[t] for t in st) for st in self.stations]

    def to_text(self, inst: Instance) -> str:
        lines = []
        for s, st in enumerate(self.stations):
            load = sum(inst.durations[t] for t in st)
            maxcost = max(inst.costs[t] for t in st)
            lines.append(f"{s}: {' '.join(map(str, st))} | load={load} | maxcost={maxcost}")
        return "\n".join(lines) + "\n"


def _check_length(c: Sequence[int], inst: Instance) -> None:
    if len(c) != inst.n:
        raise ChromosomeError(f"chromosome length {len(c)} does not match N={inst.n}")


def is_valid_assignment(genes: Sequence[int], inst: Instance) -> bool:
    """Capacity per station and ``genes[i] <= genes[j]`` for every direct edge.

    Direct edges suffice: <= is transitive, so the whole closure follows.
    """
    _check_length(genes, inst)
    n, K = inst.n, inst.K
    loads = [0] * n
    for g, d in zip(genes, inst.durations):
        if not 0 <= g < n:
            return False
        loads[g] += d
        if loads[g] > K:
            return False
    for i, j in inst.edges:
        if genes[i] > genes[j]:
            return False
    return True


def is_valid_permutation(order: Sequence[int], inst: Instance) -> bool:
    _check_length(order, inst)
    n = inst.n
    pos = [-1] * n
    for k, t in enumerate(order):
        if not 0 <= t < n or pos[t] != -1:
            return False  # foreign id or duplicate
        pos[t] = k
    # length matches and no duplicates, so every task is present
    for i, j in inst.edges:
        if pos[i] > pos[j]:
            return False
    return True


def decode_permutation(order: Sequence[int], inst: Instance) -> StationPlan:
    """Greedy first-fit along the permutation: fill the open station until the
    next task would overflow K, then open a new one."""
    if not is_valid_permutation(order, inst):
        raise ChromosomeError(f"invalid permutation {tuple(order)}")
    station_of = [0] * inst.n
    current, load = 0, 0
    for t in order:
        d = inst.durations[t]
        if load + d > inst.K:
            current += 1
            load = 0
        load += d
        station_of[t] = current
    return StationPlan.from_station_of(station_of)


def plan_of_assignment(genes: Sequence[int], inst: Instance) -> StationPlan:
    if not is_valid_assignment(genes, inst):
        raise ChromosomeError(f"invalid assignment {tuple(genes)}")
    return StationPlan.from_station_of(genes)


def random_topological_order(inst: Instance, rng: random.Random) -> list[int]:
    """Uniform pick among ready tasks at every step."""
    n = inst.n
    indeg = [len(p) for p in inst.predecessors]
    succs = inst.precedence.successors
    ready = [v for v in range(n) if indeg[v] == 0]
    order = []
    while ready:
        v = ready.pop(rng.randrange(len(ready)))
        order.append(v)
        for w in succs[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return order


def random_valid_assignment(inst: Instance, rng: random.Random) -> AssignmentChromosome:
    """Random feasible assignment built along a random topological order.

    The k-th task in the order gets a uniform station among those in
    [max predecessor station, k] with room left. Capping at k keeps station k
    empty when task k arrives, so a feasible choice always exists.
    """
    if any(d > inst.K for d in inst.durations):
        raise InstanceError("instance is infeasible: a task exceeds K")
    n, K = inst.n, inst.K
    genes = [0] * n
    loads = [0] * n
    preds = inst.predecessors
    for k, t in enumerate(random_topological_order(inst, rng)):
        lo = max((genes[p] for p in preds[t]), default=0)
        d = inst.durations[t]
        options = [s for s in range(lo, k + 1) if loads[s] + d <= K]
        s = options[rng.randrange(len(options))]
        genes[t] = s
        loads[s] += d
    return tuple(genes)


def random_valid_permutation(inst: Instance, rng: random.Random) -> PermutationChromosome:
    return tuple(random_topological_order(inst, rng))
