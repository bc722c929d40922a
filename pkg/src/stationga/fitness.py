"""Station cost model and fitness.

A station is billed for the full bound K at the highest unit cost among its
tasks, regardless of how much of K its tasks actually use:

    cost(station) = K * max unit cost in station
    total         = sum over non-empty stations

Costs are exact ``Decimal``; fitness is the float reciprocal of total cost.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from typing import Sequence

from .encoding import StationPlan
from .instance import Instance


@dataclass(frozen=True)
class StationCost:
    station: int
    max_unit_cost: Decimal
    cost: Decimal


@dataclass(frozen=True)
class CostBreakdown:
    per_station: tuple[StationCost, ...]
    total: Decimal

    def to_lines(self) -> list[str]:
        rows = [f"station {c.station}: max_unit_cost={c.max_unit_cost} cost={c.cost}" for c in self.per_station]
        rows.append(f"total={self.total}")
        return rows


def total_cost(plan: StationPlan, inst: Instance) -> CostBreakdown:
    if not plan.stations:
        raise ValueError("empty plan")
    K = Decimal(inst.K)
    rows = []
    for s, tasks in enumerate(plan.stations):
        m = max(inst.costs[t] for t in tasks)
        rows.append(StationCost(s, m, K * m))
    return CostBreakdown(tuple(rows), sum((r.cost for r in rows), Decimal(0)))


def assignment_cost(genes: Sequence[int], inst: Instance) -> Decimal:
    """Total cost straight from a gene vector; empty station slots cost nothing."""
    best: dict[int, Decimal] = {}
    for g, c in zip(genes, inst.costs):
        if g not in best or c > best[g]:
            best[g] = c
    return inst.K * sum(best.values(), Decimal(0))


def cost_to_fitness(total: Decimal) -> float:
    return 1.0 / float(total)


def fitness_of(plan: StationPlan, inst: Instance) -> float:
    return cost_to_fitness(total_cost(plan, inst).total)
