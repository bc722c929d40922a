"""Generational GA loop: roulette selection, breeding, random culling, elitism."""

from __future__ import annotations

import bisect
import math
import random
from dataclasses import dataclass, field
from decimal import Decimal
from enum import Enum
from typing import NamedTuple, Sequence

from .encoding import (
    StationPlan,
    decode_permutation,
    is_valid_assignment,
    is_valid_permutation,
    plan_of_assignment,
    random_valid_assignment,
    random_valid_permutation,
)
from .fitness import CostBreakdown, assignment_cost, cost_to_fitness, total_cost
from .instance import Instance, InstanceError
from .operators import (
    OperatorConfig,
    RetryStats,
    crossover_assignment,
    crossover_permutation,
    mutate_assignment,
    mutate_permutation,
)
from .rng import make_rng


class Encoding(str, Enum):
    TASK = "task"
    STATION = "station"


class Replacement(str, Enum):
    CULL = "cull"  # delete uniformly random members until the size is restored
    ROULETTE = "roulette"  # refill by fitness-proportional draws from the enlarged pool


DEFAULT_REPLACEMENT = {Encoding.TASK: Replacement.CULL, Encoding.STATION: Replacement.ROULETTE}


@dataclass(frozen=True)
class EngineConfig:
    population_size: int = 50
    generations: int = 500
    number_of_candidate_parents: int = 10
    elitism: bool = True
    seed: int = 0
    encoding: Encoding = Encoding.TASK
    replacement: Replacement | None = None  # None: the encoding's default

    def __post_init__(self):
        object.__setattr__(self, "encoding", Encoding(self.encoding))
        rep = DEFAULT_REPLACEMENT[self.encoding] if self.replacement is None else Replacement(self.replacement)
        object.__setattr__(self, "replacement", rep)
        if self.population_size < 2:
            raise ValueError("population_size must be >= 2")
        if self.number_of_candidate_parents < 1:
            raise ValueError("number_of_candidate_parents must be >= 1")
        if self.generations < 0:
            raise ValueError("generations must be >= 0")


class Member(NamedTuple):
    chromosome: tuple
    fitness: float
    cost: Decimal


@dataclass
class Population:
    members: list[Member]
    generation: int = 0


class GenerationRow(NamedTuple):
    generation: int
    avg_fitness: float
    min_fitness: float
    max_fitness: float
    best_cost: Decimal


@dataclass
class RunReport:
    rows: list[GenerationRow]
    best_chromosome: tuple
    best_plan: StationPlan
    best_breakdown: CostBreakdown
    retry_stats: RetryStats
    evaluations: int
    engine_cfg: EngineConfig
    operator_cfg: OperatorConfig

    @property
    def best_cost(self) -> Decimal:
        return self.best_breakdown.total

    def series(self, name: str) -> list:
        return [getattr(r, name) for r in self.rows]


def cumulative_proportions(fitnesses: Sequence[float]) -> list[float]:
    if not fitnesses:
        raise ValueError("empty population")
    total = sum(fitnesses)
    acc, cum = 0.0, []
    for f in fitnesses:
        acc += f / total
        cum.append(acc)
    cum[-1] = 1.0
    return cum


def roulette_select(fitnesses: Sequence[float], u: float) -> int:
    """Index picked by a wheel draw ``u`` in [0, 1).

    Slot i covers the half-open interval [cum[i-1], cum[i]), so the pick is
    the smallest i with u < cum[i].
    """
    return _pick(cumulative_proportions(fitnesses), u)


def _pick(cum: list[float], u: float) -> int:
    return min(bisect.bisect_right(cum, u), len(cum) - 1)


class _Scheme:
    """Encoding-specific hooks, with a per-run cost cache (costs are pure)."""

    def __init__(self, inst: Instance, op_cfg: OperatorConfig, stats: RetryStats):
        self.inst = inst
        self.op_cfg = op_cfg
        self.stats = stats
        self._cache: dict[tuple, Decimal] = {}

    def member(self, c: tuple) -> Member:
        cost = self._cache.get(c)
        if cost is None:
            cost = self._cache[c] = self._cost(c)
        return Member(c, cost_to_fitness(cost), cost)


class _TaskScheme(_Scheme):
    valid = staticmethod(is_valid_assignment)

    def random(self, rng):
        return random_valid_assignment(self.inst, rng)

    def _cost(self, c):
        return assignment_cost(c, self.inst)

    def plan(self, c):
        return plan_of_assignment(c, self.inst)

    def breed(self, a, b, rng):
        c1, c2 = crossover_assignment(a, b, self.inst, rng, self.op_cfg, self.stats)
        return [mutate_assignment(c, self.inst, rng, self.op_cfg, self.stats) for c in (c1, c2)]


class _StationScheme(_Scheme):
    valid = staticmethod(is_valid_permutation)

    def random(self, rng):
        return random_valid_permutation(self.inst, rng)

    def _cost(self, c):
        return total_cost(decode_permutation(c, self.inst), self.inst).total

    def plan(self, c):
        return decode_permutation(c, self.inst)

    def breed(self, a, b, rng):
        kids = crossover_permutation(a, b, self.inst, rng, self.op_cfg, self.stats)
        return [mutate_permutation(c, self.inst, rng, self.op_cfg, self.stats) for c in kids]


def make_scheme(inst: Instance, encoding: Encoding, op_cfg: OperatorConfig, stats: RetryStats | None = None) -> _Scheme:
    cls = _TaskScheme if Encoding(encoding) is Encoding.TASK else _StationScheme
    return cls(inst, op_cfg, stats if stats is not None else RetryStats())


def _row(pop: Population) -> GenerationRow:
    fits = [m.fitness for m in pop.members]
    lo, hi = min(fits), max(fits)
    avg = min(max(math.fsum(fits) / len(fits), lo), hi)  # rounding must not escape [lo, hi]
    return GenerationRow(
        pop.generation,
        avg,
        lo,
        hi,
        min(m.cost for m in pop.members),
    )


def _fittest(members: Sequence[Member]) -> int:
    best = 0
    for i, m in enumerate(members):
        if m.cost < members[best].cost:
            best = i
    return best


def evolve_generation(
    pop: Population,
    inst: Instance,
    engine_cfg: EngineConfig,
    op_cfg: OperatorConfig,
    rng: random.Random,
    scheme: _Scheme | None = None,
    audit: bool = False,
) -> tuple[Population, int]:
    """One generation. Returns the next population and the number of children bred.

    Parents are drawn by roulette from the current members and their
    children are appended. The enlarged pool is cut back to
    ``population_size`` either by deleting uniformly random members (cull)
    or by drawing survivors with replacement by roulette (roulette). With
    elitism the single fittest member of the pool always survives.
    """
    if scheme is None:
        scheme = make_scheme(inst, engine_cfg.encoding, op_cfg)
    cum = cumulative_proportions([m.fitness for m in pop.members])
    members = pop.members
    quota = 2 * engine_cfg.number_of_candidate_parents
    children: list[tuple] = []
    if isinstance(scheme, _TaskScheme):
        for _ in range(engine_cfg.number_of_candidate_parents):
            a = members[_pick(cum, rng.random())].chromosome
            b = members[_pick(cum, rng.random())].chromosome
            children.extend(scheme.breed(a, b, rng))
    else:
        # a pair may yield no surviving child; re-select, bounded
        attempts, limit = 0, op_cfg.max_retries * quota
        while len(children) < quota and attempts < limit:
            a = members[_pick(cum, rng.random())].chromosome
            b = members[_pick(cum, rng.random())].chromosome
            children.extend(scheme.breed(a, b, rng))
            attempts += 1
        del children[quota:]

    pool = list(members) + [scheme.member(c) for c in children]
    elite = _fittest(pool) if engine_cfg.elitism else -1
    if engine_cfg.replacement is Replacement.ROULETTE:
        keep = [pool[elite]] if elite >= 0 else []
        cum = cumulative_proportions([m.fitness for m in pool])
        while len(keep) < engine_cfg.population_size:
            keep.append(pool[_pick(cum, rng.random())])
        pool = keep
    while len(pool) > engine_cfg.population_size:
        if elite >= 0:
            k = rng.randrange(len(pool) - 1)
            idx = k if k < elite else k + 1
            if idx < elite:
                elite -= 1
        else:
            idx = rng.randrange(len(pool))
        pool.pop(idx)

    if audit:
        for m in pool:
            assert scheme.valid(m.chromosome, inst), m.chromosome
    return Population(pool, pop.generation + 1), len(children)


def run(
    inst: Instance,
    engine_cfg: EngineConfig | None = None,
    operator_cfg: OperatorConfig | None = None,
    audit: bool = False,
) -> RunReport:
    """Initialize, evolve for ``generations`` generations, and report.

    Row 0 describes the initial population. The reported best plan is the
    cheapest chromosome seen in any population (first found wins ties).
    """
    engine_cfg = engine_cfg or EngineConfig()
    operator_cfg = operator_cfg or OperatorConfig()
    if any(d > inst.K for d in inst.durations):
        raise InstanceError("instance is infeasible: a task exceeds K")
    rng = make_rng(engine_cfg.seed)
    stats = RetryStats()
    scheme = make_scheme(inst, engine_cfg.encoding, operator_cfg, stats)

    pop = Population([scheme.member(scheme.random(rng)) for _ in range(engine_cfg.population_size)])
    evaluations = engine_cfg.population_size
    rows = [_row(pop)]
    best = pop.members[_fittest(pop.members)]
    for _ in range(engine_cfg.generations):
        pop, bred = evolve_generation(pop, inst, engine_cfg, operator_cfg, rng, scheme, audit)
        evaluations += bred
        rows.append(_row(pop))
        cand = pop.members[_fittest(pop.members)]
        if cand.cost < best.cost:
            best = cand

    plan = scheme.plan(best.chromosome)
    return RunReport(
        rows=rows,
        best_chromosome=best.chromosome,
        best_plan=plan,
        best_breakdown=total_cost(plan, inst),
        retry_stats=stats,
        evaluations=evaluations,
        engine_cfg=engine_cfg,
        operator_cfg=operator_cfg,
    )
