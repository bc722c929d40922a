"""Crossover and mutation for both encodings.

All operators follow reject-and-retry: build a candidate, test it with the
encoding's validity predicate, redraw on failure. Retries are capped by
``OperatorConfig.max_retries``; on exhaustion the operator falls back to the
unchanged parent, so valid inputs always give valid outputs. A draw that was
already rejected in the same call is rejected again without re-checking,
and once every cut point (or swap pair) has been rejected the loop stops
early, since further draws cannot succeed.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field

from .encoding import (
    AssignmentChromosome,
    PermutationChromosome,
    is_valid_assignment,
    is_valid_permutation,
)
from .instance import Instance


@dataclass(frozen=True)
class OperatorConfig:
    mutation_probability: float = 0.1
    max_retries: int = 1000
    crossover_rate: float = 1.0  # station-based only: chance a selected pair is recombined

    def __post_init__(self):
        if not 0.0 <= self.mutation_probability <= 1.0:
            raise ValueError("mutation_probability must lie in [0, 1]")
        if self.max_retries < 1:
            raise ValueError("max_retries must be >= 1")
        if not 0.0 < self.crossover_rate <= 1.0:
            raise ValueError("crossover_rate must lie in (0, 1]")


@dataclass
class _Counter:
    calls: int = 0
    retries: int = 0
    max_retries: int = 0
    fallbacks: int = 0


@dataclass
class RetryStats:
    """Per-operator retry counters, keyed by operator name."""

    counters: dict = field(default_factory=lambda: defaultdict(_Counter))

    def record(self, op: str, retries: int, fell_back: bool = False) -> None:
        c = self.counters[op]
        c.calls += 1
        c.retries += retries
        c.max_retries = max(c.max_retries, retries)
        c.fallbacks += fell_back

    def summary(self) -> list[str]:
        lines = []
        for op in sorted(self.counters):
            c = self.counters[op]
            mean = c.retries / c.calls if c.calls else 0.0
            lines.append(
                f"{op}: calls={c.calls} mean_retries={mean:.4f} max_retries={c.max_retries} fallbacks={c.fallbacks}"
            )
        return lines


def _other_index(rng: random.Random, n: int) -> tuple[int, int]:
    i = rng.randrange(n)
    j = rng.randrange(n - 1)
    if j >= i:
        j += 1
    return (i, j) if i < j else (j, i)


def crossover_assignment(
    a: AssignmentChromosome,
    b: AssignmentChromosome,
    inst: Instance,
    rng: random.Random,
    cfg: OperatorConfig,
    stats: RetryStats | None = None,
) -> tuple[AssignmentChromosome, AssignmentChromosome]:
    """One-point crossover, cut uniform on 1..N-1.

    child1 = a[:p] + b[p:], child2 = b[:p] + a[p:]. Each child slot keeps
    drawing cut points until it gets a valid child or runs out of retries.
    """
    n = inst.n
    a, b = tuple(a), tuple(b)
    if n < 2:
        return a, b
    parents = (a, b)
    children: list = [None, None]
    fails = [0, 0]
    tried: dict[int, tuple] = {}
    while children[0] is None or children[1] is None:
        p = rng.randint(1, n - 1)
        if p not in tried:
            c1, c2 = a[:p] + b[p:], b[:p] + a[p:]
            tried[p] = (
                c1 if is_valid_assignment(c1, inst) else None,
                c2 if is_valid_assignment(c2, inst) else None,
            )
        exhausted = len(tried) == n - 1
        for k in (0, 1):
            if children[k] is not None:
                continue
            if tried[p][k] is not None:
                children[k] = tried[p][k]
                if stats is not None:
                    stats.record("crossover_assignment", fails[k])
                continue
            fails[k] += 1
            dead = exhausted and all(t[k] is None for t in tried.values())
            if fails[k] >= cfg.max_retries or dead:
                children[k] = parents[k]
                if stats is not None:
                    stats.record("crossover_assignment", fails[k], True)
    return children[0], children[1]


def crossover_permutation(
    a: PermutationChromosome,
    b: PermutationChromosome,
    inst: Instance,
    rng: random.Random,
    cfg: OperatorConfig,
    stats: RetryStats | None = None,
) -> list[PermutationChromosome]:
    """Tail swap at a uniform cut; children that fail validation are dropped.

    Returns 0, 1 or 2 children. No repair is attempted, so unless the two
    heads hold the same task set the children carry duplicates and die.
    """
    n = inst.n
    a, b = tuple(a), tuple(b)
    if n < 2 or (cfg.crossover_rate < 1.0 and rng.random() >= cfg.crossover_rate):
        return [a, b]
    p = rng.randint(1, n - 1)
    out = [c for c in (a[:p] + b[p:], b[:p] + a[p:]) if is_valid_permutation(c, inst)]
    if stats is not None:
        stats.record("crossover_permutation", 2 - len(out))
    return out


def _mutate_swap(c, inst, rng, cfg, stats, valid, name):
    n = inst.n
    c = tuple(c)
    if n < 2 or rng.random() >= cfg.mutation_probability:
        return c
    pairs = n * (n - 1) // 2
    rejected: set[tuple[int, int]] = set()
    fails = 0
    while fails < cfg.max_retries and len(rejected) < pairs:
        i, j = _other_index(rng, n)
        if (i, j) not in rejected:
            m = list(c)
            m[i], m[j] = m[j], m[i]
            m = tuple(m)
            if valid(m, inst):
                if stats is not None:
                    stats.record(name, fails)
                return m
            rejected.add((i, j))
        fails += 1
    if stats is not None:
        stats.record(name, fails, True)
    return c


def mutate_assignment(
    c: AssignmentChromosome,
    inst: Instance,
    rng: random.Random,
    cfg: OperatorConfig,
    stats: RetryStats | None = None,
) -> AssignmentChromosome:
    """With probability ``mutation_probability``, swap the stations of two tasks."""
    return _mutate_swap(c, inst, rng, cfg, stats, is_valid_assignment, "mutate_assignment")


def mutate_permutation(
    p: PermutationChromosome,
    inst: Instance,
    rng: random.Random,
    cfg: OperatorConfig,
    stats: RetryStats | None = None,
) -> PermutationChromosome:
    """With probability ``mutation_probability``, swap two positions."""
    return _mutate_swap(p, inst, rng, cfg, stats, is_valid_permutation, "mutate_permutation")
