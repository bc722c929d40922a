"""Reference solvers: exhaustive oracle, random search, hill climbing."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal

from .encoding import StationPlan, is_valid_assignment, plan_of_assignment, random_valid_assignment
from .fitness import CostBreakdown, assignment_cost, total_cost
from .instance import Instance
from .rng import make_rng

ORACLE_CAP = 8


class OracleTooLarge(ValueError):
    pass


@dataclass
class BaselineResult:
    genes: tuple
    plan: StationPlan
    breakdown: CostBreakdown
    evaluations: int

    @property
    def cost(self) -> Decimal:
        return self.breakdown.total


def _result(genes, inst, evaluations) -> BaselineResult:
    plan = plan_of_assignment(genes, inst)
    return BaselineResult(tuple(genes), plan, total_cost(plan, inst), evaluations)


def brute_force_optimum(inst: Instance, cap: int = ORACLE_CAP) -> BaselineResult:
    """Exact optimum over every gene vector in {0..N-1}^N.

    Vectors are visited in lexicographic order by depth-first search, pruning
    prefixes that already break capacity or a precedence edge between two
    assigned tasks. The first minimum found is kept, which is the
    lexicographically smallest optimal vector. ``evaluations`` counts the
    valid vectors reached.
    """
    n = inst.n
    if n > cap:
        raise OracleTooLarge(f"N={n} exceeds the oracle cap of {cap}")
    K = inst.K
    dur, costs = inst.durations, inst.costs
    preds = inst.predecessors
    succs = inst.precedence.successors
    genes = [0] * n
    loads = [0] * n
    best_cost = None
    best_genes = None
    count = 0

    def cost_now():
        top: dict[int, Decimal] = {}
        for g, c in zip(genes, costs):
            if c > top.get(g, 0):
                top[g] = c
        return sum(top.values(), Decimal(0)) * K

    def visit(t):
        nonlocal best_cost, best_genes, count
        if t == n:
            count += 1
            c = cost_now()
            if best_cost is None or c < best_cost:
                best_cost, best_genes = c, tuple(genes)
            return
        d = dur[t]
        for s in range(n):
            if loads[s] + d > K:
                continue
            # only edges to already-assigned tasks can be checked here
            if any(p < t and genes[p] > s for p in preds[t]):
                continue
            if any(q < t and genes[q] < s for q in succs[t]):
                continue
            genes[t] = s
            loads[s] += d
            visit(t + 1)
            loads[s] -= d
        genes[t] = 0

    visit(0)
    return _result(best_genes, inst, count)


def random_search(inst: Instance, evaluations: int, seed: int) -> BaselineResult:
    """Best of ``evaluations`` independent random valid assignments."""
    if evaluations < 1:
        raise ValueError("evaluations must be >= 1")
    rng = make_rng(seed)
    best, best_cost = None, None
    for _ in range(evaluations):
        g = random_valid_assignment(inst, rng)
        c = assignment_cost(g, inst)
        if best_cost is None or c < best_cost:
            best, best_cost = g, c
    return _result(best, inst, evaluations)


def neighbors(genes: tuple, inst: Instance):
    """Valid neighbours: every two-task station swap, then every single-task move."""
    n = len(genes)
    for i in range(n):
        for j in range(i + 1, n):
            if genes[i] != genes[j]:
                m = list(genes)
                m[i], m[j] = m[j], m[i]
                if is_valid_assignment(m, inst):
                    yield tuple(m)
    for i in range(n):
        for s in range(n):
            if s != genes[i]:
                m = list(genes)
                m[i] = s
                if is_valid_assignment(m, inst):
                    yield tuple(m)


def hill_climb(
    inst: Instance,
    max_steps: int = 1000,
    restarts: int = 1,
    seed: int = 0,
    trace: list | None = None,
) -> BaselineResult:
    """Steepest-descent local search with random restarts.

    Each step moves to the cheapest valid neighbour if it is strictly cheaper
    than the current point; otherwise the climb stops at a local optimum.
    ``trace``, if given, receives the cost sequence of every climb.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    rng = make_rng(seed)
    best, best_cost = None, None
    evaluations = 0
    for _ in range(restarts):
        cur = random_valid_assignment(inst, rng)
        cur_cost = assignment_cost(cur, inst)
        evaluations += 1
        path = [cur_cost]
        for _ in range(max_steps):
            step, step_cost = None, cur_cost
            for nb in neighbors(cur, inst):
                evaluations += 1
                c = assignment_cost(nb, inst)
                if c < step_cost:
                    step, step_cost = nb, c
            if step is None:
                break
            cur, cur_cost = step, step_cost
            path.append(cur_cost)
        if trace is not None:
            trace.append(path)
        if best_cost is None or cur_cost < best_cost:
            best, best_cost = cur, cur_cost
    return _result(best, inst, evaluations)
