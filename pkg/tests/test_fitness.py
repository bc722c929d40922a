import itertools
import random
from decimal import Decimal

import pytest
from hypothesis import given, settings, strategies as st

from conftest import make_instance
from stationga.encoding import StationPlan, is_valid_assignment, plan_of_assignment, random_valid_assignment
from stationga.fitness import assignment_cost, cost_to_fitness, fitness_of, total_cost
from stationga.instance import Coupling, generate_case


def enumerate_costs(inst):
    """Every valid gene vector and its cost, straight from the formula."""
    out = {}
    for genes in itertools.product(range(inst.n), repeat=inst.n):
        if is_valid_assignment(genes, inst):
            groups = {}
            for t, g in enumerate(genes):
                groups.setdefault(g, []).append(inst.costs[t])
            out[genes] = sum(inst.K * max(c) for c in groups.values())
    return out


def test_single_task():
    inst = make_instance([1], ["3.0"], 5)
    assert total_cost(StationPlan.from_station_of([0]), inst).total == Decimal("15.0")


def test_max_rule():
    inst = make_instance([2, 2], ["3.0", "7.0"], 10)
    assert total_cost(StationPlan.from_station_of([0, 0]), inst).total == Decimal("70.0")


def test_44_and_it_is_optimal():
    inst = make_instance([2, 2, 2], ["1.0", "10.0", "1.0"], 4)
    bd = total_cost(StationPlan.from_station_of([0, 1, 0]), inst)
    assert bd.total == Decimal("44.0")
    assert [(c.station, c.max_unit_cost, c.cost) for c in bd.per_station] == [
        (0, Decimal("1.0"), Decimal("4.0")),
        (1, Decimal("10.0"), Decimal("40.0")),
    ]
    assert min(enumerate_costs(inst).values()) == Decimal("44.0")


def test_fitness_examples():
    inst = make_instance([2, 2, 2], ["1.0", "10.0", "1.0"], 4)
    assert fitness_of(StationPlan.from_station_of([0, 1, 0]), inst) == 1 / 44
    singles = StationPlan.from_station_of([0, 1, 2])
    assert fitness_of(singles, inst) == pytest.approx(1 / (4 * 12.0), rel=1e-15)
    assert fitness_of(StationPlan.from_station_of([0, 1, 0]), inst) > fitness_of(singles, inst)


def test_empty_plan():
    inst = make_instance([1], [1], 1)
    with pytest.raises(ValueError):
        total_cost(StationPlan((), ()), inst)


@pytest.mark.parametrize("coupling", list(Coupling))
@pytest.mark.parametrize("seed", range(4))
def test_assignment_cost_matches_formula(coupling, seed):
    inst = generate_case(coupling, 5, 6, seed)
    for genes, cost in enumerate_costs(inst).items():
        assert assignment_cost(genes, inst) == cost
        assert total_cost(plan_of_assignment(genes, inst), inst).total == cost


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(list(Coupling)), st.integers(1, 12), st.integers(1, 10), st.integers(0, 2**32))
def test_cost_bounds(coupling, n, k, seed):
    inst = generate_case(coupling, n, k, seed)
    plan = plan_of_assignment(random_valid_assignment(inst, random.Random(seed)), inst)
    total = total_cost(plan, inst).total
    assert inst.K * max(inst.costs) <= total <= inst.K * sum(inst.costs)


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 10), st.integers(0, 2**32))
def test_merging_never_increases_cost(n, seed):
    inst = generate_case("none", n, 20, seed)
    rng = random.Random(seed)
    genes = list(random_valid_assignment(inst, rng))
    plan = plan_of_assignment(genes, inst)
    if len(plan.stations) < 2:
        return
    a, b = rng.sample(range(len(plan.stations)), 2)
    merged = [a if s == b else s for s in plan.station_of]
    if not is_valid_assignment(merged, inst):
        return
    assert total_cost(plan_of_assignment(merged, inst), inst).total <= total_cost(plan, inst).total


def test_fitness_reverses_cost_order():
    inst = generate_case("loose", 8, 8, 2)
    rng = random.Random(3)
    pop = [random_valid_assignment(inst, rng) for _ in range(200)]
    costs = [assignment_cost(g, inst) for g in pop]
    fits = [cost_to_fitness(c) for c in costs]
    for i, j in itertools.combinations(range(len(pop)), 2):
        if costs[i] < costs[j]:
            assert fits[i] > fits[j]
        elif costs[i] == costs[j]:
            assert fits[i] == fits[j]
    assert fits.index(max(fits)) == costs.index(min(costs))
