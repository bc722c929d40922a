import math
import random
from decimal import Decimal

import pytest

from conftest import make_instance
from stationga.baselines import brute_force_optimum
from stationga.engine import (
    EngineConfig,
    Encoding,
    Population,
    Replacement,
    cumulative_proportions,
    evolve_generation,
    make_scheme,
    roulette_select,
    run,
)
from stationga.instance import InstanceError, generate_case
from stationga.operators import OperatorConfig
from stationga.rng import derive_seed, make_rng


def test_roulette_examples():
    assert cumulative_proportions([1, 3]) == [0.25, 1.0]
    assert roulette_select([1, 3], 0.20) == 0
    assert roulette_select([1, 3], 0.25) == 1
    assert roulette_select([1, 3], 0.999999) == 1


def test_roulette_uniform_quarters():
    hits = [roulette_select([2, 2, 2, 2], k / 1000) for k in range(1000)]
    assert [hits.count(i) for i in range(4)] == [250, 250, 250, 250]
    assert [roulette_select([2, 2, 2, 2], u) for u in (0.0, 0.25, 0.5, 0.75)] == [0, 1, 2, 3]


def test_roulette_last_slot_closes_at_one():
    fits = [0.1] * 10  # float sums drift below 1
    assert cumulative_proportions(fits)[-1] == 1.0
    assert roulette_select(fits, 0.9999999999999999) == 9


def test_roulette_empty():
    with pytest.raises(ValueError):
        roulette_select([], 0.5)


def test_roulette_frequencies_within_3_sigma():
    fits = [1.0, 2.0, 3.0, 4.0]
    rng = random.Random(7)
    draws = 100_000
    counts = [0] * 4
    for _ in range(draws):
        counts[roulette_select(fits, rng.random())] += 1
    for i, f in enumerate(fits):
        p = f / sum(fits)
        assert abs(counts[i] - draws * p) <= 3 * math.sqrt(draws * p * (1 - p))


def test_config_validation():
    with pytest.raises(ValueError):
        EngineConfig(population_size=1)
    with pytest.raises(ValueError):
        EngineConfig(number_of_candidate_parents=0)
    assert EngineConfig().replacement is Replacement.CULL
    assert EngineConfig(encoding="station").replacement is Replacement.ROULETTE
    assert EngineConfig(encoding="station", replacement="cull").replacement is Replacement.CULL


def test_rng_streams():
    assert derive_seed(1, 0) == derive_seed(1, 0)
    assert len({derive_seed(1, i) for i in range(100)}) == 100
    assert make_rng(9, 2).random() == make_rng(9, 2).random()


@pytest.mark.parametrize("encoding", list(Encoding))
def test_one_pair_breeds_two_and_size_restored(encoding):
    inst = generate_case("none", 6, 8, 1)
    cfg = EngineConfig(population_size=10, number_of_candidate_parents=1, encoding=encoding)
    ocfg = OperatorConfig()
    scheme = make_scheme(inst, encoding, ocfg)
    rng = random.Random(0)
    pop = Population([scheme.member(scheme.random(rng)) for _ in range(10)])
    nxt, bred = evolve_generation(pop, inst, cfg, ocfg, rng, scheme, audit=True)
    assert bred == 2
    assert len(nxt.members) == 10 and nxt.generation == 1


@pytest.mark.parametrize("encoding", list(Encoding))
@pytest.mark.parametrize("coupling", ["tight", "loose", "none"])
def test_population_invariants(encoding, coupling):
    inst = generate_case(coupling, 8, 8, 5)
    rep = run(inst, EngineConfig(generations=60, seed=3, encoding=encoding), audit=True)
    assert len(rep.rows) == 61
    for r in rep.rows:
        assert r.min_fitness <= r.avg_fitness <= r.max_fitness
        assert r.max_fitness == pytest.approx(1 / float(r.best_cost))
    best = rep.series("best_cost")
    assert all(b <= a for a, b in zip(best, best[1:]))
    assert rep.best_cost == min(best)
    assert rep.best_breakdown.total == rep.best_cost


@pytest.mark.parametrize("encoding", list(Encoding))
@pytest.mark.parametrize("replacement", list(Replacement))
def test_elitism_keeps_best(encoding, replacement):
    inst = generate_case("loose", 10, 8, 2)
    for seed in range(3):
        cfg = EngineConfig(generations=150, seed=seed, encoding=encoding, replacement=replacement)
        best = run(inst, cfg).series("best_cost")
        assert all(b <= a for a, b in zip(best, best[1:]))


def test_single_task_is_flat():
    inst = make_instance([2], ["3.5"], 4)
    for enc in Encoding:
        rep = run(inst, EngineConfig(generations=20, encoding=enc))
        assert rep.rows[0].best_cost == Decimal("14.0")
        assert {r.avg_fitness for r in rep.rows} == {1 / 14.0}
        assert rep.best_plan.stations == ((0,),)


def test_run_is_deterministic():
    inst = generate_case("loose", 10, 8, 6)
    for enc in Encoding:
        a = run(inst, EngineConfig(generations=80, seed=11, encoding=enc))
        b = run(inst, EngineConfig(generations=80, seed=11, encoding=enc))
        assert a.rows == b.rows and a.best_chromosome == b.best_chromosome
        c = run(inst, EngineConfig(generations=80, seed=12, encoding=enc))
        assert c.rows != a.rows


def test_infeasible_instance_rejected():
    inst = make_instance([1], [1], 1)
    object.__setattr__(inst, "K", 0)  # bypass validation to simulate a corrupt instance
    inst.__dict__.pop("durations", None)
    with pytest.raises(InstanceError):
        run(inst, EngineConfig(generations=1))


def test_case3_seed_sweep_hits_oracle():
    inst = generate_case("none", 6, 8, 42)
    opt = brute_force_optimum(inst).cost
    hits = sum(run(inst, EngineConfig(seed=s)).best_cost == opt for s in range(10))
    assert hits >= 9


def test_station_mode_with_cull_keeps_size():
    inst = generate_case("none", 12, 10, 0)
    rep = run(inst, EngineConfig(generations=30, encoding="station", replacement="cull"), audit=True)
    assert len(rep.rows) == 31


def test_station_mode_can_fall_short_of_quota():
    # every crossover dies and every pair is distinct: the bounded loop gives up
    inst = make_instance([1, 1, 1], [1, 2, 3], 3)
    cfg = EngineConfig(population_size=2, number_of_candidate_parents=1, encoding="station")
    ocfg = OperatorConfig(mutation_probability=0.0, max_retries=3)
    scheme = make_scheme(inst, "station", ocfg)
    pop = Population([scheme.member((0, 1, 2)), scheme.member((2, 1, 0))])

    class NeverSame(random.Random):
        toggle = 0

        def random(self):
            self.toggle ^= 1
            return 0.1 if self.toggle else 0.9

    _, bred = evolve_generation(pop, inst, cfg, ocfg, NeverSame(0), scheme)
    assert bred == 0
