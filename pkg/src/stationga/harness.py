"""Head-to-head comparison of the GA and the baselines against the oracle."""

from __future__ import annotations

import csv
import io
from collections import defaultdict
from dataclasses import replace

from .baselines import ORACLE_CAP, OracleTooLarge, brute_force_optimum, hill_climb, random_search
from .engine import EngineConfig, run
from .operators import OperatorConfig

METHODS = ("oracle", "ga", "hill", "random")
COLUMNS = ("instance", "method", "best_cost", "optimum", "matched", "evaluations")


def compare(
    instances,
    methods=("ga", "hill", "random", "oracle"),
    seeds: int = 1,
    engine_cfg: EngineConfig | None = None,
    op_cfg: OperatorConfig | None = None,
    hill_steps: int = 1000,
) -> list[dict]:
    """Run every method on every ``(name, instance)`` pair for seeds 0..seeds-1.

    Random search gets the same evaluation budget as the GA run with the same
    seed. The oracle runs once per instance. Rows are ordered by instance
    name, then method (oracle, ga, hill, random), then seed.
    """
    unknown = set(methods) - set(METHODS)
    if unknown:
        raise ValueError(f"unknown methods: {sorted(unknown)}")
    engine_cfg = engine_cfg or EngineConfig()
    instances = sorted(instances, key=lambda p: p[0])
    if "oracle" in methods:
        for name, inst in instances:
            if inst.n > ORACLE_CAP:
                raise OracleTooLarge(f"{name}: N={inst.n} exceeds the oracle cap of {ORACLE_CAP}")
    rows = []
    for name, inst in instances:
        optimum = None
        if "oracle" in methods:
            o = brute_force_optimum(inst)
            optimum = o.cost
            rows.append(_row(name, "oracle", o.cost, optimum, o.evaluations))
        ga_budget = {}
        for seed in range(seeds):
            r = run(inst, replace(engine_cfg, seed=seed), op_cfg)
            ga_budget[seed] = r.evaluations
            if "ga" in methods:
                rows.append(_row(name, "ga", r.best_cost, optimum, r.evaluations))
        if "hill" in methods:
            for seed in range(seeds):
                h = hill_climb(inst, max_steps=hill_steps, restarts=1, seed=seed)
                rows.append(_row(name, "hill", h.cost, optimum, h.evaluations))
        if "random" in methods:
            for seed in range(seeds):
                rs = random_search(inst, ga_budget[seed], seed)
                rows.append(_row(name, "random", rs.cost, optimum, rs.evaluations))
    return rows


def _row(name, method, cost, optimum, evaluations) -> dict:
    return {
        "instance": name,
        "method": method,
        "best_cost": cost,
        "optimum": optimum,
        "matched": None if optimum is None else cost == optimum,
        "evaluations": evaluations,
    }


def rows_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow(
            [
                r["instance"],
                r["method"],
                r["best_cost"],
                "" if r["optimum"] is None else r["optimum"],
                "" if r["matched"] is None else str(r["matched"]).lower(),
                r["evaluations"],
            ]
        )
    return buf.getvalue()


def match_rates(rows) -> dict[str, float]:
    hits, total = defaultdict(int), defaultdict(int)
    for r in rows:
        if r["matched"] is not None:
            total[r["method"]] += 1
            hits[r["method"]] += r["matched"]
    return {m: hits[m] / total[m] for m in METHODS if total[m]}


def summary_text(rows) -> str:
    rates = match_rates(rows)
    if not rates:
        return "no oracle rows: match rates unavailable\n"
    return "".join(f"{m}: matched optimum in {rates[m]:.1%} of runs\n" for m in rates)
