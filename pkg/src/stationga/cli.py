"""Command line: ``stationga gen|solve|compare``."""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path

from .baselines import OracleTooLarge
from .engine import EngineConfig, run
from .harness import compare, rows_csv, summary_text
from .instance import Coupling, InstanceError, generate_case, read_instance, serialize_instance
from .operators import OperatorConfig
from .plotting import plot_run
from .report import report_csv

INSTANCE_SUFFIXES = (".inst", ".txt")


class _Staged:
    """Write files under temporary names; rename all into place on success,
    delete them all on failure."""

    def __init__(self):
        self._pending: list[tuple[str, Path]] = []

    def path_for(self, target: Path) -> str:
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent)
        os.close(fd)
        self._pending.append((tmp, target))
        return tmp

    def write_text(self, target: Path, text: str) -> None:
        with open(self.path_for(target), "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is None:
            for tmp, target in self._pending:
                os.replace(tmp, target)
        else:
            for tmp, _ in self._pending:
                if os.path.exists(tmp):
                    os.unlink(tmp)
        return False


def _on_off(v: str) -> bool:
    if v not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected 'on' or 'off'")
    return v == "on"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stationga", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a random instance of one coupling class")
    g.add_argument("--class", dest="coupling", required=True, choices=[c.value for c in Coupling])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--density", type=float, default=0.15)
    g.add_argument("-o", "--output", required=True)

    s = sub.add_parser("solve", help="run the GA and write CSV, plan and fitness-curve SVG")
    s.add_argument("--instance", required=True)
    s.add_argument("--encoding", choices=["task", "station"], default="task")
    s.add_argument("--pop", type=int, default=50)
    s.add_argument("--gens", type=int, default=500)
    s.add_argument("--parents", type=int, default=10)
    s.add_argument("--mut", type=float, default=0.1)
    s.add_argument("--elitism", type=_on_off, default=True, metavar="on|off")
    s.add_argument("--replacement", choices=["cull", "roulette"], default=None,
                   help="survivor selection (default: cull for task, roulette for station)")
    s.add_argument("--max-retries", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output", required=True, help="output directory")

    c = sub.add_parser("compare", help="run GA and baselines over a directory of instances")
    c.add_argument("--instances", required=True)
    c.add_argument("--methods", default="ga,hill,random,oracle")
    c.add_argument("--seeds", type=int, default=1, help="number of seeds, 0..seeds-1")
    c.add_argument("--pop", type=int, default=50)
    c.add_argument("--gens", type=int, default=500)
    c.add_argument("--parents", type=int, default=10)
    c.add_argument("-o", "--output", required=True)
    return p


def cmd_gen(args) -> None:
    inst = generate_case(args.coupling, args.n, args.k, args.seed, args.density)
    with _Staged() as st:
        st.write_text(Path(args.output), serialize_instance(inst))


def cmd_solve(args) -> None:
    inst = read_instance(args.instance)
    ecfg = EngineConfig(
        population_size=args.pop,
        generations=args.gens,
        number_of_candidate_parents=args.parents,
        elitism=args.elitism,
        seed=args.seed,
        encoding=args.encoding,
        replacement=args.replacement,
    )
    ocfg = OperatorConfig(mutation_probability=args.mut, max_retries=args.max_retries)
    report = run(inst, ecfg, ocfg)
    out = Path(args.output)
    with _Staged() as st:
        st.write_text(out / "report.csv", report_csv(report, inst))
        st.write_text(out / "plan.txt", report.best_plan.to_text(inst))
        plot_run(report, st.path_for(out / "fitness.svg"), f"{Path(args.instance).stem} ({args.encoding}-based)")
    print(f"best cost {report.best_cost} with {len(report.best_plan.stations)} stations; wrote {out}")


def cmd_compare(args) -> None:
    d = Path(args.instances)
    if not d.is_dir():
        raise InstanceError(f"{d} is not a directory")
    files = sorted(f for f in d.iterdir() if f.suffix in INSTANCE_SUFFIXES and f.is_file())
    if not files:
        raise InstanceError(f"no instance files ({', '.join(INSTANCE_SUFFIXES)}) in {d}")
    instances = [(f.stem, read_instance(f)) for f in files]
    methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    ecfg = EngineConfig(population_size=args.pop, generations=args.gens, number_of_candidate_parents=args.parents)
    rows = compare(instances, methods, args.seeds, ecfg)
    with _Staged() as st:
        st.write_text(Path(args.output), rows_csv(rows))
    sys.stdout.write(summary_text(rows))


COMMANDS = {"gen": cmd_gen, "solve": cmd_solve, "compare": cmd_compare}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except (InstanceError, OracleTooLarge, ValueError, OSError) as exc:
        print(f"stationga {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
