"""Benchmark command line: run solvers over instance files, emit a CSV report.

Two subcommands::

    evroute bench --instances a.txt,b.txt --solvers ga,tabu --seeds 3 [...]
    evroute gen --customers 7 --stations 2 --seed 3 --out a.txt

``bench`` writes one CSV row per (instance, solver, seed) cell to stdout
(and to ``--out`` when given): instances in the order listed, then solvers
in the order given, then ascending seed. ``--seeds N`` runs seeds 0..N-1.
Fitness columns are deterministic; only wall_time_s varies between runs.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .aco import AcoConfig, run_aco
from .genetic import GaConfig, run_ga
from .instance import (
    Instance,
    InstanceError,
    ZeroCustomers,
    generate_random_instance,
    parse_instance,
    serialize_instance,
)
from .nearest_neighbor import nearest_neighbor_genome
from .oracle import TooManyCustomers, brute_force_best
from .routing import evaluate_genome
from .tabu import TabuConfig, run_tabu

SOLVER_NAMES = ("ga", "nn", "tabu", "aco", "exact")

CSV_HEADER = "instance,solver,seed,best_fitness,feasible,wall_time_s"


class CliError(Exception):
    """Any benchmark failure; maps to exit code 1."""


class UnknownSolver(CliError):
    """Solver name not one of ga, nn, tabu, aco, exact."""


class InvalidFlagValue(CliError):
    """A flag value failed to parse or validate."""


@dataclass(slots=True)
class BenchRow:
    instance_name: str
    solver: str
    seed: int
    best_fitness: float
    feasible: bool
    wall_time_s: float


@dataclass(slots=True)
class BenchReport:
    rows: list[BenchRow]

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        for r in self.rows:
            feasible = "true" if r.feasible else "false"
            lines.append(
                f"{r.instance_name},{r.solver},{r.seed},"
                f"{r.best_fitness:.6f},{feasible},{r.wall_time_s:.3f}"
            )
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> "BenchReport":
        lines = text.splitlines()
        if not lines or lines[0] != CSV_HEADER:
            raise ValueError(f"bad CSV header: {lines[0] if lines else '<empty>'!r}")
        rows = []
        for line in lines[1:]:
            name, solver, seed, fitness, feasible, wall = line.split(",")
            if feasible not in ("true", "false"):
                raise ValueError(f"bad feasible value {feasible!r}")
            rows.append(
                BenchRow(name, solver, int(seed), float(fitness), feasible == "true", float(wall))
            )
        return cls(rows)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: D102 - argparse hook
        raise InvalidFlagValue(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="evroute", description=__doc__.split("\n", 1)[0])
    sub = parser.add_subparsers(dest="command", required=True)

    bench = sub.add_parser("bench", help="run solvers over instance files, print CSV")
    bench.add_argument("--instances", required=True, help="comma-separated instance files")
    bench.add_argument("--solvers", required=True, help=f"comma-separated: {','.join(SOLVER_NAMES)}")
    bench.add_argument("--seeds", type=int, required=True, help="run seeds 0..N-1 per cell")
    bench.add_argument("--pop", type=int, help="GA population size")
    bench.add_argument("--generations", type=int, help="GA generation budget")
    bench.add_argument("--iterations", type=int, help="tabu/aco iteration budget")
    bench.add_argument("--ants", type=int, help="ACO ants per iteration")
    bench.add_argument("--alpha", type=float, help="ACO pheromone exponent")
    bench.add_argument("--beta", type=float, help="ACO inverse-distance exponent")
    bench.add_argument("--rho", type=float, help="ACO evaporation rate")
    bench.add_argument("--tournament-k", type=int, help="GA tournament size")
    bench.add_argument("--crossover-rate", type=float, help="GA crossover probability")
    bench.add_argument("--mutation-rate", type=float, help="GA mutation probability")
    bench.add_argument("--elite", type=int, help="GA elite count")
    bench.add_argument("--tenure", type=int, help="tabu tenure in iterations")
    bench.add_argument("--neighborhood", type=int, help="tabu swap samples per iteration")
    bench.add_argument("--out", help="also write the CSV to this file")

    gen = sub.add_parser("gen", help="generate a random instance file")
    gen.add_argument("--customers", type=int, required=True)
    gen.add_argument("--stations", type=int, required=True)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--side", type=float, default=100.0, help="square side length")
    gen.add_argument("--out", required=True, help="output path")
    return parser


def _ga_config(args: argparse.Namespace, seed: int) -> GaConfig:
    config = GaConfig(seed=seed)
    if args.pop is not None:
        config.population_size = args.pop
    if args.generations is not None:
        config.generations = args.generations
    if args.tournament_k is not None:
        config.tournament_k = args.tournament_k
    if args.crossover_rate is not None:
        config.crossover_rate = args.crossover_rate
    if args.mutation_rate is not None:
        config.mutation_rate = args.mutation_rate
    if args.elite is not None:
        config.elite_count = args.elite
    return config


def _tabu_config(args: argparse.Namespace, seed: int) -> TabuConfig:
    config = TabuConfig(seed=seed)
    if args.iterations is not None:
        config.iterations = args.iterations
    if args.tenure is not None:
        config.tenure = args.tenure
    if args.neighborhood is not None:
        config.neighborhood_sample = args.neighborhood
    return config


def _aco_config(args: argparse.Namespace, seed: int) -> AcoConfig:
    config = AcoConfig(seed=seed)
    if args.iterations is not None:
        config.iterations = args.iterations
    if args.ants is not None:
        config.ants = args.ants
    if args.alpha is not None:
        config.alpha = args.alpha
    if args.beta is not None:
        config.beta = args.beta
    if args.rho is not None:
        config.rho = args.rho
    return config


def _run_cell(instance: Instance, solver: str, seed: int, args: argparse.Namespace) -> BenchRow:
    start = time.perf_counter()
    if solver == "ga":
        result = run_ga(instance, _ga_config(args, seed))
        evaluation = result.best.evaluation
    elif solver == "tabu":
        result = run_tabu(instance, _tabu_config(args, seed))
        evaluation = result.best.evaluation
    elif solver == "aco":
        result = run_aco(instance, _aco_config(args, seed))
        evaluation = result.best.evaluation
    elif solver == "nn":
        evaluation = evaluate_genome(instance, nearest_neighbor_genome(instance))
    else:  # exact
        evaluation = brute_force_best(instance)[1]
    wall = time.perf_counter() - start
    return BenchRow(
        instance_name="",
        solver=solver,
        seed=seed,
        best_fitness=round(evaluation.fitness, 6),
        feasible=evaluation.feasible,
        wall_time_s=round(wall, 3),
    )


def run_bench(args: argparse.Namespace) -> BenchReport:
    solvers = [s.strip() for s in args.solvers.split(",") if s.strip()]
    if not solvers:
        raise UnknownSolver("no solvers given")
    for name in solvers:
        if name not in SOLVER_NAMES:
            raise UnknownSolver(f"unknown solver {name!r} (expected one of {', '.join(SOLVER_NAMES)})")
    if args.seeds < 1:
        raise InvalidFlagValue("--seeds must be >= 1")

    paths = [p.strip() for p in args.instances.split(",") if p.strip()]
    if not paths:
        raise InvalidFlagValue("no instance files given")
    instances: list[tuple[str, Instance]] = []
    for path in paths:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except FileNotFoundError:
            raise CliError(f"instance file not found: {path}") from None
        try:
            instances.append((path, parse_instance(text)))
        except InstanceError as exc:
            raise CliError(f"{path}: {exc}") from None

    rows = []
    for path, instance in instances:
        for solver in solvers:
            for seed in range(args.seeds):
                try:
                    row = _run_cell(instance, solver, seed, args)
                except (ValueError, TooManyCustomers) as exc:
                    raise CliError(f"{path} [{solver}, seed {seed}]: {exc}") from None
                row.instance_name = path
                rows.append(row)
    return BenchReport(rows)


def run_gen(args: argparse.Namespace) -> Path:
    try:
        instance = generate_random_instance(args.customers, args.stations, args.seed, args.side)
    except (ZeroCustomers, InstanceError) as exc:
        raise CliError(str(exc)) from None
    out = Path(args.out)
    try:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(serialize_instance(instance))
    except OSError as exc:
        raise CliError(f"cannot write {out}: {exc}") from None
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "bench":
            csv_text = run_bench(args).to_csv()
            sys.stdout.write(csv_text)
            if args.out:
                with open(args.out, "w", encoding="utf-8", newline="") as handle:
                    handle.write(csv_text)
        else:
            print(run_gen(args))
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
