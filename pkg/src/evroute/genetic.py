"""Generational genetic algorithm over customer permutations.

Tournament selection, order crossover, swap mutation and elitism. The
population is kept in a canonical order (ascending fitness, ties by genome)
after every generation, so a run is a pure function of (instance, config)
no matter how fitness evaluation is scheduled.

Random draw order per offspring, all taken on the coordinating thread
before any evaluation: tournament draws for parent 1, then parent 2, the
crossover coin, two cut points (only when crossover fires), the mutation
coin, then two swap indices (only when mutation fires). Index-shaped draws
use ``int(rng.random() * n)``.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

from .instance import Instance
from .nearest_neighbor import nearest_neighbor_genome
from .routing import (
    Evaluation,
    Genome,
    Individual,
    SolverResult,
    evaluate_genome,
)

Evaluator = Callable[[Sequence[Genome]], list[Evaluation]]


class PopulationTooSmall(ValueError):
    """Population size below 1."""


class MismatchedCustomerSets(ValueError):
    """Crossover parents are permutations of different customer sets."""


class IndexOutOfRange(IndexError):
    """Mutation or crossover index outside the genome."""


@dataclass(slots=True)
class GaConfig:
    population_size: int = 100
    generations: int = 1000
    tournament_k: int = 3
    crossover_rate: float = 0.9
    mutation_rate: float = 0.2
    elite_count: int = 2
    seed: int = 0

    def validate(self) -> None:
        if self.population_size < 1:
            raise PopulationTooSmall(f"population_size {self.population_size} < 1")
        if self.generations < 0:
            raise ValueError("generations must be >= 0")
        if not 0.0 <= self.crossover_rate <= 1.0:
            raise ValueError("crossover_rate must be in [0, 1]")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError("mutation_rate must be in [0, 1]")
        if not 1 <= self.tournament_k <= self.population_size:
            raise ValueError("tournament_k must be in 1..population_size")
        if not 0 <= self.elite_count < self.population_size:
            raise ValueError("elite_count must be in 0..population_size-1")


@dataclass(slots=True)
class Population:
    """Fixed-size population, canonically sorted (fitness, then genome)."""

    members: list[Individual]
    generation: int = 0


def _canonical(members: list[Individual]) -> list[Individual]:
    members.sort(key=lambda m: (m.evaluation.fitness, m.genome))
    return members


def init_population(
    instance: Instance, config: GaConfig, rng: random.Random | None = None
) -> Population:
    """Seed member 0 with the nearest-neighbor tour, the rest at random."""
    config.validate()
    if rng is None:
        rng = random.Random(config.seed)
    customers = list(instance.customer_ids)
    genomes = [nearest_neighbor_genome(instance)]
    for _ in range(config.population_size - 1):
        perm = customers[:]
        rng.shuffle(perm)
        genomes.append(tuple(perm))
    members = [Individual(g, evaluate_genome(instance, g)) for g in genomes]
    return Population(_canonical(members))


def tournament_select(population: Population, k: int, rng: random.Random) -> Individual:
    """Best of k members drawn uniformly with replacement.

    Ties go to the earlier canonical index, which for a sorted population
    is simply the smallest drawn index.
    """
    members = population.members
    size = len(members)
    if not 1 <= k <= size:
        raise ValueError(f"tournament k {k} must be in 1..{size}")
    best = int(rng.random() * size)
    for _ in range(k - 1):
        idx = int(rng.random() * size)
        if idx < best:
            best = idx
    return members[best]


def order_crossover(parent1: Genome, parent2: Genome, cut1: int, cut2: int) -> Genome:
    """Order crossover (OX): keep parent1's slice, fill from parent2.

    The child copies parent1[cut1:cut2]; the remaining positions, walked
    cyclically from cut2, take parent2's genes in cyclic order from cut2,
    skipping genes already present.
    """
    length = len(parent1)
    if len(parent2) != length or set(parent1) != set(parent2):
        raise MismatchedCustomerSets("parents must be permutations of the same customers")
    if not 0 <= cut1 <= cut2 <= length:
        raise IndexOutOfRange(f"cuts ({cut1}, {cut2}) invalid for length {length}")
    child: list[int | None] = [None] * length
    child[cut1:cut2] = parent1[cut1:cut2]
    segment = set(parent1[cut1:cut2])
    fill = [g for i in range(length) if (g := parent2[(cut2 + i) % length]) not in segment]
    for offset, gene in enumerate(fill):
        child[(cut2 + offset) % length] = gene
    return tuple(child)  # type: ignore[arg-type]


def swap_mutation(genome: Genome, i: int, j: int) -> Genome:
    """Exchange the genes at positions i and j."""
    length = len(genome)
    if not (0 <= i < length and 0 <= j < length):
        raise IndexOutOfRange(f"swap indices ({i}, {j}) invalid for length {length}")
    if i == j:
        return genome
    mutated = list(genome)
    mutated[i], mutated[j] = mutated[j], mutated[i]
    return tuple(mutated)


def evolve_generation(
    instance: Instance,
    population: Population,
    config: GaConfig,
    rng: random.Random,
    evaluate_many: Evaluator | None = None,
) -> Population:
    """One generational step: elites survive, offspring fill the rest.

    Offspring evaluation may be delegated to ``evaluate_many`` (e.g. a
    thread pool); results are merged in offspring index order, so the
    outcome is identical to sequential evaluation.
    """
    members = population.members
    size = len(members)
    length = len(members[0].genome)
    rnd = rng.random

    offspring_genomes: list[Genome] = []
    evaluations: list[Evaluation | None] = []
    for _ in range(size - config.elite_count):
        parent1 = tournament_select(population, config.tournament_k, rng)
        parent2 = tournament_select(population, config.tournament_k, rng)
        changed = False
        genome = parent1.genome
        if rnd() < config.crossover_rate:
            a = int(rnd() * (length + 1))
            b = int(rnd() * (length + 1))
            cut1, cut2 = (a, b) if a <= b else (b, a)
            genome = order_crossover(parent1.genome, parent2.genome, cut1, cut2)
            changed = True
        if rnd() < config.mutation_rate:
            i = int(rnd() * length)
            j = int(rnd() * length)
            genome = swap_mutation(genome, i, j)
            changed = True
        offspring_genomes.append(genome)
        evaluations.append(None if changed else parent1.evaluation)

    pending = [i for i, ev in enumerate(evaluations) if ev is None]
    if pending:
        todo = [offspring_genomes[i] for i in pending]
        if evaluate_many is None:
            computed = [evaluate_genome(instance, g) for g in todo]
        else:
            computed = evaluate_many(todo)
        for i, ev in zip(pending, computed):
            evaluations[i] = ev

    offspring = [Individual(g, ev) for g, ev in zip(offspring_genomes, evaluations)]
    survivors = members[: config.elite_count] + offspring
    return Population(_canonical(survivors), population.generation + 1)


def _pooled_evaluator(instance: Instance, pool: ThreadPoolExecutor, workers: int) -> Evaluator:
    def evaluate_many(genomes: Sequence[Genome]) -> list[Evaluation]:
        chunk = max(1, -(-len(genomes) // workers))
        chunks = [genomes[i : i + chunk] for i in range(0, len(genomes), chunk)]
        out: list[Evaluation] = []
        for part in pool.map(lambda gs: [evaluate_genome(instance, g) for g in gs], chunks):
            out.extend(part)
        return out

    return evaluate_many


def run_ga(instance: Instance, config: GaConfig, parallel: bool = False) -> SolverResult:
    """Full run: seeded init, a fixed budget of generations, best-so-far trace.

    ``parallel=True`` evaluates each generation's offspring on a thread
    pool; results are bit-identical to a sequential run.
    """
    config.validate()
    rng = random.Random(config.seed)
    start = time.perf_counter()
    population = init_population(instance, config, rng)
    history = [population.members[0].evaluation.fitness]
    if parallel and config.generations > 0:
        workers = 4
        with ThreadPoolExecutor(max_workers=workers) as pool:
            evaluator = _pooled_evaluator(instance, pool, workers)
            for _ in range(config.generations):
                population = evolve_generation(instance, population, config, rng, evaluator)
                history.append(population.members[0].evaluation.fitness)
    else:
        for _ in range(config.generations):
            population = evolve_generation(instance, population, config, rng)
            history.append(population.members[0].evaluation.fitness)
    wall = time.perf_counter() - start
    return SolverResult(population.members[0], history, wall)
