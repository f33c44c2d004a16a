"""Tabu search over the swap neighborhood of a customer permutation.

Starts from the nearest-neighbor tour. Each iteration scores a random
sample of swap moves, skips moves whose customer pair is tabu unless they
beat the best tour found so far (aspiration), applies the best admissible
move even when it worsens the current tour, and forbids the swapped pair
for the next ``tenure`` iterations.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .instance import Instance
from .nearest_neighbor import nearest_neighbor_genome
from .routing import Individual, SolverResult, evaluate_genome


@dataclass(slots=True)
class TabuConfig:
    iterations: int = 1000
    neighborhood_sample: int = 50
    tenure: int = 10
    seed: int = 0

    def validate(self) -> None:
        if self.iterations < 0:
            raise ValueError("iterations must be >= 0")
        if self.neighborhood_sample < 1:
            raise ValueError("neighborhood_sample must be >= 1")
        if self.tenure < 0:
            raise ValueError("tenure must be >= 0")


@dataclass(slots=True)
class TabuMemory:
    """Short-term memory of swapped customer pairs.

    A pair marked at iteration t stays tabu for iterations t+1..t+tenure;
    entries whose expiry has passed count as absent.
    """

    tenure: int
    _expiry: dict[tuple[int, int], int] = field(default_factory=dict)

    def mark(self, pair: tuple[int, int], iteration: int) -> None:
        self._expiry[pair] = iteration + self.tenure + 1

    def is_tabu(self, pair: tuple[int, int], iteration: int) -> bool:
        expiry = self._expiry.get(pair)
        return expiry is not None and expiry > iteration

    def permits(
        self, pair: tuple[int, int], iteration: int, fitness: float, best_fitness: float
    ) -> bool:
        """Move admissibility: not tabu, or aspiration (beats the best so far)."""
        return fitness < best_fitness or not self.is_tabu(pair, iteration)


def run_tabu(instance: Instance, config: TabuConfig) -> SolverResult:
    """Tabu search run; returns the best tour seen, its trace and wall time.

    Per iteration the stream yields two position draws for each sampled
    move (the second skips the first, so moves are genuine swaps). With a
    single customer there are no moves and the start solution is returned.
    """
    config.validate()
    rng = random.Random(config.seed)
    rnd = rng.random
    start = time.perf_counter()

    genome = nearest_neighbor_genome(instance)
    current = Individual(genome, evaluate_genome(instance, genome))
    best = current
    history = [best.evaluation.fitness]
    memory = TabuMemory(config.tenure)
    length = len(genome)

    for iteration in range(1, config.iterations + 1):
        if length >= 2:
            best_move: Individual | None = None
            best_pair = (0, 0)
            for _ in range(config.neighborhood_sample):
                i = int(rnd() * length)
                j = int(rnd() * (length - 1))
                if j >= i:
                    j += 1
                order = list(current.genome)
                order[i], order[j] = order[j], order[i]
                a, b = current.genome[i], current.genome[j]
                pair = (a, b) if a < b else (b, a)
                ev = evaluate_genome(instance, order)
                if not memory.permits(pair, iteration, ev.fitness, best.evaluation.fitness):
                    continue
                if best_move is None or ev.fitness < best_move.evaluation.fitness:
                    best_move = Individual(tuple(order), ev)
                    best_pair = pair
            if best_move is not None:
                current = best_move
                memory.mark(best_pair, iteration)
                if current.evaluation.fitness < best.evaluation.fitness:
                    best = current
        history.append(best.evaluation.fitness)

    wall = time.perf_counter() - start
    return SolverResult(best, history, wall)
