"""Ant colony optimization over customer tours.

Ants build customer orders from the depot following a pheromone matrix
biased by inverse distance; trails evaporate each iteration and the best
tour found so far is reinforced. Stations never appear in tours: the route
decoder inserts them, so ants search the same genome space as the other
solvers.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass

from .instance import Instance
from .nearest_neighbor import nearest_neighbor_genome
from .routing import Genome, Individual, SolverResult, evaluate_genome

# Floor for the inverse-distance heuristic on coincident nodes.
_DISTANCE_FLOOR = 1e-12


class EmptyCandidates(ValueError):
    """Transition probabilities requested for an empty candidate set."""


class MinimumOneIteration(ValueError):
    """ACO needs at least one iteration to produce a best tour."""


@dataclass(slots=True)
class AcoConfig:
    ants: int = 20
    iterations: int = 500
    alpha: float = 1.0
    beta: float = 2.0
    rho: float = 0.5
    tau_min: float = 1e-4
    seed: int = 0

    def validate(self) -> None:
        if self.ants < 1:
            raise ValueError("ants must be >= 1")
        if self.iterations < 1:
            raise MinimumOneIteration("iterations must be >= 1")
        if not 0.0 < self.rho < 1.0:
            raise ValueError("rho must be in (0, 1)")
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha and beta must be >= 0")
        if self.tau_min <= 0:
            raise ValueError("tau_min must be > 0")


class PheromoneMatrix:
    """Symmetric trail intensities over depot and customer nodes.

    Stored over all node ids for direct indexing; station rows are never
    read or deposited on. Entries never drop below ``tau_min``, so every
    arc stays selectable no matter how long it goes unused.
    """

    def __init__(self, size: int, initial: float, tau_min: float):
        if initial < tau_min:
            initial = tau_min
        self.tau_min = tau_min
        self.tau = [[initial] * size for _ in range(size)]

    def deposit(self, a: int, b: int, amount: float) -> None:
        self.tau[a][b] += amount
        self.tau[b][a] += amount


def evaporate(matrix: PheromoneMatrix, rho: float) -> PheromoneMatrix:
    """Fade every trail by the factor (1 - rho), clamped at tau_min."""
    floor = matrix.tau_min
    keep = 1.0 - rho
    for row in matrix.tau:
        for j, value in enumerate(row):
            faded = keep * value
            row[j] = faded if faded > floor else floor
    return matrix


def transition_probabilities(
    matrix: PheromoneMatrix,
    current: int,
    candidates: list[int],
    alpha: float,
    beta: float,
    instance: Instance,
) -> list[float]:
    """Random-proportional rule: p(j) ~ tau(current,j)^alpha * (1/d(current,j))^beta.

    Computed in log space so huge exponents stay finite.
    """
    if not candidates:
        raise EmptyCandidates("no candidates to choose from")
    tau_row = matrix.tau[current]
    dist_row = instance.distance_matrix[current]
    log = math.log
    scores = [
        alpha * log(tau_row[j]) - beta * log(d if (d := dist_row[j]) > _DISTANCE_FLOOR else _DISTANCE_FLOOR)
        for j in candidates
    ]
    top = max(scores)
    weights = [math.exp(s - top) for s in scores]
    norm = sum(weights)
    return [w / norm for w in weights]


def construct_ant_tour(
    matrix: PheromoneMatrix, instance: Instance, config: AcoConfig, rng: random.Random
) -> Genome:
    """Roulette-wheel tour construction from the depot; one draw per step."""
    remaining = list(instance.customer_ids)
    order: list[int] = []
    pos = 0
    while remaining:
        probs = transition_probabilities(
            matrix, pos, remaining, config.alpha, config.beta, instance
        )
        u = rng.random()
        acc = 0.0
        chosen = len(remaining) - 1
        for idx, p in enumerate(probs):
            acc += p
            if u < acc:
                chosen = idx
                break
        pos = remaining.pop(chosen)
        order.append(pos)
    return tuple(order)


def run_aco(instance: Instance, config: AcoConfig) -> SolverResult:
    """ACO run: ants per iteration, evaporation, best-so-far reinforcement.

    Trails start uniform at 1/(n * L_nn) with L_nn the nearest-neighbor
    fitness (clamped up to tau_min), and the best-so-far tour's arcs,
    depot legs included, receive 1/best_fitness after each evaporation.
    """
    config.validate()
    rng = random.Random(config.seed)
    start = time.perf_counter()

    customers = instance.customer_ids
    nn_fitness = evaluate_genome(instance, nearest_neighbor_genome(instance)).fitness
    initial = 1.0 / (len(customers) * nn_fitness) if nn_fitness > 0 else config.tau_min
    matrix = PheromoneMatrix(len(instance.nodes), initial, config.tau_min)

    best: Individual | None = None
    history: list[float] = []
    for _ in range(config.iterations):
        for _ in range(config.ants):
            tour = construct_ant_tour(matrix, instance, config, rng)
            ev = evaluate_genome(instance, tour)
            if best is None or ev.fitness < best.evaluation.fitness:
                best = Individual(tour, ev)
        evaporate(matrix, config.rho)
        fitness = best.evaluation.fitness
        if fitness > 0:
            amount = 1.0 / fitness
            prev = 0
            for c in best.genome:
                matrix.deposit(prev, c, amount)
                prev = c
            matrix.deposit(prev, 0, amount)
        history.append(best.evaluation.fitness)

    wall = time.perf_counter() - start
    assert best is not None
    return SolverResult(best, history, wall)
