"""Shared solution encoding: genome, route decoding and fitness.

Every solver searches the same space: a genome, i.e. a permutation of the
customer ids. :func:`decode` turns a genome into physical routes (depot
returns when cargo runs out, charging-station detours when the battery
would strand the vehicle) and :func:`evaluate` scores any route plan.
Constraint violations are swept into the fitness through a large penalty,
so "smaller fitness" is the single criterion everywhere.

All functions here are pure; genomes are tuples and may be evaluated from
any number of threads concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .instance import Instance

# A genome is a permutation of the instance's customer ids.
Genome = tuple[int, ...]

# One penalty unit per unit of battery deficit or cargo excess; large enough
# that any feasible plan beats any infeasible one on desk-scale instances.
PENALTY_WEIGHT = 10_000.0


class InvalidGenome(ValueError):
    """Genome is not a permutation of the instance's customer ids."""


@dataclass(slots=True)
class RoutePlan:
    """Decoded routes; each starts and ends at the depot (node 0)."""

    routes: tuple[tuple[int, ...], ...]


@dataclass(slots=True)
class Evaluation:
    total_distance: float
    battery_violation: float
    capacity_violation: float
    fitness: float = field(init=False)

    def __post_init__(self) -> None:
        self.fitness = (
            self.total_distance
            + PENALTY_WEIGHT * self.battery_violation
            + PENALTY_WEIGHT * self.capacity_violation
        )

    @property
    def feasible(self) -> bool:
        return self.battery_violation == 0.0 and self.capacity_violation == 0.0


@dataclass(slots=True)
class Individual:
    """A genome with its cached evaluation."""

    genome: Genome
    evaluation: Evaluation

    @property
    def fitness(self) -> float:
        return self.evaluation.fitness


@dataclass(slots=True)
class SolverResult:
    """Outcome of one solver run: best individual, fitness trace, seconds."""

    best: Individual
    history: list[float]
    wall_time: float


def _check_genome(instance: Instance, genome: Sequence[int]) -> None:
    customers = instance.customer_id_set
    if len(genome) != len(customers) or set(genome) != customers:
        raise InvalidGenome(
            f"genome {genome!r} is not a permutation of the customer ids"
        )


def _simulate(instance: Instance, order: Sequence[int]) -> tuple[list[list[int]], Evaluation]:
    """Decode ``order`` and account distance/violations in one pass.

    Route construction walks the genome left to right. Before a customer is
    appended the cargo check may close the route, then the battery check
    requires enough charge to reach the customer *and* afterwards the
    nearest recharge point; if not, the vehicle detours to the reachable
    station adding the least distance (ties: lowest station id), recharges
    to full and tries again. With no reachable station the route is closed
    and the customer retried from a fresh route; if even that cannot work
    the leg is recorded anyway and the energy deficit shows up as a battery
    violation. Each station is tried at most once per customer, which makes
    the detour loop terminate.
    """
    dist = instance.distance_matrix
    energy = instance.energy_matrix
    demands = instance.demands
    reserve = instance.reserve_energy
    stations = instance.station_ids
    capacity = instance.cargo_capacity
    full = instance.battery_capacity

    routes: list[list[int]] = []
    route = [0]
    pos = 0
    load = 0.0
    level = full
    total = 0.0
    battery_violation = 0.0
    capacity_violation = 0.0

    def close_route() -> None:
        nonlocal route, pos, load, level, total, battery_violation, capacity_violation
        tried: set[int] = set()
        while level < energy[pos][0]:
            best_s = -1
            best_key = 0.0
            for s in stations:
                if s == pos or s in tried or energy[pos][s] > level:
                    continue
                key = dist[pos][s] + dist[s][0]
                if best_s < 0 or key < best_key:
                    best_s = s
                    best_key = key
            if best_s < 0:
                break  # depot unreachable: record the leg, deficit is charged below
            total += dist[pos][best_s]
            route.append(best_s)
            tried.add(best_s)
            pos = best_s
            level = full
        total += dist[pos][0]
        level -= energy[pos][0]
        if level < 0.0:
            battery_violation -= level
        route.append(0)
        routes.append(route)
        over = load - capacity
        if over > 0.0:
            capacity_violation += over
        route = [0]
        pos = 0
        load = 0.0
        level = full

    for c in order:
        demand = demands[c]
        if load + demand > capacity and len(route) > 1:
            close_route()
        tried: set[int] = set()
        while True:
            if level >= energy[pos][c] + reserve[c]:
                break
            best_s = -1
            best_key = 0.0
            for s in stations:
                if s == pos or s in tried or energy[pos][s] > level:
                    continue
                key = dist[pos][s] + dist[s][c]
                if best_s < 0 or key < best_key:
                    best_s = s
                    best_key = key
            if best_s >= 0:
                total += dist[pos][best_s]
                route.append(best_s)
                tried.add(best_s)
                pos = best_s
                level = full
                continue
            if len(route) == 1:
                break  # unreachable even from a fresh route: force the leg
            close_route()
        total += dist[pos][c]
        level -= energy[pos][c]
        if level < 0.0:
            battery_violation -= level
            level = 0.0
        load += demand
        route.append(c)
        pos = c

    if len(route) > 1:
        close_route()
    return routes, Evaluation(total, battery_violation, capacity_violation)


def decode(instance: Instance, genome: Sequence[int]) -> RoutePlan:
    """Deterministic greedy split-and-repair decoding of a genome."""
    _check_genome(instance, genome)
    routes, _ = _simulate(instance, genome)
    return RoutePlan(tuple(tuple(r) for r in routes))


def evaluate(instance: Instance, plan: RoutePlan) -> Evaluation:
    """Score a route plan: distance plus penalized battery/cargo violations.

    The battery is simulated per route from a full charge, recharging to
    full at the depot and at stations; each below-zero arrival adds its
    deficit to the violation and the level is clamped at zero.
    """
    dist = instance.distance_matrix
    energy = instance.energy_matrix
    demands = instance.demands
    recharge = instance.recharge_flags
    capacity = instance.cargo_capacity
    full = instance.battery_capacity

    total = 0.0
    battery_violation = 0.0
    capacity_violation = 0.0
    for route in plan.routes:
        if len(route) < 2 or route[0] != 0 or route[-1] != 0:
            raise ValueError(f"route must start and end at the depot: {route!r}")
        level = full
        load = 0.0
        prev = 0
        for v in route[1:]:
            total += dist[prev][v]
            level -= energy[prev][v]
            if level < 0.0:
                battery_violation -= level
                level = 0.0
            if recharge[v]:
                level = full
            else:
                load += demands[v]
            prev = v
        over = load - capacity
        if over > 0.0:
            capacity_violation += over
    return Evaluation(total, battery_violation, capacity_violation)


def evaluate_genome(instance: Instance, genome: Sequence[int]) -> Evaluation:
    """Fitness of a genome; equal to ``evaluate(instance, decode(instance, genome))``."""
    _check_genome(instance, genome)
    return _simulate(instance, genome)[1]
