"""Exhaustive reference optimizer for small instances.

Enumerates every customer permutation and keeps the best fitness under the
shared route decoder. This is the ground truth the metaheuristics are
measured against: the optimum of the genome space they all search (not a
proof of global optimality over arbitrary route structures).
"""

from __future__ import annotations

import itertools

from .instance import Instance
from .routing import Evaluation, Genome, evaluate_genome

MAX_CUSTOMERS = 10


class TooManyCustomers(ValueError):
    """Instance too large to enumerate (more than MAX_CUSTOMERS customers)."""


def brute_force_best(instance: Instance) -> tuple[Genome, Evaluation]:
    """Best genome over all permutations; ties go to the lexicographically first."""
    customers = instance.customer_ids
    if len(customers) > MAX_CUSTOMERS:
        raise TooManyCustomers(
            f"{len(customers)} customers; enumeration is capped at {MAX_CUSTOMERS}"
        )
    best_genome: Genome | None = None
    best_eval: Evaluation | None = None
    for perm in itertools.permutations(customers):
        ev = evaluate_genome(instance, perm)
        if best_eval is None or ev.fitness < best_eval.fitness:
            best_genome = perm
            best_eval = ev
    assert best_genome is not None and best_eval is not None
    return best_genome, best_eval
