"""Nearest-neighbor construction: the classic greedy tour builder.

Used to seed the genetic population and as the tabu search start; also a
solver in its own right for benchmark comparisons.
"""

from __future__ import annotations

from .instance import Instance
from .routing import Genome


def nearest_neighbor_genome(instance: Instance) -> Genome:
    """Greedy customer order: always hop to the closest unvisited customer.

    Starts at the depot, ties broken toward the lowest customer id. Battery
    and cargo limits are ignored here; the route decoder repairs them.
    """
    dist = instance.distance_matrix
    unvisited = list(instance.customer_ids)
    order: list[int] = []
    pos = 0
    while unvisited:
        row = dist[pos]
        nxt = min(unvisited, key=lambda c: (row[c], c))
        unvisited.remove(nxt)
        order.append(nxt)
        pos = nxt
    return tuple(order)
