"""Problem instances: node model, file parser/serializer and a random generator.

An instance is a set of nodes (one depot, customers with demands, optional
charging stations) plus three scalars: cargo capacity, battery capacity and
the energy consumed per unit of distance. Instances are immutable and safe
to share between threads; derived lookup tables (distance/energy matrices)
are built lazily and cached on the instance.

Instance file format (line oriented, ``#`` starts a comment)::

    NAME <text>
    CAPACITY <number>        # cargo capacity
    BATTERY <number>         # energy capacity
    CONSUMPTION <number>     # energy per distance unit
    NODES <count>
    <id> <D|C|S> <x> <y> <demand>
    EOF

Node ids must be exactly 0..count-1 and node 0 must be the depot (``D``).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from functools import cached_property


class InstanceError(ValueError):
    """Base class for invalid instance data; ``line`` is set by the parser."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class MalformedHeader(InstanceError):
    """Missing, duplicate or out-of-place keyword, or a truncated file."""


class MalformedNodeLine(InstanceError):
    """Node line does not have the five ``id kind x y demand`` fields."""


class NonNumericField(InstanceError):
    """A numeric field failed to parse."""


class UnknownNodeKind(InstanceError):
    """Node kind letter is not one of D, C, S."""


class InvalidNodeId(InstanceError):
    """Node id outside 0..count-1, or an unknown id passed to a lookup."""


class DuplicateNodeId(InstanceError):
    """The same node id appears on two lines."""


class NoDepot(InstanceError):
    """Node 0 is not a depot."""


class MultipleDepots(InstanceError):
    """More than one depot node."""


class NoCustomers(InstanceError):
    """Instance has no customer nodes."""


class InvalidDemand(InstanceError):
    """Demand breaks the sign rules (0 for depot/station, > 0 for customers)."""


class DemandExceedsCapacity(InstanceError):
    """A single customer demand exceeds the cargo capacity."""


class InvalidHeaderValue(InstanceError):
    """Capacity, battery or consumption is not strictly positive."""


class ZeroCustomers(ValueError):
    """Random generator asked for an instance without customers."""


class NodeKind(Enum):
    DEPOT = "D"
    CUSTOMER = "C"
    STATION = "S"


_KIND_BY_LETTER = {kind.value: kind for kind in NodeKind}


@dataclass(frozen=True, slots=True)
class Node:
    id: int
    kind: NodeKind
    x: float
    y: float
    demand: float = 0.0


@dataclass(frozen=True)
class Instance:
    """Immutable problem definition.

    ``nodes`` is ordered by id (0..n-1, depot first). ``battery_capacity``
    is the full charge, ``consumption_rate`` converts distance to energy
    and ``cargo_capacity`` bounds the demand a single route may serve.
    """

    name: str
    nodes: tuple[Node, ...]
    battery_capacity: float
    consumption_rate: float
    cargo_capacity: float

    def __post_init__(self) -> None:
        if self.battery_capacity <= 0:
            raise InvalidHeaderValue("battery capacity must be > 0")
        if self.consumption_rate <= 0:
            raise InvalidHeaderValue("consumption rate must be > 0")
        if self.cargo_capacity <= 0:
            raise InvalidHeaderValue("cargo capacity must be > 0")
        depots = [n for n in self.nodes if n.kind is NodeKind.DEPOT]
        if not self.nodes or self.nodes[0].kind is not NodeKind.DEPOT:
            raise NoDepot("node 0 must be the depot")
        if len(depots) > 1:
            raise MultipleDepots("instance has more than one depot")
        for position, node in enumerate(self.nodes):
            if node.id != position:
                raise InvalidNodeId(f"node ids must be 0..{len(self.nodes) - 1} in order")
            if node.kind is NodeKind.CUSTOMER:
                if node.demand <= 0:
                    raise InvalidDemand(f"customer {node.id} must have demand > 0")
                if node.demand > self.cargo_capacity:
                    raise DemandExceedsCapacity(
                        f"customer {node.id} demand {node.demand} exceeds capacity {self.cargo_capacity}"
                    )
            elif node.demand != 0:
                raise InvalidDemand(f"node {node.id} is not a customer and must have demand 0")
        if not any(n.kind is NodeKind.CUSTOMER for n in self.nodes):
            raise NoCustomers("instance has no customers")

    @cached_property
    def customer_ids(self) -> tuple[int, ...]:
        return tuple(n.id for n in self.nodes if n.kind is NodeKind.CUSTOMER)

    @cached_property
    def customer_id_set(self) -> frozenset[int]:
        return frozenset(self.customer_ids)

    @cached_property
    def station_ids(self) -> tuple[int, ...]:
        return tuple(n.id for n in self.nodes if n.kind is NodeKind.STATION)

    @cached_property
    def demands(self) -> tuple[float, ...]:
        return tuple(n.demand for n in self.nodes)

    @cached_property
    def recharge_flags(self) -> tuple[bool, ...]:
        """True for nodes that restore the battery to full (depot and stations)."""
        return tuple(n.kind is not NodeKind.CUSTOMER for n in self.nodes)

    @cached_property
    def distance_matrix(self) -> list[list[float]]:
        points = [(n.x, n.y) for n in self.nodes]
        return [[math.dist(p, q) for q in points] for p in points]

    @cached_property
    def energy_matrix(self) -> list[list[float]]:
        h = self.consumption_rate
        return [[h * d for d in row] for row in self.distance_matrix]

    @cached_property
    def reserve_energy(self) -> tuple[float, ...]:
        """Per node: energy to the nearest recharge point (a station or the depot)."""
        targets = (0,) + self.station_ids
        energy = self.energy_matrix
        return tuple(min(energy[i][t] for t in targets) for i in range(len(self.nodes)))

    def distance(self, i: int, j: int) -> float:
        """Euclidean distance between nodes ``i`` and ``j``."""
        n = len(self.nodes)
        if not (0 <= i < n and 0 <= j < n):
            raise InvalidNodeId(f"node id out of range 0..{n - 1}: ({i}, {j})")
        return self.distance_matrix[i][j]


def parse_instance(text: str) -> Instance:
    """Parse instance file contents, validating every structural rule.

    Raises a subclass of :class:`InstanceError` naming the offending line.
    """
    header: dict[str, float | str] = {}
    node_count = 0
    nodes_by_id: dict[int, Node] = {}
    depot_line: int | None = None
    state = "header"
    lineno = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if state == "header":
            keyword = tokens[0]
            if keyword not in ("NAME", "CAPACITY", "BATTERY", "CONSUMPTION", "NODES"):
                raise MalformedHeader(f"unexpected keyword {keyword!r} in header", lineno)
            if keyword in header:
                raise MalformedHeader(f"duplicate keyword {keyword}", lineno)
            if keyword == "NAME":
                if len(tokens) < 2:
                    raise MalformedHeader("NAME requires a value", lineno)
                header["NAME"] = line.split(None, 1)[1]
                continue
            if len(tokens) != 2:
                raise MalformedHeader(f"{keyword} requires exactly one value", lineno)
            if keyword == "NODES":
                for required in ("NAME", "CAPACITY", "BATTERY", "CONSUMPTION"):
                    if required not in header:
                        raise MalformedHeader(f"missing keyword {required} before NODES", lineno)
                try:
                    node_count = int(tokens[1])
                except ValueError:
                    raise NonNumericField(f"NODES count {tokens[1]!r} is not an integer", lineno) from None
                if node_count < 1:
                    raise MalformedHeader("NODES count must be at least 1", lineno)
                state = "nodes"
            else:
                try:
                    value = float(tokens[1])
                except ValueError:
                    raise NonNumericField(f"{keyword} value {tokens[1]!r} is not a number", lineno) from None
                if value <= 0 or not math.isfinite(value):
                    raise InvalidHeaderValue(f"{keyword} must be a positive finite number", lineno)
                header[keyword] = value
        elif state == "nodes":
            if tokens == ["EOF"]:
                raise MalformedHeader(
                    f"expected {node_count} node lines, found {len(nodes_by_id)}", lineno
                )
            node = _parse_node_line(tokens, node_count, float(header["CAPACITY"]), lineno)
            if node.id in nodes_by_id:
                raise DuplicateNodeId(f"node id {node.id} already defined", lineno)
            if node.kind is NodeKind.DEPOT:
                if node.id != 0:
                    raise NoDepot(f"depot must be node 0, found depot at id {node.id}", lineno)
                if depot_line is not None:
                    raise MultipleDepots("second depot node", lineno)
                depot_line = lineno
            elif node.id == 0:
                raise NoDepot("node 0 must be the depot", lineno)
            nodes_by_id[node.id] = node
            if len(nodes_by_id) == node_count:
                state = "eof"
        elif state == "eof":
            if tokens != ["EOF"]:
                raise MalformedHeader(f"expected EOF, found {line!r}", lineno)
            state = "done"
        else:  # after EOF: ignore trailing content
            break

    if state == "header":
        raise MalformedHeader("missing header (file has no content before EOF)", max(lineno, 1))
    if state == "nodes":
        raise MalformedHeader(
            f"expected {node_count} node lines, found {len(nodes_by_id)}", max(lineno, 1)
        )
    if state == "eof":
        raise MalformedHeader("missing EOF keyword", max(lineno, 1))
    if depot_line is None:
        raise NoDepot("instance has no depot", max(lineno, 1))
    if not any(n.kind is NodeKind.CUSTOMER for n in nodes_by_id.values()):
        raise NoCustomers("instance has no customers", max(lineno, 1))

    return Instance(
        name=str(header["NAME"]),
        nodes=tuple(nodes_by_id[i] for i in range(node_count)),
        battery_capacity=float(header["BATTERY"]),
        consumption_rate=float(header["CONSUMPTION"]),
        cargo_capacity=float(header["CAPACITY"]),
    )


def _parse_node_line(tokens: list[str], node_count: int, capacity: float, lineno: int) -> Node:
    if len(tokens) != 5:
        raise MalformedNodeLine("node line must be 'id kind x y demand'", lineno)
    raw_id, raw_kind, raw_x, raw_y, raw_demand = tokens
    try:
        node_id = int(raw_id)
    except ValueError:
        raise NonNumericField(f"node id {raw_id!r} is not an integer", lineno) from None
    kind = _KIND_BY_LETTER.get(raw_kind)
    if kind is None:
        raise UnknownNodeKind(f"unknown node kind {raw_kind!r} (expected D, C or S)", lineno)
    try:
        x, y, demand = float(raw_x), float(raw_y), float(raw_demand)
    except ValueError:
        raise NonNumericField("coordinates and demand must be numbers", lineno) from None
    if not (0 <= node_id < node_count):
        raise InvalidNodeId(f"node id {node_id} outside 0..{node_count - 1}", lineno)
    if kind is NodeKind.CUSTOMER:
        if demand <= 0:
            raise InvalidDemand(f"customer {node_id} must have demand > 0", lineno)
        if demand > capacity:
            raise DemandExceedsCapacity(
                f"customer {node_id} demand {demand} exceeds capacity {capacity}", lineno
            )
    elif demand != 0:
        raise InvalidDemand(f"{kind.value} node {node_id} must have demand 0", lineno)
    return Node(node_id, kind, x, y, demand)


def serialize_instance(instance: Instance) -> str:
    """Emit the file format above; coordinates with 6 decimals, scalars exact."""
    lines = [
        f"NAME {instance.name}",
        f"CAPACITY {instance.cargo_capacity!r}",
        f"BATTERY {instance.battery_capacity!r}",
        f"CONSUMPTION {instance.consumption_rate!r}",
        f"NODES {len(instance.nodes)}",
    ]
    for node in instance.nodes:
        lines.append(f"{node.id} {node.kind.value} {node.x:.6f} {node.y:.6f} {node.demand!r}")
    lines.append("EOF")
    return "\n".join(lines) + "\n"


def generate_random_instance(
    n_customers: int, n_stations: int, seed: int, side: float = 100.0
) -> Instance:
    """Deterministic random instance: depot centered in a ``side`` x ``side`` square.

    Customers and stations are uniform over the square, demands are uniform
    integers in 1..5 against a cargo capacity of 10, and the battery holds
    1.5x the energy needed to cross the square diagonal, so routes are
    feasible but occasionally need a charging stop. Coordinates are rounded
    to 6 decimals so serialization round-trips exactly.
    """
    if n_customers < 1:
        raise ZeroCustomers("need at least one customer")
    rng = random.Random(seed)
    consumption = 1.0
    half = round(side / 2.0, 6)
    nodes = [Node(0, NodeKind.DEPOT, half, half, 0.0)]
    for i in range(n_customers):
        x = round(rng.uniform(0.0, side), 6)
        y = round(rng.uniform(0.0, side), 6)
        nodes.append(Node(1 + i, NodeKind.CUSTOMER, x, y, float(rng.randint(1, 5))))
    for j in range(n_stations):
        x = round(rng.uniform(0.0, side), 6)
        y = round(rng.uniform(0.0, side), 6)
        nodes.append(Node(1 + n_customers + j, NodeKind.STATION, x, y, 0.0))
    battery = 1.5 * (side * math.sqrt(2.0)) * consumption
    return Instance(
        name=f"rand-c{n_customers}-s{n_stations}-seed{seed}",
        nodes=tuple(nodes),
        battery_capacity=battery,
        consumption_rate=consumption,
        cargo_capacity=10.0,
    )
