import pytest

from evroute.instance import Instance, Node, NodeKind


def build_instance(customers, stations=(), battery=12.0, consumption=1.0, capacity=10.0):
    """Instance factory: customers as (x, y, demand), stations as (x, y)."""
    nodes = [Node(0, NodeKind.DEPOT, 0.0, 0.0, 0.0)]
    for i, (x, y, demand) in enumerate(customers):
        nodes.append(Node(1 + i, NodeKind.CUSTOMER, float(x), float(y), float(demand)))
    for j, (x, y) in enumerate(stations):
        nodes.append(Node(1 + len(customers) + j, NodeKind.STATION, float(x), float(y), 0.0))
    return Instance(
        name="test",
        nodes=tuple(nodes),
        battery_capacity=float(battery),
        consumption_rate=float(consumption),
        cargo_capacity=float(capacity),
    )


@pytest.fixture
def make_instance():
    return build_instance


@pytest.fixture
def triangle():
    """Depot (0,0), customer 1 at (0,3), customer 2 at (4,0); legs 3-4-5."""
    return build_instance([(0, 3, 1), (4, 0, 1)], battery=12.0)


@pytest.fixture
def triangle_tight():
    """Same triangle but battery 10 and a station at (4,3)."""
    return build_instance([(0, 3, 1), (4, 0, 1)], stations=[(4, 3)], battery=10.0)
