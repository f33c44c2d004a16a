"""Electric vehicle routing: shared encoding, four solvers and a bench CLI."""

from .instance import (
    Instance,
    InstanceError,
    Node,
    NodeKind,
    ZeroCustomers,
    generate_random_instance,
    parse_instance,
    serialize_instance,
)
from .routing import (
    Evaluation,
    Genome,
    Individual,
    InvalidGenome,
    RoutePlan,
    SolverResult,
    decode,
    evaluate,
    evaluate_genome,
)
from .nearest_neighbor import nearest_neighbor_genome
from .genetic import GaConfig, run_ga
from .tabu import TabuConfig, run_tabu
from .aco import AcoConfig, run_aco
from .oracle import TooManyCustomers, brute_force_best

__version__ = "0.1.0"

__all__ = [
    "AcoConfig",
    "Evaluation",
    "GaConfig",
    "Genome",
    "Individual",
    "Instance",
    "InstanceError",
    "InvalidGenome",
    "Node",
    "NodeKind",
    "RoutePlan",
    "SolverResult",
    "TabuConfig",
    "TooManyCustomers",
    "ZeroCustomers",
    "brute_force_best",
    "decode",
    "evaluate",
    "evaluate_genome",
    "generate_random_instance",
    "nearest_neighbor_genome",
    "parse_instance",
    "run_aco",
    "run_ga",
    "run_tabu",
    "serialize_instance",
]
