"""Genetic-algorithm solver for cost-optimal assignment of precedence-constrained
serial tasks to duration-bounded stations."""

from .encoding import StationPlan, decode_permutation, is_valid_assignment, is_valid_permutation, plan_of_assignment
from .engine import EngineConfig, Encoding, Replacement, RunReport, roulette_select, run
from .fitness import CostBreakdown, fitness_of, total_cost
from .instance import Coupling, Instance, InstanceError, Task, generate_case, parse_instance, serialize_instance
from .operators import OperatorConfig

__version__ = "0.1.0"
