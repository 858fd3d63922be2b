"""Power- and latency-aware embedding of business processes into IoT meshes."""

from .feasibility import Constraint, EmbeddingOptions, Violation, check_assignment, check_routing, check_solution
from .heuristics import embed_eluse, embed_rese, embed_rlse, efficiency_order
from .instances import BuildingParams, WorkloadParams, generate_bps, generate_building, generate_tiny, mid_size_params
from .metrics import (BaselineError, LatencyTable, MetricsReport, SaturationError, build_latency_table, evaluate,
                      optimality_ratio, weighted_objective)
from .model import (ANY, BusinessProcess, Coefficients, IoTNode, PhysicalNetwork, VirtualLink, VirtualNode,
                    WirelessLink, ZoneMode, validate_instance)
from .routing import BlockingError, NoRouteError, RoutingPlan, WeightMode, k_shortest_paths, route_all, shortest_path
from .scenario import ArrivalSchedule, Method, MethodConfig, ScenarioResult, Strategy, compare, run_reprovisioning, run_sequential
from .solver import (ENERGY, LATENCY, WEIGHTED, Budget, Certificate, Frozen, Objective, ObjectiveKind, Solution,
                     brute_force_oracle, solve_exact)

__version__ = "0.1.0"
