"""MaxFlowRouting routing tables, fast-reroute with backtracking, and the
comparison experiments against shortest-path routing."""

__version__ = "0.1.0"

from .graph import Graph, Route, GraphError, EdgeListError  # noqa: E402
from .flow import max_flow, min_cut, shortest_distance, shortest_path, has_path  # noqa: E402
from .tables import (Weights, Candidate, RoutingTable, STANDARD_WEIGHTS,  # noqa: E402
                     build_table_maxflow, build_table_dijkstra, build_tables_maxflow,
                     build_tables_dijkstra, primary_route)
from .frr import FailureSet, DeliveryOutcome, forward, delivery_matches_reachability  # noqa: E402
from .topology import GeneratorSpec, generate, load_topology  # noqa: E402
from .experiments import ExperimentConfig, MetricsRecord, run_experiment  # noqa: E402
