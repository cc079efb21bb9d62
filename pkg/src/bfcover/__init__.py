"""Geodesic covers of butterfly networks."""

from .butterfly import ButterflyGraph, Color, build_butterfly, color, diametral, route
from .construct import construct_cover
from .cover import Cover
from .edge_partition import edge_cycle_partition, split_to_diametrals
from .graph import Graph, build_graph, coverage_report, distance, is_geodesic
from .solve import bf_lower_bounds, exact_cover, greedy_cover, make_instance

__all__ = [
    "ButterflyGraph",
    "Color",
    "Cover",
    "Graph",
    "bf_lower_bounds",
    "build_butterfly",
    "build_graph",
    "color",
    "construct_cover",
    "coverage_report",
    "diametral",
    "distance",
    "edge_cycle_partition",
    "exact_cover",
    "greedy_cover",
    "is_geodesic",
    "make_instance",
    "route",
    "split_to_diametrals",
]

__version__ = "0.1.0"
