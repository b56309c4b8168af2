"""Clustering functions of graphs and random intersection graph models."""

__version__ = "0.1.0"

from .active import adjust_ground_set, expected_mean_degree, memoryless_active, sample_active
from .clustering import (
    BACKEND,
    ClusteringProfile,
    PairHistogram,
    clustering_profile,
    global_clustering_coefficient,
    pair_histogram,
)
from .graph import (
    BipartiteIncidence,
    Graph,
    GraphError,
    build_graph,
    build_incidence,
    common_neighbors,
    incidence_from_sets,
    project_bipartite,
)
from .inhomogeneous import memoryless_inhomogeneous, sample_inhomogeneous
from .pmf import DiscretePMF

__all__ = [
    "BACKEND",
    "BipartiteIncidence",
    "ClusteringProfile",
    "DiscretePMF",
    "Graph",
    "GraphError",
    "PairHistogram",
    "adjust_ground_set",
    "build_graph",
    "build_incidence",
    "clustering_profile",
    "common_neighbors",
    "expected_mean_degree",
    "global_clustering_coefficient",
    "incidence_from_sets",
    "memoryless_active",
    "memoryless_inhomogeneous",
    "pair_histogram",
    "project_bipartite",
    "sample_active",
    "sample_inhomogeneous",
]
