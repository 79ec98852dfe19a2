"""Clustering by connected components of a random edge-induced subgraph."""
from .errors import CapacityError, InputError
from .graph import Clustering, DisjointSet, ProbabilisticGraph, canonicalize, cluster_sizes, components
from .metrics import ClusterMatching, balcan_distance, benefits, compare, symdiff_distance
from .sampling import (EdgeStream, ExplicitDistribution, RandomGraphSource, SampleSeed,
                       sample_clustering, sample_many)
from .selection import (SelectionParams, SelectionResult, candidates_needed, evaluators_needed,
                        select_candidate)

__all__ = [
    "CapacityError", "InputError",
    "Clustering", "DisjointSet", "ProbabilisticGraph", "canonicalize", "cluster_sizes", "components",
    "ClusterMatching", "balcan_distance", "benefits", "compare", "symdiff_distance",
    "EdgeStream", "ExplicitDistribution", "RandomGraphSource", "SampleSeed",
    "sample_clustering", "sample_many",
    "SelectionParams", "SelectionResult", "candidates_needed", "evaluators_needed", "select_candidate",
]
