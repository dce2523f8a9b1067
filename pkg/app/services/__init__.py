from .audit import AUDIT_MAX_POINTS, strategy_equivalence_audit
from .bench import ResourceError, SummaryError, preset, run_scenario, summarize
from .cluster import assign, kmeans, lloyd, update_centroids
from .layout import CapacityError, build_views
from .reduce import ReductionPlan, parallel_min_update, parallel_sum
from .seeding import (
    DegenerateWeightsError,
    WeightVector,
    sample_weighted,
    seed,
    seed_parallel,
    seed_serial,
    seed_uniform,
)
from .synthetic import generate_points, generator_labels

__all__ = [
    "AUDIT_MAX_POINTS",
    "strategy_equivalence_audit",
    "ResourceError",
    "SummaryError",
    "preset",
    "run_scenario",
    "summarize",
    "assign",
    "kmeans",
    "lloyd",
    "update_centroids",
    "CapacityError",
    "build_views",
    "ReductionPlan",
    "parallel_min_update",
    "parallel_sum",
    "DegenerateWeightsError",
    "WeightVector",
    "sample_weighted",
    "seed",
    "seed_parallel",
    "seed_serial",
    "seed_uniform",
    "generate_points",
    "generator_labels",
]
