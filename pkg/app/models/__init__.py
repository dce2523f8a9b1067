from .enums import InitMethod, LayoutStrategy, Phase, SeedingMode, SweepAxis
from .results import ClusteringResult, NearestDistanceTable, SeedingResult

__all__ = [
    "InitMethod",
    "LayoutStrategy",
    "Phase",
    "SeedingMode",
    "SweepAxis",
    "ClusteringResult",
    "NearestDistanceTable",
    "SeedingResult",
]
