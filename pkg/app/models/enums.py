import enum


class LayoutStrategy(enum.Enum):
    SHARED_MUTABLE = "shared"
    REPLICATED_CENTROIDS = "replicated"
    READ_ONLY_ARENA = "arena"


class SeedingMode(enum.Enum):
    SERIAL = "serial"
    PARALLEL = "parallel"


class InitMethod(enum.Enum):
    KMEANS_PP = "kmeans++"
    RANDOM = "random"


class SweepAxis(enum.Enum):
    CLUSTERS = "clusters"
    POINTS = "points"


class Phase(enum.Enum):
    SEEDING = "seeding"
    CLUSTERING = "clustering"
    TOTAL = "total"
