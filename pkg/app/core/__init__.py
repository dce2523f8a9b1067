from .chunks import ChunkRange, plan_chunks, stripe
from .config import settings
from .dataset import (
    SYNTHETIC_INDEX,
    CentroidSet,
    Dataset,
    PointFileError,
    load_points,
    save_points,
    squared_distance,
)
from .errors import ContractError, InvalidRequestError, KMeansError
from .executor import WorkerPool
from .rng import RngStream

__all__ = [
    "settings",
    "ChunkRange",
    "plan_chunks",
    "stripe",
    "SYNTHETIC_INDEX",
    "CentroidSet",
    "Dataset",
    "PointFileError",
    "load_points",
    "save_points",
    "squared_distance",
    "ContractError",
    "InvalidRequestError",
    "KMeansError",
    "WorkerPool",
    "RngStream",
]
