"""Fixed-tree summation primitives.

The tree has two levels: every block of ``block_size`` values is summed strictly left to
right, then the block partials are summed left to right starting from 0.0. The shape depends
only on the input length and the block size, never on how the blocks are spread over
workers, so the same input always yields the same bits.
"""

import numpy as np

from app.core.errors import ContractError


def block_partials(values: np.ndarray, block_size: int) -> np.ndarray:
    """Left-to-right sum of each block; ``values`` must start on a block boundary."""
    if block_size < 1:
        raise ContractError(f"block_size must be positive, got {block_size}")
    n = values.shape[0]
    full, rest = divmod(n, block_size)
    partials = np.empty(full + (1 if rest else 0), dtype=np.float64)
    if full:
        body = values[: full * block_size].reshape(full, block_size)
        partials[:full] = np.add.accumulate(body, axis=1)[:, -1]
    if rest:
        partials[full] = np.add.accumulate(values[full * block_size :])[-1]
    return partials


def combine(partials: np.ndarray) -> tuple[np.ndarray, float]:
    """Running totals over block partials plus the grand total (0.0 for no blocks)."""
    if partials.shape[0] == 0:
        return np.zeros(0, dtype=np.float64), 0.0
    cumulative = np.add.accumulate(partials)
    return cumulative, float(cumulative[-1])


def fixed_tree_sum(values: np.ndarray, block_size: int = 1024) -> float:
    values = np.asarray(values, dtype=np.float64).ravel()
    if values.shape[0] == 0:
        return 0.0
    return combine(block_partials(values, block_size))[1]


def block_prefix(values: np.ndarray, cumulative: np.ndarray, block: int, block_size: int) -> np.ndarray:
    """Global inclusive prefix sums for the entries of one block.

    Consistent with :func:`combine`: the last entry equals ``cumulative[block]`` exactly.
    """
    start = block * block_size
    local = np.add.accumulate(values[start : start + block_size])
    if block == 0:
        return local
    return cumulative[block - 1] + local
