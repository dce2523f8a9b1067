"""Deterministic random streams.

All randomness is drawn from a counter-based Philox generator owned by a single
coordinator, so the serial and parallel code paths consume the identical draw sequence.
"""

import numpy as np

from app.core.errors import ContractError

UINT64_LIMIT = 2**64


class RngStream:
    def __init__(self, seed: int = 0) -> None:
        if not 0 <= int(seed) < UINT64_LIMIT:
            raise ContractError(f"rng seed must be an unsigned 64-bit integer, got {seed}")
        self.seed = int(seed)
        self._bit_generator = np.random.Philox(self.seed)
        self._generator = np.random.Generator(self._bit_generator)
        self.draws = 0

    @classmethod
    def _from_bit_generator(cls, seed: int, bit_generator: np.random.Philox) -> "RngStream":
        stream = cls.__new__(cls)
        stream.seed = seed
        stream._bit_generator = bit_generator
        stream._generator = np.random.Generator(bit_generator)
        stream.draws = 0
        return stream

    def uniform(self) -> float:
        """Next real in ``[0, 1)``."""
        self.draws += 1
        return float(self._generator.random())

    def integer(self, high: int) -> int:
        """Next integer uniform on ``[0, high)``."""
        if high < 1:
            raise ContractError(f"integer range must be non-empty, got high={high}")
        self.draws += 1
        return int(self._generator.integers(high))

    def uniform_array(self, shape: tuple[int, ...], low: float = 0.0, high: float = 1.0) -> np.ndarray:
        self.draws += int(np.prod(shape))
        return self._generator.uniform(low, high, size=shape)

    def normal_array(self, shape: tuple[int, ...], scale: float = 1.0) -> np.ndarray:
        self.draws += int(np.prod(shape))
        return self._generator.normal(0.0, scale, size=shape)

    def spawn(self, count: int) -> list["RngStream"]:
        """Independent child streams, each a jump of this stream's counter space."""
        return [
            RngStream._from_bit_generator(self.seed, self._bit_generator.jumped(offset + 1))
            for offset in range(count)
        ]

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, draws={self.draws})"
