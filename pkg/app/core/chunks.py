"""Partitioning of the point index space into fixed-size chunks."""

from dataclasses import dataclass

from app.core.errors import ContractError


@dataclass(frozen=True, slots=True)
class ChunkRange:
    """Half-open index range ``[start, stop)``."""

    start: int
    stop: int

    @property
    def size(self) -> int:
        return self.stop - self.start

    def as_slice(self) -> slice:
        return slice(self.start, self.stop)


def plan_chunks(n: int, chunk_size: int) -> list[ChunkRange]:
    """Split ``[0, n)`` into ``ceil(n / chunk_size)`` contiguous ranges.

    Every range holds ``chunk_size`` indices except possibly the last one.
    """
    if n < 1:
        raise ContractError(f"Cannot plan chunks for n={n}")
    if chunk_size < 1:
        raise ContractError(f"chunk_size must be positive, got {chunk_size}")
    return [ChunkRange(start, min(start + chunk_size, n)) for start in range(0, n, chunk_size)]


def num_chunks(n: int, chunk_size: int) -> int:
    return -(-n // chunk_size)


def stripe(chunks: list[ChunkRange], workers: int) -> list[list[ChunkRange]]:
    """Deal chunks to workers as contiguous stripes of near-equal chunk count.

    Static scheduling: a worker handles its whole stripe in one pass, so a round costs one
    dispatch per worker instead of one per chunk. Empty stripes are dropped.
    """
    if workers < 1:
        raise ContractError(f"workers must be positive, got {workers}")
    base, extra = divmod(len(chunks), workers)
    stripes: list[list[ChunkRange]] = []
    cursor = 0
    for worker in range(workers):
        take = base + (1 if worker < extra else 0)
        if take:
            stripes.append(chunks[cursor : cursor + take])
        cursor += take
    return stripes


def span(chunks: list[ChunkRange]) -> ChunkRange:
    """Covering range of a contiguous run of chunks."""
    return ChunkRange(chunks[0].start, chunks[-1].stop)
