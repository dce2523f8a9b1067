"""Cross-strategy check that data placement never changes which points get seeded."""

import logging

from app.core.dataset import Dataset
from app.core.errors import ContractError
from app.core.rng import RngStream
from app.models.enums import LayoutStrategy
from app.schemas.audit import AuditReport
from app.schemas.exec import ExecConfig
from app.services.seeding import seed_parallel

logger = logging.getLogger(__name__)

AUDIT_MAX_POINTS = 10_000


def strategy_equivalence_audit(
    data: Dataset,
    k: int,
    seed: int,
    *,
    workers: int | None = None,
    chunk_size: int | None = None,
) -> AuditReport:
    """Seed the same instance under every layout strategy and compare the chosen indices."""
    if data.n > AUDIT_MAX_POINTS:
        raise ContractError(f"The strategy audit is meant for n <= {AUDIT_MAX_POINTS}, got {data.n}")

    indices: dict[LayoutStrategy, list[int]] = {}
    for strategy in LayoutStrategy:
        cfg = ExecConfig.from_settings(
            strategy=strategy, workers=workers, chunk_size=chunk_size, rng_seed=seed
        )
        result = seed_parallel(data, k, RngStream(seed), cfg)
        indices[strategy] = result.indices.tolist()

    reference = indices[LayoutStrategy.SHARED_MUTABLE]
    mismatches = [
        f"{strategy.value} differs from {LayoutStrategy.SHARED_MUTABLE.value}"
        for strategy, chosen in indices.items()
        if chosen != reference
    ]
    if mismatches:
        logger.warning("Strategy audit failed for n=%d k=%d seed=%d: %s", data.n, k, seed, mismatches)
    return AuditReport(
        n=data.n, k=k, seed=seed, indices=indices, passed=not mismatches, mismatches=mismatches
    )
