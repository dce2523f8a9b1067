from pydantic import BaseModel

from app.models.enums import LayoutStrategy


class AuditReport(BaseModel):
    n: int
    k: int
    seed: int
    indices: dict[LayoutStrategy, list[int]]
    passed: bool
    mismatches: list[str] = []
