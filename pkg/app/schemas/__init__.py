from .audit import AuditReport
from .bench import (
    REPORT_FIELDS,
    BenchSummary,
    EnvironmentInfo,
    ScenarioSpec,
    SummaryRow,
    TimingReport,
    TimingRow,
)
from .exec import ExecConfig

__all__ = [
    "AuditReport",
    "REPORT_FIELDS",
    "BenchSummary",
    "EnvironmentInfo",
    "ScenarioSpec",
    "SummaryRow",
    "TimingReport",
    "TimingRow",
    "ExecConfig",
]
