"""SQLModel models for fnasim."""

from .run_config import RunConfig, WorkloadSpec
from .experiment_plan import AnalysisGrid, ExperimentPlan
from .cost_ledger import CostLedger

__all__ = [
    "RunConfig",
    "WorkloadSpec",
    "AnalysisGrid",
    "ExperimentPlan",
    "CostLedger",
]
