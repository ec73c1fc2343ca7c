"""Experiment plan models."""

from typing import List, Literal, Optional

from pydantic import model_validator
from sqlmodel import Field, SQLModel

from .run_config import Policy, RunConfig

SweepAxis = Literal[
    "none", "miss_penalty", "update_interval", "bpe", "cache_size", "num_caches"
]


def _default_rates() -> List[float]:
    return [round(0.005 * i, 3) for i in range(10)]


class AnalysisGrid(SQLModel):
    """Closed-form grid: every (h, fpr, fnr) combination at the base N and p."""

    hit_ratios: List[float] = Field(default_factory=lambda: [0.5])
    fprs: List[float] = Field(default_factory=_default_rates)
    fnrs: List[float] = Field(default_factory=_default_rates)

    @model_validator(mode="after")
    def _probabilities(self):
        for name in ("hit_ratios", "fprs", "fnrs"):
            values = getattr(self, name)
            if not values:
                raise ValueError(f"{name} must not be empty")
            if any(not 0.0 <= v <= 1.0 for v in values):
                raise ValueError(f"{name} must lie in [0, 1]")
        return self


class ExperimentPlan(SQLModel):
    """A base run, an optional sweep over one axis, and the policies compared at each point."""

    base: RunConfig = Field(default_factory=RunConfig)
    sweep_axis: SweepAxis = Field(default="none")
    sweep_values: List[float] = Field(default_factory=list)
    policies: List[Policy] = Field(default_factory=lambda: ["fna", "fno", "fna_star", "pif"])
    output_path: Optional[str] = None
    workers: int = Field(default=1, ge=1)  # Processes for sweep points
    analysis: AnalysisGrid = Field(default_factory=AnalysisGrid)

    @model_validator(mode="after")
    def _sweep_values(self):
        if self.sweep_axis != "none" and not self.sweep_values:
            raise ValueError(f"sweep_values must not be empty for sweep_axis={self.sweep_axis}")
        if not self.policies:
            raise ValueError("policies must not be empty")
        if len(set(self.policies)) != len(self.policies):
            raise ValueError("policies must not repeat")
        return self

    def axis_values(self) -> List[Optional[float]]:
        return [None] if self.sweep_axis == "none" else list(self.sweep_values)

    def config_at(self, value: Optional[float], policy: str) -> RunConfig:
        """The validated RunConfig for one sweep point and policy."""
        changes = {"policy": policy}
        base = self.base
        if self.sweep_axis == "miss_penalty":
            changes["miss_penalty"] = value
        elif self.sweep_axis == "update_interval":
            changes["update_interval"] = int(value)
        elif self.sweep_axis == "bpe":
            changes["bpe"] = value
        elif self.sweep_axis == "cache_size":
            changes["cache_capacities"] = [int(value)] * base.num_caches
        elif self.sweep_axis == "num_caches":
            n = int(value)
            mean_cost = sum(base.access_costs) / base.num_caches
            changes["num_caches"] = n
            changes["access_costs"] = [mean_cost] * n
            changes["cache_capacities"] = [base.cache_capacities[0]] * n
        if base.event_log_path:
            # One event log per run: events.csv -> events.fna.csv, events.fna.1024.csv
            stem, dot, ext = base.event_log_path.rpartition(".")
            if not dot:
                stem, ext = ext, "csv"
            point = "" if value is None else f".{value:g}"
            changes["event_log_path"] = f"{stem}.{policy}{point}.{ext}"
        return base.derive(**changes)
