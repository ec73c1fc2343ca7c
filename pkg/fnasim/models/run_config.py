"""Run configuration models."""

from typing import List, Literal, Optional

from pydantic import PositiveInt, confloat, model_validator
from sqlmodel import Field, SQLModel

Policy = Literal["fna", "fno", "fna_star", "pif"]
SolverName = Literal["auto", "exhaustive", "greedy"]


class WorkloadSpec(SQLModel):
    """Request stream: a trace file, or a synthetic Zipf stream when no path is set."""

    trace_path: Optional[str] = None  # UTF-8, one key per line
    zipf_alpha: float = Field(default=0.8, gt=0)
    universe: int = Field(default=1_000_000, ge=1)  # Items
    length: Optional[int] = Field(default=1_000_000, ge=1)  # Requests; caps a trace when set

    @model_validator(mode="after")
    def _synthetic_needs_length(self):
        if self.trace_path is None and self.length is None:
            raise ValueError("length is required for a synthetic workload")
        return self


class RunConfig(SQLModel):
    """One simulation run. Defaults are the three-cache baseline."""

    # Caches
    num_caches: int = Field(default=3, ge=1)
    cache_capacities: List[PositiveInt] = Field(default_factory=lambda: [10_000] * 3)  # Items
    access_costs: List[confloat(ge=1)] = Field(default_factory=lambda: [1.0, 2.0, 3.0])
    miss_penalty: float = Field(default=100.0, ge=1)

    # Indicators
    bpe: float = Field(default=14.0, gt=0)
    update_interval: Optional[int] = Field(default=None, ge=1)  # Insertions; None = 0.1 * C_j
    accuracy_cadence: int = Field(default=50, ge=1)  # Insertions

    # Client estimation
    ewma_horizon: int = Field(default=100, ge=1)  # Requests
    ewma_delta: float = Field(default=0.25, gt=0, lt=1)

    # Run
    policy: Policy = Field(default="fna")
    solver: SolverName = Field(default="auto")
    oblivious_negatives: bool = Field(default=False)  # Force mr_neg to 1 - eps
    seed: int = Field(default=42, ge=0, le=2**64 - 1)
    warmup: int = Field(default=0, ge=0)  # Requests simulated but not charged
    event_log_path: Optional[str] = None

    workload: WorkloadSpec = Field(default_factory=WorkloadSpec)

    @model_validator(mode="before")
    @classmethod
    def _broadcast_per_cache(cls, data):
        if not isinstance(data, dict):
            return data
        n = int(data.get("num_caches", 3))
        capacities = data.get("cache_capacities")
        if capacities is None:
            data = {**data, "cache_capacities": [10_000] * n}
        elif isinstance(capacities, (list, tuple)) and len(capacities) == 1 and n > 1:
            data = {**data, "cache_capacities": list(capacities) * n}
        if data.get("access_costs") is None:
            # 1, 2, ..., N extends the baseline 1, 2, 3
            data = {**data, "access_costs": [float(j + 1) for j in range(n)]}
        return data

    @model_validator(mode="after")
    def _per_cache_lengths(self):
        if len(self.cache_capacities) != self.num_caches:
            raise ValueError(
                f"cache_capacities has {len(self.cache_capacities)} entries, "
                f"expected num_caches={self.num_caches}"
            )
        if len(self.access_costs) != self.num_caches:
            raise ValueError(
                f"access_costs has {len(self.access_costs)} entries, "
                f"expected num_caches={self.num_caches}"
            )
        return self

    def resolved_update_intervals(self) -> List[int]:
        """Advertisement interval per cache, in insertions."""
        if self.update_interval is not None:
            return [self.update_interval] * self.num_caches
        return [max(1, round(0.1 * c)) for c in self.cache_capacities]

    def derive(self, **changes) -> "RunConfig":
        """Validated copy with ``changes`` applied."""
        return RunConfig.model_validate({**self.model_dump(), **changes})
