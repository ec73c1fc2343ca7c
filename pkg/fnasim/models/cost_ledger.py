"""Per-run cost accounting model."""

from datetime import datetime
from typing import Optional

import pytz
from sqlmodel import Field, SQLModel


def _utcnow() -> datetime:
    return datetime.now(pytz.utc)


class CostLedger(SQLModel, table=True):
    """Accounting of one simulation run; persisted when a run store is configured."""

    __tablename__ = "CostLedger"

    id: Optional[int] = Field(default=None, primary_key=True)

    # Run identity
    policy: str = Field(index=True)
    seed: int
    sweep_axis: str = Field(default="none")
    axis_value: Optional[float] = None
    stream_checksum: str = Field(default="")  # SHA-256 prefix over every replayed key
    warmup: int = Field(default=0)

    # Counters (charged requests only)
    requests: int = Field(default=0)
    total_access_cost: float = Field(default=0.0)
    miss_count: int = Field(default=0)
    hits: int = Field(default=0)
    negative_accesses: int = Field(default=0)  # Accesses to caches whose indication was 0
    insufficiently_accurate_events: int = Field(default=0)
    present_requests: int = Field(default=0)  # Item held by some cache
    false_negatives: int = Field(default=0)  # Present, but holder's replica said 0

    # Results
    miss_penalty: float = Field(default=100.0)
    normalized_cost: Optional[float] = None  # mean_cost / paired PIF mean_cost

    # Timestamps
    created_at: datetime = Field(default_factory=_utcnow, index=True)

    @property
    def total_cost(self) -> float:
        return self.total_access_cost + self.miss_penalty * self.miss_count

    @property
    def mean_cost(self) -> float:
        return self.total_cost / self.requests if self.requests else 0.0

    @property
    def miss_rate(self) -> float:
        return self.miss_count / self.requests if self.requests else 0.0

    @property
    def negative_access_rate(self) -> float:
        return self.negative_accesses / self.requests if self.requests else 0.0

    @property
    def fn_ratio(self) -> float:
        return self.false_negatives / self.present_requests if self.present_requests else 0.0
