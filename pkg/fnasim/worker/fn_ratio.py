"""Empirical false-negative ratio of stale indicators across update intervals."""

import logging
from typing import List, NamedTuple, Optional, Sequence

from ..models.run_config import RunConfig
from .simulation import run_simulation

logger = logging.getLogger(__name__)


class FnRatioRow(NamedTuple):
    update_interval: int
    bpe: float
    fn_ratio: float
    present_requests: int


def measure_fn_ratio(
    config: RunConfig,
    intervals: Sequence[int],
    bpes: Optional[Sequence[float]] = None,
) -> List[FnRatioRow]:
    """Replay ``config`` once per (bpe, interval) and measure the replicas' false negatives.

    The ratio is the share of requests for cached items whose holding cache's
    replica answered negative. Cache contents do not depend on the policy, so
    every run uses the perfect-information policy.
    """
    rows = []
    for bpe in bpes or [config.bpe]:
        for interval in intervals:
            ledger = run_simulation(
                config.derive(update_interval=int(interval), bpe=bpe, policy="pif"),
                sweep_axis="update_interval",
                axis_value=float(interval),
            )
            rows.append(FnRatioRow(int(interval), bpe, ledger.fn_ratio, ledger.present_requests))
            logger.info(
                f"bpe={bpe} interval={interval}: fn ratio {ledger.fn_ratio:.5f} "
                f"over {ledger.present_requests} requests for cached items"
            )
    return rows
