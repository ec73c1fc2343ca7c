"""Closed-form expected costs of the homogeneous policies over a parameter grid."""

import itertools
import logging
from typing import List, Tuple

from ..models.experiment_plan import AnalysisGrid
from ..strategy.beliefs import IndicatorAccuracy, is_sufficiently_accurate
from ..strategy.homo import expected_cost, pif_cost

logger = logging.getLogger(__name__)

ANALYSIS_COLUMNS = [
    "h",
    "fpr",
    "fnr",
    "num_caches",
    "miss_penalty",
    "cost_fna",
    "cost_fno",
    "cost_pif",
    "normalized_fna",
    "normalized_fno",
    "sufficiently_accurate",
]


def emit_analysis(grid: AnalysisGrid, num_caches: int, miss_penalty: float) -> Tuple[List[str], List[tuple]]:
    """One row per (h, fpr, fnr) point. Points failing the accuracy condition are flagged, not dropped."""
    rows = []
    for h, fpr, fnr in itertools.product(grid.hit_ratios, grid.fprs, grid.fnrs):
        acc = IndicatorAccuracy(fpr=fpr, fnr=fnr)
        fna = expected_cost("fna", h, acc, num_caches, miss_penalty)
        fno = expected_cost("fno", h, acc, num_caches, miss_penalty)
        pif = pif_cost(h, num_caches, miss_penalty)
        rows.append((
            float(h),
            float(fpr),
            float(fnr),
            num_caches,
            float(miss_penalty),
            fna,
            fno,
            pif,
            fna / pif,
            fno / pif,
            is_sufficiently_accurate(acc),
        ))
    logger.info(f"Analysis grid evaluated: {len(rows)} points")
    return ANALYSIS_COLUMNS, rows
