"""Paired simulation sweeps and their reports."""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, NamedTuple, Optional, Tuple

from ..errors import FnasimError, SimulationError
from ..models.cost_ledger import CostLedger
from ..models.experiment_plan import ExperimentPlan
from ..models.run_config import RunConfig
from ..utils.reporting import format_table, render_csv, write_csv
from .ledger_store import LedgerStore
from .simulation import run_simulation

logger = logging.getLogger(__name__)

REPORT_COLUMNS = [
    "axis_value",
    "policy",
    "mean_cost",
    "normalized_cost",
    "miss_rate",
    "negative_access_rate",
]

# Always simulated so every policy gets a normalized cost
REFERENCE_POLICY = "pif"


class PlanReport(NamedTuple):
    csv_text: str
    table: str
    ledgers: List[CostLedger]


def _run_point(task: Tuple[RunConfig, str, Optional[float]]) -> CostLedger:
    config, axis, value = task
    try:
        return run_simulation(config, sweep_axis=axis, axis_value=value)
    except FnasimError as e:
        raise SimulationError(str(e), axis=axis, value=value, policy=config.policy) from e
    except Exception as e:
        logger.error(f"Run failed at {axis}={value} ({config.policy}): {e}", exc_info=True)
        raise SimulationError(
            f"{type(e).__name__}: {e}", axis=axis, value=value, policy=config.policy
        ) from e


def _tasks(plan: ExperimentPlan) -> List[Tuple[RunConfig, str, Optional[float]]]:
    tasks = []
    for value in plan.axis_values():
        policies = sorted(set(plan.policies) | {REFERENCE_POLICY})
        for policy in policies:
            try:
                config = plan.config_at(value, policy)
            except ValueError as e:
                raise SimulationError(
                    f"invalid derived configuration: {e}",
                    axis=plan.sweep_axis,
                    value=value,
                    policy=policy,
                ) from e
            tasks.append((config, plan.sweep_axis, value))
    return tasks


def run_plan(plan: ExperimentPlan, store: Optional[LedgerStore] = None) -> PlanReport:
    """Run every (sweep point, policy) pair and assemble the report.

    All policies at one sweep point replay the same request stream; a
    checksum mismatch is reported as a SimulationError.
    """
    tasks = _tasks(plan)
    logger.info(
        f"=== Plan: axis={plan.sweep_axis}, points={len(plan.axis_values())}, "
        f"runs={len(tasks)}, workers={plan.workers} ==="
    )

    if plan.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=plan.workers) as pool:
            ledgers = list(pool.map(_run_point, tasks))
    else:
        ledgers = [_run_point(task) for task in tasks]

    by_point: Dict[Optional[float], Dict[str, CostLedger]] = {}
    for ledger in ledgers:
        by_point.setdefault(ledger.axis_value, {})[ledger.policy] = ledger

    comments = [f"seed: {plan.base.seed}", f"sweep_axis: {plan.sweep_axis}"]
    rows = []
    for value in sorted(by_point, key=lambda v: (v is not None, v)):
        point = by_point[value]
        checksums = {ledger.stream_checksum for ledger in point.values()}
        if len(checksums) != 1:
            raise SimulationError(
                f"policies consumed different request streams: {sorted(checksums)}",
                axis=plan.sweep_axis,
                value=value,
            )
        comments.append(f"stream_checksum[{'' if value is None else value}]: {checksums.pop()}")

        reference = point[REFERENCE_POLICY].mean_cost
        for policy in sorted(point):
            ledger = point[policy]
            if reference > 0:
                ledger.normalized_cost = ledger.mean_cost / reference
            if policy not in plan.policies:
                continue
            rows.append((
                value,
                policy,
                ledger.mean_cost,
                ledger.normalized_cost,
                ledger.miss_rate,
                ledger.negative_access_rate,
            ))

    if plan.output_path:
        csv_text = write_csv(plan.output_path, REPORT_COLUMNS, rows, comments)
        logger.info(f"Report written to {plan.output_path}")
    else:
        csv_text = render_csv(REPORT_COLUMNS, rows, comments)

    if store is not None:
        store.save(ledgers)

    return PlanReport(csv_text=csv_text, table=format_table(REPORT_COLUMNS, rows), ledgers=ledgers)
