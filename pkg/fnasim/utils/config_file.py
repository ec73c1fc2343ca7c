"""Flat key=value configuration files and command-line overrides."""

import logging
from typing import Any, Dict, Mapping, Optional

from pydantic import ValidationError

from ..errors import ConfigError
from ..models.experiment_plan import AnalysisGrid, ExperimentPlan
from ..models.run_config import RunConfig, WorkloadSpec

logger = logging.getLogger(__name__)

RUN_KEYS = set(RunConfig.model_fields) - {"workload"}
WORKLOAD_KEYS = set(WorkloadSpec.model_fields)
ANALYSIS_KEYS = set(AnalysisGrid.model_fields)
PLAN_KEYS = set(ExperimentPlan.model_fields) - {"base", "analysis"}

LIST_KEYS = {
    "cache_capacities",
    "access_costs",
    "sweep_values",
    "policies",
    "hit_ratios",
    "fprs",
    "fnrs",
}
OPTIONAL_KEYS = {"update_interval", "trace_path", "length", "output_path", "event_log_path"}


def load_key_values(path: str) -> Dict[str, str]:
    """Parse ``key = value`` lines; '#' starts a comment line, blank lines are skipped."""
    values: Dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as f:
            lines = f.readlines()
    except OSError as e:
        raise ConfigError("config_file", f"cannot read {path}: {e.strerror or e}") from e

    for line_no, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        key, sep, value = text.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"line {line_no}", f"expected key = value, got {text!r}")
        values[key] = value.strip()
    return values


def _coerce(key: str, value: Any) -> Any:
    if not isinstance(value, str):
        return value
    if key in OPTIONAL_KEYS and value.lower() in ("", "none"):
        return None
    if key in LIST_KEYS:
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


def _field_of(error: Dict[str, Any]) -> str:
    names = [str(part) for part in error.get("loc", ()) if not isinstance(part, int)]
    return names[-1] if names else "config"


def parse_config(
    path: Optional[str] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> ExperimentPlan:
    """Build an ExperimentPlan from a config file, then apply ``overrides``.

    Unknown keys and invalid values raise ConfigError naming the field.
    """
    merged: Dict[str, Any] = dict(load_key_values(path)) if path else {}
    for key, value in (overrides or {}).items():
        if value is not None:
            merged[key] = value

    run: Dict[str, Any] = {}
    workload: Dict[str, Any] = {}
    analysis: Dict[str, Any] = {}
    plan: Dict[str, Any] = {}
    for key, value in merged.items():
        value = _coerce(key, value)
        if key in RUN_KEYS:
            run[key] = value
        elif key in WORKLOAD_KEYS:
            workload[key] = value
        elif key in ANALYSIS_KEYS:
            analysis[key] = value
        elif key in PLAN_KEYS:
            plan[key] = value
        else:
            raise ConfigError(key, "unknown configuration key")

    try:
        result = ExperimentPlan.model_validate(
            {**plan, "base": {**run, "workload": workload}, "analysis": analysis}
        )
    except ValidationError as e:
        first = e.errors()[0]
        raise ConfigError(_field_of(first), first.get("msg", str(e))) from e

    logger.debug(f"Parsed plan: {result.model_dump()}")
    return result
