"""Simulation workers for fnasim."""

from .analysis import emit_analysis
from .experiments import run_plan
from .fn_ratio import measure_fn_ratio
from .ledger_store import LedgerStore
from .oracle import cache_aware_estimates, pif_decide
from .simulation import SimulationWorker, run_simulation
from .workload import read_trace, zipf_generate

__all__ = [
    "emit_analysis",
    "run_plan",
    "measure_fn_ratio",
    "LedgerStore",
    "cache_aware_estimates",
    "pif_decide",
    "SimulationWorker",
    "run_simulation",
    "read_trace",
    "zipf_generate",
]
