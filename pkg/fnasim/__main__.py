"""fnasim CLI entry point.

Usage:
    python -m fnasim simulate [options]   # Paired simulation sweep
    python -m fnasim analyze [options]    # Closed-form homogeneous analysis
    python -m fnasim fn-ratio [options]   # False-negative ratio vs update interval
"""

import argparse
import logging
import sys

from .errors import ConfigError, FnasimError

logger = logging.getLogger("fnasim")

# (flag, config key, type, help)
RUN_FLAGS = [
    ("--num-caches", "num_caches", int, "Number of caches N; unset capacities and costs follow it (default: 3)"),
    ("--cache-capacities", "cache_capacities", str, "Comma-separated capacities, or one for all (default: 10000)"),
    ("--access-costs", "access_costs", str, "Comma-separated access costs (default: 1,2,3)"),
    ("--miss-penalty", "miss_penalty", float, "Miss penalty p (default: 100)"),
    ("--bpe", "bpe", float, "Indicator bits per cached element (default: 14)"),
    ("--update-interval", "update_interval", str, "Insertions between advertisements (default: 0.1 * capacity)"),
    ("--accuracy-cadence", "accuracy_cadence", int, "Insertions between fpr/fnr re-estimations (default: 50)"),
    ("--ewma-horizon", "ewma_horizon", int, "Requests per positive-ratio epoch T (default: 100)"),
    ("--ewma-delta", "ewma_delta", float, "Positive-ratio smoothing factor (default: 0.25)"),
    ("--solver", "solver", str, "Subset solver: auto, exhaustive, greedy (default: auto)"),
    ("--seed", "seed", int, "Master seed (default: 42)"),
    ("--warmup", "warmup", int, "Requests simulated before charging starts (default: 0)"),
    ("--event-log", "event_log_path", str, "Write a per-request event CSV here"),
    ("--trace", "trace_path", str, "Trace file, one key per line"),
    ("--zipf-alpha", "zipf_alpha", float, "Synthetic Zipf exponent (default: 0.8)"),
    ("--universe", "universe", int, "Synthetic item count (default: 1000000)"),
    ("--length", "length", int, "Requests to replay (default: 1000000)"),
]


def _add_run_flags(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("run configuration")
    for flag, key, kind, help_text in RUN_FLAGS:
        group.add_argument(flag, dest=key, type=kind, default=None, help=help_text)
    group.add_argument(
        "--oblivious-negatives",
        dest="oblivious_negatives",
        action="store_const",
        const=True,
        default=None,
        help="Treat negative indications as always right in fna/fna_star",
    )


def _add_common_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--config", type=str, default=None, help="key = value configuration file")
    parser.add_argument("--output", dest="output_path", type=str, default=None, help="CSV output path")
    parser.add_argument(
        "--log-level",
        type=str,
        default="INFO",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level (default: INFO)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fnasim",
        description="fnasim - cache selection under stale Bloom-filter indicators",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
    python -m fnasim simulate --length 200000 --policies fna,fno,pif
    python -m fnasim simulate --sweep-axis update_interval --sweep-values 256,1024,4096
    python -m fnasim analyze --hit-ratios 0.5 --output fig5.csv
    python -m fnasim fn-ratio --intervals 16,128,1024,8192 --bpes 4,16
    python -m fnasim --version
        """,
    )
    parser.add_argument("--version", action="store_true", help="Show version and exit")
    sub = parser.add_subparsers(dest="command")

    simulate = sub.add_parser("simulate", help="Run paired simulations, optionally over a sweep")
    _add_common_flags(simulate)
    _add_run_flags(simulate)
    simulate.add_argument("--policies", type=str, default=None, help="Comma-separated: fna,fno,fna_star,pif")
    simulate.add_argument("--sweep-axis", dest="sweep_axis", type=str, default=None,
                          help="none, miss_penalty, update_interval, bpe, cache_size, num_caches")
    simulate.add_argument("--sweep-values", dest="sweep_values", type=str, default=None,
                          help="Comma-separated values for the sweep axis")
    simulate.add_argument("--workers", type=int, default=None, help="Processes for sweep points (default: 1)")
    simulate.add_argument("--db-url", type=str, default=None,
                          help="Persist ledgers to this database (e.g. sqlite:///runs.db)")

    analyze = sub.add_parser("analyze", help="Closed-form expected costs over an (h, fpr, fnr) grid")
    _add_common_flags(analyze)
    _add_run_flags(analyze)
    analyze.add_argument("--hit-ratios", dest="hit_ratios", type=str, default=None, help="Comma-separated h values")
    analyze.add_argument("--fprs", type=str, default=None, help="Comma-separated fpr values")
    analyze.add_argument("--fnrs", type=str, default=None, help="Comma-separated fnr values")

    fn_ratio = sub.add_parser("fn-ratio", help="Empirical false-negative ratio per update interval")
    _add_common_flags(fn_ratio)
    _add_run_flags(fn_ratio)
    fn_ratio.add_argument("--intervals", type=str, default="16,128,1024,8192",
                          help="Comma-separated update intervals (default: 16,128,1024,8192)")
    fn_ratio.add_argument("--bpes", type=str, default=None, help="Comma-separated bpe values (default: --bpe)")

    return parser


def _overrides(args: argparse.Namespace) -> dict:
    skip = {"command", "version", "config", "log_level", "db_url", "intervals", "bpes"}
    return {k: v for k, v in vars(args).items() if k not in skip and v is not None}


def _parse_list(name: str, text: str, kind):
    try:
        return [kind(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise ConfigError(name, f"cannot parse {text!r}: {e}") from e


def cmd_simulate(args: argparse.Namespace) -> int:
    from .utils.config_file import parse_config
    from .worker.experiments import run_plan
    from .worker.ledger_store import LedgerStore

    plan = parse_config(args.config, _overrides(args))
    store = LedgerStore(args.db_url) if args.db_url else None
    report = run_plan(plan, store)
    print(report.table)
    if not plan.output_path:
        print()
        print(report.csv_text, end="")
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    from .utils.config_file import parse_config
    from .utils.reporting import format_table, render_csv, write_csv
    from .worker.analysis import emit_analysis

    plan = parse_config(args.config, _overrides(args))
    columns, rows = emit_analysis(plan.analysis, plan.base.num_caches, plan.base.miss_penalty)
    if plan.output_path:
        write_csv(plan.output_path, columns, rows)
        print(format_table(columns, rows))
    else:
        print(render_csv(columns, rows), end="")
    return 0


def cmd_fn_ratio(args: argparse.Namespace) -> int:
    from .utils.config_file import parse_config
    from .utils.reporting import format_table, render_csv, write_csv
    from .worker.fn_ratio import measure_fn_ratio

    plan = parse_config(args.config, _overrides(args))
    intervals = _parse_list("intervals", args.intervals, int)
    if any(i < 1 for i in intervals):
        raise ConfigError("intervals", "update intervals must be >= 1")
    bpes = _parse_list("bpes", args.bpes, float) if args.bpes else None

    rows = measure_fn_ratio(plan.base, intervals, bpes)
    columns = ["update_interval", "bpe", "fn_ratio"]
    table_rows = [(r.update_interval, float(r.bpe), r.fn_ratio) for r in rows]
    comments = [f"seed: {plan.base.seed}"]
    if plan.output_path:
        write_csv(plan.output_path, columns, table_rows, comments)
        print(format_table(columns, table_rows))
    else:
        print(render_csv(columns, table_rows, comments), end="")
    return 0


COMMANDS = {
    "simulate": cmd_simulate,
    "analyze": cmd_analyze,
    "fn-ratio": cmd_fn_ratio,
}


def main(argv=None) -> int:
    """Main entry point for fnasim."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.version:
        from . import __version__
        print(f"fnasim version {__version__}")
        return 0

    if not args.command:
        parser.print_help()
        return 2

    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format='[%(asctime)s] %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S',
    )

    try:
        return COMMANDS[args.command](args)
    except ConfigError as e:
        logger.error(f"Configuration error: {e}")
        return 2
    except FnasimError as e:
        logger.error(f"Run failed: {e}")
        return 1
    except KeyboardInterrupt:
        logger.info("Interrupted")
        return 1
    except Exception as e:
        logger.error(f"Unexpected error: {e}", exc_info=True)
        return 1


if __name__ == "__main__":
    sys.exit(main())
