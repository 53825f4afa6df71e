"""
Module for the ``bench`` subcommand: campaigns, reports and summaries.
"""

import sys
from typing import Any, List

from differential_ga import (
    CAMPAIGN_DEFAULTS,
    BenchmarkConfig,
    BenchmarkRow,
    compare_with_published,
    convergence_table,
    emit_report,
    log_campaign,
    parse_bool,
    reliability_table,
    rows_to_frame,
    run_campaign,
)
from differential_ga.core import ConfigError


def _split(text: str) -> List[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def run_bench(app_instance: Any) -> List[BenchmarkRow]:
    """
    Runs one campaign per selected algorithm and emits the report.

    The report goes to ``--out`` when given (csv if the path ends with
    ``.csv`` and no ``--format`` is set), otherwise to standard output.
    ``--summary``, ``--compare-published`` and ``--history`` add their
    outputs afterwards.

    Args:
        app_instance: The OptimizerCLI instance

    Returns:
        All campaign rows, algorithm by algorithm
    """
    algorithms = _split(app_instance.setting("alg", ""))
    if not algorithms:
        raise ConfigError("bench needs --alg (flag or config file).")
    functions = app_instance.setting("functions", "all")
    selection = "all" if functions.strip().lower() == "all" else _split(functions)

    runs = app_instance.setting("runs", CAMPAIGN_DEFAULTS["runs"], int)
    base_seed = app_instance.setting("seed", CAMPAIGN_DEFAULTS["base_seed"], int)
    max_generations = app_instance.setting("max-gens", CAMPAIGN_DEFAULTS["max_generations"], int)
    n_jobs = app_instance.setting("jobs", CAMPAIGN_DEFAULTS["n_jobs"], int)
    out_path = app_instance.setting("out")
    default_format = "csv" if out_path and out_path.endswith(".csv") else CAMPAIGN_DEFAULTS["format"]
    fmt = app_instance.setting("format", default_format)
    summary = app_instance.setting("summary")
    if summary not in (None, "reliability", "convergence"):
        raise ConfigError(f"Unknown summary '{summary}'; use reliability or convergence.")

    # All configs are validated before the first campaign starts.
    configs = [
        BenchmarkConfig(
            algorithm=algorithm,
            functions=selection,
            runs=runs,
            max_generations=max_generations,
            base_seed=base_seed,
            overrides=dict(app_instance.overrides),
            n_jobs=n_jobs,
            verbose=app_instance.args.verbose,
        )
        for algorithm in algorithms
    ]
    rows: List[BenchmarkRow] = []
    for config in configs:
        rows.extend(run_campaign(config))

    report = emit_report(rows, fmt, out_path)
    if not out_path:
        sys.stdout.write(report.decode("utf-8"))

    if summary:
        table = reliability_table(rows) if summary == "reliability" else convergence_table(rows)
        print(table.to_string())
    if app_instance.setting("compare-published", False, parse_bool):
        print(compare_with_published(rows).to_string(index=False, na_rep="-"))
    history_path = app_instance.setting("history")
    if history_path:
        log_campaign(rows_to_frame(rows), history_path)
    return rows
