"""
Module for the ``run`` subcommand: one seeded run printed as key=value lines.
"""

from typing import Any, List

from differential_ga import CAMPAIGN_DEFAULTS, RunResult, get_spec, run_single
from differential_ga.core import ConfigError
from optimizer_cli.trace import write_event_log, write_trace


def format_result(algorithm: str, function_id: str, result: RunResult) -> List[str]:
    """
    Key=value lines of a run; floats use 12 significant digits so the output
    is byte-identical for equal runs.
    """
    point = ",".join(f"{v:.12g}" for v in result.best_point)
    return [
        f"algorithm={algorithm}",
        f"function={function_id}",
        f"seed={result.seed}",
        f"success={str(result.success).lower()}",
        f"nfc={result.nfc}",
        f"generations={result.generations}",
        f"best_value={result.best_value:.12g}",
        f"best_point={point}",
        f"zones={sum(1 for e in result.events if e.event == 'zone-created')}",
    ]


def run_once(app_instance: Any) -> RunResult:
    """
    Executes the ``run`` subcommand.

    Args:
        app_instance: The OptimizerCLI instance

    Returns:
        The RunResult of the run
    """
    algorithm = app_instance.setting("alg")
    function_id = app_instance.setting("function")
    if not algorithm or not function_id:
        raise ConfigError("run needs --alg and --function (flags or config file).")
    function_id = get_spec(function_id).id
    seed = app_instance.setting("seed", CAMPAIGN_DEFAULTS["base_seed"], int)
    max_generations = app_instance.setting("max-gens", CAMPAIGN_DEFAULTS["max_generations"], int)

    result = run_single(
        algorithm,
        function_id,
        seed,
        max_generations,
        app_instance.overrides,
        verbose=app_instance.args.verbose,
    )
    for line in format_result(algorithm, function_id, result):
        print(line)

    trace_path = app_instance.setting("trace")
    if trace_path:
        write_trace(result, trace_path, with_ceraf_events=algorithm == "sade-ceraf")
    events_path = app_instance.setting("events")
    if events_path:
        write_event_log(result.events, events_path)
    return result
