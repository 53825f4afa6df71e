# __init__.py
from .core import (
    OptimizationError,
    DomainError,
    ContractError,
    EvaluationError,
    ConfigError,
    ReportError,
    SearchDomain,
    Provenance,
    Individual,
    Population,
    ObjectiveFunction,
    RandomSource,
    EvalCounter,
    GenerationRecord,
    RunResult,
    init_population,
    clamp_to_domain,
    is_success,
    evaluate_individual,
    evaluate_population,
    default_population_size,
    run_generations,
)
from .testbed import (
    TestFunctionSpec,
    catalog,
    get_spec,
    objective,
    evaluate_test_function,
    reference_optimum,
    load_reference_optima,
)
from .de import DEParams, de_trial, population_radius, is_collapsed, de_generation, de_run
from .sade import (
    SadeParams,
    simplified_differential,
    mutate,
    local_mutate,
    tournament_reduce,
    create_offspring,
    sade_generation,
    sade_run,
)
from .ceraf import (
    RadioactiveZone,
    CerafParams,
    CerafEvent,
    CerafState,
    zone_contains,
    apply_radioactivity,
    update_stagnation,
    sade_ceraf_run,
)
from .binga import (
    BinaryEncoding,
    SGAParams,
    encode,
    decode,
    bit_mutate,
    one_point_crossover,
    sga_run,
)
from .bench import (
    BenchmarkConfig,
    BenchmarkRow,
    get_runner,
    run_single,
    run_campaign,
    rows_to_frame,
    emit_report,
    published_results,
    compare_with_published,
    reliability_table,
    convergence_table,
)
from .config import (
    ALGORITHMS,
    ALGORITHM_DEFAULTS,
    CAMPAIGN_DEFAULTS,
    build_params,
    load_config_file,
    parse_bool,
)
from .logging import log_campaign

__all__ = [
    "OptimizationError",
    "DomainError",
    "ContractError",
    "EvaluationError",
    "ConfigError",
    "ReportError",
    "SearchDomain",
    "Provenance",
    "Individual",
    "Population",
    "ObjectiveFunction",
    "RandomSource",
    "EvalCounter",
    "GenerationRecord",
    "RunResult",
    "init_population",
    "clamp_to_domain",
    "is_success",
    "evaluate_individual",
    "evaluate_population",
    "default_population_size",
    "run_generations",
    "TestFunctionSpec",
    "catalog",
    "get_spec",
    "objective",
    "evaluate_test_function",
    "reference_optimum",
    "load_reference_optima",
    "DEParams",
    "de_trial",
    "population_radius",
    "is_collapsed",
    "de_generation",
    "de_run",
    "SadeParams",
    "simplified_differential",
    "mutate",
    "local_mutate",
    "tournament_reduce",
    "create_offspring",
    "sade_generation",
    "sade_run",
    "RadioactiveZone",
    "CerafParams",
    "CerafEvent",
    "CerafState",
    "zone_contains",
    "apply_radioactivity",
    "update_stagnation",
    "sade_ceraf_run",
    "BinaryEncoding",
    "SGAParams",
    "encode",
    "decode",
    "bit_mutate",
    "one_point_crossover",
    "sga_run",
    "BenchmarkConfig",
    "BenchmarkRow",
    "get_runner",
    "run_single",
    "run_campaign",
    "rows_to_frame",
    "emit_report",
    "published_results",
    "compare_with_published",
    "reliability_table",
    "convergence_table",
    "ALGORITHMS",
    "ALGORITHM_DEFAULTS",
    "CAMPAIGN_DEFAULTS",
    "build_params",
    "load_config_file",
    "parse_bool",
    "log_campaign",
]
