"""
bench.py

This module runs benchmark campaigns: every selected test function is solved
``runs`` times from the seeds ``base_seed + i``, and the runs are aggregated
into a success rate and the average number of fitness calls of the successful
runs. It also emits the reports and compares them with the published results.

Dependencies:
    - pandas
    - joblib (Parallel, delayed)
    - differential_ga.de, sade, ceraf, binga, testbed, config

Classes:
    - BenchmarkConfig: Algorithm, functions, runs, budget, seeds, overrides, workers.
    - BenchmarkRow: Aggregated result of one (algorithm, function) pair.

Functions:
    - get_runner(algorithm): Run function of an algorithm id.
    - run_single(algorithm, function_id, seed, max_generations, overrides): One run.
    - run_campaign(config): All runs of a campaign, aggregated.
    - rows_to_frame(rows): Tabular view of the rows.
    - emit_report(rows, fmt, path): csv or aligned-text report as bytes.
    - published_results(): Reference numbers of the published comparison.
    - compare_with_published(rows): Differences to the published numbers.
    - reliability_table(rows), convergence_table(rows): Multi-algorithm summaries.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Union

import pandas as pd
from joblib import Parallel, delayed

from differential_ga.binga import sga_run
from differential_ga.ceraf import sade_ceraf_run
from differential_ga.config import ALGORITHMS, CAMPAIGN_DEFAULTS, build_params
from differential_ga.core import ConfigError, RandomSource, ReportError, RunResult
from differential_ga.de import de_run
from differential_ga.sade import sade_run
from differential_ga.testbed import catalog, get_spec

PUBLISHED_RESULTS_PATH = Path(__file__).with_name("published_results.csv")

CSV_COLUMNS = [
    "function",
    "dimension",
    "algorithm",
    "runs",
    "success_rate_pct",
    "avg_nfc_success",
    "base_seed",
]

REPORT_FORMATS = ("csv", "text")

_RUNNERS: Dict[str, Callable[..., RunResult]] = {
    "de": de_run,
    "sade": sade_run,
    "sade-ceraf": sade_ceraf_run,
    "binga": sga_run,
}

# Column prefix of each algorithm in the published table.
_PUBLISHED_PREFIX = {"de": "de", "sade": "sade", "sade-ceraf": "ceraf", "binga": "sbga"}


@dataclass(frozen=True)
class BenchmarkConfig:
    """
    One campaign.

    Attributes
    ----------
    algorithm : str
        One of ``de``, ``sade``, ``sade-ceraf``, ``binga``.
    functions : Sequence[str] or "all"
        Test function ids (case-insensitive) or ``"all"`` for the whole suite.
    runs : int
        Independent runs per function (default 100).
    max_generations : int
        Generation budget of every run (default 500).
    base_seed : int
        Run i uses the seed ``base_seed + i``.
    overrides : Mapping[str, Any]
        Parameter overrides passed to ``build_params``.
    n_jobs : int, optional
        joblib worker count; ``None`` uses every logical CPU.
    verbose : bool
        If True, prints one line per finished function.

    Raises
    ------
    ConfigError
        For an unknown algorithm or function, or non-positive counts.
    """

    algorithm: str
    functions: Union[str, Sequence[str]] = "all"
    runs: int = CAMPAIGN_DEFAULTS["runs"]
    max_generations: int = CAMPAIGN_DEFAULTS["max_generations"]
    base_seed: int = CAMPAIGN_DEFAULTS["base_seed"]
    overrides: Mapping[str, Any] = field(default_factory=dict)
    n_jobs: Optional[int] = CAMPAIGN_DEFAULTS["n_jobs"]
    verbose: bool = False

    def __post_init__(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(
                f"Unknown algorithm '{self.algorithm}'; use one of {', '.join(ALGORITHMS)}."
            )
        if self.runs < 1:
            raise ConfigError(f"runs must be positive, got {self.runs}.")
        if self.max_generations < 1:
            raise ConfigError(f"max_generations must be positive, got {self.max_generations}.")
        if self.base_seed < 0:
            raise ConfigError(f"base_seed must be non-negative, got {self.base_seed}.")
        self.function_ids()
        build_params(self.algorithm, self.overrides)

    def function_ids(self) -> List[str]:
        """Canonical ids of the selected functions, in catalog order for ``"all"``."""
        if isinstance(self.functions, str):
            if self.functions.lower() == "all":
                return [spec.id for spec in catalog()]
            return [get_spec(self.functions).id]
        if not self.functions:
            raise ConfigError("A campaign needs at least one function.")
        return [get_spec(function_id).id for function_id in self.functions]


@dataclass(frozen=True)
class BenchmarkRow:
    """
    Aggregate of ``runs`` runs of one algorithm on one function.

    ``avg_nfc_success`` averages the fitness calls of the successful runs and
    is ``None`` when no run succeeded. ``total_nfc`` sums all runs and is used
    by the campaign history only.
    """

    function: str
    dimension: int
    algorithm: str
    runs: int
    success_rate: float
    avg_nfc_success: Optional[float]
    base_seed: int
    total_nfc: int = 0


def get_runner(algorithm: str) -> Callable[..., RunResult]:
    try:
        return _RUNNERS[algorithm]
    except KeyError:
        raise ConfigError(
            f"Unknown algorithm '{algorithm}'; use one of {', '.join(ALGORITHMS)}."
        ) from None


def run_single(
    algorithm: str,
    function_id: str,
    seed: int,
    max_generations: int = CAMPAIGN_DEFAULTS["max_generations"],
    overrides: Optional[Mapping[str, Any]] = None,
    verbose: bool = False,
) -> RunResult:
    """
    Performs one seeded run.

    Examples
    --------
    >>> result = run_single("de", "F1", seed=3, max_generations=50)
    >>> result == run_single("de", "f1", seed=3, max_generations=50)
    True
    """
    runner = get_runner(algorithm)
    params = build_params(algorithm, overrides)
    f = get_spec(function_id).objective()
    return runner(
        f, max_generations=max_generations, rng=RandomSource(seed), verbose=verbose, **params
    )


def _aggregate(
    function_id: str, config: BenchmarkConfig, results: Sequence[RunResult]
) -> BenchmarkRow:
    successes = [r.nfc for r in results if r.success]
    avg_nfc = sum(successes) / len(successes) if successes else None
    return BenchmarkRow(
        function=function_id,
        dimension=get_spec(function_id).dimension,
        algorithm=config.algorithm,
        runs=len(results),
        success_rate=100.0 * len(successes) / len(results),
        avg_nfc_success=avg_nfc,
        base_seed=config.base_seed,
        total_nfc=sum(r.nfc for r in results),
    )


def run_campaign(config: BenchmarkConfig) -> List[BenchmarkRow]:
    """
    Executes ``config.runs`` independent runs per selected function.

    Runs are distributed over a joblib worker pool; results come back in
    submission order, so the rows do not depend on the worker count.

    Parameters
    ----------
    config : BenchmarkConfig
        Campaign description.

    Returns
    -------
    List[BenchmarkRow]
        One row per function, in selection order.
    """
    n_jobs = -1 if config.n_jobs is None else config.n_jobs
    rows: List[BenchmarkRow] = []
    for function_id in config.function_ids():
        results = Parallel(n_jobs=n_jobs)(
            delayed(run_single)(
                config.algorithm,
                function_id,
                config.base_seed + i,
                config.max_generations,
                dict(config.overrides),
            )
            for i in range(config.runs)
        )
        row = _aggregate(function_id, config, results)
        rows.append(row)
        if config.verbose:
            nfc = "-" if row.avg_nfc_success is None else f"{row.avg_nfc_success:.0f}"
            print(f"{config.algorithm} {function_id}: SR={row.success_rate:.1f}% NFC={nfc}")
    return rows


def rows_to_frame(rows: Sequence[BenchmarkRow]) -> pd.DataFrame:
    """Rows as a DataFrame with the csv columns followed by ``total_nfc``."""
    records = [
        {
            "function": row.function,
            "dimension": row.dimension,
            "algorithm": row.algorithm,
            "runs": row.runs,
            "success_rate_pct": row.success_rate,
            "avg_nfc_success": row.avg_nfc_success,
            "base_seed": row.base_seed,
            "total_nfc": row.total_nfc,
        }
        for row in rows
    ]
    frame = pd.DataFrame.from_records(records, columns=CSV_COLUMNS + ["total_nfc"])
    frame["avg_nfc_success"] = frame["avg_nfc_success"].astype(float)
    return frame


def _format_number(value: Optional[float], absent: str) -> str:
    if value is None or pd.isna(value):
        return absent
    return f"{value:.2f}".rstrip("0").rstrip(".")


def emit_report(
    rows: Sequence[BenchmarkRow],
    fmt: str = "csv",
    path: Optional[Union[str, Path]] = None,
) -> bytes:
    """
    Renders the rows as csv or aligned text.

    The csv has exactly the columns of ``CSV_COLUMNS`` with an empty field for
    an absent NFC; the text table prints ``-`` instead. Numbers are rendered
    with at most two decimals, so equal rows give byte-identical reports.

    Parameters
    ----------
    rows : Sequence[BenchmarkRow]
        Campaign rows, at least one.
    fmt : str
        ``"csv"`` or ``"text"``.
    path : str or Path, optional
        If given, the report is also written there.

    Returns
    -------
    bytes
        UTF-8 encoded report.

    Raises
    ------
    ConfigError
        For an unknown format or no rows.
    ReportError
        If the file cannot be written.
    """
    if fmt not in REPORT_FORMATS:
        raise ConfigError(f"Unknown report format '{fmt}'; use one of {', '.join(REPORT_FORMATS)}.")
    if not rows:
        raise ConfigError("Cannot emit a report without rows.")

    frame = rows_to_frame(rows)[CSV_COLUMNS]
    absent = "" if fmt == "csv" else "-"
    for column in ("success_rate_pct", "avg_nfc_success"):
        frame[column] = [_format_number(v, absent) for v in frame[column]]

    if fmt == "csv":
        text = frame.to_csv(index=False, lineterminator="\n")
    else:
        frame = frame.rename(
            columns={
                "function": "Test function",
                "dimension": "N",
                "success_rate_pct": "SR %",
                "avg_nfc_success": "NFC",
            }
        )
        text = frame.to_string(index=False) + "\n"
    payload = text.encode("utf-8")

    if path is not None:
        try:
            Path(path).write_bytes(payload)
        except OSError as err:
            raise ReportError(f"Cannot write report to {path}: {err}", str(path)) from err
    return payload


def published_results() -> pd.DataFrame:
    """
    Published success rates and fitness-call averages per function.

    Columns are ``function``, ``dimension`` and ``<method>_sr`` /
    ``<method>_nfc`` for the methods sbga, ebga, de, sade and ceraf. Missing
    NFC (no success) and rows where the zones were never activated are NaN.

    >>> float(published_results().set_index("function").loc["F1", "de_nfc"])
    52.0
    """
    table = pd.read_csv(PUBLISHED_RESULTS_PATH)
    for column in table.columns[2:]:
        table[column] = table[column].astype(float)
    return table


def compare_with_published(rows: Sequence[BenchmarkRow]) -> pd.DataFrame:
    """
    Joins campaign rows with the published numbers of the same algorithm.

    sade-ceraf falls back on the SADE numbers where the zones were never
    activated in the published campaign. Differences are ``ours - published``.
    """
    published = published_results().set_index("function")
    records = []
    for row in rows:
        prefix = _PUBLISHED_PREFIX[row.algorithm]
        reference = published.loc[row.function]
        sr, nfc = reference[f"{prefix}_sr"], reference[f"{prefix}_nfc"]
        if row.algorithm == "sade-ceraf" and pd.isna(sr):
            sr, nfc = reference["sade_sr"], reference["sade_nfc"]
        ours_nfc = float("nan") if row.avg_nfc_success is None else row.avg_nfc_success
        records.append(
            {
                "function": row.function,
                "algorithm": row.algorithm,
                "success_rate_pct": row.success_rate,
                "published_sr": sr,
                "sr_diff": row.success_rate - sr,
                "avg_nfc_success": ours_nfc,
                "published_nfc": nfc,
                "nfc_diff": ours_nfc - nfc,
            }
        )
    return pd.DataFrame.from_records(records)


def _pivot_marks(rows: Sequence[BenchmarkRow], marked: Callable[[BenchmarkRow], bool]) -> pd.DataFrame:
    functions = list(dict.fromkeys(row.function for row in rows))
    algorithms = list(dict.fromkeys(row.algorithm for row in rows))
    table = pd.DataFrame("", index=pd.Index(functions, name="function"), columns=algorithms)
    for row in rows:
        if marked(row):
            table.loc[row.function, row.algorithm] = "×"
    return table


def reliability_table(rows: Sequence[BenchmarkRow]) -> pd.DataFrame:
    """
    Marks with "×" every (function, algorithm) whose success rate exceeds 95%.

    >>> rows = [BenchmarkRow("F1", 1, "de", 10, 100.0, 50.0, 0), BenchmarkRow("F1", 1, "binga", 10, 90.0, 900.0, 0)]
    >>> reliability_table(rows).loc["F1"].tolist()
    ['×', '']
    """
    return _pivot_marks(rows, lambda row: row.success_rate > 95.0)


def convergence_table(rows: Sequence[BenchmarkRow]) -> pd.DataFrame:
    """Marks with "×" the algorithm(s) with the smallest average NFC per function."""
    fastest: Dict[str, float] = {}
    for row in rows:
        if row.avg_nfc_success is not None:
            fastest[row.function] = min(fastest.get(row.function, float("inf")), row.avg_nfc_success)
    return _pivot_marks(
        rows,
        lambda row: row.avg_nfc_success is not None and row.avg_nfc_success == fastest[row.function],
    )
