"""
config.py

This module gathers the tunable settings of the package: default parameters of
every algorithm, campaign defaults, the reader for plain ``key=value``
configuration files and the conversion of textual overrides into parameter
objects.

Dependencies:
    - python-dotenv (dotenv_values)
    - differential_ga.de, differential_ga.sade, differential_ga.ceraf, differential_ga.binga

Functions:
    - load_config_file(path): Splits a key=value file into settings and overrides.
    - build_params(algorithm, overrides): Typed parameter objects of an algorithm.
    - parse_bool(text): Reads yes/no style flags from text values.
"""

from dataclasses import fields
from pathlib import Path
from typing import Any, Callable, Dict, Mapping, Optional, Tuple, Union

from dotenv import dotenv_values

from differential_ga.binga import SGAParams
from differential_ga.ceraf import CerafParams
from differential_ga.core import ConfigError
from differential_ga.de import DEParams
from differential_ga.sade import SadeParams

ALGORITHMS = ("de", "sade", "sade-ceraf", "binga")

_PARAM_CLASSES: Dict[str, Tuple[type, ...]] = {
    "de": (DEParams,),
    "sade": (SadeParams,),
    "sade-ceraf": (SadeParams, CerafParams),
    "binga": (SGAParams,),
}

# Default parameters of each algorithm, read from the parameter classes.
# ``None`` population sizes mean 10n, ``None`` stagnation limit means
# ceil(1700 / pop_size), ``None`` p_bit means 1 / bit-string length and
# ``None`` restart_radius disables DE restarts.
ALGORITHM_DEFAULTS: Dict[str, Dict[str, Any]] = {
    algorithm: {f.name: f.default for cls in classes for f in fields(cls)}
    for algorithm, classes in _PARAM_CLASSES.items()
}

# Campaign settings used by the bench harness and the CLI.
CAMPAIGN_DEFAULTS: Dict[str, Any] = {
    "runs": 100,
    "max_generations": 500,
    "base_seed": 0,
    "n_jobs": None,  # None: one worker per logical CPU
    "format": "text",
}

# Keys of a config file that are CLI settings rather than parameter overrides.
SETTING_KEYS = (
    "alg",
    "functions",
    "function",
    "runs",
    "seed",
    "max-gens",
    "jobs",
    "format",
    "out",
    "trace",
    "events",
    "summary",
    "compare-published",
    "history",
)


def parse_bool(text: str) -> bool:
    """
    >>> parse_bool("yes"), parse_bool("Off")
    (True, False)
    """
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


_CONVERTERS: Dict[str, Callable[[str], Any]] = {
    "lambda_policy": str,
    "random_weights": parse_bool,
    "pop_size": int,
    "stagnation_limit": int,
    "bits_per_variable": int,
    "elite": int,
}

_OPTIONAL_KEYS = {
    f.name
    for classes in _PARAM_CLASSES.values()
    for cls in classes
    for f in fields(cls)
    if type(None) in getattr(f.type, "__args__", ())
}


def _convert(key: str, value: Any) -> Any:
    if not isinstance(value, str):
        return value
    if value.strip().lower() == "none" and key in _OPTIONAL_KEYS:
        return None
    try:
        return _CONVERTERS.get(key, float)(value.strip())
    except ValueError as err:
        raise ConfigError(f"Invalid value for parameter '{key}': {value!r} ({err}).") from err


def build_params(algorithm: str, overrides: Optional[Mapping[str, Any]] = None) -> Dict[str, Any]:
    """
    Converts overrides into the keyword arguments of an algorithm's runner.

    Parameters
    ----------
    algorithm : str
        One of ``ALGORITHMS``.
    overrides : Mapping[str, Any], optional
        Parameter values, typically strings from the command line or a
        config file; names may use ``-`` instead of ``_``.

    Returns
    -------
    Dict[str, Any]
        ``{"params": ...}`` for de, sade and binga;
        ``{"sade_params": ..., "ceraf_params": ...}`` for sade-ceraf.

    Raises
    ------
    ConfigError
        If the algorithm is unknown, a key matches no parameter or a value is
        malformed or out of range.

    Examples
    --------
    >>> build_params("de", {"f1": "0.5"})["params"].f1
    0.5
    >>> build_params("sade-ceraf", {"rad": "0.1"})["ceraf_params"].rad
    0.1
    """
    if algorithm not in _PARAM_CLASSES:
        raise ConfigError(f"Unknown algorithm '{algorithm}'; use one of {', '.join(ALGORITHMS)}.")
    normalized = {key.replace("-", "_"): value for key, value in (overrides or {}).items()}

    classes = _PARAM_CLASSES[algorithm]
    known = {f.name for cls in classes for f in fields(cls)}
    unknown = sorted(set(normalized) - known)
    if unknown:
        raise ConfigError(
            f"Unknown parameter(s) for {algorithm}: {', '.join(unknown)}. "
            f"Known: {', '.join(sorted(known))}."
        )

    built = []
    for cls in classes:
        names = {f.name for f in fields(cls)}
        kwargs = {key: _convert(key, value) for key, value in normalized.items() if key in names}
        built.append(cls(**kwargs))

    if algorithm == "sade-ceraf":
        return {"sade_params": built[0], "ceraf_params": built[1]}
    return {"params": built[0]}


def load_config_file(path: Union[str, Path]) -> Tuple[Dict[str, str], Dict[str, str]]:
    """
    Reads a ``key=value`` file (comments and blank lines allowed).

    Returns
    -------
    Tuple[Dict[str, str], Dict[str, str]]
        CLI settings (keys of ``SETTING_KEYS``) and parameter overrides (every
        other key).

    Raises
    ------
    ConfigError
        If the file does not exist or a line has no value.
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"Config file not found: {path}")
    values = dotenv_values(path)
    empty = [key for key, value in values.items() if value is None]
    if empty:
        raise ConfigError(f"Config file {path} has keys without a value: {', '.join(empty)}")

    settings = {key: value for key, value in values.items() if key in SETTING_KEYS}
    overrides = {key: value for key, value in values.items() if key not in SETTING_KEYS}
    return settings, overrides
