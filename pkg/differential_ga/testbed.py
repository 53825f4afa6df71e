"""
testbed.py

This module provides the twenty multimodal test functions used to measure the
reliability and the convergence rate of the optimizers, with their exact
coefficient tables, dimensions, bounds and reference optima.

Reference optima are read from the committed fixture ``reference_optima.csv``
produced by ``differential_ga.oracle``.

Dependencies:
    - numpy
    - pandas

Classes:
    - TestFunctionSpec: Identifier, dimension, domain, optimum and formula.

Functions:
    - evaluate_test_function(id, x): Evaluates a test function at x.
    - reference_optimum(id): Known global minimum value f*.
    - catalog(): All twenty specifications in table order.
    - get_spec(id): Specification looked up by (case-insensitive) id.
    - objective(id): ObjectiveFunction ready for the optimizers.
    - load_reference_optima(path=None): Fixture table as a DataFrame.
"""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Union

import numpy as np
import pandas as pd

from differential_ga.core import (
    ConfigError,
    ContractError,
    ObjectiveFunction,
    SearchDomain,
)

REFERENCE_OPTIMA_PATH = Path(__file__).with_name("reference_optima.csv")

# Hartman, 3 variables
HARTMAN1_A = np.array(
    [
        [3.0, 10.0, 30.0],
        [0.1, 10.0, 35.0],
        [3.0, 10.0, 30.0],
        [0.1, 10.0, 35.0],
    ]
)
HARTMAN1_C = np.array([1.0, 1.2, 3.0, 3.2])
HARTMAN1_P = np.array(
    [
        [0.36890, 0.1170, 0.2673],
        [0.46990, 0.4387, 0.7470],
        [0.10910, 0.8732, 0.5547],
        [0.03815, 0.5743, 0.8828],
    ]
)

# Hartman, 6 variables
HARTMAN2_A = np.array(
    [
        [10.00, 3.00, 17.00, 3.50, 1.70, 8.00],
        [0.05, 10.00, 17.00, 0.10, 8.00, 14.00],
        [3.00, 3.50, 1.70, 10.00, 17.00, 8.00],
        [17.00, 8.00, 0.05, 10.00, 0.01, 14.00],
    ]
)
HARTMAN2_C = np.array([1.0, 1.2, 3.0, 3.2])
HARTMAN2_P = np.array(
    [
        [0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
        [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
        [0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650],
        [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381],
    ]
)

# Shekel; the m-variants use the first m rows. c_7 = 0.6 as tabulated.
SHEKEL_A = np.array(
    [
        [4.0, 4.0, 4.0, 4.0],
        [1.0, 1.0, 1.0, 1.0],
        [8.0, 8.0, 8.0, 8.0],
        [6.0, 6.0, 6.0, 6.0],
        [3.0, 7.0, 3.0, 7.0],
        [2.0, 9.0, 2.0, 9.0],
        [5.0, 5.0, 3.0, 3.0],
        [8.0, 1.0, 8.0, 1.0],
        [6.0, 2.0, 6.0, 2.0],
        [7.0, 3.6, 7.0, 3.6],
    ]
)
SHEKEL_C = np.array([0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.6, 0.7, 0.5, 0.5])

PSHUBERT_CENTER = (1.42513, -0.80032)
_SHUBERT_I = np.arange(1, 6, dtype=float)
_HOSC45_FACTORIAL = float(math.factorial(10))


def _shubert_factor(t: float) -> float:
    return float(np.sum(_SHUBERT_I * np.cos((_SHUBERT_I + 1.0) * t + _SHUBERT_I)))


def f1(x: np.ndarray) -> float:
    return float(2.0 * (x[0] - 0.75) ** 2 + np.sin(5.0 * np.pi * x[0] - 0.4 * np.pi) - 0.125)


def f3(x: np.ndarray) -> float:
    j = _SHUBERT_I
    return float(-np.sum(j * np.sin((j + 1.0) * x[0] + j)))


def branin(x: np.ndarray) -> float:
    a, b, c, d = 1.0, 5.1 / (4.0 * np.pi**2), 5.0 / np.pi, 6.0
    h, f = 10.0, 1.0 / (8.0 * np.pi)
    u, v = x[0], x[1]
    return float(a * (v - b * u**2 + c * u - d) ** 2 + h * (1.0 - f) * np.cos(u) + h)


def camelback(x: np.ndarray) -> float:
    u, v = x[0], x[1]
    return float((4.0 - 2.1 * u**2 + u**4 / 3.0) * u**2 + u * v + (-4.0 + 4.0 * v**2) * v**2)


def goldprice(x: np.ndarray) -> float:
    u, v = x[0], x[1]
    first = 1.0 + (u + v + 1.0) ** 2 * (
        19.0 - 14.0 * u + 3.0 * u**2 - 14.0 * v + 6.0 * u * v + 3.0 * v**2
    )
    second = 30.0 + (2.0 * u - 3.0 * v) ** 2 * (
        18.0 - 32.0 * u + 12.0 * u**2 + 48.0 * v - 36.0 * u * v + 27.0 * v**2
    )
    return float(first * second)


def shubert(x: np.ndarray) -> float:
    return _shubert_factor(x[0]) * _shubert_factor(x[1])


def pshubert_penalty(x: np.ndarray, beta: float) -> float:
    """Penalty term separating PShubert from Shubert."""
    return beta * ((x[0] - PSHUBERT_CENTER[0]) ** 2 + (x[1] - PSHUBERT_CENTER[1]) ** 2)


def pshubert(x: np.ndarray, beta: float) -> float:
    return shubert(x) + pshubert_penalty(x, beta)


def quartic(x: np.ndarray) -> float:
    u, v = x[0], x[1]
    return float(u**4 / 4.0 - u**2 / 2.0 + u / 10.0 + v**2 / 2.0)


def hartman(x: np.ndarray, a: np.ndarray, c: np.ndarray, p: np.ndarray) -> float:
    """Hartman family; the exponent sums a_ij (x_j - p_ij)^2 over j."""
    exponents = np.sum(a * (np.asarray(x)[np.newaxis, :] - p) ** 2, axis=1)
    return float(-np.sum(c * np.exp(-exponents)))


def shekel(x: np.ndarray, m: int) -> float:
    diff = np.asarray(x)[np.newaxis, :] - SHEKEL_A[:m]
    return float(-np.sum(1.0 / (np.sum(diff * diff, axis=1) + SHEKEL_C[:m])))


def hosc45(x: np.ndarray) -> float:
    return float(2.0 - np.prod(x) / _HOSC45_FACTORIAL)


def brown1(x: np.ndarray) -> float:
    odd = x[0:19:2]
    following = x[1:20:2]
    gap = odd - following
    head = np.sum(odd - 3.0) ** 2
    return float(head + np.sum(1e-3 * (odd - 3.0) ** 2 - gap + np.exp(20.0 * gap)))


def brown3(x: np.ndarray) -> float:
    sq = np.asarray(x) ** 2
    return float(np.sum(sq[:-1] ** (sq[1:] + 1.0) + sq[1:] ** (sq[:-1] + 1.0)))


def f5n(x: np.ndarray) -> float:
    y = 1.0 + 0.25 * (np.asarray(x) - 1.0)
    # Each product term pairs (y_i - 1)^2 with sin^2(pi y_i + 1) of the same coordinate.
    inner = np.sum((y[:-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * y[:-1] + 1.0) ** 2))
    total = 10.0 * np.sin(np.pi * y[0]) ** 2 + inner + (y[-1] - 1.0) ** 2
    return float(np.pi / 20.0 * total)


def f10n(x: np.ndarray) -> float:
    x = np.asarray(x)
    inner = np.sum((x[:-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * x[1:]) ** 2))
    total = 10.0 * np.sin(np.pi * x[0]) ** 2 + inner + (x[-1] - 1.0) ** 2
    return float(np.pi / 20.0 * total)


def f15n(x: np.ndarray) -> float:
    x = np.asarray(x)
    inner = np.sum((x[:-1] - 1.0) ** 2 * (1.0 + np.sin(3.0 * np.pi * x[1:]) ** 2))
    tail = 0.1 * (x[-1] - 1.0) ** 2 * (1.0 + np.sin(2.0 * np.pi * x[-1]) ** 2)
    return float(0.1 * (np.sin(3.0 * np.pi * x[0]) ** 2 + inner + tail))


def load_reference_optima(path: Optional[Union[str, Path]] = None) -> pd.DataFrame:
    """
    Loads the reference-optima fixture.

    Parameters
    ----------
    path : str or Path, optional
        Fixture location; defaults to the table shipped with the package.

    Returns
    -------
    pd.DataFrame
        Columns ``function``, ``optimum`` and ``oracle``.

    Raises
    ------
    ValueError
        If a required column is missing.
    """
    table = pd.read_csv(path or REFERENCE_OPTIMA_PATH)
    required = {"function", "optimum", "oracle"}
    if not required.issubset(table.columns):
        missing = required - set(table.columns)
        raise ValueError(f"Reference optima table is missing columns: {', '.join(sorted(missing))}")
    return table


_OPTIMA: Dict[str, float] = {
    row.function: float(row.optimum)
    for row in load_reference_optima().itertuples(index=False)
}


@dataclass(frozen=True)
class TestFunctionSpec:
    """
    One test function of the suite.

    Attributes
    ----------
    id : str
        Identifier as written in the result tables, e.g. ``"Hartman2"``.
    dimension : int
        Number of variables N.
    domain : SearchDomain
        Feasible box.
    reference_optimum : float
        Global minimum value f*.
    formula : Callable[[np.ndarray], float]
        The function itself.
    """

    __test__ = False

    id: str
    dimension: int
    domain: SearchDomain
    reference_optimum: float
    formula: Callable[[np.ndarray], float]

    def objective(self) -> ObjectiveFunction:
        return ObjectiveFunction(
            name=self.id,
            dimension=self.dimension,
            domain=self.domain,
            evaluate=self.formula,
            reference_optimum=self.reference_optimum,
        )


def _spec(id: str, bounds: List[tuple], formula: Callable[[np.ndarray], float]) -> TestFunctionSpec:
    domain = SearchDomain.from_bounds(bounds)
    return TestFunctionSpec(id, domain.dimension, domain, _OPTIMA[id], formula)


_CATALOG: List[TestFunctionSpec] = [
    _spec("F1", [(0.0, 1.0)], f1),
    _spec("F3", [(-10.0, 10.0)], f3),
    _spec("Branin", [(-5.0, 10.0), (0.0, 15.0)], branin),
    _spec("Camelback", [(-3.0, 3.0), (-2.0, 2.0)], camelback),
    _spec("Goldprice", [(-2.0, 2.0)] * 2, goldprice),
    _spec("PShubert1", [(-10.0, 10.0)] * 2, lambda x: pshubert(x, 0.5)),
    _spec("PShubert2", [(-10.0, 10.0)] * 2, lambda x: pshubert(x, 1.0)),
    _spec("Quartic", [(-10.0, 10.0)] * 2, quartic),
    _spec("Shubert", [(-10.0, 10.0)] * 2, shubert),
    _spec("Hartman1", [(0.0, 1.0)] * 3, lambda x: hartman(x, HARTMAN1_A, HARTMAN1_C, HARTMAN1_P)),
    _spec("Shekel1", [(0.0, 10.0)] * 4, lambda x: shekel(x, 5)),
    _spec("Shekel2", [(0.0, 10.0)] * 4, lambda x: shekel(x, 7)),
    _spec("Shekel3", [(0.0, 10.0)] * 4, lambda x: shekel(x, 10)),
    _spec("Hartman2", [(0.0, 1.0)] * 6, lambda x: hartman(x, HARTMAN2_A, HARTMAN2_C, HARTMAN2_P)),
    _spec("Hosc45", [(0.0, float(i)) for i in range(1, 11)], hosc45),
    _spec("Brown1", [(-1.0, 4.0)] * 20, brown1),
    _spec("Brown3", [(-1.0, 4.0)] * 20, brown3),
    _spec("F5n", [(-10.0, 10.0)] * 20, f5n),
    _spec("F10n", [(-10.0, 10.0)] * 20, f10n),
    _spec("F15n", [(-10.0, 10.0)] * 20, f15n),
]

_BY_ID: Dict[str, TestFunctionSpec] = {spec.id.lower(): spec for spec in _CATALOG}


def catalog() -> List[TestFunctionSpec]:
    """
    Returns the twenty test functions in table order.

    >>> [spec.id for spec in catalog()][:3]
    ['F1', 'F3', 'Branin']
    >>> len(catalog())
    20
    """
    return list(_CATALOG)


def get_spec(id: str) -> TestFunctionSpec:
    """
    Looks a test function up by id, ignoring case.

    Raises
    ------
    ConfigError
        If no test function has this id.
    """
    try:
        return _BY_ID[str(id).lower()]
    except KeyError:
        known = ", ".join(spec.id for spec in _CATALOG)
        raise ConfigError(f"Unknown test function '{id}'. Known functions: {known}.") from None


def objective(id: str) -> ObjectiveFunction:
    """ObjectiveFunction for the test function ``id``."""
    return get_spec(id).objective()


def evaluate_test_function(id: str, x: np.ndarray) -> float:
    """
    Evaluates the test function ``id`` at ``x``.

    Raises
    ------
    ContractError
        If ``x`` does not have the function's dimension.

    Examples
    --------
    >>> evaluate_test_function("Goldprice", [0.0, -1.0])
    3.0
    >>> evaluate_test_function("Quartic", [0.0, 0.0])
    0.0
    """
    spec = get_spec(id)
    x = np.asarray(x, dtype=float).ravel()
    if x.size != spec.dimension:
        raise ContractError(
            f"{spec.id} expects {spec.dimension} variables, got {x.size}."
        )
    return spec.formula(x)


def reference_optimum(id: str) -> float:
    """
    Global minimum value used by the success criterion.

    >>> reference_optimum("Goldprice")
    3.0
    """
    return get_spec(id).reference_optimum
