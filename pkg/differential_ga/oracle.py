"""
oracle.py

Independent computation of the reference optima of the test suite.

The functions are re-implemented here as scalar ``math`` code (coordinate
loops instead of vectorized numpy) so they can serve as an oracle for
``differential_ga.testbed``; only the coefficient tables are shared. Optima
are found by a dense grid for n <= 2, by multi-start L-BFGS-B for n >= 3, and
analytically where the minimizer is known in closed form.

Usage:
    python -m differential_ga.oracle --out differential_ga/reference_optima.csv [--starts 10000] [--seed 0]

The committed fixture is exactly the file written by that command (values
with 12 decimals, ``oracle`` column naming the method).

Dependencies:
    - numpy, scipy (scipy.optimize.minimize), pandas
"""

import argparse
import math
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.optimize import minimize

from differential_ga.testbed import (
    HARTMAN1_A,
    HARTMAN1_C,
    HARTMAN1_P,
    HARTMAN2_A,
    HARTMAN2_C,
    HARTMAN2_P,
    PSHUBERT_CENTER,
    REFERENCE_OPTIMA_PATH,
    SHEKEL_A,
    SHEKEL_C,
    catalog,
)

ScalarFunction = Callable[[Sequence[float]], float]

GRID_METHOD = "grid+lbfgsb"
MULTISTART_METHOD = "multistart-lbfgsb"
ANALYTIC_METHOD = "analytic"


def _shubert_sum(t: float) -> float:
    return sum(i * math.cos((i + 1) * t + i) for i in range(1, 6))


def _hartman(x: Sequence[float], a, c, p) -> float:
    total = 0.0
    for i in range(len(c)):
        exponent = 0.0
        for j in range(len(x)):
            exponent += float(a[i][j]) * (x[j] - float(p[i][j])) ** 2
        total += float(c[i]) * math.exp(-exponent)
    return -total


def _shekel(x: Sequence[float], m: int) -> float:
    total = 0.0
    for i in range(m):
        distance = sum((x[j] - float(SHEKEL_A[i][j])) ** 2 for j in range(4))
        total += 1.0 / (distance + float(SHEKEL_C[i]))
    return -total


def _pshubert(x: Sequence[float], beta: float) -> float:
    penalty = (x[0] - PSHUBERT_CENTER[0]) ** 2 + (x[1] - PSHUBERT_CENTER[1]) ** 2
    return _shubert_sum(x[0]) * _shubert_sum(x[1]) + beta * penalty


def _brown1(x: Sequence[float]) -> float:
    head = sum(x[i] - 3.0 for i in range(0, 20, 2)) ** 2
    tail = 0.0
    for i in range(0, 20, 2):
        gap = x[i] - x[i + 1]
        tail += 0.001 * (x[i] - 3.0) ** 2 - gap + math.exp(20.0 * gap)
    return head + tail


def _brown3(x: Sequence[float]) -> float:
    total = 0.0
    for i in range(len(x) - 1):
        a, b = x[i] ** 2, x[i + 1] ** 2
        total += a ** (b + 1.0) + b ** (a + 1.0)
    return total


def _f5n(x: Sequence[float]) -> float:
    y = [1.0 + 0.25 * (v - 1.0) for v in x]
    total = 10.0 * math.sin(math.pi * y[0]) ** 2 + (y[-1] - 1.0) ** 2
    for i in range(len(y) - 1):
        total += (y[i] - 1.0) ** 2 * (1.0 + 10.0 * math.sin(math.pi * y[i] + 1.0) ** 2)
    return math.pi / 20.0 * total


def _f10n(x: Sequence[float]) -> float:
    total = 10.0 * math.sin(math.pi * x[0]) ** 2 + (x[-1] - 1.0) ** 2
    for i in range(len(x) - 1):
        total += (x[i] - 1.0) ** 2 * (1.0 + 10.0 * math.sin(math.pi * x[i + 1]) ** 2)
    return math.pi / 20.0 * total


def _f15n(x: Sequence[float]) -> float:
    total = math.sin(3.0 * math.pi * x[0]) ** 2
    for i in range(len(x) - 1):
        total += (x[i] - 1.0) ** 2 * (1.0 + math.sin(3.0 * math.pi * x[i + 1]) ** 2)
    total += 0.1 * (x[-1] - 1.0) ** 2 * (1.0 + math.sin(2.0 * math.pi * x[-1]) ** 2)
    return 0.1 * total


ORACLE_FUNCTIONS: Dict[str, ScalarFunction] = {
    "F1": lambda x: 2.0 * (x[0] - 0.75) ** 2 + math.sin(5.0 * math.pi * x[0] - 0.4 * math.pi) - 0.125,
    "F3": lambda x: -sum(j * math.sin((j + 1) * x[0] + j) for j in range(1, 6)),
    "Branin": lambda x: (
        (x[1] - 5.1 / (4.0 * math.pi**2) * x[0] ** 2 + 5.0 / math.pi * x[0] - 6.0) ** 2
        + 10.0 * (1.0 - 1.0 / (8.0 * math.pi)) * math.cos(x[0])
        + 10.0
    ),
    "Camelback": lambda x: (
        (4.0 - 2.1 * x[0] ** 2 + x[0] ** 4 / 3.0) * x[0] ** 2
        + x[0] * x[1]
        + (-4.0 + 4.0 * x[1] ** 2) * x[1] ** 2
    ),
    "Goldprice": lambda x: (
        (
            1.0
            + (x[0] + x[1] + 1.0) ** 2
            * (19.0 - 14.0 * x[0] + 3.0 * x[0] ** 2 - 14.0 * x[1] + 6.0 * x[0] * x[1] + 3.0 * x[1] ** 2)
        )
        * (
            30.0
            + (2.0 * x[0] - 3.0 * x[1]) ** 2
            * (18.0 - 32.0 * x[0] + 12.0 * x[0] ** 2 + 48.0 * x[1] - 36.0 * x[0] * x[1] + 27.0 * x[1] ** 2)
        )
    ),
    "PShubert1": lambda x: _pshubert(x, 0.5),
    "PShubert2": lambda x: _pshubert(x, 1.0),
    "Quartic": lambda x: x[0] ** 4 / 4.0 - x[0] ** 2 / 2.0 + x[0] / 10.0 + x[1] ** 2 / 2.0,
    "Shubert": lambda x: _shubert_sum(x[0]) * _shubert_sum(x[1]),
    "Hartman1": lambda x: _hartman(x, HARTMAN1_A, HARTMAN1_C, HARTMAN1_P),
    "Shekel1": lambda x: _shekel(x, 5),
    "Shekel2": lambda x: _shekel(x, 7),
    "Shekel3": lambda x: _shekel(x, 10),
    "Hartman2": lambda x: _hartman(x, HARTMAN2_A, HARTMAN2_C, HARTMAN2_P),
    "Hosc45": lambda x: 2.0 - math.prod(x) / math.factorial(10),
    "Brown1": _brown1,
    "Brown3": _brown3,
    "F5n": _f5n,
    "F10n": _f10n,
    "F15n": _f15n,
}


def _brown1_minimum() -> Tuple[float, str]:
    # Pairs decouple once every odd coordinate equals 3: each pair contributes
    # min over g of exp(20 g) - g, reached at g = -ln(20) / 20.
    gap = -math.log(20.0) / 20.0
    point = []
    for _ in range(10):
        point += [3.0, 3.0 - gap]
    return _brown1(point), ANALYTIC_METHOD


ANALYTIC: Dict[str, Callable[[], Tuple[float, str]]] = {
    "Hosc45": lambda: (ORACLE_FUNCTIONS["Hosc45"]([float(i) for i in range(1, 11)]), ANALYTIC_METHOD),
    "Brown1": _brown1_minimum,
    "Brown3": lambda: (ORACLE_FUNCTIONS["Brown3"]([0.0] * 20), ANALYTIC_METHOD),
    "F5n": lambda: (ORACLE_FUNCTIONS["F5n"]([1.0] * 20), ANALYTIC_METHOD),
    "F10n": lambda: (ORACLE_FUNCTIONS["F10n"]([1.0] * 20), ANALYTIC_METHOD),
    "F15n": lambda: (ORACLE_FUNCTIONS["F15n"]([1.0] * 20), ANALYTIC_METHOD),
}


def _polish(f: ScalarFunction, x0: np.ndarray, bounds: List[Tuple[float, float]]) -> Tuple[float, np.ndarray]:
    result = minimize(lambda v: f(list(v)), x0, method="L-BFGS-B", bounds=bounds)
    return float(result.fun), np.asarray(result.x)


def grid_minimum(
    f: ScalarFunction, bounds: List[Tuple[float, float]], points: int = 2001, polish: int = 20
) -> float:
    """Dense grid followed by L-BFGS-B from the ``polish`` best grid nodes."""
    axes = [np.linspace(low, high, points) for low, high in bounds]
    if len(bounds) == 1:
        nodes = axes[0][:, None]
    else:
        mesh = np.meshgrid(*axes, indexing="ij")
        nodes = np.column_stack([m.ravel() for m in mesh])
    values = np.array([f(list(node)) for node in nodes])
    best = float(values.min())
    for index in np.argsort(values)[:polish]:
        value, _ = _polish(f, nodes[index], bounds)
        best = min(best, value)
    return best


def multistart_minimum(
    f: ScalarFunction, bounds: List[Tuple[float, float]], starts: int, rng: np.random.Generator
) -> float:
    """Best local minimum found by L-BFGS-B from ``starts`` uniform points."""
    lower = np.array([b[0] for b in bounds])
    upper = np.array([b[1] for b in bounds])
    best = math.inf
    for _ in range(starts):
        value, _ = _polish(f, rng.uniform(lower, upper), bounds)
        best = min(best, value)
    return best


def compute_reference_optima(starts: int = 10_000, seed: int = 0, verbose: bool = False) -> pd.DataFrame:
    """
    Computes the optimum of every catalog function.

    Returns
    -------
    pd.DataFrame
        Columns ``function``, ``optimum`` and ``oracle`` (``GRID_METHOD``,
        ``MULTISTART_METHOD`` or ``ANALYTIC_METHOD``).
    """
    rng = np.random.default_rng(seed)
    records = []
    for spec in catalog():
        bounds = list(zip(spec.domain.lower.tolist(), spec.domain.upper.tolist()))
        f = ORACLE_FUNCTIONS[spec.id]
        if spec.id in ANALYTIC:
            optimum, method = ANALYTIC[spec.id]()
        elif spec.dimension <= 2:
            points = 200_001 if spec.dimension == 1 else 2001
            optimum, method = grid_minimum(f, bounds, points=points), GRID_METHOD
        else:
            optimum, method = multistart_minimum(f, bounds, starts, rng), MULTISTART_METHOD
        if verbose:
            print(f"{spec.id}: {optimum:.12f} ({method})")
        records.append({"function": spec.id, "optimum": round(optimum, 12), "oracle": method})
    return pd.DataFrame.from_records(records, columns=["function", "optimum", "oracle"])


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="python -m differential_ga.oracle",
        description="Recompute the reference optima of the test suite.",
    )
    parser.add_argument("--starts", type=int, default=10_000, help="L-BFGS-B starts for n >= 3")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument(
        "--out", required=True, help=f"output csv; the shipped fixture is {REFERENCE_OPTIMA_PATH}"
    )
    args = parser.parse_args(argv)

    table = compute_reference_optima(args.starts, args.seed, verbose=True)
    table.to_csv(args.out, index=False, float_format="%.12f", lineterminator="\n")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
