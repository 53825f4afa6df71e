import math

import numpy as np
import pytest

from differential_ga import (
    ConfigError,
    ContractError,
    catalog,
    evaluate_test_function,
    get_spec,
    load_reference_optima,
    objective,
    reference_optimum,
)
from differential_ga import testbed
from differential_ga.oracle import ORACLE_FUNCTIONS

EXPECTED_IDS = [
    "F1", "F3", "Branin", "Camelback", "Goldprice", "PShubert1", "PShubert2",
    "Quartic", "Shubert", "Hartman1", "Shekel1", "Shekel2", "Shekel3",
    "Hartman2", "Hosc45", "Brown1", "Brown3", "F5n", "F10n", "F15n",
]
EXPECTED_DIMENSIONS = [1, 1, 2, 2, 2, 2, 2, 2, 2, 3, 4, 4, 4, 6, 10, 20, 20, 20, 20, 20]


def test_catalog_order_and_dimensions():
    specs = catalog()
    assert [spec.id for spec in specs] == EXPECTED_IDS
    assert [spec.dimension for spec in specs] == EXPECTED_DIMENSIONS
    assert all(spec.domain.dimension == spec.dimension for spec in specs)


def test_lookup_is_case_insensitive():
    assert get_spec("hartman2").id == "Hartman2"
    assert objective("f1").name == "F1"


def test_unknown_function():
    with pytest.raises(ConfigError):
        get_spec("Rosenbrock")


def test_dimension_mismatch():
    with pytest.raises(ContractError):
        evaluate_test_function("Branin", [0.0, 0.0, 0.0])


def test_hosc45_bounds_grow_with_index():
    domain = get_spec("Hosc45").domain
    assert domain.lower.tolist() == [0.0] * 10
    assert domain.upper.tolist() == [float(i) for i in range(1, 11)]


@pytest.mark.parametrize(
    "function_id, point, expected",
    [
        ("Goldprice", [0.0, -1.0], 3.0),
        ("Hosc45", [float(i) for i in range(1, 11)], 1.0),
        ("Brown3", [0.0] * 20, 0.0),
        ("F5n", [1.0] * 20, 0.0),
        ("F10n", [1.0] * 20, 0.0),
        ("F15n", [1.0] * 20, 0.0),
    ],
)
def test_known_minima(function_id, point, expected):
    assert evaluate_test_function(function_id, point) == pytest.approx(expected, abs=1e-12)


def test_branin_minimum():
    assert evaluate_test_function("Branin", [-math.pi, 12.275]) == pytest.approx(0.397887357730, abs=1e-9)


def test_brown1_analytic_minimum():
    gap = -math.log(20.0) / 20.0
    point = [3.0, 3.0 - gap] * 10
    value = evaluate_test_function("Brown1", point)
    assert value == pytest.approx(0.5 + math.log(20.0) / 2.0, abs=1e-12)
    assert value == pytest.approx(reference_optimum("Brown1"), abs=1e-9)


def test_pshubert_penalty_vanishes_at_its_center():
    center = [1.42513, -0.80032]
    assert evaluate_test_function("PShubert1", center) == pytest.approx(
        evaluate_test_function("Shubert", center), abs=1e-12
    )


def test_reference_optima_fixture():
    table = load_reference_optima()
    assert list(table.columns) == ["function", "optimum", "oracle"]
    assert table["function"].tolist() == EXPECTED_IDS
    for row in table.itertuples(index=False):
        assert reference_optimum(row.function) == row.optimum


def test_reference_optima_missing_column(tmp_path):
    path = tmp_path / "optima.csv"
    path.write_text("function,optimum\nF1,-1.0\n")
    with pytest.raises(ValueError):
        load_reference_optima(path)


@pytest.mark.parametrize("function_id", EXPECTED_IDS)
def test_agrees_with_oracle(function_id):
    spec = get_spec(function_id)
    oracle = ORACLE_FUNCTIONS[function_id]
    generator = np.random.default_rng(12345)
    for _ in range(1000):
        x = generator.uniform(spec.domain.lower, spec.domain.upper)
        ours = evaluate_test_function(function_id, x)
        theirs = oracle(x.tolist())
        assert ours == pytest.approx(theirs, rel=1e-10, abs=1e-12)


@pytest.mark.parametrize("function_id", EXPECTED_IDS)
def test_no_point_beats_the_reference_optimum(function_id):
    spec = get_spec(function_id)
    generator = np.random.default_rng(7)
    samples = generator.uniform(spec.domain.lower, spec.domain.upper, size=(10_000, spec.dimension))
    values = [spec.formula(x) for x in samples]
    assert min(values) >= spec.reference_optimum - 1e-9


@pytest.mark.parametrize(
    "table, shape, total",
    [
        (testbed.HARTMAN1_A, (4, 3), 176.2),
        (testbed.HARTMAN1_P, (4, 3), 5.44105),
        (testbed.HARTMAN2_A, (4, 6), 184.61),
        (testbed.HARTMAN2_P, (4, 6), 10.1095),
        (testbed.SHEKEL_A, (10, 4), 189.2),
        (testbed.SHEKEL_C, (10,), 4.2),
    ],
)
def test_coefficient_tables_checksum(table, shape, total):
    assert table.shape == shape
    assert float(table.sum()) == pytest.approx(total, abs=1e-9)


@pytest.mark.parametrize("function_id, beta", [("PShubert1", 0.5), ("PShubert2", 1.0)])
def test_pshubert_adds_a_quadratic_penalty_to_shubert(function_id, beta):
    generator = np.random.default_rng(3)
    for x in generator.uniform(-10.0, 10.0, size=(300, 2)):
        penalty = (x[0] - 1.42513) ** 2 + (x[1] + 0.80032) ** 2
        gap = evaluate_test_function(function_id, x) - evaluate_test_function("Shubert", x)
        assert gap == pytest.approx(beta * penalty, rel=1e-9, abs=1e-9)


def test_shekel_variants_are_nested():
    generator = np.random.default_rng(4)
    for x in generator.uniform(0.0, 10.0, size=(1000, 4)):
        five, seven, ten = (evaluate_test_function(name, x) for name in ("Shekel1", "Shekel2", "Shekel3"))
        assert five > seven > ten


def test_shekel1_near_its_minimizer():
    assert evaluate_test_function("Shekel1", [4.0, 4.0, 4.0, 4.0]) == pytest.approx(-10.1532, abs=1e-4)


@pytest.mark.parametrize(
    "a, c, p",
    [
        (testbed.HARTMAN1_A, testbed.HARTMAN1_C, testbed.HARTMAN1_P),
        (testbed.HARTMAN2_A, testbed.HARTMAN2_C, testbed.HARTMAN2_P),
    ],
)
def test_hartman_ignores_the_order_of_coefficient_rows(a, c, p):
    order = [2, 0, 3, 1]
    generator = np.random.default_rng(6)
    for x in generator.uniform(0.0, 1.0, size=(300, a.shape[1])):
        assert testbed.hartman(x, a[order], c[order], p[order]) == pytest.approx(
            testbed.hartman(x, a, c, p), rel=1e-12
        )


def test_f5n_sine_uses_the_same_coordinate():
    # y_1 = 2 and y_i = 1 elsewhere: only the first product term survives.
    point = [5.0] + [1.0] * 19
    first_term = 1.0 + 10.0 * math.sin(2.0 * math.pi + 1.0) ** 2
    expected = math.pi / 20.0 * (10.0 * math.sin(2.0 * math.pi) ** 2 + first_term)
    assert evaluate_test_function("F5n", point) == pytest.approx(expected, rel=1e-12)
