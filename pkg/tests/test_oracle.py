import math

import numpy as np
import pandas as pd
import pytest

from differential_ga import load_reference_optima, reference_optimum
from differential_ga.oracle import (
    ANALYTIC,
    ANALYTIC_METHOD,
    GRID_METHOD,
    MULTISTART_METHOD,
    ORACLE_FUNCTIONS,
    grid_minimum,
    main,
    multistart_minimum,
)
from differential_ga.testbed import get_spec


@pytest.mark.parametrize("function_id", ["Hosc45", "Brown3", "F5n", "F10n", "F15n"])
def test_analytic_optima_match_the_fixture(function_id):
    value, method = ANALYTIC[function_id]()
    assert method == "analytic"
    assert value == pytest.approx(reference_optimum(function_id), abs=1e-12)


def test_brown1_closed_form():
    value, _ = ANALYTIC["Brown1"]()
    assert value == pytest.approx(0.5 + math.log(20.0) / 2.0, abs=1e-12)


@pytest.mark.parametrize(
    "function_id, bounds",
    [
        ("Branin", [(-5.0, 10.0), (0.0, 15.0)]),
        ("Camelback", [(-3.0, 3.0), (-2.0, 2.0)]),
    ],
)
def test_coarse_grid_recovers_the_optimum(function_id, bounds):
    value = grid_minimum(ORACLE_FUNCTIONS[function_id], bounds, points=201, polish=10)
    assert value == pytest.approx(reference_optimum(function_id), abs=1e-6)


def test_one_dimensional_grid():
    value = grid_minimum(ORACLE_FUNCTIONS["F1"], [(0.0, 1.0)], points=2001, polish=5)
    assert value == pytest.approx(reference_optimum("F1"), abs=1e-8)


def test_multistart_on_hartman1():
    bounds = [(0.0, 1.0)] * 3
    value = multistart_minimum(ORACLE_FUNCTIONS["Hartman1"], bounds, 40, np.random.default_rng(0))
    assert value == pytest.approx(reference_optimum("Hartman1"), abs=1e-6)


def test_fixture_names_the_method_of_every_row():
    for row in load_reference_optima().itertuples(index=False):
        if row.function in ANALYTIC:
            assert row.oracle == ANALYTIC_METHOD
        elif get_spec(row.function).dimension <= 2:
            assert row.oracle == GRID_METHOD
        else:
            assert row.oracle == MULTISTART_METHOD


def test_output_path_is_mandatory(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    with pytest.raises(SystemExit):
        main(["--starts", "1"])
    assert list(tmp_path.iterdir()) == []


@pytest.mark.slow
def test_recomputed_table_matches_the_fixture(tmp_path):
    out = tmp_path / "optima.csv"
    assert main(["--starts", "200", "--out", str(out)]) == 0
    table = pd.read_csv(out)
    fixture = load_reference_optima()
    assert table["function"].tolist() == fixture["function"].tolist()
    assert table["oracle"].tolist() == fixture["oracle"].tolist()
    for ours, shipped in zip(table["optimum"], fixture["optimum"]):
        assert ours == pytest.approx(shipped, abs=1e-8)
