import math
from typing import Tuple, get_type_hints

import numpy as np
import pytest

from differential_ga import (
    CerafEvent,
    ContractError,
    DomainError,
    EvalCounter,
    EvaluationError,
    Individual,
    ObjectiveFunction,
    Population,
    Provenance,
    RandomSource,
    RunResult,
    SearchDomain,
    clamp_to_domain,
    default_population_size,
    evaluate_individual,
    evaluate_population,
    init_population,
    is_success,
    run_generations,
)


class TestSearchDomain:
    def test_from_bounds(self):
        domain = SearchDomain.from_bounds([(0, 1), (-2, 2)])
        assert domain.dimension == 2
        assert domain.span.tolist() == [1.0, 4.0]

    @pytest.mark.parametrize(
        "lower, upper",
        [
            ([0.0, 0.0], [1.0]),
            ([1.0], [1.0]),
            ([2.0], [1.0]),
            ([0.0], [math.inf]),
            ([], []),
        ],
    )
    def test_invalid_bounds(self, lower, upper):
        with pytest.raises(DomainError):
            SearchDomain(np.array(lower), np.array(upper))

    def test_bounds_are_read_only(self, box2):
        with pytest.raises(ValueError):
            box2.lower[0] = 3.0

    def test_equality(self):
        a = SearchDomain.from_bounds([(0, 1)])
        b = SearchDomain.from_bounds([(0.0, 1.0)])
        assert a == b
        assert hash(a) == hash(b)


class TestRandomSource:
    def test_same_seed_same_stream(self):
        a, b = RandomSource(11), RandomSource(11)
        assert [a.random() for _ in range(5)] == [b.random() for _ in range(5)]

    def test_negative_seed(self):
        with pytest.raises(ContractError):
            RandomSource(-1)

    def test_distinct_indices(self, rng):
        for _ in range(200):
            chosen = rng.distinct_indices(5, 3, exclude=(2,))
            assert len(set(chosen)) == 3
            assert 2 not in chosen
            assert all(0 <= c < 5 for c in chosen)

    def test_distinct_indices_impossible(self, rng):
        with pytest.raises(ContractError):
            rng.distinct_indices(3, 3, exclude=(0,))


def test_default_population_size():
    assert default_population_size(2) == 20
    assert default_population_size(20) == 200


class TestInitPopulation:
    def test_members_are_feasible_and_pending(self, box2, rng):
        pop = init_population(box2, 30, rng)
        assert len(pop) == 30
        assert pop.nominal_size == 30
        for member in pop.members:
            assert box2.contains(member.genome)
            assert member.fitness is None
            assert member.provenance is Provenance.INITIAL

    def test_too_small(self, box2, rng):
        with pytest.raises(ContractError):
            init_population(box2, 1, rng)


def test_clamp_to_domain(box2):
    assert clamp_to_domain(np.array([7.0, -9.0]), box2).tolist() == [5.0, -5.0]
    assert clamp_to_domain(np.array([1.0, 2.0]), box2).tolist() == [1.0, 2.0]
    with pytest.raises(ContractError):
        clamp_to_domain(np.zeros(3), box2)


@pytest.mark.parametrize(
    "best, optimum, expected",
    [
        (3.02, 3.0, True),
        (3.04, 3.0, False),
        (-185.0, -186.730908831024, True),
        (-184.8, -186.730908831024, False),
        (0.0999, 0.0, True),
        (-0.0999, 0.0, True),
        (0.1, 0.0, False),
        (0.5, 0.0, False),
    ],
)
def test_is_success(best, optimum, expected):
    assert is_success(best, optimum) is expected


def test_is_success_is_symmetric_under_negation():
    generator = np.random.default_rng(9)
    optima = np.concatenate([generator.uniform(-200.0, 200.0, 500), np.zeros(100)])
    for optimum in optima:
        best = optimum + generator.uniform(-0.2, 0.2) * max(abs(optimum), 1.0)
        assert is_success(best, optimum) == is_success(-best, -optimum)


def test_run_result_events_are_typed():
    hints = get_type_hints(RunResult, localns={"CerafEvent": CerafEvent})
    assert hints["events"] == Tuple[CerafEvent, ...]


class TestEvaluation:
    def test_counts_one_call(self, sphere):
        counter = EvalCounter()
        evaluated = evaluate_individual(Individual(np.array([1.0, 2.0])), sphere, counter)
        assert evaluated.fitness == 5.0
        assert counter.count == 1

    def test_refuses_second_evaluation(self, sphere):
        counter = EvalCounter()
        with pytest.raises(ContractError):
            evaluate_individual(Individual(np.array([1.0, 2.0]), 5.0), sphere, counter)
        assert counter.count == 0

    def test_outside_domain(self, sphere):
        with pytest.raises(ContractError):
            evaluate_individual(Individual(np.array([6.0, 0.0])), sphere, EvalCounter())

    def test_non_finite_value(self, box2):
        broken = ObjectiveFunction("nan", 2, box2, lambda x: float("nan"), 0.0)
        counter = EvalCounter()
        with pytest.raises(EvaluationError) as info:
            evaluate_individual(Individual(np.array([1.0, 1.0])), broken, counter)
        assert info.value.point == (1.0, 1.0)
        assert counter.count == 1

    def test_evaluate_population_only_pending(self, sphere, population_factory):
        pop = population_factory(sphere.domain, [[1, 0], [0, 1], [1, 1]], [1.0, None, None])
        counter = EvalCounter()
        evaluated = evaluate_population(pop, sphere, counter)
        assert counter.count == 2
        assert evaluated.fitness_values().tolist() == [1.0, 1.0, 2.0]

    def test_fitness_values_requires_evaluation(self, box2, population_factory):
        pop = population_factory(box2, [[0, 0], [1, 1]])
        with pytest.raises(ContractError):
            pop.fitness_values()


class TestRunGenerations:
    def test_success_at_generation_zero(self, box2, rng):
        zero = ObjectiveFunction("zero", 2, box2, lambda x: 0.0, 0.0)
        counter = EvalCounter()
        pop = init_population(box2, 10, rng)

        def step(current, generation):
            raise AssertionError("no generation should run")

        result = run_generations(zero, pop, step, 5, counter, rng)
        assert result.success
        assert result.generations == 0
        assert result.nfc == 10
        assert result.history == ()

    def test_budget_exhaustion(self, flat, rng):
        counter = EvalCounter()
        pop = init_population(flat.domain, 4, rng)

        def step(current, generation):
            return current, "tick" if generation == 2 else None

        result = run_generations(flat, pop, step, 3, counter, rng)
        assert not result.success
        assert result.generations == 3
        assert [r.generation for r in result.history] == [1, 2, 3]
        assert [r.event for r in result.history] == [None, "tick", None]
        assert result.seed == 0

    def test_invalid_budget(self, flat, rng):
        pop = init_population(flat.domain, 4, rng)
        with pytest.raises(ContractError):
            run_generations(flat, pop, lambda p, g: (p, None), 0, EvalCounter(), rng)

    def test_population_type(self, box2, rng):
        assert isinstance(init_population(box2, 3, rng), Population)
