import numpy as np
import pytest

from differential_ga import (
    ConfigError,
    ContractError,
    EvalCounter,
    Individual,
    Population,
    Provenance,
    RandomSource,
    SadeParams,
    clamp_to_domain,
    create_offspring,
    evaluate_population,
    init_population,
    local_mutate,
    mutate,
    objective,
    sade_generation,
    sade_run,
    simplified_differential,
    tournament_reduce,
)


@pytest.mark.parametrize(
    "kwargs",
    [{"mr": 1.5}, {"radioactivity": -0.1}, {"local_range_fraction": -0.01}, {"pop_size": 2}],
)
def test_invalid_params(kwargs):
    with pytest.raises(ConfigError):
        SadeParams(**kwargs)


def test_simplified_differential():
    p, q, r = (Individual(np.array(v, dtype=float)) for v in ([1, 2], [4, 6], [2, 4]))
    assert simplified_differential(p, q, r, 0.2).tolist() == pytest.approx([1.4, 2.4])


def test_simplified_differential_dimension_mismatch():
    with pytest.raises(ContractError):
        simplified_differential(
            Individual(np.zeros(2)), Individual(np.zeros(2)), Individual(np.zeros(3)), 0.2
        )


class TestMutate:
    def test_forced_random_point(self, box2, rng):
        moved = mutate(np.zeros(2), box2, 0.5, rng, random_point=np.array([2.0, 2.0]))
        assert moved.tolist() == [1.0, 1.0]

    def test_rate_zero_is_identity(self, box2, rng):
        x = np.array([1.5, -2.0])
        assert mutate(x, box2, 0.0, rng).tolist() == x.tolist()

    def test_rate_one_jumps_to_random_point(self, box2, rng):
        point = np.array([-3.0, 4.0])
        assert mutate(np.zeros(2), box2, 1.0, rng, random_point=point).tolist() == point.tolist()

    def test_end_rates_are_exact_for_random_points(self, box2):
        draws = RandomSource(11)
        for _ in range(2000):
            x = draws.uniform(box2.lower, box2.upper)
            point = draws.uniform(box2.lower, box2.upper)
            assert mutate(x, box2, 1.0, draws, random_point=point).tolist() == point.tolist()
            assert mutate(x, box2, 0.0, draws, random_point=point).tolist() == x.tolist()


class TestLocalMutate:
    def test_fraction_zero_is_identity(self, box2, rng):
        x = np.array([0.3, -0.7])
        assert local_mutate(x, box2, 0.0, rng).tolist() == x.tolist()

    def test_perturbation_within_half_width(self, box2, rng):
        x = np.array([0.0, 0.0])
        for _ in range(500):
            moved = local_mutate(x, box2, 0.0025, rng)
            assert np.all(np.abs(moved - x) <= 0.0025 * box2.span)

    def test_clamped_at_the_boundary(self, box2, rng):
        x = np.array([5.0, -5.0])
        for _ in range(200):
            assert box2.contains(local_mutate(x, box2, 0.1, rng))


def test_operators_keep_feasibility(box2):
    rng = RandomSource(99)
    pool = [rng.uniform(box2.lower, box2.upper) for _ in range(50)]
    for k in range(100_000 // 3):
        a, b, c = (Individual(pool[(k + shift) % 50]) for shift in (0, 7, 19))
        assert box2.contains(clamp_to_domain(simplified_differential(a, b, c, 5.0), box2))
        assert box2.contains(mutate(a.genome, box2, rng.random(), rng))
        assert box2.contains(local_mutate(a.genome, box2, 0.3, rng))


class TestTournamentReduce:
    def test_best_always_survives(self, box2):
        rng = RandomSource(4)
        for _ in range(10_000):
            size = 2 + rng.integers(6)
            fitness = [float(round(rng.random(), 2)) for _ in range(2 * size)]
            members = [Individual(np.zeros(2), f) for f in fitness]
            reduced = tournament_reduce(Population(members, size, box2), size, rng)
            assert len(reduced) == size
            assert min(m.fitness for m in reduced.members) == min(fitness)

    def test_ties_remove_second_drawn(self, box2):
        members = [Individual(np.array([float(i), 0.0]), 1.0) for i in range(6)]
        first, second = RandomSource(4).distinct_indices(6, 2)
        reduced = tournament_reduce(Population(members, 5, box2), 5, RandomSource(4))
        assert len(reduced) == 5
        assert members[second] not in reduced.members
        assert members[first] in reduced.members

    def test_needs_more_than_target(self, box2):
        members = [Individual(np.zeros(2), 1.0) for _ in range(3)]
        with pytest.raises(ContractError):
            tournament_reduce(Population(members, 3, box2), 3, RandomSource(0))


class TestOffspring:
    def test_count_and_feasibility(self, sphere, rng):
        pop = evaluate_population(init_population(sphere.domain, 20, rng), sphere, EvalCounter())
        offspring = create_offspring(pop, SadeParams(), rng)
        assert len(offspring) == 20
        assert all(not child.evaluated for child in offspring)
        assert all(sphere.domain.contains(child.genome) for child in offspring)

    def test_no_radioactivity_means_crossover_only(self, sphere, rng):
        pop = evaluate_population(init_population(sphere.domain, 10, rng), sphere, EvalCounter())
        offspring = create_offspring(pop, SadeParams(radioactivity=0.0), rng)
        assert {child.provenance for child in offspring} == {Provenance.CROSSOVER}

    def test_full_radioactivity_means_mutation_only(self, sphere, rng):
        pop = evaluate_population(init_population(sphere.domain, 40, rng), sphere, EvalCounter())
        offspring = create_offspring(pop, SadeParams(radioactivity=1.0), rng)
        assert {child.provenance for child in offspring} == {
            Provenance.MUTATION,
            Provenance.LOCAL_MUTATION,
        }


def test_generation_doubles_then_reduces(sphere, rng):
    counter = EvalCounter()
    pop = evaluate_population(init_population(sphere.domain, 20, rng), sphere, counter)
    for _ in range(15):
        best_before = pop.best().fitness
        pop = sade_generation(pop, sphere, SadeParams(), rng, counter)
        assert len(pop) == 20
        assert pop.best().fitness <= best_before
    assert counter.count == 20 * 16


def test_run_is_deterministic(sphere):
    assert sade_run(sphere, max_generations=20, rng=RandomSource(8)) == sade_run(
        sphere, max_generations=20, rng=RandomSource(8)
    )


def test_run_solves_sphere(sphere):
    result = sade_run(sphere, max_generations=300, rng=RandomSource(1))
    assert result.success
    assert result.nfc == 20 * (result.generations + 1)


def _success_rate(function_id, runs=30):
    f = objective(function_id)
    return 100.0 * sum(sade_run(f, rng=RandomSource(seed)).success for seed in range(runs)) / runs


@pytest.mark.slow
@pytest.mark.parametrize("function_id", ["Camelback", "F3"])
def test_reliable_on_low_dimensional_functions(function_id):
    assert _success_rate(function_id) == 100.0
