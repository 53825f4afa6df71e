import numpy as np
import pytest

from differential_ga import (
    Individual,
    ObjectiveFunction,
    Population,
    RandomSource,
    SearchDomain,
)


@pytest.fixture
def box2():
    return SearchDomain.from_bounds([(-5.0, 5.0), (-5.0, 5.0)])


@pytest.fixture
def sphere(box2):
    return ObjectiveFunction(
        name="sphere",
        dimension=2,
        domain=box2,
        evaluate=lambda x: float(np.sum(np.asarray(x) ** 2)),
        reference_optimum=0.0,
    )


@pytest.fixture
def flat(box2):
    # Never improves and never reaches its optimum.
    return ObjectiveFunction(
        name="flat",
        dimension=2,
        domain=box2,
        evaluate=lambda x: 1.0,
        reference_optimum=0.0,
    )


@pytest.fixture
def rng():
    return RandomSource(0)


def make_population(domain, genomes, fitness=None, nominal_size=None):
    fitness = fitness if fitness is not None else [None] * len(genomes)
    members = [
        Individual(np.asarray(g, dtype=float), f) for g, f in zip(genomes, fitness)
    ]
    return Population(members, nominal_size or len(members), domain)


@pytest.fixture
def population_factory():
    return make_population
