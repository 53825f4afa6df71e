"""
sade.py

This module implements the simplified atavistic differential evolution
(SADE): each generation doubles the population with mutants and offspring of
the simplified differential operator, then a modified tournament shrinks it
back to its nominal size.

Dependencies:
    - numpy
    - differential_ga.core

Classes:
    - SadeParams: Cross-rate, mutation-rate, radioactivity, local range, size.

Functions:
    - simplified_differential(p, q, r, cr): CH_p + CR (CH_q - CH_r).
    - mutate(x, domain, mr, rng): Pull towards a uniformly random point.
    - local_mutate(x, domain, fraction, rng): Small uniform perturbation.
    - tournament_reduce(doubled, target, rng): Pairwise elimination.
    - create_offspring(pop, params, rng): The pop_size new individuals.
    - sade_generation(pop, f, params, rng, counter): One complete generation.
    - sade_run(f, params, max_generations, rng): Complete seeded run.
"""

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from differential_ga.core import (
    ConfigError,
    ContractError,
    EvalCounter,
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
    init_population,
    run_generations,
)


@dataclass(frozen=True)
class SadeParams:
    """
    Settings of SADE.

    Attributes
    ----------
    cr : float
        Cross-rate, weight of the difference vector (default 0.2).
    mr : float
        Mutation-rate, pull towards the random point (default 0.5).
    radioactivity : float
        Probability that a new slot is filled by a mutation operator instead
        of the differential operator (default 0.2).
    local_range_fraction : float
        Half-width of the local mutation as a fraction of each variable's
        domain range (default 0.0025).
    pop_size : int, optional
        Population size; ``None`` means 10n.
    """

    cr: float = 0.2
    mr: float = 0.5
    radioactivity: float = 0.2
    local_range_fraction: float = 0.0025
    pop_size: Optional[int] = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.mr <= 1.0:
            raise ConfigError(f"mr must lie in [0, 1], got {self.mr}.")
        if not 0.0 <= self.radioactivity <= 1.0:
            raise ConfigError(f"radioactivity must lie in [0, 1], got {self.radioactivity}.")
        if self.local_range_fraction < 0.0:
            raise ConfigError(
                f"local_range_fraction must be non-negative, got {self.local_range_fraction}."
            )
        if self.pop_size is not None and self.pop_size < 3:
            raise ConfigError(f"SADE needs pop_size >= 3, got {self.pop_size}.")

    def population_size(self, dimension: int) -> int:
        return self.pop_size if self.pop_size is not None else default_population_size(dimension)


def simplified_differential(
    p: Individual, q: Individual, r: Individual, cr: float
) -> np.ndarray:
    """
    Simplified differential operator, before clamping.

    Examples
    --------
    >>> p, q, r = (Individual(np.array(v, dtype=float)) for v in ([1, 2], [4, 6], [2, 4]))
    >>> np.round(simplified_differential(p, q, r, 0.2), 12).tolist()
    [1.4, 2.4]
    """
    if not (p.genome.shape == q.genome.shape == r.genome.shape):
        raise ContractError("simplified_differential needs genomes of equal dimension.")
    return p.genome + cr * (q.genome - r.genome)


def mutate(
    x: np.ndarray,
    domain: SearchDomain,
    mr: float,
    rng: RandomSource,
    random_point: Optional[np.ndarray] = None,
) -> np.ndarray:
    """
    Moves ``x`` towards a point RP drawn uniformly in the domain:
    ``(1 - mr) x + mr RP``, which gives ``x`` exactly at ``mr = 0`` and RP
    exactly at ``mr = 1``.

    For ``0 <= mr <= 1`` the result is a convex combination of two feasible
    points; it is still clamped to absorb rounding. ``random_point`` forces RP.

    >>> box = SearchDomain.from_bounds([(-5, 5), (-5, 5)])
    >>> mutate(np.zeros(2), box, 0.5, RandomSource(0), random_point=np.array([2.0, 2.0])).tolist()
    [1.0, 1.0]
    """
    x = np.asarray(x, dtype=float)
    if random_point is None:
        random_point = rng.uniform(domain.lower, domain.upper)
    return clamp_to_domain((1.0 - mr) * x + mr * np.asarray(random_point, dtype=float), domain)


def local_mutate(
    x: np.ndarray, domain: SearchDomain, fraction: float, rng: RandomSource
) -> np.ndarray:
    """
    Perturbs every coordinate by an independent uniform value in
    ``[-fraction * range_j, +fraction * range_j]`` and clamps the result.
    """
    half_width = fraction * domain.span
    delta = rng.uniform(-half_width, half_width) if fraction > 0 else np.zeros_like(half_width)
    return clamp_to_domain(np.asarray(x, dtype=float) + delta, domain)


def tournament_reduce(
    doubled: Population, target: int, rng: RandomSource
) -> Population:
    """
    Shrinks a population to ``target`` members by repeated pairwise duels.

    Two distinct members are drawn uniformly from the current pool and the
    worse (larger fitness) is removed; on equal fitness the second-drawn one
    is removed. The minimum-fitness member can never lose a duel, so the best
    individual always survives.

    Raises
    ------
    ContractError
        If ``len(doubled) <= target`` or some member is not evaluated.
    """
    if len(doubled) <= target:
        raise ContractError(
            f"tournament_reduce needs more than {target} members, got {len(doubled)}."
        )
    pool = list(doubled.members)
    fitness = list(doubled.fitness_values())
    while len(pool) > target:
        first, second = rng.distinct_indices(len(pool), 2)
        loser = first if fitness[first] > fitness[second] else second
        del pool[loser]
        del fitness[loser]
    return Population(pool, target, doubled.domain)


def create_offspring(
    pop: Population, params: SadeParams, rng: RandomSource
) -> List[Individual]:
    """
    Creates exactly ``pop.nominal_size`` unevaluated individuals.

    Each slot is a mutant with probability ``params.radioactivity`` (a fair
    coin picks mutation or local mutation of a parent drawn uniformly),
    otherwise the clamped result of the simplified differential operator on
    three distinct parents. Sources are always taken from the parent pool.
    """
    domain = pop.domain
    offspring: List[Individual] = []
    for _ in range(pop.nominal_size):
        if rng.bernoulli(params.radioactivity):
            source = pop[rng.integers(len(pop))].genome
            if rng.bernoulli(0.5):
                genome = mutate(source, domain, params.mr, rng)
                provenance = Provenance.MUTATION
            else:
                genome = local_mutate(source, domain, params.local_range_fraction, rng)
                provenance = Provenance.LOCAL_MUTATION
        else:
            p, q, r = rng.distinct_indices(len(pop), 3)
            genome = simplified_differential(pop[p], pop[q], pop[r], params.cr)
            provenance = Provenance.CROSSOVER
        offspring.append(Individual(clamp_to_domain(genome, domain), None, provenance))
    return offspring


def sade_generation(
    pop: Population,
    f: ObjectiveFunction,
    params: SadeParams,
    rng: RandomSource,
    counter: EvalCounter,
) -> Population:
    """
    One SADE generation: double the population, evaluate the newcomers
    (``pop_size`` fitness calls) and reduce back by tournament.
    """
    offspring = create_offspring(pop, params, rng)
    evaluated = [evaluate_individual(child, f, counter) for child in offspring]
    doubled = Population(list(pop.members) + evaluated, pop.nominal_size, pop.domain)
    return tournament_reduce(doubled, pop.nominal_size, rng)


def sade_run(
    f: ObjectiveFunction,
    params: Optional[SadeParams] = None,
    max_generations: int = 500,
    rng: Optional[RandomSource] = None,
    verbose: bool = False,
) -> RunResult:
    """
    Runs SADE on ``f`` until success or budget exhaustion.

    Parameters
    ----------
    f : ObjectiveFunction
        Objective to minimize.
    params : SadeParams, optional
        Settings; defaults to ``SadeParams()``.
    max_generations : int, optional
        Generation budget (default 500).
    rng : RandomSource, optional
        Random stream; defaults to seed 0.
    verbose : bool, optional
        If True, prints one line per generation.

    Returns
    -------
    RunResult
    """
    params = params or SadeParams()
    rng = rng or RandomSource(0)
    if max_generations < 1:
        raise ContractError(f"max_generations must be at least 1, got {max_generations}.")
    counter = EvalCounter()
    population = init_population(f.domain, params.population_size(f.dimension), rng)

    def step(current: Population, generation: int):
        return sade_generation(current, f, params, rng, counter), None

    return run_generations(f, population, step, max_generations, counter, rng, verbose)
