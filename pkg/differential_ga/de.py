"""
de.py

This module implements Differential Evolution: every member is challenged by a
trial vector built with the differential operator (scaled difference of two
random members plus attraction towards the best member) and replaced when the
trial is strictly better.

Dependencies:
    - numpy
    - differential_ga.core

Classes:
    - DEParams: Differential weights, coordinate subset policy, population size.

Functions:
    - de_trial(i, pop, best, params, rng): Builds the trial vector of member i.
    - population_radius(pop): Spread of the population around its best member.
    - is_collapsed(pop, params): Whether the next sweep restarts the population.
    - de_generation(pop, f, params, rng, counter): One greedy replacement sweep.
    - de_run(f, params, max_generations, rng): Complete seeded run.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

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
    clamp_to_domain,
    default_population_size,
    evaluate_individual,
    init_population,
    run_generations,
)

LAMBDA_POLICIES = ("full", "random")
RESTART = "restart"


@dataclass(frozen=True)
class DEParams:
    """
    Settings of Differential Evolution.

    Attributes
    ----------
    f1 : float
        Weight of the difference of the two random members (default 0.85).
    f2 : float
        Weight of the attraction towards the best member (default 0.85).
    lambda_policy : str
        ``"full"`` applies the operator to every coordinate; ``"random"``
        draws each coordinate with probability 1/2 (at least one).
    pop_size : int, optional
        Population size; ``None`` means 10n.
    random_weights : bool
        If True, f1 and f2 are redrawn uniformly in (0, 1) for every trial
        and the configured values are ignored.
    restart_radius : float, optional
        When ``population_radius`` falls below this value, every member but
        the best is redrawn uniformly in the domain before the next sweep
        (default 1e-6). ``None`` disables restarts.

    Raises
    ------
    ConfigError
        If a weight is outside [0, 1], the policy is unknown, pop_size < 3 or
        restart_radius is not positive.
    """

    f1: float = 0.85
    f2: float = 0.85
    lambda_policy: str = "full"
    pop_size: Optional[int] = None
    random_weights: bool = False
    restart_radius: Optional[float] = 1e-6

    def __post_init__(self) -> None:
        for name in ("f1", "f2"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"{name} must lie in [0, 1], got {value}.")
        if self.lambda_policy not in LAMBDA_POLICIES:
            raise ConfigError(
                f"Unknown lambda_policy '{self.lambda_policy}'; use one of {LAMBDA_POLICIES}."
            )
        if self.pop_size is not None and self.pop_size < 3:
            raise ConfigError(f"DE needs pop_size >= 3, got {self.pop_size}.")
        if self.restart_radius is not None and self.restart_radius <= 0:
            raise ConfigError(f"restart_radius must be positive, got {self.restart_radius}.")

    def population_size(self, dimension: int) -> int:
        return self.pop_size if self.pop_size is not None else default_population_size(dimension)


def _coordinate_mask(n: int, params: DEParams, rng: RandomSource) -> np.ndarray:
    if params.lambda_policy == "full":
        return np.ones(n, dtype=bool)
    mask = np.array([rng.bernoulli(0.5) for _ in range(n)], dtype=bool)
    if not mask.any():
        mask[rng.integers(n)] = True
    return mask


def de_trial(
    i: int,
    pop: Population,
    best: Individual,
    params: DEParams,
    rng: RandomSource,
    pair: Optional[Tuple[int, int]] = None,
    mask: Optional[np.ndarray] = None,
) -> Individual:
    """
    Builds the trial vector challenging member ``i``.

    For every coordinate j in the subset Λ the trial is
    ``x_i + f1 (x_p - x_q) + f2 (x_best - x_i)``; coordinates outside Λ are
    copied from ``x_i``. The result is clamped to the domain.

    Parameters
    ----------
    i : int
        Index of the challenged member.
    pop : Population
        Current population, at least 3 members.
    best : Individual
        Minimum-fitness member of the generation.
    params : DEParams
        Operator settings.
    rng : RandomSource
        Random stream of the run.
    pair : Tuple[int, int], optional
        Forces the indices p and q instead of drawing two distinct members
        different from ``i``.
    mask : np.ndarray, optional
        Forces the coordinate subset Λ as a boolean mask.

    Returns
    -------
    Individual
        Unevaluated trial tagged ``Provenance.CROSSOVER``.

    Raises
    ------
    ContractError
        If the population has fewer than 3 members.

    Examples
    --------
    >>> from differential_ga.core import SearchDomain
    >>> box = SearchDomain.from_bounds([(-10, 10), (-10, 10)])
    >>> members = [Individual(np.array(g, dtype=float), 0.0) for g in ([0, 0], [1, 0], [0, 0], [2, 2])]
    >>> trial = de_trial(0, Population(members, 4, box), members[3], DEParams(), RandomSource(0), pair=(1, 2))
    >>> np.round(trial.genome, 10).tolist()
    [2.55, 1.7]
    """
    if len(pop) < 3:
        raise ContractError(f"de_trial needs at least 3 members, got {len(pop)}.")
    if pair is None:
        p, q = rng.distinct_indices(len(pop), 2, exclude=(i,))
    else:
        p, q = pair
    if params.random_weights:
        f1, f2 = rng.random(), rng.random()
    else:
        f1, f2 = params.f1, params.f2

    current = pop[i].genome
    if mask is None:
        mask = _coordinate_mask(current.size, params, rng)
    moved = current + f1 * (pop[p].genome - pop[q].genome) + f2 * (best.genome - current)
    trial = np.where(mask, moved, current)
    return Individual(clamp_to_domain(trial, pop.domain), None, Provenance.CROSSOVER)


def population_radius(pop: Population) -> float:
    """
    Largest distance between a member and the best member, with every
    coordinate scaled by the domain width, divided by sqrt(n).

    The value is 0 for a population of identical genomes and at most 1.

    Examples
    --------
    >>> from differential_ga.core import SearchDomain
    >>> box = SearchDomain.from_bounds([(0, 2), (0, 4)])
    >>> members = [Individual(np.array(g, dtype=float), f) for g, f in (([0, 0], 0.0), ([2, 4], 1.0))]
    >>> population_radius(Population(members, 2, box))
    1.0
    """
    span = pop.domain.upper - pop.domain.lower
    scaled = (pop.genomes() - pop.best().genome) / span
    return float(np.max(np.linalg.norm(scaled, axis=1)) / np.sqrt(scaled.shape[1]))


def is_collapsed(pop: Population, params: DEParams) -> bool:
    return params.restart_radius is not None and population_radius(pop) < params.restart_radius


def de_generation(
    pop: Population,
    f: ObjectiveFunction,
    params: DEParams,
    rng: RandomSource,
    counter: EvalCounter,
) -> Population:
    """
    Challenges every member once with its trial vector.

    The best member of the incoming population attracts all trials of the
    generation. A trial replaces its member only if strictly better, and the
    replacement is visible to the following trials of the same sweep.

    When the incoming population is collapsed (see ``is_collapsed``), every
    member except the best is replaced by a uniform draw in the domain
    instead, and only the best member faces a trial. Both sweeps cost
    exactly ``len(pop)`` fitness calls.

    Raises
    ------
    ContractError
        If some member is not evaluated.
    EvaluationError
        Propagated from the objective.
    """
    best = pop.best()
    members = list(pop.members)
    restart = is_collapsed(pop, params)
    if restart:
        keep = pop.best_index()
        lower, upper = pop.domain.lower, pop.domain.upper
        members = [
            member if k == keep
            else evaluate_individual(Individual(rng.uniform(lower, upper)), f, counter)
            for k, member in enumerate(members)
        ]
    working = Population(members, pop.nominal_size, pop.domain)
    for i in range(len(members)):
        if restart and i != keep:
            continue
        trial = evaluate_individual(de_trial(i, working, best, params, rng), f, counter)
        if trial.fitness < members[i].fitness:
            members[i] = trial
    return Population(members, pop.nominal_size, pop.domain)


def de_run(
    f: ObjectiveFunction,
    params: Optional[DEParams] = None,
    max_generations: int = 500,
    rng: Optional[RandomSource] = None,
    verbose: bool = False,
) -> RunResult:
    """
    Runs Differential Evolution on ``f`` until success or budget exhaustion.

    Parameters
    ----------
    f : ObjectiveFunction
        Objective to minimize.
    params : DEParams, optional
        Settings; defaults to ``DEParams()``.
    max_generations : int, optional
        Generation budget (default 500).
    rng : RandomSource, optional
        Random stream; defaults to seed 0.
    verbose : bool, optional
        If True, prints one line per generation.

    Returns
    -------
    RunResult

    Raises
    ------
    ContractError
        If ``max_generations < 1``.
    """
    params = params or DEParams()
    rng = rng or RandomSource(0)
    if max_generations < 1:
        raise ContractError(f"max_generations must be at least 1, got {max_generations}.")
    counter = EvalCounter()
    population = init_population(f.domain, params.population_size(f.dimension), rng)

    def step(current: Population, generation: int):
        event = RESTART if is_collapsed(current, params) else None
        return de_generation(current, f, params, rng, counter), event

    return run_generations(f, population, step, max_generations, counter, rng, verbose)
