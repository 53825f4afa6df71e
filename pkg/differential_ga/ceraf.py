"""
ceraf.py

This module implements the CERAF extension of SADE. When the best solution
stops improving for a number of generations, it is marked with a radioactive
zone, an axis-aligned ellipsoid. Newly created individuals that fall inside a
zone are forced to mutate, and every crossover offspring caught by a zone
shrinks it a little.

Dependencies:
    - numpy
    - differential_ga.core
    - differential_ga.sade

Classes:
    - RadioactiveZone: Ellipsoid with multiplicatively decaying semi-axes.
    - CerafParams: Zone radius, zone mutation probability, stagnation limit, decay.
    - CerafEvent: One entry of the per-run event log.
    - CerafState: Zones, stagnation counter and best-so-far of a run.

Functions:
    - zone_contains(zone, x): Ellipsoid membership.
    - apply_radioactivity(new_individuals, zones, params, domain, mr, rng):
      Zone mutation and shrinking of the newcomers of a generation.
    - update_stagnation(state, generation_best, pop, params, domain): Stagnation
      bookkeeping and zone creation.
    - sade_ceraf_run(f, sade_params, ceraf_params, max_generations, rng):
      Complete seeded SADE+CERAF run.
"""

import math
from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple

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
    evaluate_individual,
    init_population,
    run_generations,
)
from differential_ga.sade import SadeParams, create_offspring, mutate, tournament_reduce

ZONE_CREATED = "zone-created"
ZONE_SHRUNK = "zone-shrunk"
IMPROVEMENT = "improvement"

# Highest priority first; decides the single label written to the trace.
EVENT_PRIORITY = (ZONE_CREATED, ZONE_SHRUNK, IMPROVEMENT)


@dataclass(eq=False)
class RadioactiveZone:
    """
    Ellipsoid marking a local extreme.

    The semi-axes are never stored after shrinking: they are recomputed as
    ``initial_semi_axes * (1 - decay_per_event) ** shrink_count`` so they stay
    strictly positive for any number of events.
    """

    zone_id: int
    center: np.ndarray
    initial_semi_axes: np.ndarray
    decay_per_event: float
    shrink_count: int = 0

    @property
    def semi_axes(self) -> np.ndarray:
        return self.initial_semi_axes * (1.0 - self.decay_per_event) ** self.shrink_count

    def shrink(self) -> None:
        self.shrink_count += 1


@dataclass(frozen=True)
class CerafParams:
    """
    Settings of the radioactive zones.

    Attributes
    ----------
    rad : float
        Initial semi-axis as a fraction of each variable's domain range
        (default 0.25).
    zone_mutation_prob : float
        Probability that an individual caught in a zone is mutated
        (default 1.0).
    stagnation_limit : int, optional
        Number of non-improving generations before a zone is created;
        ``None`` means ``ceil(1700 / pop_size)``.
    decay_per_event : float
        Relative shrink of a zone per catch (default 0.005).
    min_improvement : float
        Relative gain over the best value at the last counter reset that
        counts as progress (default 0.01). Smaller gains still update the
        best-so-far but leave the stagnation counter running; 0 makes every
        strict improvement reset it.

    Raises
    ------
    ConfigError
        If a value is out of range.
    """

    rad: float = 0.25
    zone_mutation_prob: float = 1.0
    stagnation_limit: Optional[int] = None
    decay_per_event: float = 0.005
    min_improvement: float = 0.01

    def __post_init__(self) -> None:
        if not 0.0 < self.rad < 1.0:
            raise ConfigError(f"rad must lie in (0, 1), got {self.rad}.")
        if not 0.0 < self.zone_mutation_prob <= 1.0:
            raise ConfigError(
                f"zone_mutation_prob must lie in (0, 1], got {self.zone_mutation_prob}."
            )
        if not 0.0 <= self.decay_per_event < 1.0:
            raise ConfigError(f"decay_per_event must lie in [0, 1), got {self.decay_per_event}.")
        if self.stagnation_limit is not None and self.stagnation_limit < 1:
            raise ConfigError(f"stagnation_limit must be positive, got {self.stagnation_limit}.")
        if not 0.0 <= self.min_improvement < 1.0:
            raise ConfigError(f"min_improvement must lie in [0, 1), got {self.min_improvement}.")

    def resolve_stagnation_limit(self, pop_size: int) -> int:
        """
        >>> CerafParams().resolve_stagnation_limit(20)
        85
        >>> CerafParams().resolve_stagnation_limit(30)
        57
        """
        if self.stagnation_limit is not None:
            return self.stagnation_limit
        return math.ceil(1700 / pop_size)


@dataclass(frozen=True)
class CerafEvent:
    generation: int
    event: str
    zone_id: Optional[int]
    best_value: float


@dataclass(eq=False)
class CerafState:
    """Mutable per-run state; never shared between runs."""

    best_point: np.ndarray
    best_value: float
    reference_value: float
    stagnation_counter: int = 0
    zones: List[RadioactiveZone] = field(default_factory=list)
    events: List[CerafEvent] = field(default_factory=list)

    @classmethod
    def from_population(cls, pop: Population) -> "CerafState":
        best = pop.best()
        return cls(best.genome, float(best.fitness), float(best.fitness))


def zone_contains(zone: RadioactiveZone, x: np.ndarray) -> bool:
    """
    True if ``x`` lies inside or on the ellipsoid.

    >>> zone = RadioactiveZone(0, np.zeros(2), np.ones(2), 0.005)
    >>> zone_contains(zone, np.array([0.5, 0.5])), zone_contains(zone, np.array([1.1, 0.0]))
    (True, False)
    """
    x = np.asarray(x, dtype=float)
    if x.shape != zone.center.shape:
        raise ContractError(
            f"Point has dimension {x.size}, zone {zone.zone_id} has {zone.center.size}."
        )
    return float(np.sum(((x - zone.center) / zone.semi_axes) ** 2)) <= 1.0


def apply_radioactivity(
    new_individuals: Sequence[Individual],
    zones: Sequence[RadioactiveZone],
    params: CerafParams,
    domain: SearchDomain,
    mr: float,
    rng: RandomSource,
) -> Tuple[List[Individual], int]:
    """
    Applies the zones to the unevaluated newcomers of a generation.

    An individual inside at least one zone is replaced, with probability
    ``params.zone_mutation_prob``, by ``mutate(genome, domain, mr)`` tagged
    ``Provenance.ZONE_MUTATION`` (one application, the mutant may land in a
    zone again). Each caught individual created by crossover shrinks every
    zone containing it once; mutants never shrink a zone.

    Parameters
    ----------
    new_individuals : Sequence[Individual]
        Offspring not yet evaluated.
    zones : Sequence[RadioactiveZone]
        Zones of the run, shrunk in place.
    params : CerafParams
        Zone settings.
    domain : SearchDomain
        Search domain of the run.
    mr : float
        Mutation-rate used for the forced mutation.
    rng : RandomSource
        Random stream of the run.

    Returns
    -------
    Tuple[List[Individual], int]
        The processed individuals and the number of shrink events.
    """
    if not zones:
        return list(new_individuals), 0

    processed: List[Individual] = []
    shrink_events = 0
    for individual in new_individuals:
        containing = [zone for zone in zones if zone_contains(zone, individual.genome)]
        if not containing:
            processed.append(individual)
            continue
        if individual.provenance is Provenance.CROSSOVER:
            for zone in containing:
                zone.shrink()
            shrink_events += len(containing)
        if rng.bernoulli(params.zone_mutation_prob):
            genome = mutate(individual.genome, domain, mr, rng)
            individual = Individual(genome, None, Provenance.ZONE_MUTATION)
        processed.append(individual)
    return processed, shrink_events


def update_stagnation(
    state: CerafState,
    generation_best: float,
    pop: Population,
    params: CerafParams,
    domain: SearchDomain,
    generation: int = 0,
) -> CerafState:
    """
    Updates the stagnation counter after selection and creates a zone when it
    reaches the limit.

    Any strict improvement updates the best-so-far. The counter is reset only
    when the best-so-far has dropped below ``reference_value`` (the best value
    at the last reset) by more than ``min_improvement * |reference_value|``,
    so a slow creep of tiny gains still counts as stagnation. Otherwise the
    counter is incremented. Once it reaches the limit, a zone centred at the
    best-so-far point with semi-axes ``rad * domain.span`` is appended and the
    counter is reset. ``state`` is updated in place and returned.
    """
    if generation_best < state.best_value:
        state.best_value = float(generation_best)
        state.best_point = pop.best().genome

    gain = state.reference_value - state.best_value
    if gain > params.min_improvement * abs(state.reference_value):
        state.reference_value = state.best_value
        state.stagnation_counter = 0
        state.events.append(CerafEvent(generation, IMPROVEMENT, None, state.best_value))
        return state

    state.stagnation_counter += 1
    if state.stagnation_counter >= params.resolve_stagnation_limit(pop.nominal_size):
        zone = RadioactiveZone(
            zone_id=len(state.zones),
            center=np.array(state.best_point, dtype=float),
            initial_semi_axes=params.rad * domain.span,
            decay_per_event=params.decay_per_event,
        )
        state.zones.append(zone)
        state.reference_value = state.best_value
        state.stagnation_counter = 0
        state.events.append(CerafEvent(generation, ZONE_CREATED, zone.zone_id, state.best_value))
    return state


def _trace_label(events: Sequence[CerafEvent]) -> Optional[str]:
    kinds = {event.event for event in events}
    for kind in EVENT_PRIORITY:
        if kind in kinds:
            return kind
    return None


def sade_ceraf_run(
    f: ObjectiveFunction,
    sade_params: Optional[SadeParams] = None,
    ceraf_params: Optional[CerafParams] = None,
    max_generations: int = 500,
    rng: Optional[RandomSource] = None,
    verbose: bool = False,
) -> RunResult:
    """
    Runs SADE with radioactive zones on ``f``.

    Each generation creates the offspring, passes them through
    ``apply_radioactivity``, evaluates them, reduces the doubled population
    by tournament and finally updates the stagnation state. Success is judged
    on the best value ever evaluated.

    Returns
    -------
    RunResult
        With ``events`` holding the full CERAF event log of the run.
    """
    sade_params = sade_params or SadeParams()
    ceraf_params = ceraf_params or CerafParams()
    rng = rng or RandomSource(0)
    if max_generations < 1:
        raise ContractError(f"max_generations must be at least 1, got {max_generations}.")

    counter = EvalCounter()
    population = init_population(f.domain, sade_params.population_size(f.dimension), rng)
    states: List[CerafState] = []

    def step(current: Population, generation: int):
        if not states:
            states.append(CerafState.from_population(current))
        state = states[0]
        logged = len(state.events)

        offspring = create_offspring(current, sade_params, rng)
        before = [zone.shrink_count for zone in state.zones]
        offspring, shrink_events = apply_radioactivity(
            offspring, state.zones, ceraf_params, f.domain, sade_params.mr, rng
        )
        if shrink_events:
            for zone, count in zip(state.zones, before):
                if zone.shrink_count > count:
                    state.events.append(
                        CerafEvent(generation, ZONE_SHRUNK, zone.zone_id, state.best_value)
                    )

        evaluated = [evaluate_individual(child, f, counter) for child in offspring]
        doubled = Population(list(current.members) + evaluated, current.nominal_size, current.domain)
        reduced = tournament_reduce(doubled, current.nominal_size, rng)

        update_stagnation(
            state, float(reduced.best().fitness), reduced, ceraf_params, f.domain, generation
        )
        return reduced, _trace_label(state.events[logged:])

    result = run_generations(f, population, step, max_generations, counter, rng, verbose)
    events = tuple(states[0].events) if states else ()
    return replace(result, events=events)
