"""
core.py

This module provides the shared domain types and bookkeeping used by every
optimizer of the package: search domains, individuals and populations, the
seeded random stream, the fitness-call counter, the success criterion and the
generation loop shared by all algorithms.

All optimizers minimize. "Better" always means a strictly smaller objective
value and ties are resolved in favor of the incumbent.

Dependencies:
    - numpy

Classes:
    - OptimizationError (and DomainError, ContractError, EvaluationError,
      ConfigError, ReportError): Errors raised by the package.
    - SearchDomain: Per-dimension closed bounds of the feasible box.
    - Provenance: Tag telling which operator created an individual.
    - Individual: A real genome with its (optional) fitness and provenance.
    - Population: Members plus the nominal size restored by selection.
    - ObjectiveFunction: Named evaluator with domain and known optimum.
    - RandomSource: Seeded random stream handed to every operator.
    - EvalCounter: Number of objective evaluations ("fitness calls").
    - GenerationRecord, RunResult: Per-generation trace and run outcome.

Functions:
    - init_population(domain, size, rng): Uniform random initial population.
    - clamp_to_domain(x, domain): Projects a vector onto the box.
    - is_success(best_value, optimum): The 1% / 0.1 closeness rule.
    - evaluate_individual(ind, f, counter): Assigns fitness, counts the call.
    - evaluate_population(population, f, counter): Evaluates pending members.
    - default_population_size(dimension): The 10n rule.
    - run_generations(f, population, step, max_generations, counter, rng):
      Generation loop with the per-generation success check.
"""

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import TYPE_CHECKING, Callable, List, Optional, Sequence, Tuple

import numpy as np

if TYPE_CHECKING:
    from differential_ga.ceraf import CerafEvent


class OptimizationError(ValueError):
    """Base class of every error raised by differential_ga."""


class DomainError(OptimizationError):
    """Invalid search domain (mismatched lengths, empty or non-finite box)."""


class ContractError(OptimizationError):
    """A precondition of an operation was violated."""


class EvaluationError(OptimizationError):
    """The objective returned a non-finite value."""

    def __init__(self, message: str, point: Tuple[float, ...], value: float):
        super().__init__(message)
        self.point = point
        self.value = value


class ConfigError(OptimizationError):
    """Unknown identifiers or invalid parameter values."""


class ReportError(OptimizationError, OSError):
    """Writing a report, trace or log file failed."""

    def __init__(self, message: str, path: str):
        super().__init__(message)
        self.path = path


@dataclass(frozen=True, eq=False)
class SearchDomain:
    """
    Axis-aligned box ``lower[j] <= x[j] <= upper[j]``.

    Parameters
    ----------
    lower : np.ndarray
        Lower bounds, one per dimension.
    upper : np.ndarray
        Upper bounds, one per dimension.

    Raises
    ------
    DomainError
        If the bounds have different lengths, are empty or non-finite, or if
        ``lower[j] >= upper[j]`` for some ``j``.

    Examples
    --------
    >>> domain = SearchDomain.from_bounds([(0, 1), (-2, 2)])
    >>> domain.dimension
    2
    >>> domain.span.tolist()
    [1.0, 4.0]
    """

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self) -> None:
        lower = np.array(self.lower, dtype=float).ravel()
        upper = np.array(self.upper, dtype=float).ravel()
        if lower.shape != upper.shape:
            raise DomainError(
                f"Bounds length mismatch: {lower.size} lower vs {upper.size} upper."
            )
        if lower.size == 0:
            raise DomainError("A search domain needs at least one dimension.")
        if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
            raise DomainError("Domain bounds must be finite.")
        if np.any(lower >= upper):
            bad = int(np.argmax(lower >= upper))
            raise DomainError(
                f"Empty interval in dimension {bad}: lower={lower[bad]} >= upper={upper[bad]}."
            )
        lower.flags.writeable = False
        upper.flags.writeable = False
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def from_bounds(cls, bounds: Sequence[Tuple[float, float]]) -> "SearchDomain":
        """Builds a domain from a sequence of ``(lower, upper)`` pairs."""
        return cls(
            np.array([b[0] for b in bounds], dtype=float),
            np.array([b[1] for b in bounds], dtype=float),
        )

    @property
    def dimension(self) -> int:
        return int(self.lower.size)

    @property
    def span(self) -> np.ndarray:
        return self.upper - self.lower

    def contains(self, x: np.ndarray) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SearchDomain):
            return NotImplemented
        return bool(
            np.array_equal(self.lower, other.lower)
            and np.array_equal(self.upper, other.upper)
        )

    def __hash__(self) -> int:
        return hash((tuple(self.lower.tolist()), tuple(self.upper.tolist())))


class Provenance(str, Enum):
    """Operator that created an individual."""

    INITIAL = "initial"
    CROSSOVER = "crossover"
    MUTATION = "mutation"
    LOCAL_MUTATION = "local-mutation"
    ZONE_MUTATION = "zone-mutation"

    @property
    def is_mutation(self) -> bool:
        return self in (
            Provenance.MUTATION,
            Provenance.LOCAL_MUTATION,
            Provenance.ZONE_MUTATION,
        )


@dataclass(frozen=True, eq=False)
class Individual:
    """
    One candidate solution.

    The genome is stored as a read-only float array. ``fitness`` stays
    ``None`` until the individual has been evaluated exactly once.
    """

    genome: np.ndarray
    fitness: Optional[float] = None
    provenance: Provenance = Provenance.INITIAL

    def __post_init__(self) -> None:
        genome = np.array(self.genome, dtype=float).ravel()
        genome.flags.writeable = False
        object.__setattr__(self, "genome", genome)

    @property
    def evaluated(self) -> bool:
        return self.fitness is not None

    def with_fitness(self, fitness: float) -> "Individual":
        return replace(self, fitness=float(fitness))


@dataclass
class Population:
    """
    Members of one generation.

    Attributes
    ----------
    members : List[Individual]
        Current individuals, in slot order.
    nominal_size : int
        Size the selection phase restores (``pop``, 10n by default).
    domain : SearchDomain
        Feasible box every member genome lies in.
    """

    members: List[Individual]
    nominal_size: int
    domain: SearchDomain

    def __len__(self) -> int:
        return len(self.members)

    def __getitem__(self, index: int) -> Individual:
        return self.members[index]

    def fitness_values(self) -> np.ndarray:
        """Fitness of every member; raises ContractError if one is pending."""
        if any(m.fitness is None for m in self.members):
            raise ContractError("Population contains unevaluated members.")
        return np.array([m.fitness for m in self.members], dtype=float)

    def best_index(self) -> int:
        """Index of the minimum-fitness member, lowest index on ties."""
        return int(np.argmin(self.fitness_values()))

    def best(self) -> Individual:
        return self.members[self.best_index()]

    def genomes(self) -> np.ndarray:
        return np.vstack([m.genome for m in self.members])


@dataclass(frozen=True)
class ObjectiveFunction:
    """
    A named objective to minimize.

    Attributes
    ----------
    name : str
        Identifier, e.g. ``"Goldprice"``.
    dimension : int
        Number of variables n.
    domain : SearchDomain
        Feasible box.
    evaluate : Callable[[np.ndarray], float]
        Deterministic mapping from a genome to its objective value.
    reference_optimum : float
        Known global minimum value f* used by ``is_success``.
    """

    name: str
    dimension: int
    domain: SearchDomain
    evaluate: Callable[[np.ndarray], float]
    reference_optimum: float


class RandomSource:
    """
    Seeded random stream of one run.

    Wraps a numpy ``Generator`` on the PCG64 bit generator, whose output is
    stable across platforms for equal seeds. Every operator receives the
    run's ``RandomSource`` explicitly; nothing draws from global state.

    Parameters
    ----------
    seed : int
        Non-negative 64-bit seed.

    Examples
    --------
    >>> a, b = RandomSource(7), RandomSource(7)
    >>> a.random() == b.random()
    True
    """

    def __init__(self, seed: int):
        if seed < 0:
            raise ContractError(f"Seeds must be non-negative, got {seed}.")
        self.seed = int(seed)
        self._generator = np.random.Generator(np.random.PCG64(self.seed))

    def random(self) -> float:
        """Uniform real in [0, 1)."""
        return float(self._generator.random())

    def uniform(self, low: np.ndarray, high: np.ndarray) -> np.ndarray:
        """Vector of independent uniforms in [low[j], high[j])."""
        return self._generator.uniform(low, high)

    def integers(self, high: int) -> int:
        """Uniform integer in [0, high)."""
        return int(self._generator.integers(0, high))

    def bernoulli(self, probability: float) -> bool:
        return self.random() < probability

    def distinct_indices(
        self, size: int, count: int, exclude: Sequence[int] = ()
    ) -> List[int]:
        """
        Draws ``count`` mutually distinct indices from ``range(size)``,
        none of them in ``exclude``.
        """
        if size - len(set(exclude)) < count:
            raise ContractError(
                f"Cannot draw {count} distinct indices out of {size} "
                f"excluding {len(set(exclude))}."
            )
        chosen: List[int] = []
        banned = set(exclude)
        while len(chosen) < count:
            candidate = self.integers(size)
            if candidate not in banned:
                chosen.append(candidate)
                banned.add(candidate)
        return chosen


class EvalCounter:
    """Number of objective evaluations performed in one run."""

    def __init__(self) -> None:
        self._count = 0

    @property
    def count(self) -> int:
        return self._count

    def increment(self) -> None:
        self._count += 1


@dataclass(frozen=True)
class GenerationRecord:
    """State after one generation: best value so far, fitness calls, event."""

    generation: int
    best_value: float
    nfc: int
    event: Optional[str] = None


@dataclass(frozen=True)
class RunResult:
    """
    Outcome of one seeded run.

    ``nfc`` is the number of fitness calls consumed when success was first
    detected, or the total at the end of the budget on failure.
    """

    success: bool
    nfc: int
    generations: int
    best_value: float
    best_point: Tuple[float, ...]
    seed: int
    history: Tuple[GenerationRecord, ...] = ()
    events: Tuple["CerafEvent", ...] = ()


def default_population_size(dimension: int) -> int:
    """
    Population size used by every algorithm unless overridden.

    >>> default_population_size(2)
    20
    """
    return 10 * int(dimension)


def init_population(
    domain: SearchDomain, size: int, rng: RandomSource
) -> Population:
    """
    Creates ``size`` individuals drawn uniformly inside ``domain``.

    Parameters
    ----------
    domain : SearchDomain
        Feasible box.
    size : int
        Number of individuals, at least 2.
    rng : RandomSource
        Random stream of the run.

    Returns
    -------
    Population
        Unevaluated members tagged ``Provenance.INITIAL`` with
        ``nominal_size == size``.

    Raises
    ------
    ContractError
        If ``size < 2``.
    DomainError
        If ``domain`` is not a valid SearchDomain.
    """
    if size < 2:
        raise ContractError(f"Population size must be at least 2, got {size}.")
    members = [
        Individual(rng.uniform(domain.lower, domain.upper), None, Provenance.INITIAL)
        for _ in range(size)
    ]
    return Population(members, int(size), domain)


def clamp_to_domain(x: np.ndarray, domain: SearchDomain) -> np.ndarray:
    """
    Projects every coordinate of ``x`` onto ``[lower[j], upper[j]]``.

    Raises
    ------
    ContractError
        If ``x`` and ``domain`` have different dimensions.

    Examples
    --------
    >>> box = SearchDomain.from_bounds([(0, 1), (0, 1)])
    >>> clamp_to_domain(np.array([1.5, -0.2]), box).tolist()
    [1.0, 0.0]
    """
    x = np.asarray(x, dtype=float)
    if x.shape != domain.lower.shape:
        raise ContractError(
            f"Dimension mismatch: vector has {x.size} coordinates, domain has {domain.dimension}."
        )
    return np.clip(x, domain.lower, domain.upper)


def is_success(best_value: float, optimum: float) -> bool:
    """
    Closeness rule used to declare a run successful.

    The difference to the optimum must be below 1% of ``|optimum|``, or below
    0.1 when the optimum is zero.

    Examples
    --------
    >>> is_success(3.02, 3.0)
    True
    >>> is_success(0.09, 0.0), is_success(0.11, 0.0)
    (True, False)
    """
    distance = abs(best_value - optimum)
    if optimum == 0:
        return distance < 0.1
    return distance < 0.01 * abs(optimum)


def evaluate_individual(
    ind: Individual, f: ObjectiveFunction, counter: EvalCounter
) -> Individual:
    """
    Assigns ``f`` at the genome of ``ind`` and counts one fitness call.

    Raises
    ------
    ContractError
        If ``ind`` was already evaluated or lies outside ``f.domain``.
    EvaluationError
        If the objective value is not finite; the call is still counted.
    """
    if ind.fitness is not None:
        raise ContractError("Individual already evaluated; refusing a second fitness call.")
    if not f.domain.contains(ind.genome):
        raise ContractError(f"Genome {ind.genome.tolist()} lies outside the domain of {f.name}.")
    value = float(f.evaluate(ind.genome))
    counter.increment()
    if not math.isfinite(value):
        point = tuple(ind.genome.tolist())
        raise EvaluationError(f"{f.name} returned {value} at {point}.", point, value)
    return ind.with_fitness(value)


def evaluate_population(
    population: Population, f: ObjectiveFunction, counter: EvalCounter
) -> Population:
    """Evaluates every member whose fitness is still unset."""
    members = [
        m if m.evaluated else evaluate_individual(m, f, counter)
        for m in population.members
    ]
    return Population(members, population.nominal_size, population.domain)


GenerationStep = Callable[[Population, int], Tuple[Population, Optional[str]]]


def run_generations(
    f: ObjectiveFunction,
    population: Population,
    step: GenerationStep,
    max_generations: int,
    counter: EvalCounter,
    rng: RandomSource,
    verbose: bool = False,
) -> RunResult:
    """
    Generation loop shared by all optimizers.

    The initial population is evaluated first and checked for success
    (generation 0). Then ``step`` is applied until the best value found so
    far satisfies ``is_success`` or ``max_generations`` generations have run.
    Success is checked once per generation, after all its evaluations.

    Parameters
    ----------
    f : ObjectiveFunction
        Objective to minimize.
    population : Population
        Initial population (members may be unevaluated).
    step : GenerationStep
        ``step(population, generation) -> (population, event)``; ``event`` is
        an optional label written to the trace.
    max_generations : int
        Generation budget, at least 1.
    counter : EvalCounter
        Fitness-call counter shared with ``step``.
    rng : RandomSource
        Random stream of the run; its seed is reported.
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
    if max_generations < 1:
        raise ContractError(f"max_generations must be at least 1, got {max_generations}.")

    population = evaluate_population(population, f, counter)
    incumbent = population.best()
    best_value = float(incumbent.fitness)
    best_point = incumbent.genome
    history: List[GenerationRecord] = []

    generation = 0
    success = is_success(best_value, f.reference_optimum)
    while not success and generation < max_generations:
        generation += 1
        population, event = step(population, generation)
        candidate = population.best()
        if candidate.fitness < best_value:
            best_value = float(candidate.fitness)
            best_point = candidate.genome
        history.append(GenerationRecord(generation, best_value, counter.count, event))
        success = is_success(best_value, f.reference_optimum)
        if verbose:
            print(
                f"{f.name} gen {generation}: best={best_value:.6g} nfc={counter.count}"
                + (f" [{event}]" if event else "")
            )

    return RunResult(
        success=success,
        nfc=counter.count,
        generations=generation,
        best_value=best_value,
        best_point=tuple(float(v) for v in best_point),
        seed=rng.seed,
        history=tuple(history),
    )
