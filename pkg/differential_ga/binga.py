"""
binga.py

This module implements a plain binary-coded genetic algorithm used as the
baseline: fixed-width quantization of each variable, bit-flip mutation,
one-point crossover, fitness-proportional parent sampling and survivor
selection keeping the elite parents.

Dependencies:
    - numpy
    - differential_ga.core

Classes:
    - BinaryEncoding: Bits per variable over a search domain.
    - SGAParams: Bit width, crossover probability, bit-flip probability, elite, size.

Functions:
    - encode(x, enc): Real vector to bit string.
    - decode(bits, enc): Bit string to real vector.
    - bit_mutate(bits, p_bit, rng): Independent bit flips.
    - one_point_crossover(a, b, rng): Tail exchange at a random cut.
    - sga_run(f, params, max_generations, rng): Complete seeded run.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

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
    default_population_size,
    evaluate_individual,
    run_generations,
)


@dataclass(frozen=True, eq=False)
class BinaryEncoding:
    """
    Fixed-width encoding of a search domain.

    Variable j is stored on ``bits_per_variable`` bits, most significant bit
    first; code k decodes to ``lower[j] + k * step[j]`` with
    ``step = span / (2 ** bits - 1)``.
    """

    domain: SearchDomain
    bits_per_variable: int = 16

    def __post_init__(self) -> None:
        if not 1 <= self.bits_per_variable <= 52:
            raise ConfigError(
                f"bits_per_variable must lie in [1, 52], got {self.bits_per_variable}."
            )

    @property
    def length(self) -> int:
        return self.bits_per_variable * self.domain.dimension

    @property
    def max_code(self) -> int:
        return 2 ** self.bits_per_variable - 1

    @property
    def step(self) -> np.ndarray:
        return self.domain.span / self.max_code

    @property
    def _weights(self) -> np.ndarray:
        return 2.0 ** np.arange(self.bits_per_variable - 1, -1, -1)


def encode(x: np.ndarray, enc: BinaryEncoding) -> np.ndarray:
    """
    Quantizes ``x`` to the nearest code of every variable.

    >>> enc = BinaryEncoding(SearchDomain.from_bounds([(0, 15)]), bits_per_variable=4)
    >>> encode(np.array([5.0]), enc).tolist()
    [0, 1, 0, 1]
    """
    x = np.asarray(x, dtype=float)
    if x.size != enc.domain.dimension:
        raise ContractError(
            f"Vector has dimension {x.size}, encoding expects {enc.domain.dimension}."
        )
    codes = np.clip(np.rint((x - enc.domain.lower) / enc.step), 0, enc.max_code).astype(np.int64)
    shifts = np.arange(enc.bits_per_variable - 1, -1, -1)
    bits = (codes[:, None] >> shifts[None, :]) & 1
    return bits.reshape(-1).astype(np.uint8)


def decode(bits: np.ndarray, enc: BinaryEncoding) -> np.ndarray:
    """
    Maps a bit string back to the domain; the result is always feasible.

    >>> enc = BinaryEncoding(SearchDomain.from_bounds([(-1, 1), (0, 4)]), bits_per_variable=3)
    >>> decode(np.zeros(6, dtype=np.uint8), enc).tolist(), decode(np.ones(6, dtype=np.uint8), enc).tolist()
    ([-1.0, 0.0], [1.0, 4.0])
    """
    bits = np.asarray(bits)
    if bits.size != enc.length:
        raise ContractError(f"Bit string has length {bits.size}, encoding expects {enc.length}.")
    codes = bits.reshape(enc.domain.dimension, enc.bits_per_variable) @ enc._weights
    decoded = enc.domain.lower + codes * enc.domain.span / enc.max_code
    return np.where(codes == enc.max_code, enc.domain.upper, np.minimum(decoded, enc.domain.upper))


def bit_mutate(bits: np.ndarray, p_bit: float, rng: RandomSource) -> np.ndarray:
    """Flips every bit independently with probability ``p_bit``."""
    if not 0.0 <= p_bit <= 1.0:
        raise ContractError(f"p_bit must lie in [0, 1], got {p_bit}.")
    flips = np.array([rng.bernoulli(p_bit) for _ in range(len(bits))], dtype=np.uint8)
    return np.asarray(bits, dtype=np.uint8) ^ flips


def one_point_crossover(
    a: np.ndarray, b: np.ndarray, rng: RandomSource, cut: Optional[int] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Swaps the tails of two bit strings after a cut drawn uniformly in
    ``[1, length - 1]``; ``cut`` forces the position.

    >>> zeros, ones = np.zeros(4, dtype=np.uint8), np.ones(4, dtype=np.uint8)
    >>> [child.tolist() for child in one_point_crossover(zeros, ones, RandomSource(0), cut=2)]
    [[0, 0, 1, 1], [1, 1, 0, 0]]
    """
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    if a.shape != b.shape or a.size < 2:
        raise ContractError(
            f"Crossover needs two strings of equal length >= 2, got {a.size} and {b.size}."
        )
    if cut is None:
        cut = 1 + rng.integers(a.size - 1)
    elif not 1 <= cut <= a.size - 1:
        raise ContractError(f"Cut must lie in [1, {a.size - 1}], got {cut}.")
    return (
        np.concatenate([a[:cut], b[cut:]]),
        np.concatenate([b[:cut], a[cut:]]),
    )


@dataclass(frozen=True)
class SGAParams:
    """
    Settings of the binary GA.

    Attributes
    ----------
    bits_per_variable : int
        Bits per variable (default 16).
    crossover_prob : float
        Probability that a parent pair is crossed (default 0.7).
    p_bit : float, optional
        Bit-flip probability; ``None`` means 1 / string length.
    elite : int
        Number of best parents kept unconditionally (default 1).
    pop_size : int, optional
        Population size; ``None`` means 10n.
    """

    bits_per_variable: int = 16
    crossover_prob: float = 0.7
    p_bit: Optional[float] = None
    elite: int = 1
    pop_size: Optional[int] = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.crossover_prob <= 1.0:
            raise ConfigError(f"crossover_prob must lie in [0, 1], got {self.crossover_prob}.")
        if self.p_bit is not None and not 0.0 <= self.p_bit <= 1.0:
            raise ConfigError(f"p_bit must lie in [0, 1], got {self.p_bit}.")
        if self.pop_size is not None and self.pop_size < 2:
            raise ConfigError(f"The binary GA needs pop_size >= 2, got {self.pop_size}.")
        if self.elite < 0 or (self.pop_size is not None and self.elite >= self.pop_size):
            raise ConfigError(f"elite must lie in [0, pop_size), got {self.elite}.")

    def population_size(self, dimension: int) -> int:
        return self.pop_size if self.pop_size is not None else default_population_size(dimension)

    def bit_probability(self, length: int) -> float:
        return self.p_bit if self.p_bit is not None else 1.0 / length


def _proportional_index(weights: np.ndarray, rng: RandomSource) -> int:
    cumulative = np.cumsum(weights)
    index = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side="right"))
    return min(index, len(weights) - 1)


def _selection_weights(fitness: np.ndarray) -> np.ndarray:
    # Minimization: the worst member gets the smallest positive weight.
    spread = float(fitness.max() - fitness.min())
    if spread == 0.0 or not np.isfinite(spread):
        return np.ones_like(fitness)
    return (fitness.max() - fitness) + 1e-3 * spread


def sga_generation(
    pop: Population,
    f: ObjectiveFunction,
    enc: BinaryEncoding,
    params: SGAParams,
    rng: RandomSource,
    counter: EvalCounter,
) -> Population:
    """
    One generation: ``pop_size`` children from fitness-proportional parent
    pairs, then the ``elite`` best parents plus the best children survive.
    """
    size = pop.nominal_size
    fitness = pop.fitness_values()
    weights = _selection_weights(fitness)
    p_bit = params.bit_probability(enc.length)

    children: List[Individual] = []
    while len(children) < size:
        mother = encode(pop[_proportional_index(weights, rng)].genome, enc)
        father = encode(pop[_proportional_index(weights, rng)].genome, enc)
        if rng.bernoulli(params.crossover_prob):
            pair = one_point_crossover(mother, father, rng)
            provenance = Provenance.CROSSOVER
        else:
            pair = (mother, father)
            provenance = Provenance.MUTATION
        for bits in pair[: size - len(children)]:
            genome = decode(bit_mutate(bits, p_bit, rng), enc)
            children.append(evaluate_individual(Individual(genome, None, provenance), f, counter))

    elite = min(params.elite, size - 1)
    parents_by_rank = [pop[i] for i in np.argsort(fitness, kind="stable")[:elite]]
    children.sort(key=lambda child: child.fitness)
    return Population(parents_by_rank + children[: size - elite], size, pop.domain)


def sga_run(
    f: ObjectiveFunction,
    params: Optional[SGAParams] = None,
    max_generations: int = 500,
    rng: Optional[RandomSource] = None,
    verbose: bool = False,
) -> RunResult:
    """
    Runs the binary GA on ``f``; the initial population is drawn as random
    bit strings, so every genome lies on the quantization lattice.
    """
    params = params or SGAParams()
    rng = rng or RandomSource(0)
    if max_generations < 1:
        raise ContractError(f"max_generations must be at least 1, got {max_generations}.")
    enc = BinaryEncoding(f.domain, params.bits_per_variable)
    size = params.population_size(f.dimension)
    if params.elite >= size:
        raise ConfigError(f"elite must be below the population size {size}, got {params.elite}.")

    members = [
        Individual(decode(bit_mutate(np.zeros(enc.length, dtype=np.uint8), 0.5, rng), enc))
        for _ in range(size)
    ]
    counter = EvalCounter()

    def step(current: Population, generation: int):
        return sga_generation(current, f, enc, params, rng, counter), None

    return run_generations(
        f, Population(members, size, f.domain), step, max_generations, counter, rng, verbose
    )
