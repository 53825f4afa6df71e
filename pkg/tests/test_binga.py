import numpy as np
import pytest
from scipy.stats import binom

from differential_ga import (
    BinaryEncoding,
    ConfigError,
    ContractError,
    RandomSource,
    SGAParams,
    SearchDomain,
    bit_mutate,
    decode,
    encode,
    objective,
    one_point_crossover,
    sade_ceraf_run,
    sga_run,
)


@pytest.fixture
def encoding(box2):
    return BinaryEncoding(box2, bits_per_variable=10)


class TestEncoding:
    def test_bounds_map_to_extreme_codes(self, encoding, box2):
        assert encode(box2.lower, encoding).tolist() == [0] * 20
        assert encode(box2.upper, encoding).tolist() == [1] * 20
        assert decode(np.zeros(20, dtype=np.uint8), encoding).tolist() == box2.lower.tolist()
        assert decode(np.ones(20, dtype=np.uint8), encoding).tolist() == box2.upper.tolist()

    def test_round_trip_within_one_step(self, encoding, box2, rng):
        for _ in range(500):
            x = rng.uniform(box2.lower, box2.upper)
            restored = decode(encode(x, encoding), encoding)
            assert np.all(np.abs(restored - x) <= encoding.step)
            assert box2.contains(restored)

    def test_decoded_points_are_fixed_points(self, encoding, rng):
        for _ in range(200):
            bits = bit_mutate(np.zeros(encoding.length, dtype=np.uint8), 0.5, rng)
            assert encode(decode(bits, encoding), encoding).tolist() == bits.tolist()

    def test_mismatched_sizes(self, encoding):
        with pytest.raises(ContractError):
            encode(np.zeros(3), encoding)
        with pytest.raises(ContractError):
            decode(np.zeros(19, dtype=np.uint8), encoding)

    def test_invalid_width(self, box2):
        with pytest.raises(ConfigError):
            BinaryEncoding(box2, bits_per_variable=0)

    def test_hosc45_lattice(self):
        domain = SearchDomain.from_bounds([(0.0, float(i)) for i in range(1, 11)])
        enc = BinaryEncoding(domain, bits_per_variable=8)
        assert enc.length == 80
        assert enc.step.tolist() == pytest.approx([i / 255 for i in range(1, 11)])


class TestBitMutate:
    def test_zero_probability(self, rng):
        bits = np.array([0, 1, 1, 0, 1], dtype=np.uint8)
        assert bit_mutate(bits, 0.0, rng).tolist() == bits.tolist()

    def test_unit_probability_complements(self, rng):
        bits = np.array([0, 1, 1, 0, 1], dtype=np.uint8)
        assert bit_mutate(bits, 1.0, rng).tolist() == [1, 0, 0, 1, 0]

    def test_flip_count_is_binomial(self):
        rng = RandomSource(17)
        length, trials, p = 64, 500, 0.05
        flips = sum(
            int(bit_mutate(np.zeros(length, dtype=np.uint8), p, rng).sum()) for _ in range(trials)
        )
        low, high = binom.interval(0.9999, length * trials, p)
        assert low <= flips <= high

    def test_invalid_probability(self, rng):
        with pytest.raises(ContractError):
            bit_mutate(np.zeros(4, dtype=np.uint8), 1.5, rng)


class TestCrossover:
    def test_forced_cut(self, rng):
        a = np.array([1, 1, 1, 1, 1], dtype=np.uint8)
        b = np.array([0, 0, 0, 0, 0], dtype=np.uint8)
        first, second = one_point_crossover(a, b, rng, cut=3)
        assert first.tolist() == [1, 1, 1, 0, 0]
        assert second.tolist() == [0, 0, 0, 1, 1]

    def test_equal_parents(self, rng):
        a = np.array([1, 0, 1, 1, 0, 0], dtype=np.uint8)
        first, second = one_point_crossover(a, a.copy(), rng)
        assert first.tolist() == a.tolist() == second.tolist()

    def test_bits_are_conserved(self, rng):
        for _ in range(200):
            a = bit_mutate(np.zeros(12, dtype=np.uint8), 0.5, rng)
            b = bit_mutate(np.zeros(12, dtype=np.uint8), 0.5, rng)
            first, second = one_point_crossover(a, b, rng)
            assert (first.astype(int) + second.astype(int)).tolist() == (
                a.astype(int) + b.astype(int)
            ).tolist()

    def test_length_mismatch(self, rng):
        with pytest.raises(ContractError):
            one_point_crossover(np.zeros(4, dtype=np.uint8), np.zeros(5, dtype=np.uint8), rng)

    def test_cut_out_of_range(self, rng):
        with pytest.raises(ContractError):
            one_point_crossover(np.zeros(4, dtype=np.uint8), np.ones(4, dtype=np.uint8), rng, cut=4)


@pytest.mark.parametrize(
    "kwargs",
    [{"crossover_prob": 1.2}, {"p_bit": -0.1}, {"pop_size": 1}, {"elite": -1}, {"pop_size": 4, "elite": 4}],
)
def test_invalid_params(kwargs):
    with pytest.raises(ConfigError):
        SGAParams(**kwargs)


def test_default_bit_probability():
    assert SGAParams().bit_probability(32) == 1 / 32
    assert SGAParams(p_bit=0.1).bit_probability(32) == 0.1


class TestRun:
    def test_deterministic(self):
        f = objective("Branin")
        assert sga_run(f, max_generations=15, rng=RandomSource(4)) == sga_run(
            f, max_generations=15, rng=RandomSource(4)
        )

    def test_budget_and_feasibility(self, sphere):
        result = sga_run(sphere, SGAParams(pop_size=12), max_generations=10, rng=RandomSource(2))
        assert result.nfc == 12 * (result.generations + 1)
        assert sphere.domain.contains(np.array(result.best_point))

    def test_elite_keeps_the_best(self):
        result = sga_run(objective("Camelback"), max_generations=30, rng=RandomSource(6))
        values = [record.best_value for record in result.history]
        assert all(b <= a for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("function_id", ["Branin", "Camelback", "Goldprice", "Shubert"])
    def test_runs_on_two_dimensional_functions(self, function_id):
        f = objective(function_id)
        result = sga_run(f, max_generations=20, rng=RandomSource(0))
        assert result.generations <= 20
        assert result.best_value >= f.reference_optimum - 1e-9


@pytest.mark.slow
def test_binary_ga_is_less_reliable_than_ceraf():
    ids = ["Branin", "Goldprice", "PShubert1", "Shubert", "Shekel1", "Hartman2"]
    runs = 20

    def aggregate(runner):
        return sum(
            runner(objective(fid), rng=RandomSource(seed)).success for fid in ids for seed in range(runs)
        )

    assert aggregate(sga_run) < aggregate(sade_ceraf_run)
