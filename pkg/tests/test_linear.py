import math

import numpy as np
import pytest

from driftlab.linear import (
    LinearFunction,
    bin_val,
    bit_zero_ordering_check,
    eval_linear,
    eval_potential,
    exact_pointwise_drift,
    fitness_potential,
    function_by_name,
    level_drift_mc_check,
    load_weights,
    log_split_potential,
    offspring_ones_distribution_enum,
    offspring_ones_probability,
    offspring_ones_table,
    one_max,
    ones_potential,
    ones_probability_monotonicity_check,
    pointwise_drift_exhaustive_check,
    potential_by_name,
    ramp_potential,
    random_linear,
    save_weights,
    split_potential,
)
from driftlab.seeding import make_rng


def test_eval_examples():
    assert eval_linear(one_max(4), [1, 0, 1, 1]) == 3.0
    assert eval_linear(bin_val(3), [1, 0, 1]) == 5.0
    assert eval_linear(random_linear(6, make_rng(0)), np.zeros(6, dtype=np.uint8)) == 0.0


def test_eval_length_mismatch():
    with pytest.raises(ValueError):
        eval_linear(one_max(4), [1, 0])


def test_weight_validation():
    with pytest.raises(ValueError):
        LinearFunction(np.array([1.0, 0.0]))
    with pytest.raises(ValueError):
        LinearFunction(np.array([2.0, 1.0]))


def test_potential_examples():
    assert eval_potential(ramp_potential(2), [1, 0]) == 1.5
    assert eval_potential(split_potential(4), [1, 0, 0, 1]) == 3.0
    assert eval_potential(log_split_potential(4, c=2.0), [0, 0, 0, 0]) == 0.0
    assert eval_potential(ones_potential(5), [1, 1, 0, 1, 0]) == 3.0


def test_potential_zero_only_at_origin():
    for g in (ramp_potential(6), split_potential(6), log_split_potential(6), ones_potential(6)):
        assert g.value(np.zeros(6, dtype=np.uint8)) == 0.0
        assert g.value(np.eye(6, dtype=np.uint8)[3]) > 0.0


def test_ramp_range():
    g = ramp_potential(10)
    assert g.value(np.ones(10, dtype=np.uint8)) <= 2 * 10


def test_log_split_c_validation():
    with pytest.raises(ValueError):
        log_split_potential(4, c=1.0)
    with pytest.raises(ValueError):
        log_split_potential(4, c=2.5)


def test_potential_by_name():
    f = bin_val(4)
    assert potential_by_name("fitness", 4, f).value([1, 0, 0, 0]) == 1.0
    with pytest.raises(ValueError):
        potential_by_name("bogus", 4)


def test_exact_drift_hand_example():
    # two accepted masks at n=2 from (1,0): flip bit 1 (gain 1.5) and flip
    # both (tie on fitness, potential change -0.5), each with probability 1/4
    d = exact_pointwise_drift(one_max(2), ramp_potential(2), [1, 0])
    assert d == pytest.approx(0.25, abs=1e-15)


def test_exact_drift_zero_at_origin():
    for f in (one_max(6), bin_val(6)):
        for g in (ramp_potential(6), ones_potential(6)):
            assert exact_pointwise_drift(f, g, np.zeros(6, dtype=np.uint8)) == 0.0


def test_exact_drift_corner_case():
    for n in (4, 8, 16):
        x = np.zeros(n, dtype=np.uint8)
        x[-1] = 1
        d = exact_pointwise_drift(bin_val(n), ones_potential(n), x)
        assert abs(d - 1.0 / n**2) <= 1e-12


def test_exact_drift_scaling_invariance():
    # acceptance depends only on the sign of the fitness change, so
    # rescaled weights give the same drift values; factors 7 and 2 keep
    # the arithmetic exact
    rng = make_rng(3)
    base = one_max(8)
    scaled = LinearFunction(7.0 * base.weights)
    g = ramp_potential(8)
    for _ in range(20):
        x = (rng.random(8) < 0.5).astype(np.uint8)
        assert exact_pointwise_drift(base, g, x) == exact_pointwise_drift(scaled, g, x)
    f = random_linear(8, rng)
    doubled = LinearFunction(2.0 * f.weights)
    for _ in range(20):
        x = (rng.random(8) < 0.5).astype(np.uint8)
        assert exact_pointwise_drift(f, g, x) == exact_pointwise_drift(doubled, g, x)


def test_exact_drift_of_own_fitness_nonnegative():
    rng = make_rng(4)
    f = random_linear(7, rng)
    g = fitness_potential(f)
    for _ in range(30):
        x = (rng.random(7) < 0.5).astype(np.uint8)
        assert exact_pointwise_drift(f, g, x) >= 0.0


def test_single_bit_flip_floor_for_ones_drift():
    # at level k, flipping exactly one of the k ones is always accepted
    f = one_max(8)
    g = ones_potential(8)
    floor = (1.0 / 8) * (1 - 1.0 / 8) ** 7
    for k in (1, 3, 6, 8):
        x = np.zeros(8, dtype=np.uint8)
        x[:k] = 1
        assert exact_pointwise_drift(f, g, x) >= k * floor - 1e-12


def test_exhaustive_check_small_n():
    for f in (one_max(6), bin_val(6), random_linear(6, make_rng(5))):
        report = pointwise_drift_exhaustive_check(f)
        assert report.passed
        assert report.worst_ratio >= 1.0
        assert report.points_checked == 2**6 - 1


def test_exhaustive_check_constant_weights():
    report = pointwise_drift_exhaustive_check(LinearFunction(np.full(8, 7.0)))
    assert report.passed


def test_exhaustive_check_size_guard():
    with pytest.raises(ValueError):
        pointwise_drift_exhaustive_check(one_max(13))


def test_offspring_probability_examples():
    assert offspring_ones_probability(2, 1, 0) == pytest.approx(0.25, abs=1e-15)
    assert offspring_ones_probability(3, 2, 1) == pytest.approx(1.0 / 3, abs=1e-15)
    # flipping both ones of a 2-bit parent costs (1/2)^2
    assert offspring_ones_probability(2, 2, 0) == pytest.approx(0.25, abs=1e-15)
    n = 9
    assert offspring_ones_probability(n, 0, 0) == pytest.approx(
        (1 - 1 / n) ** n, abs=1e-15
    )


def test_offspring_probability_range_checks():
    with pytest.raises(ValueError):
        offspring_ones_probability(4, 5, 0)
    with pytest.raises(ValueError):
        offspring_ones_probability(4, 0, 5)


@pytest.mark.parametrize("n", [1, 2, 3, 6, 9])
def test_offspring_probability_matches_enumeration(n):
    table = offspring_ones_table(n)
    for k in range(n + 1):
        enum = offspring_ones_distribution_enum(n, k) if n > 1 else None
        if n == 1:
            continue
        assert np.max(np.abs(table[k] - enum)) <= 1e-12


def test_offspring_rows_sum_to_one():
    for n in (2, 5, 10, 14):
        table = offspring_ones_table(n)
        assert np.max(np.abs(table.sum(axis=1) - 1.0)) <= 1e-12


def test_monotonicity_check_small():
    for n in (2, 6, 10):
        assert ones_probability_monotonicity_check(n).passed


def test_random_linear_properties():
    rng = make_rng(6)
    f = random_linear(10, rng)
    assert np.all(f.weights > 0)
    assert np.all(np.diff(f.weights) >= 0)
    f2 = random_linear(10, make_rng(6))
    assert np.array_equal(f.weights, f2.weights)


def test_random_linear_max_weight_mean():
    # the largest of n uniforms has mean n/(n+1)
    rng = make_rng(7)
    n, draws = 10, 100_000
    maxima = np.array([random_linear(n, rng).weights[-1] for _ in range(draws)])
    se = maxima.std(ddof=1) / math.sqrt(draws)
    assert abs(maxima.mean() - n / (n + 1)) <= 4 * se


def test_weights_roundtrip(tmp_path):
    f = random_linear(12, make_rng(8))
    path = tmp_path / "weights.txt"
    save_weights(f, path)
    g = load_weights(path)
    assert np.array_equal(f.weights, g.weights)


def test_function_by_name():
    assert function_by_name("onemax", 5).name == "onemax"
    assert function_by_name("binval", 5).name == "binval"
    with pytest.raises(ValueError):
        function_by_name("unknown", 5)
    with pytest.raises(ValueError):
        function_by_name("random", 5)  # rng required


def test_level_drift_check_accepts_onemax():
    report = level_drift_mc_check(one_max(30), reps=300, seed=101, min_samples=300)
    assert report.passed
    assert report.entries  # at least some levels got enough samples


def test_bit_ordering_uniform_at_t0():
    report = bit_zero_ordering_check(bin_val(12), t=0, reps=4000, seed=102)
    assert report.passed
    assert np.all(np.abs(report.p_zero - 0.5) < 0.05)


def test_bit_ordering_requires_strict_weights():
    with pytest.raises(ValueError):
        bit_zero_ordering_check(one_max(5), t=10, reps=10, seed=0)


def test_bit_ordering_single_bit_vacuous():
    report = bit_zero_ordering_check(bin_val(1), t=5, reps=50, seed=103)
    assert report.passed
    assert report.violations == ()
