import math

import numpy as np
import pytest

from driftlab.drift import (
    PotentialTrace,
    check_multiplicative_condition,
    estimate_conditional_drift,
    exact_unit_decrement_mean,
    ideal_potential,
    multiplicative_bound,
    BoundSpec,
    proportional_trace,
    random_absorbing_chain,
    simulate_chain_trace,
    synthetic_multiplicative_process,
    unit_decrement_times,
    unit_decrement_trace,
)
from driftlab.seeding import make_rng


def test_trace_validation():
    PotentialTrace(np.array([3.0, 1.0, 0.0]))
    PotentialTrace(np.array([3.0, 1.0]), capped=True)
    with pytest.raises(ValueError):
        PotentialTrace(np.array([3.0, 1.0]))  # uncapped must end at 0
    with pytest.raises(ValueError):
        PotentialTrace(np.array([3.0, 0.0, 1.0, 0.0]))  # interior zero
    with pytest.raises(ValueError):
        PotentialTrace(np.array([-1.0, 0.0]))


def test_deterministic_traces_have_zero_ci():
    traces = [PotentialTrace(np.array([4.0, 2.0, 1.0, 0.0])) for _ in range(5)]
    estimates = estimate_conditional_drift(traces)
    by_level = {e.level: e for e in estimates}
    assert by_level[4.0].mean_decrease == 2.0
    assert by_level[4.0].ci_halfwidth == 0.0
    assert by_level[4.0].sample_count == 5
    assert by_level[1.0].mean_decrease == 1.0


def test_single_capped_constant_trace():
    trace = PotentialTrace(np.full(10, 7.0), capped=True)
    estimates = estimate_conditional_drift([trace])
    assert len(estimates) == 1
    assert estimates[0].mean_decrease == 0.0
    assert estimates[0].sample_count == 9


def test_empty_input_rejected():
    with pytest.raises(ValueError):
        estimate_conditional_drift([])


def test_bucketed_estimation():
    trace = PotentialTrace(np.array([2.5, 1.25, 0.6, 0.0]))
    estimates = estimate_conditional_drift([trace], bucket_width=1.0)
    assert len(estimates) >= 2
    assert all(e.sample_count >= 1 for e in estimates)


def test_synthetic_unit_decrement_drift_matches_delta():
    delta, s0 = 0.01, 100
    rng = make_rng(11)
    traces = []
    transitions = 0
    while transitions < 1_000_000:
        t = unit_decrement_trace(s0, delta, rng)
        transitions += len(t.values) - 1
        traces.append(t)
    estimates = estimate_conditional_drift(traces)
    for e in estimates:
        assert 0.009 <= e.mean_decrease / e.level <= 0.011, (e.level, e.mean_decrease)
    report = check_multiplicative_condition(estimates, delta)
    assert report.passed
    # doubling the factor must eventually fail at these sample sizes
    report2 = check_multiplicative_condition(estimates, 2 * delta)
    assert not report2.passed


def test_condition_boundary_equality_passes():
    from driftlab.drift import DriftEstimate

    est = [DriftEstimate(level=1.0, mean_decrease=1.0, sample_count=10, ci_halfwidth=0.0)]
    assert check_multiplicative_condition(est, 1.0).passed


def test_condition_empty_rejected():
    with pytest.raises(ValueError):
        check_multiplicative_condition([], 0.5)


def test_unit_decrement_forced_absorption():
    trace = unit_decrement_trace(1, 1.0, make_rng(0))
    assert list(trace.values) == [1.0, 0.0]


def test_unit_decrement_validates_delta():
    with pytest.raises(ValueError):
        unit_decrement_trace(1000, 0.01, make_rng(0))  # delta*s0 > 1


def test_unit_decrement_mean_matches_harmonic_oracle():
    s0, delta, runs = 100, 0.005, 5000
    times = unit_decrement_times(s0, delta, runs, make_rng(42))
    exact = exact_unit_decrement_mean(s0, delta)
    se = times.std(ddof=1) / math.sqrt(runs)
    assert abs(times.mean() - exact) <= 3 * se
    assert times.mean() <= multiplicative_bound(BoundSpec(delta, s0, 1.0)) + 3 * se


def test_proportional_halving_is_deterministic():
    trace = proportional_trace(8.0, 0.5)
    assert list(trace.values) == [8.0, 4.0, 2.0, 1.0, 0.0]
    T = len(trace.values) - 1
    assert T == 4
    assert T <= multiplicative_bound(BoundSpec(0.5, 8.0, 1.0))


def test_process_front_end_modes():
    t1 = synthetic_multiplicative_process(8, 0.5, mode="proportional")
    assert list(t1.values) == [8.0, 4.0, 2.0, 1.0, 0.0]
    t2 = synthetic_multiplicative_process(10, 0.05, rng=make_rng(1), mode="unit-decrement")
    assert t2.values[0] == 10.0 and t2.values[-1] == 0.0
    with pytest.raises(ValueError):
        synthetic_multiplicative_process(10, 0.05, mode="bogus")


def test_estimator_agrees_with_exact_chain_drift():
    # random absorbing chain; state index serves as the potential, so the
    # exact conditional drift at state s is s - sum_s' P[s,s'] s'
    rng = make_rng(9)
    chain = random_absorbing_chain(8, rng)
    P = chain.transition
    exact = {s: s - float(P[s] @ np.arange(8)) for s in range(1, 8)}
    traces = []
    for i in range(400):
        values = simulate_chain_trace(chain, 7, make_rng(1000 + i)).astype(float)
        traces.append(PotentialTrace(values, capped=values[-1] != 0.0))
    estimates = estimate_conditional_drift(traces)
    for e in estimates:
        if e.sample_count < 10:
            continue
        assert abs(e.mean_decrease - exact[int(e.level)]) <= 3 * max(e.ci_halfwidth, 1e-9), e
