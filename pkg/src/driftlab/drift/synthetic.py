"""Synthetic processes with a prescribed multiplicative drift.

These are verification devices: their drift factor is known exactly, so
bound calculators and drift estimators can be tested end to end against
closed-form expectations.

unit-decrement mode: integer state s steps to s-1 with probability
delta*s, else stays.  E[decrease | s] = delta*s exactly, and the
absorption time is a sum of independent geometrics with exact mean
H(s0)/delta (harmonic number H).

proportional mode: real state decays deterministically, s -> s*(1-delta),
absorbed (set to 0) once below smin.  The drift condition holds with
equality before absorption.  Real-valued states with an smin cutoff are
a verification device on top of the finite-range setting of the bound.
"""

import math

import numpy as np

from .estimation import PotentialTrace


def _unit_decrement_probs(s0: int, delta: float) -> np.ndarray:
    if s0 < 1 or s0 != int(s0):
        raise ValueError("s0 must be a positive integer")
    if delta <= 0:
        raise ValueError("delta must be positive")
    if delta * s0 > 1.0:
        raise ValueError("unit-decrement mode needs delta * s0 <= 1")
    return delta * np.arange(int(s0), 0, -1, dtype=np.float64)


def unit_decrement_trace(s0: int, delta: float, rng: np.random.Generator) -> PotentialTrace:
    """One trajectory of the unit-decrement process, ending at 0.

    The dwell time at each level is geometric, so the trace is generated
    level by level; the step-by-step distribution is identical.
    """
    probs = _unit_decrement_probs(s0, delta)
    dwell = rng.geometric(probs)
    levels = np.arange(int(s0), 0, -1, dtype=np.float64)
    values = np.concatenate([np.repeat(levels, dwell), [0.0]])
    return PotentialTrace(values, capped=False)


def unit_decrement_times(
    s0: int, delta: float, n_runs: int, rng: np.random.Generator
) -> np.ndarray:
    """Absorption times of ``n_runs`` independent unit-decrement processes."""
    if n_runs < 1:
        raise ValueError("n_runs must be at least 1")
    probs = _unit_decrement_probs(s0, delta)
    times = np.zeros(n_runs, dtype=np.int64)
    for p in probs:
        times += rng.geometric(p, size=n_runs)
    return times


def exact_unit_decrement_mean(s0: int, delta: float) -> float:
    """Exact expected absorption time: sum over levels of 1/(delta*k)."""
    _unit_decrement_probs(s0, delta)
    return math.fsum(1.0 / (delta * k) for k in range(1, int(s0) + 1))


def proportional_trace(s0: float, delta: float, smin: float = 1.0) -> PotentialTrace:
    """Deterministic geometric decay s -> s*(1-delta), absorbed below smin."""
    if s0 <= 0:
        raise ValueError("s0 must be positive")
    if not 0.0 < delta < 1.0:
        raise ValueError("proportional mode needs 0 < delta < 1")
    if smin <= 0:
        raise ValueError("smin must be positive")
    values = []
    s = float(s0)
    while s >= smin:
        values.append(s)
        s *= 1.0 - delta
    values.append(0.0)
    return PotentialTrace(np.array(values), capped=False)


def synthetic_multiplicative_process(
    s0,
    delta: float,
    rng: np.random.Generator = None,
    mode: str = "unit-decrement",
    smin: float = 1.0,
) -> PotentialTrace:
    """One trace of a process satisfying the multiplicative drift condition
    with the given delta (see module docstring for the two modes)."""
    if mode == "unit-decrement":
        if rng is None:
            raise ValueError("unit-decrement mode needs an rng")
        return unit_decrement_trace(s0, delta, rng)
    if mode == "proportional":
        return proportional_trace(s0, delta, smin)
    raise ValueError(f"unknown mode {mode!r}")
