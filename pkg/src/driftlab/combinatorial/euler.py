"""Cycle-cover merging surrogate for the Euler tour setting.

The full tour-finding EA (its matching-based representation and edge
mutation) is out of scope here; what its analysis needs is only that a
state of fitness f (number of cycles in the cover) improves by one with
probability at least f/(e m).  The surrogate below realizes exactly
that floor: integer potential s = f - 1, starting at floor(m/3) - 1
(every cycle has at least three edges), decreasing by one with
probability (s+1)/(e m).  Its absorption time therefore must respect
the e m ln m bound, which the tests verify statistically.
"""

import math

import numpy as np

from ..drift.estimation import PotentialTrace


def euler_bound(m: int) -> float:
    """Expected-time upper bound e m ln m for a graph with m >= 3 edges."""
    if m < 3:
        raise ValueError("an Euler tour needs at least 3 edges")
    return math.e * m * math.log(m)


def euler_bound_tight(m: int) -> float:
    """The sharper internal form e m (1 + ln(max(1, m/3 - 1))) obtained
    from drift factor 1/(e m) and start potential at most m/3 - 1."""
    if m < 3:
        raise ValueError("an Euler tour needs at least 3 edges")
    return math.e * m * (1.0 + math.log(max(1.0, m / 3.0 - 1.0)))


def _start_state(m: int) -> int:
    if m < 3:
        raise ValueError("an Euler tour needs at least 3 edges")
    return m // 3 - 1


def euler_surrogate_trace(m: int, rng: np.random.Generator) -> PotentialTrace:
    """One trajectory of the surrogate process, ending at 0."""
    s0 = _start_state(m)
    if s0 == 0:
        return PotentialTrace(np.array([0.0]), capped=False)
    levels = np.arange(s0, 0, -1, dtype=np.float64)
    probs = (levels + 1.0) / (math.e * m)
    dwell = rng.geometric(probs)
    values = np.concatenate([np.repeat(levels, dwell), [0.0]])
    return PotentialTrace(values, capped=False)


def euler_surrogate_times(m: int, n_runs: int, rng: np.random.Generator) -> np.ndarray:
    """Absorption times of ``n_runs`` independent surrogate processes."""
    if n_runs < 1:
        raise ValueError("n_runs must be at least 1")
    s0 = _start_state(m)
    times = np.zeros(n_runs, dtype=np.int64)
    for s in range(s0, 0, -1):
        times += rng.geometric((s + 1.0) / (math.e * m), size=n_runs)
    return times


def exact_euler_surrogate_mean(m: int) -> float:
    """Exact expected absorption time: e m (H(s0 + 1) - 1)."""
    s0 = _start_state(m)
    return math.e * m * math.fsum(1.0 / (s + 1.0) for s in range(1, s0 + 1))
