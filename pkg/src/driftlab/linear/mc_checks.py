"""Monte-Carlo checks of drift and bit-probability statements for linear
functions, driven by the run kernel."""

import math
from dataclasses import dataclass

import numpy as np

from .._kernels import kernel
from ..drift.estimation import Z95
from ..ea import default_iteration_cap, flip_count_cdf, random_bitstring
from ..seeding import derive_seed, make_rng
from .functions import LinearFunction


@dataclass(frozen=True)
class LevelDriftEntry:
    level: int
    mean_decrease: float
    ci_halfwidth: float
    sample_count: int
    bound: float
    violated: bool


@dataclass(frozen=True)
class LevelDriftReport:
    passed: bool
    n: int
    reps: int
    entries: tuple
    untested_levels: tuple

    def __str__(self):
        status = "pass" if self.passed else "FAIL"
        return (
            f"ones-level drift vs (e-2)k/(en), n={self.n}, {self.reps} runs: {status} "
            f"({len(self.entries)} levels tested, {len(self.untested_levels)} untested)"
        )


def level_drift_mc_check(
    f: LinearFunction,
    reps: int,
    seed: int,
    min_samples: int = 500,
    max_iters: int = None,
) -> LevelDriftReport:
    """Estimate the one-step decrease of the ones count conditioned on the
    current ones level k, pooled over runs and iterations, and test each
    sufficiently sampled level against the floor (e-2) k / (e n).

    A level fails only when mean + 2*CI falls strictly below the floor.
    """
    n = f.n
    if reps < 1:
        raise ValueError("reps must be at least 1")
    cap = max_iters if max_iters is not None else default_iteration_cap(n)
    cdf = flip_count_cdf(n)
    w = np.asarray(f.weights, dtype=np.float64)
    counts = np.zeros(n + 1, dtype=np.int64)
    dsum = np.zeros(n + 1, dtype=np.int64)
    dsq = np.zeros(n + 1, dtype=np.int64)
    for rep in range(reps):
        rng = make_rng(derive_seed(seed, rep))
        x = random_bitstring(n, rng)
        _, _, _, stats = kernel.run_linear(w, x, cdf, cap, True, rng, None, 0, True)
        counts += stats[0]
        dsum += stats[1]
        dsq += stats[2]

    entries = []
    untested = []
    factor = (math.e - 2.0) / (math.e * n)
    for k in range(1, n + 1):
        c = int(counts[k])
        if c == 0:
            continue
        if c < min_samples:
            untested.append(k)
            continue
        mean = dsum[k] / c
        var = max((dsq[k] - c * mean * mean) / (c - 1), 0.0) if c > 1 else 0.0
        hw = Z95 * math.sqrt(var / c)
        bound = factor * k
        entries.append(
            LevelDriftEntry(k, mean, hw, c, bound, mean + 2.0 * hw < bound)
        )
    passed = all(not e.violated for e in entries)
    return LevelDriftReport(passed, n, reps, tuple(entries), tuple(untested))


@dataclass(frozen=True)
class BitOrderingReport:
    passed: bool
    n: int
    t: int
    reps: int
    p_zero: np.ndarray
    ci_halfwidth: np.ndarray
    violations: tuple

    def __str__(self):
        status = "pass" if self.passed else "FAIL"
        return (
            f"bit-zero ordering at t={self.t}, n={self.n}, {self.reps} runs: {status} "
            f"({len(self.violations)} adjacent violations)"
        )


def bit_zero_ordering_check(
    f: LinearFunction, t: int, reps: int, seed: int
) -> BitOrderingReport:
    """Estimate p_i = P[bit i is 0 after t iterations] and check the
    probabilities are non-decreasing in the bit index (higher-weight bits
    are at least as likely to be settled), within 2 combined CI
    half-widths per adjacent pair.

    Requires strictly increasing weights so the ordering claim is
    non-degenerate.
    """
    n = f.n
    if np.any(np.diff(f.weights) <= 0):
        raise ValueError("ordering check needs strictly increasing weights")
    if t < 0:
        raise ValueError("t must be non-negative")
    if reps < 1:
        raise ValueError("reps must be at least 1")
    cdf = flip_count_cdf(n)
    w = np.asarray(f.weights, dtype=np.float64)
    zeros = np.zeros(n, dtype=np.int64)
    for rep in range(reps):
        rng = make_rng(derive_seed(seed, rep))
        x = random_bitstring(n, rng)
        if t > 0:
            kernel.run_linear(w, x, cdf, t, False, rng, None, 0, False)
        zeros += x == 0
    p = zeros / reps
    hw = Z95 * np.sqrt(p * (1.0 - p) / reps)
    violations = []
    for i in range(n - 1):
        combined = math.sqrt(hw[i] ** 2 + hw[i + 1] ** 2)
        if p[i] - p[i + 1] > 2.0 * combined:
            violations.append(i)
    return BitOrderingReport(not violations, n, t, reps, p, hw, tuple(violations))
