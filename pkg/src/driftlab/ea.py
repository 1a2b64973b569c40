"""The (1+1) evolutionary algorithm engine.

Search points are uint8 numpy arrays of 0/1 genes.  One iteration flips
each bit independently with probability 1/n (sampled as a binomial flip
count plus a uniform subset of positions, which has the same joint
distribution) and keeps the offspring if its fitness does not worsen.
The run stops at the first iteration whose point attains the oracle's
known optimum value.

Runs on linear fitness functions dispatch to the kernel backend
(compiled when available); arbitrary oracles use a generic loop.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Union

import numpy as np

from ._kernels import FlipSampler, kernel
from .drift.estimation import Z95, PotentialTrace
from .seeding import derive_seed, make_rng


@lru_cache(maxsize=None)
def flip_count_cdf(n: int) -> np.ndarray:
    """CDF of Binomial(n, 1/n), the distribution of the flip count.

    Computed by the pmf ratio recurrence to stay in floating range for
    any n; the last entry is pinned to 1.0 so CDF inversion always lands
    in [0, n].
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n == 1:
        cdf = np.array([0.0, 1.0])
        cdf.flags.writeable = False
        return cdf
    p = 1.0 / n
    q = 1.0 - p
    pmf = np.empty(n + 1)
    pmf[0] = q**n
    for k in range(n):
        pmf[k + 1] = pmf[k] * ((n - k) / (k + 1)) * (p / q)
    # cumsum can overshoot 1 by a few ulp; clip to keep the CDF monotone
    cdf = np.minimum(np.cumsum(pmf), 1.0)
    cdf[-1] = 1.0
    cdf.flags.writeable = False
    return cdf


def random_bitstring(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform random point of n bits."""
    return (rng.random(n) < 0.5).astype(np.uint8)


def mutate(x: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Standard bit mutation: flip each bit independently with probability 1/n."""
    n = len(x)
    sampler = FlipSampler(n, flip_count_cdf(n))
    k = sampler.draw(rng)
    y = np.array(x, dtype=np.uint8, copy=True)
    for i in range(k):
        y[sampler.out[i]] ^= 1
    return y


@dataclass(frozen=True)
class FitnessOracle:
    """A black-box fitness with a known optimum value used only for stopping.

    ``weights`` is set for linear functions and enables the kernel fast
    path; the generic path only calls ``evaluate``.
    """

    evaluate: Callable[[np.ndarray], float]
    optimum_value: float
    description: str = ""
    weights: Optional[np.ndarray] = None


@dataclass
class RunConfig:
    n: int
    seed: int = 0
    max_iters: Optional[int] = None
    record_potential: Optional[object] = None  # a linear.potentials.Potential
    record_stride: int = 1
    init: Union[str, np.ndarray] = "uniform"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.max_iters is None:
            self.max_iters = default_iteration_cap(self.n)
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if self.record_stride < 1:
            raise ValueError("record_stride must be at least 1")
        if isinstance(self.init, str):
            if self.init != "uniform":
                raise ValueError("init must be 'uniform' or an explicit bit array")
        else:
            self.init = np.asarray(self.init, dtype=np.uint8)
            if self.init.shape != (self.n,):
                raise ValueError("explicit init must have length n")


def default_iteration_cap(n: int) -> int:
    """Default budget 100*e*n*ln(n+2), far above expected times here."""
    return int(math.ceil(100.0 * math.e * n * math.log(n + 2)))


@dataclass(frozen=True)
class RunRecord:
    T: int
    evaluations: int
    final_point: np.ndarray
    capped: bool
    trace: Optional[PotentialTrace] = None


def step(
    x: np.ndarray,
    f: FitnessOracle,
    rng: np.random.Generator,
    fx: Optional[float] = None,
):
    """One mutation/selection step; returns (new point, its fitness).

    Evaluates the offspring exactly once; pass ``fx`` to avoid
    re-evaluating the parent.
    """
    if fx is None:
        fx = f.evaluate(x)
    y = mutate(x, rng)
    fy = f.evaluate(y)
    if fy <= fx:
        return y, fy
    return x, fx


def _initial_point(config: RunConfig, rng: np.random.Generator) -> np.ndarray:
    if isinstance(config.init, str):
        return random_bitstring(config.n, rng)
    return config.init.copy()


def run(f: FitnessOracle, config: RunConfig) -> RunRecord:
    """One full run; T is the first iteration with optimal fitness (0 if
    the initial point is already optimal)."""
    rng = make_rng(config.seed)
    x = _initial_point(config, rng)
    pot = config.record_potential
    if f.weights is not None:
        stride = config.record_stride if pot is not None else 0
        pw = pot.weights if pot is not None else None
        t, capped, raw, _ = kernel.run_linear(
            np.asarray(f.weights, dtype=np.float64),
            x,
            flip_count_cdf(config.n),
            config.max_iters,
            True,
            rng,
            pw,
            stride,
            False,
        )
        trace = None
        if raw is not None:
            values = np.log1p(raw) if pot.log_form else raw
            trace = PotentialTrace(values, capped=capped)
        return RunRecord(t, t + 1, x, capped, trace)
    return _run_generic(f, config, rng, x)


def _run_generic(f, config, rng, x):
    fx = f.evaluate(x)
    pot = config.record_potential
    stride = config.record_stride
    values = [pot.value(x)] if pot is not None else None
    t = 0
    capped = False
    if fx > f.optimum_value:
        sampler = FlipSampler(config.n, flip_count_cdf(config.n))
        for t in range(1, config.max_iters + 1):
            k = sampler.draw(rng)
            if k:
                y = x.copy()
                for i in range(k):
                    y[sampler.out[i]] ^= 1
                fy = f.evaluate(y)
                if fy <= fx:
                    x, fx = y, fy
            if pot is not None and t % stride == 0:
                values.append(pot.value(x))
            if fx <= f.optimum_value:
                break
        else:
            capped = True
            t = config.max_iters
    if pot is not None and t % stride != 0:
        values.append(pot.value(x))
    trace = PotentialTrace(np.array(values), capped=capped) if pot is not None else None
    return RunRecord(t, t + 1, x, capped, trace)


@dataclass(frozen=True)
class BatchSummary:
    mean_T: float
    sd_T: float
    ci95_halfwidth: float
    capped_count: int
    reps: int
    valid: bool
    records: tuple = field(default=())

    @property
    def se(self) -> float:
        n = self.reps - self.capped_count
        return self.sd_T / math.sqrt(n) if n > 0 else float("nan")


def run_batch(
    f: FitnessOracle, config: RunConfig, reps: int, keep_records: bool = True
) -> BatchSummary:
    """``reps`` independent runs with per-rep seeds derived from
    (config.seed, rep index); statistics cover uncapped runs only."""
    if reps < 1:
        raise ValueError("reps must be at least 1")
    records = []
    times = []
    capped = 0
    for rep in range(reps):
        rep_config = RunConfig(
            n=config.n,
            seed=derive_seed(config.seed, rep),
            max_iters=config.max_iters,
            record_potential=config.record_potential,
            record_stride=config.record_stride,
            init=config.init,
        )
        rec = run(f, rep_config)
        if keep_records:
            records.append(rec)
        if rec.capped:
            capped += 1
        else:
            times.append(rec.T)
    if not times:
        return BatchSummary(
            float("nan"), float("nan"), float("nan"), capped, reps, False, tuple(records)
        )
    arr = np.asarray(times, dtype=np.float64)
    mean = float(arr.mean())
    sd = float(arr.std(ddof=1)) if len(arr) > 1 else 0.0
    hw = Z95 * sd / math.sqrt(len(arr)) if len(arr) > 1 else 0.0
    return BatchSummary(mean, sd, hw, capped, reps, True, tuple(records))
