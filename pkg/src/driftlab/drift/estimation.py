"""Empirical conditional-drift estimation from potential traces."""

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

Z95 = 1.959963984540054  # two-sided 95% normal quantile


@dataclass
class PotentialTrace:
    """A realized potential trajectory.

    ``values`` is the sequence of potential values per iteration; an
    uncapped trace ends at its first (and only) zero.  ``capped`` marks
    trajectories truncated by an iteration budget before reaching zero.
    """

    values: np.ndarray
    capped: bool = False

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 1 or len(v) == 0:
            raise ValueError("trace must be a non-empty 1-d sequence")
        if np.any(v < 0):
            raise ValueError("trace values must be non-negative")
        if not self.capped:
            if v[-1] != 0.0:
                raise ValueError("uncapped trace must end at 0")
            if np.any(v[:-1] == 0.0):
                raise ValueError("uncapped trace may only hit 0 at the end")
        self.values = v


@dataclass(frozen=True)
class DriftEstimate:
    """Sample mean of the one-step decrease at one conditioning level."""

    level: float
    mean_decrease: float
    sample_count: int
    ci_halfwidth: float


def _mean_ci(samples: np.ndarray):
    n = len(samples)
    mean = float(samples.mean())
    if n < 2:
        return mean, 0.0
    sd = float(samples.std(ddof=1))
    return mean, Z95 * sd / math.sqrt(n)


def estimate_conditional_drift(
    traces: Iterable[PotentialTrace],
    bucket_width: Optional[float] = None,
    exact_levels: Optional[bool] = None,
) -> list[DriftEstimate]:
    """Per-level sample means of the one-step potential decrease.

    Transitions are pairs of consecutive trace values; those starting at
    value 0 (after absorption) are excluded.  Levels are grouped exactly
    when all observed values are integral (or ``exact_levels=True``),
    otherwise into buckets of width ``bucket_width`` (default: observed
    range / 50).  Confidence intervals use the normal approximation with
    the sample variance.
    """
    pre_parts = []
    dec_parts = []
    for trace in traces:
        v = trace.values
        if len(v) < 2:
            continue
        pre = v[:-1]
        keep = pre > 0
        pre_parts.append(pre[keep])
        dec_parts.append((pre - v[1:])[keep])
    if not pre_parts:
        raise ValueError("no transitions in input traces")
    pre = np.concatenate(pre_parts)
    dec = np.concatenate(dec_parts)
    if len(pre) == 0:
        raise ValueError("no transitions from positive levels")

    if bucket_width is not None and bucket_width <= 0:
        raise ValueError("bucket_width must be positive")
    if exact_levels is None and bucket_width is None:
        exact_levels = bool(np.all(pre == np.round(pre)))

    estimates = []
    if exact_levels:
        for level in np.unique(pre):
            sel = dec[pre == level]
            mean, hw = _mean_ci(sel)
            estimates.append(DriftEstimate(float(level), mean, len(sel), hw))
    else:
        lo, hi = float(pre.min()), float(pre.max())
        width = bucket_width if bucket_width is not None else (hi - lo) / 50 or 1.0
        nb = max(1, int(math.ceil((hi - lo) / width)) if hi > lo else 1)
        which = np.minimum(((pre - lo) / width).astype(np.int64), nb - 1)
        for b in np.unique(which):
            sel = dec[which == b]
            center = lo + (b + 0.5) * width
            mean, hw = _mean_ci(sel)
            estimates.append(DriftEstimate(float(center), mean, len(sel), hw))
    return estimates


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of testing ``mean decrease >= delta * level`` across levels."""

    passed: bool
    delta: float
    worst_level: float
    worst_ratio: float
    violations: tuple = ()

    def __str__(self):
        status = "pass" if self.passed else "FAIL"
        return (
            f"multiplicative condition at delta={self.delta:g}: {status} "
            f"(worst level {self.worst_level:g}, decrease/level {self.worst_ratio:.6g})"
        )


def check_multiplicative_condition(
    estimates: Sequence[DriftEstimate], delta: float
) -> ConditionReport:
    """Check the estimates against a multiplicative drift factor.

    An estimate fails only if it is strictly incompatible, i.e.
    ``mean + 2 * ci_halfwidth < delta * level``.
    """
    if not estimates:
        raise ValueError("no estimates to check")
    if delta <= 0:
        raise ValueError("delta must be positive")
    violations = tuple(
        e for e in estimates if e.mean_decrease + 2.0 * e.ci_halfwidth < delta * e.level
    )
    worst = min(estimates, key=lambda e: e.mean_decrease / e.level)
    return ConditionReport(
        passed=not violations,
        delta=delta,
        worst_level=worst.level,
        worst_ratio=worst.mean_decrease / worst.level,
        violations=violations,
    )
