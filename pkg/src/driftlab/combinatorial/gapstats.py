"""Pooling of per-level transition statistics for drift checks.

Runs accumulate, keyed by the integer gap level before a step, the
count and the first two moments of some per-transition quantity (the
gap decrease, or the gap ratio).  Sparse levels are merged into range
buckets so every reported estimate has enough samples for its CI.
"""

import math
from dataclasses import dataclass

from ..drift.estimation import Z95


def accumulate(stats: dict, level: int, value: float) -> None:
    rec = stats.get(level)
    if rec is None:
        stats[level] = [1, value, value * value]
    else:
        rec[0] += 1
        rec[1] += value
        rec[2] += value * value


@dataclass(frozen=True)
class PooledLevel:
    level: float  # sample-weighted mean conditioning level of the bucket
    count: int
    mean: float
    ci_halfwidth: float


def _moments(count, s1, s2):
    mean = s1 / count
    if count < 2:
        return mean, 0.0
    var = max((s2 - count * mean * mean) / (count - 1), 0.0)
    return mean, Z95 * math.sqrt(var / count)


def pooled_levels(stats: dict, min_samples: int = 30, max_buckets: int = 20):
    """Per-level estimates, merging sparse levels into range buckets."""
    if not stats:
        return []
    levels = sorted(stats)
    if all(stats[lv][0] >= min_samples for lv in levels):
        return [
            PooledLevel(float(lv), stats[lv][0], *_moments(*stats[lv]))
            for lv in levels
        ]
    lo, hi = levels[0], levels[-1]
    width = max((hi - lo) / max_buckets, 1e-12)
    merged = {}
    for lv in levels:
        b = min(int((lv - lo) / width), max_buckets - 1)
        cnt, s1, s2 = stats[lv]
        rec = merged.setdefault(b, [0, 0.0, 0.0, 0.0])
        rec[0] += cnt
        rec[1] += s1
        rec[2] += s2
        rec[3] += lv * cnt
    out = []
    for b in sorted(merged):
        cnt, s1, s2, lvsum = merged[b]
        mean, hw = _moments(cnt, s1, s2)
        out.append(PooledLevel(lvsum / cnt, cnt, mean, hw))
    return out
