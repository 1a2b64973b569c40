"""Pure-Python kernel twin.

Implements exactly the same operations as the compiled extension
``_ea_cy`` with draw-for-draw identical consumption of the underlying
PCG64 stream, so a run is bit-for-bit reproducible on either backend.

Random consumption per EA iteration:
  1 uniform double  -> flip count k (inversion of the Binomial(n, 1/n) CDF)
  k uniform doubles -> flip positions (partial Fisher-Yates on an index array)
"""

import numpy as np


def _potential_sum(bits, pot_w, n):
    # Sequential ascending-index sum; must match the C loop exactly.
    s = 0.0
    for i in range(n):
        if bits[i]:
            s += pot_w[i]
    return s


class FlipSampler:
    """Reusable sampler for standard bit mutation on ``n`` bits.

    ``draw(rng)`` returns the flip count k; the flipped positions are in
    ``self.out[:k]``.  The joint distribution equals flipping each bit
    independently with probability 1/n: the count is Binomial(n, 1/n) and,
    given the count, the positions are a uniform k-subset.
    """

    def __init__(self, n, flip_cdf):
        self.n = n
        self.cdf = [float(v) for v in flip_cdf]
        self.idx = list(range(n))
        self.js = [0] * n
        self.out = [0] * n

    def draw(self, rng):
        n = self.n
        cdf = self.cdf
        u = rng.random()
        k = 0
        while u >= cdf[k]:
            k += 1
        if k == 0:
            return 0
        idx = self.idx
        js = self.js
        out = self.out
        for i in range(k):
            r = rng.random()
            j = i + int(r * (n - i))
            if j >= n:  # guards the r -> 1.0 rounding corner
                j = n - 1
            js[i] = j
            idx[i], idx[j] = idx[j], idx[i]
            out[i] = idx[i]
        for i in range(k - 1, -1, -1):
            j = js[i]
            idx[i], idx[j] = idx[j], idx[i]
        return k


def run_linear(
    weights,
    x,
    flip_cdf,
    max_iters,
    stop_at_zero,
    rng,
    pot_weights=None,
    record_stride=0,
    collect_level_stats=False,
):
    """(1+1) EA minimizing the linear function with the given weights.

    ``x`` (uint8 array) is the start point and is updated in place to the
    final point.  Returns ``(t, capped, trace, level_stats)`` where ``trace``
    is the recorded raw potential sums (or None) and ``level_stats`` is
    ``(counts, dec_sum, dec_sqsum)`` indexed by the pre-step number of
    one-bits (or None).
    """
    n = len(weights)
    w = [float(v) for v in weights]
    cdf = [float(v) for v in flip_cdf]
    bits = [int(v) for v in x]
    ones = sum(bits)
    rand = rng.random

    record = record_stride > 0
    pw = [float(v) for v in pot_weights] if record else None
    trace = [_potential_sum(bits, pw, n)] if record else None

    if collect_level_stats:
        counts = [0] * (n + 1)
        dsum = [0] * (n + 1)
        dsq = [0] * (n + 1)

    idx = list(range(n))
    js = [0] * n

    t = 0
    capped = False
    if not (stop_at_zero and ones == 0):
        for t in range(1, max_iters + 1):
            ones_pre = ones
            u = rand()
            k = 0
            while u >= cdf[k]:
                k += 1
            if k:
                for i in range(k):
                    r = rand()
                    j = i + int(r * (n - i))
                    if j >= n:
                        j = n - 1
                    js[i] = j
                    idx[i], idx[j] = idx[j], idx[i]
                df = 0.0
                dones = 0
                for i in range(k):
                    p = idx[i]
                    if bits[p]:
                        df -= w[p]
                        dones -= 1
                    else:
                        df += w[p]
                        dones += 1
                if df <= 0.0:
                    for i in range(k):
                        bits[idx[i]] ^= 1
                    ones += dones
                for i in range(k - 1, -1, -1):
                    j = js[i]
                    idx[i], idx[j] = idx[j], idx[i]
            if collect_level_stats:
                d = ones_pre - ones
                counts[ones_pre] += 1
                dsum[ones_pre] += d
                dsq[ones_pre] += d * d
            if record and t % record_stride == 0:
                trace.append(_potential_sum(bits, pw, n))
            if stop_at_zero and ones == 0:
                break
        else:
            capped = stop_at_zero
            t = max_iters

    if record and t % record_stride != 0:
        trace.append(_potential_sum(bits, pw, n))

    x[:] = bits
    trace_arr = np.asarray(trace, dtype=np.float64) if record else None
    if collect_level_stats:
        stats = (
            np.asarray(counts, dtype=np.int64),
            np.asarray(dsum, dtype=np.int64),
            np.asarray(dsq, dtype=np.int64),
        )
    else:
        stats = None
    return t, capped, trace_arr, stats


def mutation_stats(n, n_samples, flip_cdf, rng):
    """Sample the mutation operator ``n_samples`` times.

    Returns ``(flip_count_hist, position_counts)``: how often each flip
    count occurred and how often each position was flipped.
    """
    cdf = [float(v) for v in flip_cdf]
    hist = [0] * (n + 1)
    pos = [0] * n
    rand = rng.random
    idx = list(range(n))
    js = [0] * n
    for _ in range(n_samples):
        u = rand()
        k = 0
        while u >= cdf[k]:
            k += 1
        hist[k] += 1
        if k:
            for i in range(k):
                r = rand()
                j = i + int(r * (n - i))
                if j >= n:
                    j = n - 1
                js[i] = j
                idx[i], idx[j] = idx[j], idx[i]
                pos[idx[i]] += 1
            for i in range(k - 1, -1, -1):
                j = js[i]
                idx[i], idx[j] = idx[j], idx[i]
    return np.asarray(hist, dtype=np.int64), np.asarray(pos, dtype=np.int64)
