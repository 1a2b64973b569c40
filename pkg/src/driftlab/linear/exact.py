"""Exact drift and offspring-distribution computations by enumeration.

For n up to ~20, the full mutation distribution (all 2^n flip masks,
mask m with probability (1/n)^|m| (1-1/n)^(n-|m|)) is enumerable, which
gives exact conditional drifts and exact offspring level probabilities
to compare Monte-Carlo estimates and closed formulas against.

Final reductions over the 2^n terms use math.fsum (exactly rounded), so
results carry no summation error beyond one rounding of the result.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .functions import LinearFunction
from .potentials import Potential, ramp_potential

ENUM_MAX_N = 20
CHECK_MAX_N = 12
_CHUNK_BITS = 16


@lru_cache(maxsize=8)
def _mask_matrix(n: int, offset: int, count: int) -> np.ndarray:
    ids = np.arange(offset, offset + count, dtype=np.uint32)
    return ((ids[:, None] >> np.arange(n, dtype=np.uint32)) & 1).astype(np.float64)


def _mask_chunks(n: int):
    total = 1 << n
    chunk = min(total, 1 << _CHUNK_BITS)
    for off in range(0, total, chunk):
        yield _mask_matrix(n, off, min(chunk, total - off))


@lru_cache(maxsize=32)
def _popcount_probs(n: int) -> np.ndarray:
    # probability of a specific mask with c flipped bits
    p = 1.0 / n
    q = 1.0 - p
    return np.array([p**c * q ** (n - c) for c in range(n + 1)])


def exact_pointwise_drift(f: LinearFunction, g: Potential, x) -> float:
    """Exact expected one-step decrease of ``g`` at point ``x``.

    Sums, over every flip mask m, the acceptance-gated potential change
    P(m) * (g(x) - g(y_m)) * [f(y_m) <= f(x)].
    """
    n = f.n
    if n > ENUM_MAX_N:
        raise ValueError(f"enumeration supports n <= {ENUM_MAX_N}")
    if g.n != n or len(x) != n:
        raise ValueError("function, potential, and point lengths must match")
    x = np.asarray(x, dtype=np.float64)
    sign = 1.0 - 2.0 * x  # +1 where a flip raises the bit, -1 where it lowers
    f_dir = f.weights * sign  # f(y) - f(x) per flipped bit
    g_dir = g.weights * sign  # inner-sum change per flipped bit
    probs = _popcount_probs(n)
    if g.log_form:
        sx = float(np.dot(g.weights, x))
    partials = []
    for bits in _mask_chunks(n):
        fdelta = bits @ f_dir
        accepted = fdelta <= 0.0
        if g.log_form:
            gdelta = np.log1p(sx) - np.log1p(sx + bits @ g_dir)
        else:
            gdelta = -(bits @ g_dir)
        pm = probs[bits.sum(axis=1).astype(np.int64)]
        partials.append(math.fsum((pm * gdelta * accepted).tolist()))
    return math.fsum(partials)


@dataclass(frozen=True)
class DriftBoundReport:
    passed: bool
    n: int
    worst_ratio: float
    worst_point: tuple
    points_checked: int

    def __str__(self):
        status = "pass" if self.passed else "FAIL"
        return (
            f"pointwise drift bound over {self.points_checked} points: {status} "
            f"(min drift/(g/(4en)) = {self.worst_ratio:.6f} at {self.worst_point})"
        )


def pointwise_drift_exhaustive_check(
    f: LinearFunction, potential: Potential = None
) -> DriftBoundReport:
    """Check exact drift >= g(x) / (4 e n) at every non-optimal point.

    Default potential is the ramp (index-weighted ones count), for which
    the bound holds for every monotone-weight linear function.
    """
    n = f.n
    if n > CHECK_MAX_N:
        raise ValueError(f"exhaustive check supports n <= {CHECK_MAX_N}")
    g = potential if potential is not None else ramp_potential(n)
    denom = 4.0 * math.e * n
    worst_ratio = math.inf
    worst_point = None
    passed = True
    for code in range(1, 1 << n):
        x = np.array([(code >> i) & 1 for i in range(n)], dtype=np.uint8)
        drift = exact_pointwise_drift(f, g, x)
        gx = g.value(x)
        if drift < gx / denom:
            passed = False
        ratio = drift * denom / gx
        if ratio < worst_ratio:
            worst_ratio = ratio
            worst_point = tuple(int(b) for b in x)
    return DriftBoundReport(passed, n, worst_ratio, worst_point, (1 << n) - 1)


def offspring_ones_probability(n: int, k: int, j: int) -> float:
    """P[offspring of a k-ones parent has exactly j ones] under 1/n mutation.

    Closed form: sum over the number i of 0->1 flips, with k-j+i bits
    flipped 1->0:

        sum_i C(k, j-i) C(n-k, i) (p/(1-p))^(k-j+2i) (1-p)^n,  p = 1/n,

    with i restricted so both binomials have valid arguments.
    """
    if not 0 <= k <= n:
        raise ValueError("k out of range")
    if not 0 <= j <= n:
        raise ValueError("j out of range")
    if n == 1:
        # the single bit always flips
        return 1.0 if j == 1 - k else 0.0
    p = 1.0 / n
    q = 1.0 - p
    ratio = p / q
    base = q**n
    lo = max(0, j - k)
    hi = min(n - k, j)
    terms = [
        math.comb(k, j - i) * math.comb(n - k, i) * ratio ** (k - j + 2 * i) * base
        for i in range(lo, hi + 1)
    ]
    return math.fsum(terms)


def offspring_ones_table(n: int) -> np.ndarray:
    """Table t[k, j] = offspring_ones_probability(n, k, j)."""
    t = np.empty((n + 1, n + 1))
    for k in range(n + 1):
        for j in range(n + 1):
            t[k, j] = offspring_ones_probability(n, k, j)
    return t


def offspring_ones_distribution_enum(n: int, k: int) -> np.ndarray:
    """Offspring ones distribution by full enumeration of all 2^n masks.

    Independent oracle for ``offspring_ones_probability`` (the parent's
    identity beyond its ones count is irrelevant by symmetry).
    """
    if n > ENUM_MAX_N:
        raise ValueError(f"enumeration supports n <= {ENUM_MAX_N}")
    if not 0 <= k <= n:
        raise ValueError("k out of range")
    probs = _popcount_probs(n)
    out = np.zeros(n + 1)
    for bits in _mask_chunks(n):
        flips_down = bits[:, :k].sum(axis=1) if k else np.zeros(len(bits))
        flips_up = bits[:, k:].sum(axis=1) if k < n else np.zeros(len(bits))
        j = (k - flips_down + flips_up).astype(np.int64)
        pm = probs[bits.sum(axis=1).astype(np.int64)]
        out += np.bincount(j, weights=pm, minlength=n + 1)
    return out


@dataclass(frozen=True)
class OnesProbabilityReport:
    passed: bool
    n: int
    monotone_ok: bool
    enum_checked: bool
    enum_max_abs_diff: float
    row_sum_max_err: float

    def __str__(self):
        status = "pass" if self.passed else "FAIL"
        enum = (
            f"enum max |diff| = {self.enum_max_abs_diff:.3e}"
            if self.enum_checked
            else "enum skipped"
        )
        return (
            f"offspring ones probabilities at n={self.n}: {status} "
            f"(monotone={self.monotone_ok}, {enum}, "
            f"row-sum err = {self.row_sum_max_err:.3e})"
        )


def ones_probability_monotonicity_check(
    n: int, enum_tol: float = 1e-12, row_tol: float = 1e-12
) -> OnesProbabilityReport:
    """Check that a parent with fewer ones is at least as likely to produce
    any given lower level: for 1 <= k <= k' and j <= k-1,
    P(n, k, j) >= P(n, k', j).  Cross-validates the closed form against
    mask enumeration when n <= 12, and the row-sum normalization always.
    """
    if n > 14:
        raise ValueError("monotonicity check supports n <= 14")
    table = offspring_ones_table(n)
    monotone_ok = True
    for k in range(1, n + 1):
        for kp in range(k, n + 1):
            for j in range(0, k):
                if table[k, j] < table[kp, j]:
                    monotone_ok = False
    row_err = float(np.max(np.abs(table.sum(axis=1) - 1.0)))
    enum_checked = n <= CHECK_MAX_N
    enum_diff = 0.0
    if enum_checked:
        for k in range(n + 1):
            enum_row = offspring_ones_distribution_enum(n, k)
            enum_diff = max(enum_diff, float(np.max(np.abs(enum_row - table[k]))))
    passed = (
        monotone_ok
        and row_err <= row_tol
        and (not enum_checked or enum_diff <= enum_tol)
    )
    return OnesProbabilityReport(passed, n, monotone_ok, enum_checked, enum_diff, row_err)
