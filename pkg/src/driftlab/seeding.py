"""Deterministic seed derivation and RNG construction.

All randomness in the package flows through numpy's PCG64 generator
(period 2^128).  Batches derive one child seed per task index with
``derive_seed``, a SplitMix64 step, so results are independent of
execution order and schedule.
"""

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    # SplitMix64 output function (Steele, Lea, Flood 2014).
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(master: int, index: int) -> int:
    """Child seed for task ``index`` under ``master`` (64-bit SplitMix64 stream)."""
    if index < 0:
        raise ValueError("index must be non-negative")
    return _mix((int(master) + (index + 1) * _GOLDEN) & _MASK64)


def make_rng(seed: int) -> np.random.Generator:
    """A fresh PCG64 generator seeded with ``seed``."""
    return np.random.default_rng(np.random.PCG64(int(seed) & _MASK64))
