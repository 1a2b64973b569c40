"""Potential functions used to measure optimization progress.

Every kind maps the all-zeros string (the optimum of any positive-weight
linear function) to 0 and every other point to a positive value.  All
kinds reduce to an inner linear form, optionally wrapped in ln(1 + .),
which is what the run kernels record.

kinds:
  ones       number of one-bits
  ramp       one-bits weighted 1 + i/n (higher index, higher weight)
  split      one-bits weighted 1 in the low half of indices, 2 in the high half
  log-split  ln(1 + split form with high-half weight c), 1 < c <= 2
  fitness    the fitness function itself as its own potential
"""

from dataclasses import dataclass

import numpy as np

from .functions import LinearFunction


@dataclass(frozen=True)
class Potential:
    kind: str
    weights: np.ndarray
    log_form: bool = False

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if np.any(w <= 0):
            raise ValueError("potential weights must be positive")
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return len(self.weights)

    def value(self, x) -> float:
        if len(x) != self.n:
            raise ValueError(f"point has length {len(x)}, potential has n={self.n}")
        s = 0.0
        w = self.weights
        for i in range(self.n):
            if x[i]:
                s += w[i]
        return float(np.log1p(s)) if self.log_form else s


def eval_potential(g: Potential, x) -> float:
    return g.value(x)


def ones_potential(n: int) -> Potential:
    return Potential("ones", np.ones(n))


def ramp_potential(n: int) -> Potential:
    """Weights 1 + i/n for i = 1..n; values lie in [0, 2n]."""
    return Potential("ramp", 1.0 + np.arange(1, n + 1) / n)


def _split_weights(n: int, high: float) -> np.ndarray:
    w = np.ones(n)
    w[n // 2 :] = high
    return w


def split_potential(n: int) -> Potential:
    """Weight 1 for indices up to floor(n/2), weight 2 above."""
    return Potential("split", _split_weights(n, 2.0))


def log_split_potential(n: int, c: float = 2.0) -> Potential:
    """ln(1 + split form) with configurable high-half weight c in (1, 2]."""
    if not 1.0 < c <= 2.0:
        raise ValueError("c must be in (1, 2]")
    return Potential("log-split", _split_weights(n, c), log_form=True)


def fitness_potential(f: LinearFunction) -> Potential:
    return Potential("fitness", f.weights)


def potential_by_name(name: str, n: int, f: LinearFunction = None) -> Potential:
    if name == "ones":
        return ones_potential(n)
    if name == "ramp":
        return ramp_potential(n)
    if name == "split":
        return split_potential(n)
    if name == "log-split":
        return log_split_potential(n)
    if name == "fitness":
        if f is None:
            raise ValueError("fitness potential needs the fitness function")
        return fitness_potential(f)
    raise ValueError(
        f"unknown potential {name!r} (use ones, ramp, split, log-split, or fitness)"
    )
