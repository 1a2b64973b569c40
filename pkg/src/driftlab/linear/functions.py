"""Linear pseudo-Boolean fitness functions with monotone weights.

A linear function is f(x) = sum_i w_i x_i with strictly positive,
non-decreasing weights w_1 <= ... <= w_n.  That normalization loses no
generality for runtime analysis (bits can be relabeled and complemented),
and all positive-weight linear functions have the all-zeros string as
unique minimum with value 0.
"""

from dataclasses import dataclass

import numpy as np

from ..ea import FitnessOracle

BINVAL_MAX_N = 1000  # 2**(n-1) must stay a finite double


@dataclass(frozen=True)
class LinearFunction:
    weights: np.ndarray
    name: str = "linear"

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if w.ndim != 1 or len(w) == 0:
            raise ValueError("weights must be a non-empty 1-d sequence")
        if np.any(w <= 0):
            raise ValueError("weights must be strictly positive")
        if np.any(np.diff(w) < 0):
            raise ValueError("weights must be non-decreasing")
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return len(self.weights)

    def value(self, x) -> float:
        if len(x) != self.n:
            raise ValueError(f"point has length {len(x)}, function has n={self.n}")
        # Sequential ascending-index sum, matching the kernel's arithmetic.
        s = 0.0
        w = self.weights
        for i in range(self.n):
            if x[i]:
                s += w[i]
        return s

    def oracle(self) -> FitnessOracle:
        return FitnessOracle(
            evaluate=self.value,
            optimum_value=0.0,
            description=self.name,
            weights=self.weights,
        )


def eval_linear(f: LinearFunction, x) -> float:
    return f.value(x)


def one_max(n: int) -> LinearFunction:
    """Counts the one-bits: all weights 1."""
    return LinearFunction(np.ones(n), name="onemax")


def bin_val(n: int) -> LinearFunction:
    """Binary value of the bit string: weight 2^(i-1) for bit i (bit 1 lowest)."""
    if n > BINVAL_MAX_N:
        raise ValueError(f"binval supports n <= {BINVAL_MAX_N}")
    return LinearFunction(2.0 ** np.arange(n), name="binval")


def random_linear(n: int, rng: np.random.Generator) -> LinearFunction:
    """Weights drawn uniformly from (0, 1], sorted ascending."""
    if n < 1:
        raise ValueError("n must be at least 1")
    w = np.sort(1.0 - rng.random(n))
    return LinearFunction(w, name="random-linear")


def function_by_name(name: str, n: int, rng: np.random.Generator = None) -> LinearFunction:
    """Resolve a CLI function name; 'random' draws fresh weights from rng."""
    if name == "onemax":
        return one_max(n)
    if name == "binval":
        return bin_val(n)
    if name in ("random", "random-linear"):
        if rng is None:
            raise ValueError("random linear function needs an rng")
        return random_linear(n, rng)
    raise ValueError(f"unknown function {name!r} (use onemax, binval, or random)")


def save_weights(f: LinearFunction, path) -> None:
    """Serialize to text for replay: first line n, then one weight per line."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{f.n}\n")
        for w in f.weights:
            fh.write(f"{float(w)!r}\n")


def load_weights(path, name: str = "linear-file") -> LinearFunction:
    with open(path, "r", encoding="utf-8") as fh:
        tokens = fh.read().split()
    if not tokens:
        raise ValueError("empty weights file")
    n = int(tokens[0])
    values = [float(t) for t in tokens[1:]]
    if len(values) != n:
        raise ValueError(f"expected {n} weights, found {len(values)}")
    return LinearFunction(np.array(values), name=name)
