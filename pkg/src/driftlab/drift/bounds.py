"""Expected-hitting-time bound calculators for drift conditions.

For a non-negative process with one-step decrease at least ``delta``
(additive case) or at least ``delta * s`` at value ``s`` (multiplicative
case), these give the standard upper bounds on the expected time to
reach zero.
"""

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class BoundSpec:
    """Parameters of a multiplicative-drift bound.

    delta: drift factor, > 0
    s0:    starting value of the process
    smin:  smallest positive value the process can take
    """

    delta: float
    s0: float
    smin: float

    def __post_init__(self):
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.smin <= 0:
            raise ValueError("smin must be positive")
        if self.s0 < self.smin:
            raise ValueError("s0 must be at least smin")


def multiplicative_bound(spec: BoundSpec) -> float:
    """Upper bound (1 + ln(s0/smin)) / delta on the expected hitting time of 0."""
    return (1.0 + math.log(spec.s0 / spec.smin)) / spec.delta


def additive_bound(delta: float, x0: float) -> float:
    """Upper bound x0 / delta on the expected hitting time of 0."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    if x0 <= 0:
        raise ValueError("x0 must be positive")
    return x0 / delta
