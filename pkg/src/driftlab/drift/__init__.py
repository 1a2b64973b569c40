from .bounds import BoundSpec, additive_bound, multiplicative_bound
from .chains import (
    AbsorbingChain,
    HittingTimeEstimate,
    ideal_potential,
    load_chain,
    mc_hitting_time,
    parse_chain,
    random_absorbing_chain,
    simulate_chain_trace,
    verify_unit_drift,
)
from .estimation import (
    ConditionReport,
    DriftEstimate,
    PotentialTrace,
    check_multiplicative_condition,
    estimate_conditional_drift,
)
from .synthetic import (
    exact_unit_decrement_mean,
    proportional_trace,
    synthetic_multiplicative_process,
    unit_decrement_times,
    unit_decrement_trace,
)

__all__ = [
    "AbsorbingChain",
    "BoundSpec",
    "ConditionReport",
    "DriftEstimate",
    "HittingTimeEstimate",
    "PotentialTrace",
    "additive_bound",
    "check_multiplicative_condition",
    "estimate_conditional_drift",
    "exact_unit_decrement_mean",
    "ideal_potential",
    "load_chain",
    "mc_hitting_time",
    "multiplicative_bound",
    "parse_chain",
    "proportional_trace",
    "random_absorbing_chain",
    "simulate_chain_trace",
    "synthetic_multiplicative_process",
    "unit_decrement_times",
    "unit_decrement_trace",
    "verify_unit_drift",
]
