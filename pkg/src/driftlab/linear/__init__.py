from .bounds import bound_catalog, catalog_entries, is_asymptotic
from .exact import (
    DriftBoundReport,
    OnesProbabilityReport,
    exact_pointwise_drift,
    offspring_ones_distribution_enum,
    offspring_ones_probability,
    offspring_ones_table,
    ones_probability_monotonicity_check,
    pointwise_drift_exhaustive_check,
)
from .functions import (
    LinearFunction,
    bin_val,
    eval_linear,
    function_by_name,
    load_weights,
    one_max,
    random_linear,
    save_weights,
)
from .mc_checks import (
    BitOrderingReport,
    LevelDriftReport,
    bit_zero_ordering_check,
    level_drift_mc_check,
)
from .potentials import (
    Potential,
    eval_potential,
    fitness_potential,
    log_split_potential,
    ones_potential,
    potential_by_name,
    ramp_potential,
    split_potential,
)

__all__ = [
    "BitOrderingReport",
    "DriftBoundReport",
    "LevelDriftReport",
    "LinearFunction",
    "OnesProbabilityReport",
    "Potential",
    "bin_val",
    "bit_zero_ordering_check",
    "bound_catalog",
    "catalog_entries",
    "eval_linear",
    "eval_potential",
    "exact_pointwise_drift",
    "fitness_potential",
    "function_by_name",
    "is_asymptotic",
    "level_drift_mc_check",
    "load_weights",
    "log_split_potential",
    "offspring_ones_distribution_enum",
    "offspring_ones_probability",
    "offspring_ones_table",
    "one_max",
    "ones_potential",
    "ones_probability_monotonicity_check",
    "pointwise_drift_exhaustive_check",
    "potential_by_name",
    "ramp_potential",
    "random_linear",
    "save_weights",
    "split_potential",
]
