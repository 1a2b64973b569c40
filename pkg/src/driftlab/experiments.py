"""Experiment drivers: runtime sweeps over function families and the
paired ordering comparison against the ones-counting baseline."""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import stats as sps

from .ea import RunConfig, run
from .linear.bounds import bound_catalog
from .linear.functions import (
    LinearFunction,
    function_by_name,
    load_weights,
    one_max,
)
from .seeding import derive_seed, make_rng

KNOWN_FUNCTIONS = ("onemax", "binval", "random")


@dataclass
class ExperimentSpec:
    functions: list
    n_values: list
    reps: int
    master_seed: int = 42
    out_csv: Optional[str] = None
    out_json: Optional[str] = None

    def __post_init__(self):
        if self.reps < 1:
            raise ValueError("reps must be at least 1")
        if not self.n_values or any(n < 1 for n in self.n_values):
            raise ValueError("n_values must be non-empty and positive")
        if not self.functions:
            raise ValueError("functions must be non-empty")


def resolve_function(name: str, n: int, rng=None) -> LinearFunction:
    """A CLI function selector: a known family name or a weights file path."""
    if name in KNOWN_FUNCTIONS:
        return function_by_name(name, n, rng)
    return load_weights(name)


def _bounds_for(name: str, n: int) -> dict:
    if name == "onemax":
        return {"onemax_upper": bound_catalog("onemax_upper", n)}
    if name == "binval":
        return {
            "binval_upper": bound_catalog("binval_upper", n),
            "linear_upper_139": bound_catalog("linear_upper_139", n),
        }
    return {"linear_upper_139": bound_catalog("linear_upper_139", n)}


def run_sweep(spec: ExperimentSpec):
    """Execute the sweep; returns (csv rows, json-ready summary dict).

    Rows are (function, n, rep, seed, T, capped).  Per-rep seeds derive
    from (master seed, cell index, rep index); the random-linear family
    draws a fresh instance per repetition under the same derivation.
    """
    rows = []
    cells = []
    cell_index = 0
    for fname in spec.functions:
        for n in spec.n_values:
            cell_seed = derive_seed(spec.master_seed, cell_index)
            cell_index += 1
            times = []
            capped_count = 0
            for rep in range(spec.reps):
                rep_seed = derive_seed(cell_seed, rep)
                run_seed = derive_seed(rep_seed, 0)
                if fname == "random":
                    f = resolve_function(fname, n, make_rng(derive_seed(rep_seed, 1)))
                else:
                    f = resolve_function(fname, n)
                record = run(f.oracle(), RunConfig(n=n, seed=run_seed))
                rows.append((fname, n, rep, run_seed, record.T, int(record.capped)))
                if record.capped:
                    capped_count += 1
                else:
                    times.append(record.T)
            arr = np.asarray(times, dtype=np.float64)
            valid = len(arr) > 0
            cells.append(
                {
                    "function": fname,
                    "n": n,
                    "reps": spec.reps,
                    "capped": capped_count,
                    "valid": valid,
                    "mean_T": float(arr.mean()) if valid else None,
                    "median_T": float(np.median(arr)) if valid else None,
                    "sd_T": float(arr.std(ddof=1)) if len(arr) > 1 else 0.0,
                    "ci95_halfwidth": (
                        float(1.959963984540054 * arr.std(ddof=1) / math.sqrt(len(arr)))
                        if len(arr) > 1
                        else 0.0
                    ),
                    "bounds": _bounds_for(fname, n),
                }
            )
    summary = {
        "master_seed": spec.master_seed,
        "reps": spec.reps,
        "functions": list(spec.functions),
        "n_values": list(spec.n_values),
        "cells": cells,
    }
    return rows, summary


@dataclass(frozen=True)
class OrderingTestResult:
    """Paired comparison of expected optimization times against the
    ones-counting baseline, which minimizes them among unique-optimum
    functions."""

    n: int
    reps: int
    other: str
    mean_onemax: float
    mean_other: float
    relative_gap: float
    one_sided_p: float
    se_diff: float
    passed: bool = field(default=True)


def ordering_test(n: int, reps: int, other: str, master_seed: int = 42) -> OrderingTestResult:
    """Paired runs of the baseline and ``other`` with shared per-rep seeds.

    One-sided test of mean_other > mean_onemax; passes when the
    difference is significant in that direction (p <= 0.05) or the two
    means are within noise (2 paired standard errors).
    """
    if reps < 2:
        raise ValueError("ordering test needs reps >= 2")
    t_base = np.empty(reps)
    t_other = np.empty(reps)
    base = one_max(n)
    for rep in range(reps):
        rep_seed = derive_seed(master_seed, rep)
        run_seed = derive_seed(rep_seed, 0)
        if other == "random":
            f = resolve_function(other, n, make_rng(derive_seed(rep_seed, 1)))
        else:
            f = resolve_function(other, n)
        t_base[rep] = run(base.oracle(), RunConfig(n=n, seed=run_seed)).T
        t_other[rep] = run(f.oracle(), RunConfig(n=n, seed=run_seed)).T
    mean_b = float(t_base.mean())
    mean_o = float(t_other.mean())
    diff = t_other - t_base
    se_diff = float(diff.std(ddof=1) / math.sqrt(reps))
    if np.all(diff == diff[0]):
        p = 0.5 if diff[0] == 0 else (0.0 if diff[0] > 0 else 1.0)
    else:
        p = float(sps.ttest_rel(t_other, t_base, alternative="greater").pvalue)
    passed = p <= 0.05 or abs(mean_o - mean_b) <= 2.0 * se_diff
    return OrderingTestResult(
        n=n,
        reps=reps,
        other=other,
        mean_onemax=mean_b,
        mean_other=mean_o,
        relative_gap=(mean_o - mean_b) / mean_b,
        one_sided_p=p,
        se_diff=se_diff,
        passed=passed,
    )
