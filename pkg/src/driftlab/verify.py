"""Named verification suites.

Each suite exercises one verified statement end to end at a fixed scale
and tolerance, reporting every checked inequality as a measured-versus-
required line.  The test suite and the ``verify`` CLI subcommand both
run these.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats as sps

from ._kernels import kernel
from .combinatorial.euler import (
    euler_bound,
    euler_surrogate_times,
    exact_euler_surrogate_mean,
)
from .combinatorial.graphs import random_connected_graph, dijkstra, kruskal
from .combinatorial.mst import check_gap_drift, mst_batch, mst_bound, mst_fitness
from .combinatorial.sssp import (
    final_distances,
    ratio_diagnostic_from_stats,
    sssp_batch,
    sssp_bound,
)
from .drift.bounds import BoundSpec, multiplicative_bound
from .drift.chains import (
    ideal_potential,
    mc_hitting_time,
    random_absorbing_chain,
    verify_unit_drift,
)
from .drift.synthetic import exact_unit_decrement_mean, unit_decrement_times
from .ea import RunConfig, flip_count_cdf, run_batch
from .experiments import ordering_test
from .linear.bounds import bound_catalog, linear_upper_139, onemax_upper
from .linear.exact import (
    exact_pointwise_drift,
    ones_probability_monotonicity_check,
    pointwise_drift_exhaustive_check,
)
from .linear.functions import bin_val, one_max, random_linear
from .linear.mc_checks import bit_zero_ordering_check, level_drift_mc_check
from .linear.potentials import ones_potential
from .seeding import derive_seed, make_rng


@dataclass
class SuiteResult:
    name: str
    passed: bool
    lines: list

    def __str__(self):
        head = f"[{'PASS' if self.passed else 'FAIL'}] {self.name}"
        return "\n".join([head] + [f"  {ln}" for ln in self.lines])


def _line(ok, text):
    return f"{'ok  ' if ok else 'FAIL'} {text}"


def verify_synthetic_process(seed: int = 42) -> SuiteResult:
    """Unit-decrement process vs its harmonic-sum mean and the drift bound."""
    s0, delta, runs = 1000, 1e-3, 10_000
    times = unit_decrement_times(s0, delta, runs, make_rng(derive_seed(seed, 0)))
    mean = float(times.mean())
    se = float(times.std(ddof=1) / math.sqrt(runs))
    exact = exact_unit_decrement_mean(s0, delta)
    bound = multiplicative_bound(BoundSpec(delta, s0, 1.0))
    ok1 = abs(mean - exact) <= 3.0 * se
    ok2 = mean <= bound + 3.0 * se
    lines = [
        _line(ok1, f"mean T = {mean:.2f} within 3se ({3*se:.2f}) of exact {exact:.2f}"),
        _line(ok2, f"mean T = {mean:.2f} <= bound {bound:.2f} + 3se"),
    ]
    return SuiteResult("synthetic-process", ok1 and ok2, lines)


def verify_markov_chains(seed: int = 42, n_chains: int = 20, mc_runs: int = 100_000) -> SuiteResult:
    """Solved absorption times: unit drift residual and Monte-Carlo agreement."""
    worst_residual = 0.0
    worst_z = 0.0
    ok_all = True
    for i in range(n_chains):
        chain = random_absorbing_chain(30, make_rng(derive_seed(seed, 100 + i)))
        mu = ideal_potential(chain)
        residual = verify_unit_drift(chain, mu)
        worst_residual = max(worst_residual, residual)
        start = int(np.argmax(mu))
        est = mc_hitting_time(chain, start, mc_runs, make_rng(derive_seed(seed, 200 + i)))
        z = abs(est.mean - mu[start]) / est.se
        worst_z = max(worst_z, z)
        ok_all = ok_all and residual <= 1e-9 and z <= 3.0
    lines = [
        _line(worst_residual <= 1e-9, f"max unit-drift residual {worst_residual:.3e} <= 1e-9"),
        _line(worst_z <= 3.0, f"max |MC mean - solved| = {worst_z:.2f} standard errors <= 3 ({n_chains} chains, {mc_runs} runs)"),
    ]
    return SuiteResult("markov-chains", ok_all, lines)


def verify_pointwise_drift(seed: int = 42, n: int = 10, n_random: int = 5) -> SuiteResult:
    """Exhaustive drift >= g/(4 e n) for the ramp potential, all points."""
    funcs = [one_max(n), bin_val(n)]
    for i in range(n_random):
        funcs.append(random_linear(n, make_rng(derive_seed(seed, 300 + i))))
    lines = []
    ok_all = True
    for f in funcs:
        report = pointwise_drift_exhaustive_check(f)
        ok_all = ok_all and report.passed
        lines.append(
            _line(
                report.passed,
                f"{f.name}: min drift/(g/(4en)) = {report.worst_ratio:.4f} over "
                f"{report.points_checked} points (need >= 1)",
            )
        )
    return SuiteResult("pointwise-drift", ok_all, lines)


def verify_corner_drift(seed: int = 42) -> SuiteResult:
    """Ones-count drift of the highest-bit-only point under the binary-value
    function equals exactly 1/n^2."""
    lines = []
    ok_all = True
    for n in (4, 8, 16):
        x = np.zeros(n, dtype=np.uint8)
        x[-1] = 1
        drift = exact_pointwise_drift(bin_val(n), ones_potential(n), x)
        err = abs(drift - 1.0 / n**2)
        ok = err <= 1e-12
        ok_all = ok_all and ok
        lines.append(_line(ok, f"n={n}: |drift - 1/n^2| = {err:.3e} <= 1e-12"))
    return SuiteResult("corner-drift", ok_all, lines)


def verify_level_probabilities(seed: int = 42, n: int = 12) -> SuiteResult:
    """Offspring level formula vs enumeration, and level monotonicity."""
    report = ones_probability_monotonicity_check(n)
    lines = [
        _line(report.monotone_ok, f"monotone over all (k <= k', j <= k-1) at n={n}"),
        _line(
            report.enum_max_abs_diff <= 1e-12,
            f"formula vs enumeration max |diff| {report.enum_max_abs_diff:.3e} <= 1e-12",
        ),
        _line(report.row_sum_max_err <= 1e-12, f"row sums off by {report.row_sum_max_err:.3e} <= 1e-12"),
    ]
    return SuiteResult("level-probabilities", report.passed, lines)


def verify_onemax_runtime(seed: int = 42) -> SuiteResult:
    """Mean optimization times against the closed-form band."""
    lines = []
    b1 = run_batch(one_max(100).oracle(), RunConfig(n=100, seed=derive_seed(seed, 400)), 1000, keep_records=False)
    lo = 0.5 * math.e * 100 * math.log(100)
    hi = onemax_upper(100)
    ok1 = b1.valid and lo <= b1.mean_T <= hi
    lines.append(_line(ok1, f"n=100, 1000 runs: mean T = {b1.mean_T:.1f} in [{lo:.1f}, {hi:.1f}]"))
    b2 = run_batch(one_max(500).oracle(), RunConfig(n=500, seed=derive_seed(seed, 401)), 200, keep_records=False)
    hi2 = onemax_upper(500)
    ok2 = b2.valid and b2.mean_T <= hi2
    lines.append(_line(ok2, f"n=500, 200 runs: mean T = {b2.mean_T:.1f} <= {hi2:.1f}"))
    return SuiteResult("onemax-runtime", ok1 and ok2, lines)


def verify_linear_upper(seed: int = 42) -> SuiteResult:
    """Mean times of the binary-value and random instances against the
    1.39 e n ln n form with 25% slack for finite-n effects."""
    lines = []
    ok_all = True
    for n, reps in ((100, 100), (500, 50)):
        threshold = 1.25 * linear_upper_139(n)
        funcs = [bin_val(n)]
        for i in range(5):
            funcs.append(random_linear(n, make_rng(derive_seed(seed, 500 + 10 * n + i))))
        for fi, f in enumerate(funcs):
            b = run_batch(
                f.oracle(),
                RunConfig(n=n, seed=derive_seed(seed, 600 + 10 * n + fi)),
                reps,
                keep_records=False,
            )
            ok = b.valid and b.mean_T <= threshold
            ok_all = ok_all and ok
            lines.append(
                _line(ok, f"{f.name}#{fi} n={n}, {reps} runs: mean T = {b.mean_T:.1f} <= {threshold:.1f}")
            )
    return SuiteResult("linear-upper", ok_all, lines)


def verify_ordering(seed: int = 42) -> SuiteResult:
    """Paired ordering: the binary-value function is not faster than the
    ones count, with the relative gap in the expected band."""
    res = ordering_test(100, 1000, "binval", master_seed=derive_seed(seed, 700))
    ok_p = res.one_sided_p <= 0.05
    ok_gap = 0.0 <= res.relative_gap <= 0.20
    lines = [
        _line(ok_p, f"one-sided p = {res.one_sided_p:.2e} <= 0.05 (means {res.mean_onemax:.1f} vs {res.mean_other:.1f})"),
        _line(ok_gap, f"relative gap = {res.relative_gap:.4f} in [0.00, 0.20]"),
    ]
    return SuiteResult("ordering", ok_p and ok_gap, lines)


def verify_level_drift(seed: int = 42) -> SuiteResult:
    """Ones-level drift floor and bit-zero ordering for the binary-value
    function at n=50."""
    f = bin_val(50)
    drift_report = level_drift_mc_check(f, reps=2000, seed=derive_seed(seed, 800), min_samples=500)
    ordering_report = bit_zero_ordering_check(f, t=100, reps=10_000, seed=derive_seed(seed, 801))
    lines = [
        _line(
            drift_report.passed,
            f"drift floor (e-2)k/(en): {len(drift_report.entries)} levels tested, "
            f"{sum(e.violated for e in drift_report.entries)} violations",
        ),
        _line(
            ordering_report.passed,
            f"bit-zero ordering at t=100: {len(ordering_report.violations)} adjacent violations",
        ),
    ]
    return SuiteResult("level-drift", drift_report.passed and ordering_report.passed, lines)


def verify_mst(seed: int = 42, n_graphs: int = 10, reps: int = 100) -> SuiteResult:
    """Random instances: optimality of every uncapped run, the mean-time
    bound, and the gap-drift floor 1/(e m^2)."""
    lines = []
    ok_all = True
    threshold = mst_bound(30, 10)
    for i in range(n_graphs):
        g = random_connected_graph(10, 30, 10, make_rng(derive_seed(seed, 900 + i)))
        w_opt, _ = kruskal(g)
        summary, stats = mst_batch(g, reps, derive_seed(seed, 950 + i), collect_stats=True)
        optimal = all(
            rec.capped or mst_fitness(rec.final_point, g) == w_opt
            for rec in summary.records
        )
        drift = check_gap_drift(stats, 1.0 / (math.e * g.m * g.m), reps)
        ok = (
            summary.valid
            and summary.capped_count == 0
            and optimal
            and summary.mean_T <= threshold
            and drift.passed
        )
        ok_all = ok_all and ok
        lines.append(
            _line(
                ok,
                f"graph {i}: mean T = {summary.mean_T:.0f} <= {threshold:.0f}, "
                f"capped {summary.capped_count}, all-optimal {optimal}, drift {drift.passed}",
            )
        )
    return SuiteResult("mst", ok_all, lines)


def verify_sssp(seed: int = 42, n_graphs: int = 10, reps: int = 100) -> SuiteResult:
    """Random directed instances: exact final distances, the mean-time
    bound, and the gap-ratio diagnostic."""
    lines = []
    ok_all = True
    threshold = sssp_bound(10, 10)
    for i in range(n_graphs):
        g = random_connected_graph(10, 30, 10, make_rng(derive_seed(seed, 1000 + i)), directed=True)
        opt = dijkstra(g, 0)
        summary, stats = sssp_batch(g, 0, reps, derive_seed(seed, 1050 + i), collect_stats=True)
        exact = all(
            rec.capped or np.array_equal(final_distances(rec.final_point, g, 0), opt)
            for rec in summary.records
        )
        diag = ratio_diagnostic_from_stats(stats, g.n_vertices)
        ok = summary.valid and summary.capped_count == 0 and exact and summary.mean_T <= threshold
        ok_all = ok_all and ok
        lines.append(
            _line(
                ok,
                f"graph {i}: mean T = {summary.mean_T:.0f} <= {threshold:.0f}, "
                f"capped {summary.capped_count}, distances-exact {exact}; "
                f"diagnostic ratio within reference: {diag.all_within}",
            )
        )
    return SuiteResult("sssp", ok_all, lines)


def verify_euler(seed: int = 42) -> SuiteResult:
    """Surrogate absorption time for the cycle-merging floor vs e m ln m."""
    m, runs = 300, 10_000
    times = euler_surrogate_times(m, runs, make_rng(derive_seed(seed, 1100)))
    mean = float(times.mean())
    se = float(times.std(ddof=1) / math.sqrt(runs))
    bound = euler_bound(m)
    exact = exact_euler_surrogate_mean(m)
    ok1 = mean <= bound + 3.0 * se
    ok2 = abs(mean - exact) <= 3.0 * se
    lines = [
        _line(ok1, f"mean T = {mean:.1f} <= e m ln m = {bound:.1f} + 3se"),
        _line(ok2, f"mean T = {mean:.1f} within 3se ({3*se:.2f}) of exact {exact:.1f}"),
    ]
    return SuiteResult("euler", ok1 and ok2, lines)


def mutation_chi_square(n: int, samples: int, seed: int):
    """Chi-square statistic of observed flip counts vs Binomial(n, 1/n).

    Bins with expected count below 10 are pooled into the tail.
    Returns (p_value, position_counts).
    """
    hist, pos = kernel.mutation_stats(n, samples, flip_count_cdf(n), make_rng(seed))
    cdf = flip_count_cdf(n)
    pmf = np.diff(cdf, prepend=0.0)
    expected = pmf * samples
    # pool the tail: everything past the last bin with expected >= 10
    last = int(np.max(np.nonzero(expected >= 10)[0]))
    obs = np.concatenate([hist[:last], [hist[last:].sum()]]).astype(np.float64)
    exp = np.concatenate([expected[:last], [expected[last:].sum()]])
    chi2 = float(((obs - exp) ** 2 / exp).sum())
    p = float(sps.chi2.sf(chi2, df=len(obs) - 1))
    return p, pos


def verify_mutation(seed: int = 42) -> SuiteResult:
    """Flip-count distribution and per-position flip rates at n=20."""
    n, samples = 20, 1_000_000
    p_value, pos = mutation_chi_square(n, samples, derive_seed(seed, 1200))
    ok1 = p_value >= 0.001
    expected = samples / n
    sigma = math.sqrt(samples * (1.0 / n) * (1.0 - 1.0 / n))
    max_dev = float(np.max(np.abs(pos - expected)))
    ok2 = max_dev <= 4.0 * sigma
    lines = [
        _line(ok1, f"chi-square vs Binomial({n}, 1/{n}): p = {p_value:.4f} >= 0.001 ({samples} samples)"),
        _line(ok2, f"max per-position deviation {max_dev:.0f} <= 4 sigma ({4*sigma:.0f})"),
    ]
    return SuiteResult("mutation", ok1 and ok2, lines)


SUITES = {
    "synthetic-process": verify_synthetic_process,
    "markov-chains": verify_markov_chains,
    "pointwise-drift": verify_pointwise_drift,
    "corner-drift": verify_corner_drift,
    "level-probabilities": verify_level_probabilities,
    "onemax-runtime": verify_onemax_runtime,
    "linear-upper": verify_linear_upper,
    "ordering": verify_ordering,
    "level-drift": verify_level_drift,
    "mst": verify_mst,
    "sssp": verify_sssp,
    "euler": verify_euler,
    "mutation": verify_mutation,
}


def run_suite(name: str, seed: int = 42):
    """Run one suite (or 'all'); returns a list of SuiteResults."""
    if name == "all":
        return [fn(seed) for fn in SUITES.values()]
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(
            f"unknown suite {name!r}; available: {sorted(SUITES) + ['all']}"
        ) from None
    return [fn(seed)]
