"""The (1+1) EA on minimum spanning trees.

Search points are edge selections (length-m bit strings) mutated at
rate 1/m.  Offspring that do not form a spanning tree are rejected
outright (an infinite-penalty reading of the feasibility penalty: the
run starts from a spanning tree and never leaves the tree set), and
tree offspring are accepted when their total weight does not increase.
The gap w(x) - w_opt then has multiplicative drift at least
1/(e m^2), which ``mst_drift_check`` measures.
"""

import math
from dataclasses import dataclass

import numpy as np

from .._kernels import FlipSampler
from ..drift.estimation import Z95
from ..ea import BatchSummary, RunRecord, flip_count_cdf
from ..seeding import derive_seed, make_rng
from .gapstats import accumulate, pooled_levels
from .graphs import WeightedGraph, kruskal


def _selected_edges_span(bits, g: WeightedGraph) -> bool:
    # assumes exactly n-1 selected edges; any cycle then implies disconnection
    n = g.n_vertices
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    joins = 0
    for i, (u, v, _) in enumerate(g.edges):
        if bits[i]:
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
            joins += 1
    return joins == n - 1


def is_spanning_tree(bits, g: WeightedGraph) -> bool:
    bits = [int(b) for b in bits]
    if len(bits) != g.m:
        raise ValueError("bit string length must equal edge count")
    if sum(bits) != g.n_vertices - 1:
        return False
    return _selected_edges_span(bits, g)


def mst_fitness(bits, g: WeightedGraph) -> float:
    """Total selected weight for spanning trees, +inf otherwise (so any
    non-tree offspring loses every comparison)."""
    if not is_spanning_tree(bits, g):
        return math.inf
    return float(sum(w for (_, _, w), b in zip(g.edges, bits) if b))


def mst_bound(m: int, w_max: int) -> float:
    """Expected-time upper bound 2 e m^2 (1 + ln m + ln w_max)."""
    if m < 1 or w_max < 1:
        raise ValueError("m and w_max must be at least 1")
    return 2.0 * math.e * m * m * (1.0 + math.log(m) + math.log(w_max))


def random_spanning_tree(g: WeightedGraph, rng: np.random.Generator) -> np.ndarray:
    """Spanning tree from a greedy pass over a random edge order."""
    order = rng.permutation(g.m)
    parent = list(range(g.n_vertices))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    bits = np.zeros(g.m, dtype=np.uint8)
    picked = 0
    for i in order:
        u, v, _ = g.edges[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            bits[i] = 1
            picked += 1
            if picked == g.n_vertices - 1:
                break
    return bits


def maximum_spanning_tree(g: WeightedGraph) -> np.ndarray:
    """Heaviest spanning tree; the adversarial start for stress tests."""
    order = sorted(range(g.m), key=lambda i: (-g.edges[i][2], i))
    parent = list(range(g.n_vertices))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    bits = np.zeros(g.m, dtype=np.uint8)
    picked = 0
    for i in order:
        u, v, _ = g.edges[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            bits[i] = 1
            picked += 1
    return bits


def default_mst_cap(g: WeightedGraph) -> int:
    return int(math.ceil(10.0 * mst_bound(g.m, g.w_max)))


def _initial_tree(g, init, rng):
    if isinstance(init, str):
        if init == "random":
            return random_spanning_tree(g, rng)
        if init == "max":
            return maximum_spanning_tree(g)
        raise ValueError("init must be 'random', 'max', or an explicit bit array")
    bits = np.asarray(init, dtype=np.uint8)
    if not is_spanning_tree(bits, g):
        raise ValueError("explicit initial point is not a spanning tree")
    return bits.copy()


def _run_mst(g, rng, max_iters, x_init, w_opt, stats=None):
    m = g.m
    n = g.n_vertices
    edges = g.edges
    bits = [int(b) for b in x_init]
    ones = sum(bits)
    wcur = sum(edges[i][2] for i in range(m) if bits[i])
    sampler = FlipSampler(m, flip_count_cdf(m))
    t = 0
    capped = False
    if wcur != w_opt:
        for t in range(1, max_iters + 1):
            wpre = wcur
            k = sampler.draw(rng)
            if k:
                out = sampler.out
                dones = 0
                dw = 0
                for i in range(k):
                    e = out[i]
                    if bits[e]:
                        dones -= 1
                        dw -= edges[e][2]
                    else:
                        dones += 1
                        dw += edges[e][2]
                if ones + dones == n - 1 and dw <= 0:
                    for i in range(k):
                        bits[out[i]] ^= 1
                    if _selected_edges_span(bits, g):
                        ones += dones
                        wcur += dw
                    else:
                        for i in range(k):
                            bits[out[i]] ^= 1
            if stats is not None:
                accumulate(stats, wpre - w_opt, float(wpre - wcur))
            if wcur == w_opt:
                break
        else:
            capped = True
            t = max_iters
    return t, capped, np.array(bits, dtype=np.uint8), wcur


def mst_run(
    g: WeightedGraph,
    seed: int,
    max_iters: int = None,
    init="random",
) -> RunRecord:
    """One EA run from a spanning tree down to minimum weight."""
    rng = make_rng(seed)
    cap = max_iters if max_iters is not None else default_mst_cap(g)
    w_opt, _ = kruskal(g)
    x0 = _initial_tree(g, init, rng)
    t, capped, bits, _ = _run_mst(g, rng, cap, x0, w_opt)
    return RunRecord(t, t + 1, bits, capped)


@dataclass(frozen=True)
class GapDriftEntry:
    level: float
    mean_decrease: float
    ci_halfwidth: float
    sample_count: int
    bound: float
    violated: bool


@dataclass(frozen=True)
class GapDriftReport:
    passed: bool
    delta: float
    reps: int
    entries: tuple

    def __str__(self):
        status = "pass" if self.passed else "FAIL"
        return (
            f"gap drift vs delta={self.delta:.3e} over {self.reps} runs: {status} "
            f"({len(self.entries)} levels/buckets)"
        )


def mst_batch(
    g: WeightedGraph,
    reps: int,
    seed: int,
    max_iters: int = None,
    init="random",
    collect_stats: bool = False,
):
    """``reps`` independent runs; returns (summary, per-level gap stats)."""
    if reps < 1:
        raise ValueError("reps must be at least 1")
    cap = max_iters if max_iters is not None else default_mst_cap(g)
    w_opt, _ = kruskal(g)
    stats = {} if collect_stats else None
    times = []
    records = []
    capped_count = 0
    for rep in range(reps):
        rng = make_rng(derive_seed(seed, rep))
        x0 = _initial_tree(g, init, rng)
        t, capped, bits, wfin = _run_mst(g, rng, cap, x0, w_opt, stats)
        records.append(RunRecord(t, t + 1, bits, capped))
        if capped:
            capped_count += 1
        else:
            if wfin != w_opt:
                raise RuntimeError("uncapped run ended above the optimum weight")
            times.append(t)
    if times:
        arr = np.asarray(times, dtype=np.float64)
        mean = float(arr.mean())
        sd = float(arr.std(ddof=1)) if len(arr) > 1 else 0.0
        hw = Z95 * sd / math.sqrt(len(arr)) if len(arr) > 1 else 0.0
        summary = BatchSummary(mean, sd, hw, capped_count, reps, True, tuple(records))
    else:
        summary = BatchSummary(
            float("nan"), float("nan"), float("nan"), capped_count, reps, False,
            tuple(records),
        )
    return summary, stats


def check_gap_drift(stats: dict, delta: float, reps: int, min_samples: int = 30):
    """Test pooled gap decreases against drift >= delta * level."""
    entries = []
    for lvl in pooled_levels(stats, min_samples=min_samples):
        bound = delta * lvl.level
        violated = lvl.mean + 2.0 * lvl.ci_halfwidth < bound
        entries.append(
            GapDriftEntry(lvl.level, lvl.mean, lvl.ci_halfwidth, lvl.count, bound, violated)
        )
    passed = all(not e.violated for e in entries)
    return GapDriftReport(passed, delta, reps, tuple(entries))


def mst_drift_check(
    g: WeightedGraph, reps: int, seed: int, min_samples: int = 30
) -> GapDriftReport:
    """Monte-Carlo check that the weight gap drifts at least gap/(e m^2)."""
    if reps < 1:
        raise ValueError("reps must be at least 1")
    _, stats = mst_batch(g, reps, seed, collect_stats=True)
    delta = 1.0 / (math.e * g.m * g.m)
    return check_gap_drift(stats, delta, reps, min_samples=min_samples)
