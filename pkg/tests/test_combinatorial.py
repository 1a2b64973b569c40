import itertools
import math

import numpy as np
import pytest

from driftlab.combinatorial import (
    WeightedGraph,
    dijkstra,
    euler_bound,
    euler_bound_tight,
    euler_surrogate_times,
    euler_surrogate_trace,
    exact_euler_surrogate_mean,
    final_distances,
    is_spanning_tree,
    kruskal,
    load_graph,
    maximum_spanning_tree,
    mst_batch,
    mst_drift_check,
    mst_fitness,
    mst_run,
    optimal_predecessors,
    parse_graph,
    random_connected_graph,
    random_spanning_tree,
    sssp_batch,
    sssp_drift_check,
    sssp_fitness,
    sssp_run,
    total_shortest_path_weight,
)
from driftlab.seeding import make_rng

TRIANGLE = "3 3\n0 1 1\n1 2 2\n0 2 3\n"


def brute_force_mst(g):
    """Exhaustive minimum over all spanning edge subsets (test oracle)."""
    best = None
    for subset in itertools.combinations(range(g.m), g.n_vertices - 1):
        bits = np.zeros(g.m, dtype=np.uint8)
        bits[list(subset)] = 1
        if is_spanning_tree(bits, g):
            weight = sum(g.edges[i][2] for i in subset)
            best = weight if best is None else min(best, weight)
    return best


def bellman_ford(g, source):
    """Edge-relaxation distances (test oracle for the heap version)."""
    inf = math.inf
    dist = [inf] * g.n_vertices
    dist[source] = 0
    arcs = list(g.edges)
    if not g.directed:
        arcs += [(v, u, w) for u, v, w in g.edges]
    for _ in range(g.n_vertices):
        for u, v, w in arcs:
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
    return np.array(dist, dtype=np.int64)


def test_parse_triangle():
    g = parse_graph(TRIANGLE)
    assert g.n_vertices == 3 and g.m == 3
    assert g.edges[0] == (0, 1, 1)


def test_parse_rejects_disconnected():
    with pytest.raises(ValueError, match="not connected"):
        parse_graph("4 2\n0 1 1\n2 3 1\n")


def test_parse_rejects_bad_weight_and_loops():
    with pytest.raises(ValueError):
        parse_graph("2 1\n0 1 0\n")
    with pytest.raises(ValueError):
        parse_graph("2 1\n0 0 2\n")


def test_load_graph(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text(TRIANGLE)
    g = load_graph(path)
    assert g.m == 3


def test_kruskal_triangle():
    g = parse_graph(TRIANGLE)
    w_opt, tree = kruskal(g)
    assert w_opt == 3
    assert list(tree) == [1, 1, 0]


def test_kruskal_path_graph_unique_tree():
    g = parse_graph("4 3\n0 1 5\n1 2 7\n2 3 2\n")
    w_opt, tree = kruskal(g)
    assert w_opt == 14
    assert tree.sum() == 3


@pytest.mark.parametrize("seed", range(5))
def test_kruskal_matches_enumeration(seed):
    rng = make_rng(seed)
    n = int(rng.integers(4, 8))
    m = int(rng.integers(n + 1, min(12, n * (n - 1) // 2) + 1))
    g = random_connected_graph(n, m, 9, rng)
    w_opt, tree = kruskal(g)
    assert is_spanning_tree(tree, g)
    assert w_opt == brute_force_mst(g)


def test_mst_fitness_examples():
    g = parse_graph(TRIANGLE)
    _, tree = kruskal(g)
    assert mst_fitness(tree, g) == 3.0
    assert mst_fitness([1, 1, 1], g) == math.inf  # too many edges
    assert mst_fitness([1, 0, 1], g) == 4.0  # the other tree through vertex 2


def test_spanning_predicate():
    g = parse_graph("4 4\n0 1 1\n1 2 1\n2 3 1\n0 3 1\n")
    assert is_spanning_tree([1, 1, 1, 0], g)
    assert not is_spanning_tree([1, 1, 1, 1], g)
    assert not is_spanning_tree([1, 1, 0, 0], g)


def test_random_and_maximum_trees():
    g = random_connected_graph(8, 16, 10, make_rng(1))
    t1 = random_spanning_tree(g, make_rng(2))
    assert is_spanning_tree(t1, g)
    t2 = maximum_spanning_tree(g)
    assert is_spanning_tree(t2, g)
    w_opt, _ = kruskal(g)
    w_max_tree = sum(g.edges[i][2] for i in range(g.m) if t2[i])
    assert w_max_tree >= w_opt


def test_mst_run_from_optimum_is_zero():
    g = parse_graph(TRIANGLE)
    _, tree = kruskal(g)
    rec = mst_run(g, seed=3, init=tree)
    assert rec.T == 0 and not rec.capped


def test_mst_run_reaches_optimum():
    g = random_connected_graph(8, 14, 10, make_rng(4))
    w_opt, _ = kruskal(g)
    rec = mst_run(g, seed=5)
    assert not rec.capped
    assert mst_fitness(rec.final_point, g) == w_opt


def test_mst_run_rejects_bad_init():
    g = parse_graph(TRIANGLE)
    with pytest.raises(ValueError):
        mst_run(g, seed=0, init=np.array([1, 1, 1], dtype=np.uint8))


def test_mst_batch_worst_start():
    g = random_connected_graph(7, 12, 10, make_rng(6))
    summary, _ = mst_batch(g, 20, seed=7, init="max")
    assert summary.valid and summary.capped_count == 0


def test_mst_accepted_points_stay_trees():
    # every recorded final point is a spanning tree of minimum weight
    g = random_connected_graph(7, 12, 10, make_rng(8))
    w_opt, _ = kruskal(g)
    summary, _ = mst_batch(g, 30, seed=9)
    for rec in summary.records:
        assert is_spanning_tree(rec.final_point, g)
        assert mst_fitness(rec.final_point, g) == w_opt


def test_mst_drift_check_passes():
    g = random_connected_graph(8, 16, 10, make_rng(10))
    report = mst_drift_check(g, reps=120, seed=11)
    assert report.passed
    assert report.entries


def test_mst_exact_drift_on_triangle_matches_mc():
    # from the heavier tree [1,0,1] (weight 4), enumerate all 8 masks of
    # the 3 edge bits: accepted moves are the identity and the swap to
    # the optimal tree [1,1,0] via flipping edges 1 and 2
    g = parse_graph(TRIANGLE)
    p = 1.0 / 3
    start = [1, 0, 1]
    exact = 0.0
    for mask in range(8):
        bits = [start[i] ^ ((mask >> i) & 1) for i in range(3)]
        prob = p ** bin(mask).count("1") * (1 - p) ** (3 - bin(mask).count("1"))
        fy = mst_fitness(bits, g)
        if fy <= 4.0:
            exact += prob * (4.0 - fy)
    rng = make_rng(12)
    samples = []
    for _ in range(20000):
        mask = tuple(int(rng.random() < p) for _ in range(3))
        bits = [start[i] ^ mask[i] for i in range(3)]
        fy = mst_fitness(bits, g)
        samples.append(4.0 - fy if fy <= 4.0 else 0.0)
    mc = float(np.mean(samples))
    se = float(np.std(samples, ddof=1) / math.sqrt(len(samples)))
    assert abs(mc - exact) <= 3 * se


def test_dijkstra_examples():
    g = parse_graph(TRIANGLE)
    assert list(dijkstra(g, 0)) == [0, 1, 3]
    path = parse_graph("4 3\n0 1 2\n1 2 3\n2 3 4\n", directed=True)
    assert list(dijkstra(path, 0)) == [0, 2, 5, 9]
    assert total_shortest_path_weight(path, 0) == 16


def test_dijkstra_unreachable_raises():
    g = parse_graph("3 2\n0 1 1\n2 1 1\n", directed=True)
    with pytest.raises(ValueError, match="unreachable"):
        dijkstra(g, 0)


@pytest.mark.parametrize("seed", range(4))
def test_dijkstra_matches_bellman_ford(seed):
    g = random_connected_graph(8, 20, 9, make_rng(seed), directed=True)
    assert np.array_equal(dijkstra(g, 0), bellman_ford(g, 0))


def test_sssp_fitness_examples():
    g = random_connected_graph(8, 20, 9, make_rng(20), directed=True)
    pred = optimal_predecessors(g, 0)
    assert sssp_fitness(pred, g, 0) == total_shortest_path_weight(g, 0)
    unset = np.full(8, -1, dtype=np.int64)
    assert sssp_fitness(unset, g, 0) == 7 * 8 * g.w_max


def test_sssp_fitness_cycle_penalized():
    g = parse_graph("3 3\n0 1 1\n1 2 1\n2 1 1\n", directed=True)
    # vertices 1 and 2 point at each other: both carry the penalty
    pred = np.array([-1, 2, 1], dtype=np.int64)
    assert sssp_fitness(pred, g, 0) == 2 * 3 * g.w_max


def test_sssp_fitness_bounds():
    g = random_connected_graph(7, 18, 10, make_rng(21), directed=True)
    opt = total_shortest_path_weight(g, 0)
    n = g.n_vertices
    rng = make_rng(22)
    in_adj = g.in_adjacency()
    for _ in range(50):
        pred = np.full(n, -1, dtype=np.int64)
        for v in range(1, n):
            if rng.random() < 0.7:
                pred[v] = in_adj[v][int(rng.integers(0, len(in_adj[v])))][0]
        fit = sssp_fitness(pred, g, 0)
        assert opt <= fit <= n * n * g.w_max


def test_sssp_run_zero_from_optimal():
    g = random_connected_graph(8, 20, 9, make_rng(23), directed=True)
    rec = sssp_run(g, 0, seed=24, init="optimal")
    assert rec.T == 0


def test_sssp_run_reaches_dijkstra():
    g = random_connected_graph(8, 20, 9, make_rng(25), directed=True)
    rec = sssp_run(g, 0, seed=26)
    assert not rec.capped
    assert np.array_equal(final_distances(rec.final_point, g, 0), dijkstra(g, 0))


def test_sssp_batch_and_diagnostic():
    g = random_connected_graph(8, 20, 9, make_rng(27), directed=True)
    summary, _ = sssp_batch(g, 0, 40, seed=28)
    assert summary.valid and summary.capped_count == 0
    diag = sssp_drift_check(g, 0, reps=40, seed=29)
    assert diag.entries
    assert 0.0 < diag.reference_ratio < 1.0
    # selection never allows the gap to grow
    assert all(e.mean_ratio <= 1.0 + 1e-12 for e in diag.entries)


def test_euler_bounds():
    assert euler_bound(12) == pytest.approx(81.056, abs=1e-2)
    assert euler_bound_tight(4) == pytest.approx(math.e * 4)
    assert euler_bound_tight(300) <= euler_bound(300)


def test_euler_surrogate_trivial_start():
    trace = euler_surrogate_trace(3, make_rng(30))
    assert list(trace.values) == [0.0]


def test_euler_surrogate_trace_monotone():
    trace = euler_surrogate_trace(60, make_rng(31))
    assert np.all(np.diff(trace.values) <= 0)
    assert trace.values[0] == 60 // 3 - 1
    assert trace.values[-1] == 0.0


def test_euler_surrogate_mean_matches_oracle():
    m, runs = 30, 20000
    times = euler_surrogate_times(m, runs, make_rng(32))
    exact = exact_euler_surrogate_mean(m)
    se = times.std(ddof=1) / math.sqrt(runs)
    assert abs(times.mean() - exact) <= 3 * se
    assert times.mean() <= euler_bound(m) + 3 * se
