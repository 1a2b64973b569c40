"""Weighted graphs with classical exact oracles (Kruskal, Dijkstra)."""

import heapq
from collections import deque
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class WeightedGraph:
    """Graph with positive integer edge weights.

    ``edges`` are (u, v, w) triples with 0-based vertex indices.  The
    same structure serves undirected instances (spanning trees) and
    directed ones (shortest paths); ``directed`` selects the reading.
    Connectivity in the undirected sense is validated at construction.
    """

    n_vertices: int
    edges: tuple
    directed: bool = False

    def __post_init__(self):
        if self.n_vertices < 1:
            raise ValueError("graph needs at least one vertex")
        edges = []
        for u, v, w in self.edges:
            u, v, w = int(u), int(v), int(w)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ValueError(f"edge ({u}, {v}) out of range")
            if w < 1:
                raise ValueError(f"edge ({u}, {v}) has non-positive weight {w}")
            edges.append((u, v, w))
        object.__setattr__(self, "edges", tuple(edges))
        if not self._weakly_connected():
            raise ValueError("graph is not connected")

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def w_max(self) -> int:
        return max(w for _, _, w in self.edges)

    def _weakly_connected(self) -> bool:
        if self.n_vertices == 1:
            return True
        adj = [[] for _ in range(self.n_vertices)]
        for u, v, _ in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return len(seen) == self.n_vertices

    def out_adjacency(self):
        """Per-vertex list of (neighbor, weight) following edge direction
        (both directions when undirected)."""
        adj = [[] for _ in range(self.n_vertices)]
        for u, v, w in self.edges:
            adj[u].append((v, w))
            if not self.directed:
                adj[v].append((u, w))
        return adj

    def in_adjacency(self):
        """Per-vertex list of (in-neighbor, weight)."""
        adj = [[] for _ in range(self.n_vertices)]
        for u, v, w in self.edges:
            adj[v].append((u, w))
            if not self.directed:
                adj[u].append((v, w))
        return adj


def parse_graph(text: str, directed: bool = False) -> WeightedGraph:
    """Parse the graph text format: line 1 "n m", then m lines "u v w"."""
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty graph description")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"bad header line: {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(lines) != 1 + m:
        raise ValueError(f"expected {m} edge lines, got {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise ValueError(f"bad edge line: {ln!r}")
        edges.append((int(parts[0]), int(parts[1]), int(parts[2])))
    return WeightedGraph(n, tuple(edges), directed=directed)


def load_graph(path, directed: bool = False) -> WeightedGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read(), directed=directed)


def random_connected_graph(
    n: int,
    m: int,
    w_max: int,
    rng: np.random.Generator,
    directed: bool = False,
    source: int = 0,
) -> WeightedGraph:
    """Random simple connected graph: a random recursive tree rooted at
    ``source`` plus extra distinct edges.  In directed mode tree edges
    point away from the source, so every vertex is reachable from it."""
    if m < n - 1:
        raise ValueError("need at least n-1 edges for connectivity")
    max_edges = n * (n - 1) if directed else n * (n - 1) // 2
    if m > max_edges:
        raise ValueError(f"at most {max_edges} distinct edges for n={n}")
    if w_max < 1:
        raise ValueError("w_max must be at least 1")
    order = [source] + [v for v in range(n) if v != source]
    used = set()
    edges = []
    for i in range(1, n):
        parent = order[int(rng.integers(0, i))]
        child = order[i]
        edges.append((parent, child))
        used.add((parent, child))
        if not directed:
            used.add((child, parent))
    while len(edges) < m:
        u = int(rng.integers(0, n))
        v = int(rng.integers(0, n))
        if u == v or (u, v) in used:
            continue
        edges.append((u, v))
        used.add((u, v))
        if not directed:
            used.add((v, u))
    weighted = [
        (u, v, int(rng.integers(1, w_max + 1))) for u, v in edges
    ]
    return WeightedGraph(n, tuple(weighted), directed=directed)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        parent = self.parent
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def kruskal(g: WeightedGraph):
    """Minimum spanning tree weight and edge selection.

    Greedy over edges sorted by (weight, edge index); the index
    tie-break makes the result deterministic.
    """
    order = sorted(range(g.m), key=lambda i: (g.edges[i][2], i))
    uf = _UnionFind(g.n_vertices)
    tree = np.zeros(g.m, dtype=np.uint8)
    w_opt = 0
    picked = 0
    for i in order:
        u, v, w = g.edges[i]
        if uf.union(u, v):
            tree[i] = 1
            w_opt += w
            picked += 1
            if picked == g.n_vertices - 1:
                break
    if picked != g.n_vertices - 1:
        raise ValueError("graph is not connected")
    return w_opt, tree


def dijkstra(g: WeightedGraph, source: int) -> np.ndarray:
    """Exact shortest-path distances from ``source``.

    Raises if any vertex is unreachable (positive weights assumed, which
    graph validation guarantees).
    """
    if not 0 <= source < g.n_vertices:
        raise ValueError("source out of range")
    adj = g.out_adjacency()
    dist = np.full(g.n_vertices, -1, dtype=np.int64)
    heap = [(0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if dist[u] >= 0:
            continue
        dist[u] = d
        for v, w in adj[u]:
            if dist[v] < 0:
                heapq.heappush(heap, (d + w, v))
    if np.any(dist < 0):
        missing = np.nonzero(dist < 0)[0].tolist()
        raise ValueError(f"vertices {missing} unreachable from source {source}")
    return dist


def total_shortest_path_weight(g: WeightedGraph, source: int) -> int:
    """Sum of shortest-path distances to all non-source vertices."""
    return int(dijkstra(g, source).sum())
