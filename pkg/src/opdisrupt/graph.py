"""Weighted undirected graphs: construction, Laplacian, and degree queries."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "WeightedGraph",
    "DegreeProfile",
    "build_graph",
    "laplacian",
    "adjacency_matrix",
    "degrees",
    "remove_isolated",
]


class WeightedGraph:
    """Symmetric weighted graph on dense node ids 0..n-1.

    Edge weights are in (0, 1]; absent pairs have weight 0 and self-loops are
    forbidden. Instances are immutable after construction (safe to share
    across workers); build them with :func:`build_graph`.
    """

    __slots__ = ("n", "_us", "_vs", "_ws", "_adj")

    def __init__(self, n: int, us: np.ndarray, vs: np.ndarray, ws: np.ndarray):
        self.n = n
        self._us = us
        self._vs = vs
        self._ws = ws
        adj: list[dict[int, float]] = [{} for _ in range(n)]
        for u, v, w in zip(us.tolist(), vs.tolist(), ws.tolist()):
            adj[u][v] = w
            adj[v][u] = w
        self._adj = adj

    @property
    def m(self) -> int:
        """Number of edges (unordered pairs with positive weight)."""
        return len(self._ws)

    def weight(self, u: int, v: int) -> float:
        return self._adj[u].get(v, 0.0)

    def neighbors(self, u: int) -> dict[int, float]:
        """Neighbor -> weight map for node u. Treat as read-only."""
        return self._adj[u]

    def edges(self):
        """Iterate (u, v, w) with u < v, sorted by (u, v)."""
        yield from zip(self._us.tolist(), self._vs.tolist(), self._ws.tolist())

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Endpoint and weight arrays (u < v), aligned and sorted by (u, v)."""
        return self._us, self._vs, self._ws

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m})"


@dataclass
class DegreeProfile:
    """Weighted degrees d_v = sum_u w_vu, neighbor counts, and the max weighted degree."""

    weighted: np.ndarray
    unweighted: np.ndarray
    d_max: float


def build_graph(n: int, edges) -> WeightedGraph:
    """Build a graph from (u, v, w) triples over nodes 0..n-1.

    Rejects out-of-range ids, self-loops, weights outside (0, 1], and
    duplicate unordered pairs (duplicates signal data errors and are not
    merged).
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"node count must be a positive integer, got {n!r}")
    n = int(n)
    us: list[int] = []
    vs: list[int] = []
    ws: list[float] = []
    seen: set[tuple[int, int]] = set()
    for entry in edges:
        u, v, w = entry
        if not isinstance(u, (int, np.integer)) or not isinstance(v, (int, np.integer)):
            raise ValueError(f"node ids must be integers, got edge {entry!r}")
        u, v, w = int(u), int(v), float(w)
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"node id out of range [0, {n}) in edge ({u}, {v})")
        if u == v:
            raise ValueError(f"self-loop on node {u} is not allowed")
        if not (0.0 < w <= 1.0):
            raise ValueError(f"edge weight must be in (0, 1], got {w} on ({u}, {v})")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise ValueError(f"duplicate edge ({key[0]}, {key[1]})")
        seen.add(key)
        us.append(key[0])
        vs.append(key[1])
        ws.append(w)
    order = sorted(range(len(us)), key=lambda i: (us[i], vs[i]))
    return WeightedGraph(
        n,
        np.array([us[i] for i in order], dtype=np.int64),
        np.array([vs[i] for i in order], dtype=np.int64),
        np.array([ws[i] for i in order], dtype=np.float64),
    )


def adjacency_matrix(g: WeightedGraph) -> np.ndarray:
    us, vs, ws = g.edge_arrays()
    a = np.zeros((g.n, g.n))
    a[us, vs] = ws
    a[vs, us] = ws
    return a


def laplacian(g: WeightedGraph) -> np.ndarray:
    """Weighted combinatorial Laplacian L = D - A (symmetric, zero row sums)."""
    a = adjacency_matrix(g)
    return np.diag(a.sum(axis=1)) - a


def degrees(g: WeightedGraph) -> DegreeProfile:
    weighted = np.zeros(g.n)
    unweighted = np.zeros(g.n, dtype=np.int64)
    us, vs, ws = g.edge_arrays()
    np.add.at(weighted, us, ws)
    np.add.at(weighted, vs, ws)
    np.add.at(unweighted, us, 1)
    np.add.at(unweighted, vs, 1)
    d_max = float(weighted.max()) if g.n else 0.0
    return DegreeProfile(weighted=weighted, unweighted=unweighted, d_max=d_max)


def remove_isolated(
    g: WeightedGraph, s: np.ndarray
) -> tuple[WeightedGraph, np.ndarray, np.ndarray]:
    """Drop zero-degree nodes, restricting the opinion vector consistently.

    Returns (graph, opinions, kept) where kept[new_id] = old_id. Raises if
    every node is isolated (there is no model left).
    """
    s = np.asarray(s, dtype=float)
    if s.shape != (g.n,):
        raise ValueError(f"opinion vector has length {s.shape}, expected ({g.n},)")
    prof = degrees(g)
    kept = np.flatnonzero(prof.unweighted > 0)
    if kept.size == 0:
        raise ValueError("all nodes are isolated; nothing remains after removal")
    if kept.size == g.n:
        return g, s.copy(), kept
    remap = -np.ones(g.n, dtype=np.int64)
    remap[kept] = np.arange(kept.size)
    us, vs, ws = g.edge_arrays()
    edges = zip(remap[us].tolist(), remap[vs].tolist(), ws.tolist())
    return build_graph(kept.size, edges), s[kept].copy(), kept
