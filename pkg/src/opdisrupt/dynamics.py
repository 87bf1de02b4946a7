"""Friedkin-Johnsen opinion dynamics.

Each agent repeatedly averages its innate opinion with its neighbors'
current opinions; the fixed point is z = (I + L)^{-1} s. The influence
matrix (I + L)^{-1} is symmetric, entrywise nonnegative, and has unit row
sums, so equilibria are convex combinations of innate opinions.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .graph import WeightedGraph, adjacency_matrix, laplacian

__all__ = [
    "as_opinions",
    "InfluenceMatrix",
    "influence",
    "equilibrium",
    "iterate_dynamics",
    "apply_single_change",
]


def as_opinions(values, n: int | None = None) -> np.ndarray:
    """Validate and copy an opinion vector: 1-D, finite, entries in [0, 1]."""
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"opinion vector must be 1-D, got shape {arr.shape}")
    if n is not None and arr.size != n:
        raise ValueError(f"opinion vector has length {arr.size}, expected {n}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("opinion vector contains non-finite entries")
    if arr.size and (arr.min() < 0.0 or arr.max() > 1.0):
        raise ValueError("opinions must lie in [0, 1]")
    return arr


class InfluenceMatrix:
    """(I + L)^{-1} with a reusable Cholesky factorization.

    Equilibria are computed through the factorization; the explicit matrix
    and the quadratic objective forms are materialized lazily, only when an
    adversary needs incremental candidate evaluation. Immutable once built.
    """

    def __init__(self, graph: WeightedGraph):
        self.graph = graph
        lap = laplacian(graph)
        self._laplacian = lap
        # I + L is positive definite, so a failure here means corrupt input.
        self._factor = cho_factor(np.eye(graph.n) + lap)
        self._matrix: np.ndarray | None = None
        self._disagreement_form: np.ndarray | None = None
        self._polarization_form: np.ndarray | None = None

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def matrix(self) -> np.ndarray:
        """Dense (I + L)^{-1}, symmetrized to kill round-off asymmetry."""
        if self._matrix is None:
            m = cho_solve(self._factor, np.eye(self.n))
            self._matrix = (m + m.T) / 2.0
        return self._matrix

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """Solve (I + L) x = rhs."""
        return cho_solve(self._factor, np.asarray(rhs, dtype=float))

    def disagreement_form(self) -> np.ndarray:
        """Matrix A with s^T A s = disagreement of the equilibrium for s."""
        if self._disagreement_form is None:
            m = self.matrix
            a = m @ self._laplacian @ m
            self._disagreement_form = (a + a.T) / 2.0
        return self._disagreement_form

    def polarization_form(self) -> np.ndarray:
        """Matrix A with s^T A s = polarization of the equilibrium for s."""
        if self._polarization_form is None:
            m = self.matrix
            centered = m - m.mean(axis=0, keepdims=True)
            a = centered.T @ centered
            self._polarization_form = (a + a.T) / 2.0
        return self._polarization_form


def influence(g: WeightedGraph) -> InfluenceMatrix:
    return InfluenceMatrix(g)


def equilibrium(inf: InfluenceMatrix, s: np.ndarray) -> np.ndarray:
    """Equilibrium opinions z = (I + L)^{-1} s."""
    s = np.asarray(s, dtype=float)
    if s.shape != (inf.n,):
        raise ValueError(f"opinion vector has shape {s.shape}, expected ({inf.n},)")
    return inf.solve(s)


def iterate_dynamics(
    g: WeightedGraph,
    s: np.ndarray,
    tol: float = 1e-10,
    max_steps: int | None = None,
) -> tuple[np.ndarray, int, bool]:
    """Run the averaging updates from z = s until the max-norm step change < tol.

    Returns (z, steps_taken, converged); when max_steps runs out the best
    iterate is returned with converged=False. Default max_steps is 10n + 1000.
    """
    s = np.asarray(s, dtype=float)
    if s.shape != (g.n,):
        raise ValueError(f"opinion vector has shape {s.shape}, expected ({g.n},)")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_steps is None:
        max_steps = 10 * g.n + 1000
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    a = adjacency_matrix(g)
    denom = 1.0 + a.sum(axis=1)
    z = s.copy()
    for step in range(1, max_steps + 1):
        z_next = (s + a @ z) / denom
        delta = float(np.max(np.abs(z_next - z))) if g.n else 0.0
        z = z_next
        if delta < tol:
            return z, step, True
    return z, max_steps, False


def apply_single_change(
    inf: InfluenceMatrix,
    z: np.ndarray,
    j: int,
    delta: float,
    s: np.ndarray | None = None,
) -> np.ndarray:
    """Equilibrium after shifting innate opinion j by delta: z + delta * M[:, j].

    Exact by linearity of the equilibrium map. If the innate vector s is
    supplied, the move is validated to keep s_j + delta inside [0, 1].
    """
    z = np.asarray(z, dtype=float)
    if z.shape != (inf.n,):
        raise ValueError(f"equilibrium vector has shape {z.shape}, expected ({inf.n},)")
    if not isinstance(j, (int, np.integer)) or not (0 <= j < inf.n):
        raise ValueError(f"node id {j!r} out of range [0, {inf.n})")
    if s is not None:
        target = float(np.asarray(s, dtype=float)[j]) + delta
        if not (0.0 <= target <= 1.0):
            raise ValueError(
                f"change pushes innate opinion of node {j} to {target}, outside [0, 1]"
            )
    return z + delta * inf.matrix[:, int(j)]
