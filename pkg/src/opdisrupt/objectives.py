"""Objective functions over equilibrium opinions.

Disagreement sums w_uv (z_u - z_v)^2 over edges (each unordered edge once,
equivalently z^T L z); polarization sums squared deviations from the mean
(n times the variance). The weighted sum rescales disagreement by n/m so
both terms carry equal weight at lambda = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .dynamics import InfluenceMatrix, equilibrium
from .graph import WeightedGraph

__all__ = [
    "Objective",
    "ObjectiveSpec",
    "disagreement",
    "polarization",
    "weighted_sum",
    "evaluate",
    "quadratic_form_matrix",
    "objective_of_innate",
]


class Objective(str, Enum):
    DISAGREEMENT = "disagreement"
    POLARIZATION = "polarization"
    WEIGHTED_SUM = "weighted_sum"


@dataclass(frozen=True)
class ObjectiveSpec:
    """Which objective to maximize; lam only matters for the weighted sum."""

    kind: Objective
    lam: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", Objective(self.kind))
        object.__setattr__(self, "lam", float(self.lam))
        if self.lam < 0:
            raise ValueError(f"lambda must be nonnegative, got {self.lam}")


def disagreement(g: WeightedGraph, z: np.ndarray) -> float:
    z = np.asarray(z, dtype=float)
    if z.shape != (g.n,):
        raise ValueError(f"opinion vector has shape {z.shape}, expected ({g.n},)")
    us, vs, ws = g.edge_arrays()
    diff = z[us] - z[vs]
    return float(np.sum(ws * diff * diff))


def polarization(z: np.ndarray) -> float:
    z = np.asarray(z, dtype=float)
    if z.size < 1:
        raise ValueError("polarization needs at least one opinion")
    centered = z - z.mean()
    return float(centered @ centered)


def weighted_sum(g: WeightedGraph, z: np.ndarray, lam: float = 1.0) -> float:
    if lam < 0:
        raise ValueError(f"lambda must be nonnegative, got {lam}")
    if g.m == 0:
        raise ValueError("weighted sum is undefined on a graph with no edges")
    return polarization(z) + lam * (g.n / g.m) * disagreement(g, z)


def evaluate(g: WeightedGraph, z: np.ndarray, spec: ObjectiveSpec) -> float:
    if spec.kind is Objective.DISAGREEMENT:
        return disagreement(g, z)
    if spec.kind is Objective.POLARIZATION:
        return polarization(z)
    return weighted_sum(g, z, spec.lam)


def quadratic_form_matrix(inf: InfluenceMatrix, spec: ObjectiveSpec) -> np.ndarray:
    """Matrix A with s^T A s = objective of the equilibrium reached from s.

    The n/m scale of the weighted sum is bound here, from the influence
    matrix's own graph.
    """
    if spec.kind is Objective.DISAGREEMENT:
        return inf.disagreement_form()
    if spec.kind is Objective.POLARIZATION:
        return inf.polarization_form()
    g = inf.graph
    if g.m == 0:
        raise ValueError("weighted sum is undefined on a graph with no edges")
    return inf.polarization_form() + spec.lam * (g.n / g.m) * inf.disagreement_form()


def objective_of_innate(
    inf: InfluenceMatrix, g: WeightedGraph, s: np.ndarray, spec: ObjectiveSpec
) -> float:
    """Objective evaluated at the equilibrium for innate opinions s."""
    return evaluate(g, equilibrium(inf, s), spec)
