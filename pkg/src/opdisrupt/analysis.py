"""Executable bound checks for takeover plans.

No k-budget takeover can raise polarization by more than 3k, disagreement by
more than 8*d_max*k, or move the equilibrium by more than k in L1 norm.
These hold for every plan, so they double as end-to-end audits of any
heuristic's output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .adversary import DisruptionPlan
from .dynamics import InfluenceMatrix, equilibrium
from .graph import WeightedGraph, degrees
from .objectives import ObjectiveSpec, disagreement, polarization

__all__ = [
    "BOUND_TOL",
    "BoundReport",
    "check_polarization_bound",
    "check_disagreement_bound",
    "check_l1_shift",
    "audit_plan",
]

BOUND_TOL = 1e-9


@dataclass
class BoundReport:
    check: str
    before: float
    after: float
    k: int
    d_max: float
    bound: float
    slack: float
    passed: bool

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return (
            f"{self.check}: {status} before={self.before:.6g} after={self.after:.6g} "
            f"k={self.k} bound={self.bound:.6g} slack={self.slack:.6g}"
        )


def _report(
    check: str, before: float, after: float, k: int, d_max: float, bound: float
) -> BoundReport:
    slack = bound - (after - before)
    return BoundReport(
        check=check,
        before=float(before),
        after=float(after),
        k=int(k),
        d_max=float(d_max),
        bound=float(bound),
        slack=float(slack),
        passed=bool(slack >= -BOUND_TOL),
    )


def check_polarization_bound(p_before: float, p_after: float, k: int) -> BoundReport:
    """Polarization can grow by at most 3k."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    return _report("polarization_increase", p_before, p_after, k, 0.0, 3.0 * k)


def check_disagreement_bound(
    d_before: float, d_after: float, k: int, d_max: float
) -> BoundReport:
    """Disagreement can grow by at most 8 * d_max * k."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if d_max < 0:
        raise ValueError(f"d_max must be nonnegative, got {d_max}")
    return _report("disagreement_increase", d_before, d_after, k, d_max, 8.0 * d_max * k)


def check_l1_shift(z_before: np.ndarray, z_after: np.ndarray, k: int) -> BoundReport:
    """The equilibrium moves by at most k in L1 norm."""
    z_before = np.asarray(z_before, dtype=float)
    z_after = np.asarray(z_after, dtype=float)
    if z_before.shape != z_after.shape:
        raise ValueError(
            f"length mismatch: {z_before.shape} vs {z_after.shape}"
        )
    shift = float(np.sum(np.abs(z_after - z_before)))
    return _report("l1_shift", 0.0, shift, k, 0.0, float(k))


def audit_plan(
    inf: InfluenceMatrix,
    g: WeightedGraph,
    s: np.ndarray,
    plan: DisruptionPlan,
    spec: ObjectiveSpec,
) -> list[BoundReport]:
    """Run every structural check against a plan: the two growth bounds, the
    L1 shift, the change budget, and extreme-valued assignments.

    The objective spec is accepted for interface symmetry with the planners;
    the audited bounds themselves are objective-independent.
    """
    s = np.asarray(s, dtype=float)
    if s.shape != (g.n,):
        raise ValueError(f"opinion vector has shape {s.shape}, expected ({g.n},)")
    if plan.original.shape != s.shape or not np.allclose(
        plan.original, s, rtol=0.0, atol=1e-12
    ):
        raise ValueError("plan was built for a different innate opinion vector")
    nodes = [j for j, _ in plan.takeovers]
    if len(set(nodes)) != len(nodes):
        raise ValueError("plan takes over the same node twice")
    expected = s.copy()
    for j, target in plan.takeovers:
        expected[j] = target
    if not np.array_equal(expected, plan.final):
        raise ValueError("plan's final opinions are inconsistent with its takeovers")

    k = len(plan.takeovers)
    z_before = equilibrium(inf, s)
    z_after = equilibrium(inf, plan.final)
    reports = [
        check_polarization_bound(polarization(z_before), polarization(z_after), k),
        check_disagreement_bound(
            disagreement(g, z_before), disagreement(g, z_after), k, degrees(g).d_max
        ),
        check_l1_shift(z_before, z_after, k),
        _report("budget", 0.0, float(plan.num_changes), k, 0.0, float(k)),
    ]
    off_extreme = max(
        (min(abs(target), abs(target - 1.0)) for _, target in plan.takeovers),
        default=0.0,
    )
    reports.append(_report("extreme_assignments", 0.0, off_extreme, k, 0.0, 0.0))
    return reports
