"""Budgeted takeover algorithms for maximizing disagreement/polarization.

Every strategy picks up to k distinct nodes and rewrites their innate
opinions to an extreme in {0, 1}. The greedy algorithm evaluates, at each
step, every (node, extreme) candidate and keeps the best one as long as the
objective does not decrease; the other heuristics replace the node-selection
rule with cheaper proxies (centrality of opinion, degree, or chance) and
always spend the full budget.

Candidate evaluation is O(1) per candidate: with f(s) = s^T A s and the
gradient cache grad = A s, changing coordinate j to value a costs
f += 2*(a - s_j)*grad_j + (a - s_j)^2 * A_jj, and an accepted change
refreshes the cache in O(n).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from math import comb

import numpy as np

from .dynamics import InfluenceMatrix
from .graph import WeightedGraph, degrees
from .objectives import ObjectiveSpec, quadratic_form_matrix

__all__ = [
    "Heuristic",
    "DisruptionPlan",
    "greedy",
    "mean_opinion",
    "max_degree",
    "random_heuristic",
    "brute_force_optimal",
    "run_heuristic",
]

EXTREMES = (0.0, 1.0)


class Heuristic(str, Enum):
    GREEDY = "greedy"
    MEAN_OPINION = "mean_opinion"
    MEAN_OPINION_RANDOMIZED = "mean_opinion_randomized"
    MAX_DEGREE = "max_degree"
    MAX_WEIGHTED_DEGREE = "max_weighted_degree"
    RANDOM = "random"


@dataclass
class DisruptionPlan:
    """Ordered takeovers (node, assigned extreme) with the objective trajectory.

    trajectory[i] is the objective value after the first i takeovers, so
    trajectory[0] is the untouched baseline. stopped_early marks a greedy run
    that quit before exhausting the budget.
    """

    takeovers: list[tuple[int, float]]
    original: np.ndarray
    final: np.ndarray
    trajectory: list[float]
    stopped_early: bool = False

    @property
    def num_changes(self) -> int:
        """How many innate opinions actually differ from the original."""
        return int(np.count_nonzero(self.final != self.original))

    def value_at(self, k: int) -> float:
        """Objective value once a budget of k has been spent (prefix of the plan)."""
        return self.trajectory[min(k, len(self.takeovers))]


class _QuadraticState:
    """Tracks f(s) = s^T A s under single-coordinate assignments.

    Owned by a single run; candidate scans only read, applying writes.
    """

    def __init__(self, a: np.ndarray, s: np.ndarray):
        self.a = a
        self.diag = np.ascontiguousarray(np.diag(a))
        self.s = np.asarray(s, dtype=float).copy()
        self.grad = a @ self.s
        self.value = float(self.s @ self.grad)

    def gains_for(self, target: float) -> np.ndarray:
        """Objective gain of assigning `target` to each coordinate."""
        delta = target - self.s
        return 2.0 * delta * self.grad + delta * delta * self.diag

    def gain(self, j: int, target: float) -> float:
        delta = target - self.s[j]
        return float(2.0 * delta * self.grad[j] + delta * delta * self.diag[j])

    def apply(self, j: int, target: float) -> None:
        delta = target - self.s[j]
        self.value += self.gain(j, target)
        self.grad += delta * self.a[:, j]
        self.s[j] = target


def _check_budget(k: int, n: int) -> int:
    if not isinstance(k, (int, np.integer)) or not (0 <= k <= n):
        raise ValueError(f"budget k must be an integer in [0, {n}], got {k!r}")
    return int(k)


def _best_extreme(state: _QuadraticState, j: int) -> tuple[float, float]:
    """(assigned value, gain) optimizing f over {0, 1}; ties prefer 0."""
    gain0 = state.gain(j, 0.0)
    gain1 = state.gain(j, 1.0)
    if gain1 > gain0:
        return 1.0, gain1
    return 0.0, gain0


def greedy(
    inf: InfluenceMatrix,
    g: WeightedGraph,
    s: np.ndarray,
    k: int,
    spec: ObjectiveSpec,
) -> DisruptionPlan:
    """Per step, take the (node, extreme) pair with the largest objective gain.

    Stops before exhausting the budget only when every remaining move would
    strictly decrease the objective (zero-gain moves are taken). Requires a
    graph without isolated nodes, where optimal changes are provably extreme.
    """
    s = np.asarray(s, dtype=float)
    k = _check_budget(k, g.n)
    if g.n and np.any(degrees(g).unweighted == 0):
        raise ValueError("greedy requires a graph with no isolated nodes")
    state = _QuadraticState(quadratic_form_matrix(inf, spec), s)
    available = np.ones(g.n, dtype=bool)
    takeovers: list[tuple[int, float]] = []
    trajectory = [state.value]
    stopped = False
    for _ in range(k):
        gains0 = state.gains_for(0.0)
        gains1 = state.gains_for(1.0)
        best = np.where(gains1 > gains0, gains1, gains0)
        best[~available] = -np.inf
        j = int(np.argmax(best))  # first max: lowest index wins ties
        if best[j] < 0.0:
            stopped = True
            break
        target = 1.0 if gains1[j] > gains0[j] else 0.0
        state.apply(j, target)
        available[j] = False
        takeovers.append((j, target))
        trajectory.append(state.value)
    return DisruptionPlan(takeovers, s.copy(), state.s.copy(), trajectory, stopped)


def mean_opinion(
    inf: InfluenceMatrix,
    g: WeightedGraph,
    s: np.ndarray,
    k: int,
    spec: ObjectiveSpec,
    randomized: bool = False,
    rng: np.random.Generator | None = None,
    rule: str = "closest",
) -> DisruptionPlan:
    """Target the centrist: the node whose current innate opinion is nearest
    the current mean, recomputed after every change.

    The assigned extreme optimizes the objective, or is a fair coin when
    randomized. rule="farthest" flips the selection to the literal opposite
    (most extreme opinion first) for comparison runs. Never stops early.
    """
    if rule not in ("closest", "farthest"):
        raise ValueError(f"unknown mean-opinion rule {rule!r}")
    if randomized and rng is None:
        raise ValueError("randomized mean_opinion needs an rng")
    s = np.asarray(s, dtype=float)
    k = _check_budget(k, g.n)
    state = _QuadraticState(quadratic_form_matrix(inf, spec), s)
    available = np.ones(g.n, dtype=bool)
    takeovers: list[tuple[int, float]] = []
    trajectory = [state.value]
    for _ in range(k):
        dist = np.abs(state.s - state.s.mean())
        if rule == "closest":
            dist[~available] = np.inf
            j = int(np.argmin(dist))
        else:
            dist[~available] = -np.inf
            j = int(np.argmax(dist))
        if randomized:
            target = float(rng.integers(0, 2))
        else:
            target, _ = _best_extreme(state, j)
        state.apply(j, target)
        available[j] = False
        takeovers.append((j, target))
        trajectory.append(state.value)
    return DisruptionPlan(takeovers, s.copy(), state.s.copy(), trajectory, False)


def max_degree(
    inf: InfluenceMatrix,
    g: WeightedGraph,
    s: np.ndarray,
    k: int,
    spec: ObjectiveSpec,
    weighted: bool = False,
) -> DisruptionPlan:
    """Take over the best-connected remaining node (neighbor count, or total
    edge weight when weighted); the assigned extreme optimizes the objective."""
    s = np.asarray(s, dtype=float)
    k = _check_budget(k, g.n)
    prof = degrees(g)
    score = prof.weighted if weighted else prof.unweighted.astype(float)
    score = score.copy()
    state = _QuadraticState(quadratic_form_matrix(inf, spec), s)
    takeovers: list[tuple[int, float]] = []
    trajectory = [state.value]
    for _ in range(k):
        j = int(np.argmax(score))
        score[j] = -np.inf
        target, _ = _best_extreme(state, j)
        state.apply(j, target)
        takeovers.append((j, target))
        trajectory.append(state.value)
    return DisruptionPlan(takeovers, s.copy(), state.s.copy(), trajectory, False)


def random_heuristic(
    inf: InfluenceMatrix,
    g: WeightedGraph,
    s: np.ndarray,
    k: int,
    spec: ObjectiveSpec,
    rng: np.random.Generator,
) -> DisruptionPlan:
    """Uniformly random node, fair-coin extreme: the baseline adversary."""
    s = np.asarray(s, dtype=float)
    k = _check_budget(k, g.n)
    state = _QuadraticState(quadratic_form_matrix(inf, spec), s)
    remaining = list(range(g.n))
    takeovers: list[tuple[int, float]] = []
    trajectory = [state.value]
    for _ in range(k):
        j = remaining.pop(int(rng.integers(0, len(remaining))))
        target = float(rng.integers(0, 2))
        state.apply(j, target)
        takeovers.append((j, target))
        trajectory.append(state.value)
    return DisruptionPlan(takeovers, s.copy(), state.s.copy(), trajectory, False)


def brute_force_optimal(
    inf: InfluenceMatrix,
    g: WeightedGraph,
    s: np.ndarray,
    k: int,
    spec: ObjectiveSpec,
) -> DisruptionPlan:
    """Exact maximizer over all subsets of at most k nodes and extreme values.

    Restricting assignments to {0, 1} is lossless because the objectives are
    convex in the innate opinions. Ties resolve to the lexicographically
    smallest plan (fewest changes, then lowest nodes, then value 0). Guarded
    to at most 1e7 candidates.
    """
    s = np.asarray(s, dtype=float)
    k = _check_budget(k, g.n)
    n = g.n
    total = sum(comb(n, t) * 2**t for t in range(k + 1))
    if total > 10_000_000:
        raise ValueError(
            f"brute force would enumerate {total} candidates (limit 1e7); "
            "reduce n or k"
        )
    a = quadratic_form_matrix(inf, spec)
    grad0 = a @ s
    base = float(s @ grad0)
    best_value = base
    best: tuple[tuple[int, float], ...] = ()
    for t in range(1, k + 1):
        for subset in itertools.combinations(range(n), t):
            idx = np.asarray(subset)
            sub_a = a[np.ix_(idx, idx)]
            sub_g = grad0[idx]
            sub_s = s[idx]
            for assignment in itertools.product(EXTREMES, repeat=t):
                delta = np.asarray(assignment) - sub_s
                if np.any(delta == 0.0):
                    continue  # identical to a smaller subset, enumerated earlier
                value = base + 2.0 * float(delta @ sub_g) + float(delta @ sub_a @ delta)
                if value > best_value:
                    best_value = value
                    best = tuple(zip(subset, assignment))
    state = _QuadraticState(a, s)
    trajectory = [state.value]
    for j, target in best:
        state.apply(j, target)
        trajectory.append(state.value)
    return DisruptionPlan(list(best), s.copy(), state.s.copy(), trajectory, False)


def run_heuristic(
    kind: Heuristic | str,
    inf: InfluenceMatrix,
    g: WeightedGraph,
    s: np.ndarray,
    k: int,
    spec: ObjectiveSpec,
    rng: np.random.Generator | None = None,
    mean_opinion_rule: str = "closest",
) -> DisruptionPlan:
    """Dispatch a heuristic by name. Randomized kinds require an rng."""
    kind = Heuristic(kind)
    if kind is Heuristic.GREEDY:
        return greedy(inf, g, s, k, spec)
    if kind is Heuristic.MEAN_OPINION:
        return mean_opinion(inf, g, s, k, spec, rule=mean_opinion_rule)
    if kind is Heuristic.MEAN_OPINION_RANDOMIZED:
        if rng is None:
            raise ValueError(f"{kind.value} needs an rng")
        return mean_opinion(
            inf, g, s, k, spec, randomized=True, rng=rng, rule=mean_opinion_rule
        )
    if kind is Heuristic.MAX_DEGREE:
        return max_degree(inf, g, s, k, spec, weighted=False)
    if kind is Heuristic.MAX_WEIGHTED_DEGREE:
        return max_degree(inf, g, s, k, spec, weighted=True)
    if rng is None:
        raise ValueError(f"{kind.value} needs an rng")
    return random_heuristic(inf, g, s, k, spec, rng)
