"""Acceptance suite: one test per criterion, one printed pass/fail line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines. Criterion
12 (figure/table rendering) lives in the frontend package's own test suite.

Criterion 9's 10x-growth sub-clause is known-unattainable on the pinned
dense random graph (see notes/decisions.md); the test states it faithfully
and is expected to stay red.
"""

import os
import time

import numpy as np
import pytest

from opdisrupt import (
    Heuristic,
    Objective,
    ObjectiveSpec,
    brute_force_optimal,
    equilibrium,
    erdos_renyi,
    greedy,
    influence,
    iterate_dynamics,
    make_rng,
    mean_opinion,
    objective_of_innate,
    opinions_beta_communities,
    opinions_uniform,
    preferential_attachment,
    random_heuristic,
    run_heuristic,
    stochastic_block,
)
from opdisrupt.analysis import audit_plan
from opdisrupt.cli import main
from opdisrupt.graph import build_graph, degrees

from oracles import naive_greedy, solve_equilibrium

DATA_DIR = os.path.join(os.path.dirname(__file__), "..", "data")


def _line(cid: int, name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"\nACCEPTANCE {cid:>2} {name}: {status}{suffix}")


def _instance_no_isolated(seed: int, n_lo: int, n_hi: int):
    """Seeded mixed-model instance with every node connected."""
    for attempt in range(50):
        rng = make_rng(seed, attempt)
        model = int(rng.integers(0, 3))
        if model == 0:
            n = int(rng.integers(n_lo, n_hi + 1))
            g = erdos_renyi(n, 0.25, rng)
        elif model == 1:
            n = int(rng.integers(n_lo, n_hi + 1))
            g = preferential_attachment(n, 3, rng)
        else:
            n = int(rng.integers(n_lo // 2, n_hi // 2 + 1)) * 2
            g, _ = stochastic_block(n, 0.7, 0.7, 0.1, rng)
        if int(degrees(g).unweighted.min()) > 0:
            s = opinions_uniform(g.n, rng)
            return g, s
    raise RuntimeError(f"no isolated-free instance for seed {seed}")


def test_criterion_1_single_edge_golden_values():
    g = build_graph(2, [(0, 1, 1.0)])
    inf = influence(g)
    s = np.array([0.5, 0.5])
    d_spec = ObjectiveSpec("disagreement")
    p_spec = ObjectiveSpec("polarization")

    def run_all():
        return (
            greedy(inf, g, s, 1, d_spec).trajectory[-1],
            greedy(inf, g, s, 2, d_spec).trajectory[-1],
            greedy(inf, g, s, 1, p_spec).trajectory[-1],
            greedy(inf, g, s, 2, p_spec).trajectory[-1],
        )

    values = run_all()
    expected = (1 / 36, 1 / 9, 1 / 72, 1 / 18)
    exact = all(abs(v - e) <= 1e-12 for v, e in zip(values, expected))
    best = min(
        (lambda t0: (run_all(), time.perf_counter() - t0))(time.perf_counter())[1]
        for _ in range(5)
    )
    fast = best < 1e-3
    ok = exact and fast
    _line(1, "single-edge golden values", ok, f"values={values}, best_time={best*1e6:.0f}us")
    assert exact, f"expected {expected}, got {values}"
    assert fast, f"4 greedy runs took {best*1e3:.3f} ms (budget 1 ms)"


def test_criterion_2_influence_matrix_invariants():
    worst_rowsum = 0.0
    worst_entry = 0.0
    worst_mean = 0.0
    for i in range(50):
        rng = make_rng(200 + i)
        model = i % 3
        if model == 0:
            n = int(rng.integers(20, 201))
            g = erdos_renyi(n, 0.15, rng)
        elif model == 1:
            n = int(rng.integers(20, 201))
            g = preferential_attachment(n, 5, rng)
        else:
            n = int(rng.integers(10, 101)) * 2
            g, _ = stochastic_block(n, 0.7, 0.7, 0.1, rng)
        inf = influence(g)
        m = inf.matrix
        assert np.array_equal(m, m.T), f"instance {i}: M not symmetric"
        worst_entry = min(worst_entry, float(m.min()))
        worst_rowsum = max(worst_rowsum, float(np.max(np.abs(m @ np.ones(g.n) - 1.0))))
        s = opinions_uniform(g.n, rng)
        z = equilibrium(inf, s)
        worst_mean = max(worst_mean, abs(float(z.mean() - s.mean())))
    ok = worst_entry >= -1e-12 and worst_rowsum <= 1e-9 and worst_mean <= 1e-9
    _line(
        2,
        "influence-matrix invariants (50 graphs)",
        ok,
        f"min_entry={worst_entry:.2e}, rowsum_err={worst_rowsum:.2e}, mean_err={worst_mean:.2e}",
    )
    assert worst_entry >= -1e-12
    assert worst_rowsum <= 1e-9
    assert worst_mean <= 1e-9


@pytest.fixture(scope="module")
def audit_bank():
    """500 seeded (graph, opinions, plan) triples with their audit reports."""
    bank = []
    kinds = list(Heuristic)
    objectives = list(Objective)
    for i in range(500):
        g, s = _instance_no_isolated(300 + i, 10, 60)
        rng = make_rng(300 + i, 999)
        k = int(rng.integers(0, 11))
        spec = ObjectiveSpec(objectives[i % 3])
        plan = run_heuristic(kinds[i % len(kinds)], influence(g), g, s, k, spec, rng=rng)
        reports = audit_plan(influence(g), g, s, plan, spec)
        bank.append({r.check: r for r in reports})
    return bank


def test_criterion_3_l1_shift_audit(audit_bank):
    failures = [b for b in audit_bank if not b["l1_shift"].passed]
    worst = min(b["l1_shift"].slack for b in audit_bank)
    ok = not failures
    _line(3, "L1-shift audit (500 plans)", ok, f"min_slack={worst:.3e}")
    assert ok, f"{len(failures)} plans violated the L1 bound"


def test_criterion_4_growth_bound_audits(audit_bank):
    bad_p = [b for b in audit_bank if not b["polarization_increase"].passed]
    bad_d = [b for b in audit_bank if not b["disagreement_increase"].passed]
    min_p = min(b["polarization_increase"].slack for b in audit_bank)
    min_d = min(b["disagreement_increase"].slack for b in audit_bank)
    ok = not bad_p and not bad_d
    _line(
        4,
        "polarization/disagreement bound audits (500 plans)",
        ok,
        f"min_slack P={min_p:.3e}, D={min_d:.3e}",
    )
    assert ok, f"{len(bad_p)} polarization / {len(bad_d)} disagreement violations"


@pytest.fixture(scope="module")
def small_optima():
    """100 brute-forced small instances, reused by criteria 5 and 6."""
    bank = []
    objectives = list(Objective)
    for i in range(100):
        g, s = _instance_no_isolated(700 + i, 4, 8)
        rng = make_rng(700 + i, 42)
        k = int(rng.integers(1, 3))
        spec = ObjectiveSpec(objectives[i % 3])
        inf = influence(g)
        best = brute_force_optimal(inf, g, s, k, spec)
        bank.append((g, s, k, spec, inf, best))
    return bank


def test_criterion_5_optima_are_extreme(small_optima):
    grid = np.linspace(0.1, 0.9, 9)
    worst_gap = -np.inf
    for g, s, k, spec, inf, best in small_optima:
        best_val = best.trajectory[-1]
        for j, target in best.takeovers:
            assert target in (0.0, 1.0), f"interior optimum value {target}"
            for a in grid:
                trial = best.final.copy()
                trial[j] = a
                gap = objective_of_innate(inf, g, trial, spec) - best_val
                worst_gap = max(worst_gap, gap)
    ok = worst_gap <= 1e-9
    _line(5, "optima sit at extremes (100 instances)", ok, f"max_interior_gap={worst_gap:.3e}")
    assert ok, f"an interior value beat the optimum by {worst_gap}"


def test_criterion_6_greedy_vs_brute_force(small_optima):
    over = 0
    band = 0
    for g, s, k, spec, inf, best in small_optima:
        baseline = best.trajectory[0]
        optimal = best.trajectory[-1]
        val = greedy(inf, g, s, k, spec).trajectory[-1]
        if val > optimal + 1e-9:
            over += 1
        if val >= baseline + 0.5 * (optimal - baseline) - 1e-12:
            band += 1
    ok = over == 0
    _line(
        6,
        "greedy never beats brute force (100 instances)",
        ok,
        f"violations={over}; REPORT band>=50% of optimal gain on {band}/100 (target >=90, informative)",
    )
    assert ok, f"greedy exceeded the optimum on {over} instances"


def test_criterion_7_incremental_matches_full_resolve():
    checked = 0
    worst = 0.0
    for i in range(20):
        g, s = _instance_no_isolated(900 + i, 20, 100)
        rng = make_rng(900 + i, 7)
        k = int(rng.integers(5, 21))
        kind = list(Objective)[i % 3]
        plan = greedy(influence(g), g, s, k, ObjectiveSpec(kind))
        seq, traj = naive_greedy(g, s, k, kind.value)
        assert plan.takeovers == seq, f"instance {i}: pick sequences differ"
        worst = max(worst, abs(plan.trajectory[-1] - traj[-1]))
        checked += 1
    ok = checked == 20 and worst <= 1e-8
    _line(7, "incremental greedy == full-resolve greedy (20 instances)", ok, f"max_value_gap={worst:.2e}")
    assert ok


def test_criterion_8_iterative_matches_direct():
    worst = 0.0
    for i in range(20):
        rng = make_rng(1100 + i)
        n = int(rng.integers(20, 201))
        g = erdos_renyi(n, 0.2, rng)
        s = opinions_uniform(n, rng)
        z_iter, _, converged = iterate_dynamics(g, s, tol=1e-10)
        assert converged, f"instance {i} did not converge"
        worst = max(worst, float(np.max(np.abs(z_iter - solve_equilibrium(g, s)))))
    ok = worst <= 1e-8
    _line(8, "iterative dynamics vs direct solve (20 instances)", ok, f"max_err={worst:.2e}")
    assert ok, f"max deviation {worst}"


def test_criterion_9_linear_growth_er():
    # Stated property: non-decreasing greedy trajectory, value(k=100) >=
    # 10*value(0) + 0.01, positive LS slope on k in [10, 100], under 60 s.
    # The 10x sub-clause is a spec defect on dense ER (see notes/decisions.md):
    # greedy tops out near 3x here, so this test is expected to stay red.
    t0 = time.perf_counter()
    rng = make_rng(9)
    g = erdos_renyi(200, 0.2, rng)
    s = opinions_uniform(200, rng)
    inf = influence(g)
    mono_ok, growth_ok, slope_ok = True, True, True
    details = []
    for kind in Objective:
        plan = greedy(inf, g, s, 100, ObjectiveSpec(kind))
        traj = np.array(plan.trajectory)
        mono_ok &= bool(np.all(np.diff(traj) >= 0.0))
        v0, v100 = plan.value_at(0), plan.value_at(100)
        growth_ok &= v100 >= 10.0 * v0 + 0.01
        ks = np.arange(10, 101)
        slope = float(np.polyfit(ks, [plan.value_at(int(k)) for k in ks], 1)[0])
        slope_ok &= slope > 0.0
        details.append(f"{kind.value}: v0={v0:.3f} v100={v100:.3f} slope={slope:.4f}")
    elapsed = time.perf_counter() - t0
    time_ok = elapsed < 60.0
    ok = mono_ok and growth_ok and slope_ok and time_ok
    _line(
        9,
        "linear growth on ER(200, 0.2)",
        ok,
        f"mono={mono_ok} 10x_clause={growth_ok} slope={slope_ok} t={elapsed:.1f}s | "
        + "; ".join(details),
    )
    assert mono_ok, "greedy trajectory decreased"
    assert slope_ok, "least-squares slope not positive"
    assert time_ok, f"took {elapsed:.1f}s"
    assert growth_ok, (
        "10x growth sub-clause unattainable on ER(200, 0.2): greedy reaches "
        "~3x the baseline for every objective (verified across seeds); the "
        "linear-growth claims (monotone, positive slope) hold. See "
        "notes/decisions.md."
    )


def _dataset_paths(name: str):
    return (
        os.path.join(DATA_DIR, f"{name}.edges"),
        os.path.join(DATA_DIR, f"{name}.opinions"),
    )


def test_criterion_10_tables_or_sbm_substitute():
    twitter = _dataset_paths("twitter")
    if os.path.exists(twitter[0]) and os.path.exists(twitter[1]):
        _criterion_10_dataset_branch(twitter)
        return
    # Substitute branch: fixed-seed SBM with community Beta opinions;
    # assert greedy >= mean-opinion >= random at k = n/4 for each objective,
    # plus the trajectory sanity clauses of criterion 9.
    rng = make_rng(100)
    g, labels = stochastic_block(200, 0.7, 0.7, 0.1, rng)
    s = opinions_beta_communities(labels, 5, 2, 2, 5, rng)
    inf = influence(g)
    quarter = g.n // 4
    ok = True
    details = []
    for kind in Objective:
        spec = ObjectiveSpec(kind)
        pg = greedy(inf, g, s, 100, spec)
        pm = mean_opinion(inf, g, s, 100, spec)
        pr = random_heuristic(inf, g, s, 100, spec, make_rng(100, 5, 0))
        vg, vm, vr = (p.value_at(quarter) for p in (pg, pm, pr))
        traj = np.array(pg.trajectory)
        slope = float(
            np.polyfit(np.arange(10, 101), [pg.value_at(int(k)) for k in range(10, 101)], 1)[0]
        )
        this_ok = vg >= vm >= vr and bool(np.all(np.diff(traj) >= 0.0)) and slope > 0
        ok &= this_ok
        details.append(f"{kind.value}: greedy={vg:.3f} mean_op={vm:.3f} random={vr:.3f}")
    _line(10, "SBM substitute ordering at k=n/4", ok, "; ".join(details))
    assert ok, "; ".join(details)


def _criterion_10_dataset_branch(paths):
    from opdisrupt.cli import SweepConfig, run_sweep

    cfg = SweepConfig(
        edges=paths[0],
        opinions_file=paths[1],
        heuristics=("greedy",),
        k_max=200,
        seeds=(0,),
    )
    rows = run_sweep(cfg).rows
    values = {(r.objective, r.k): r.value for r in rows}
    expected = {
        ("disagreement", 0): 0.48,
        ("polarization", 0): 0.29,
        ("weighted_sum", 0): 0.37,
        ("disagreement", 20): 2.12,
        ("polarization", 20): 2.34,
        ("weighted_sum", 20): 2.66,
    }
    errors = {
        key: abs(values[key] - want) / want for key, want in expected.items()
    }
    ok = all(err <= 0.10 for err in errors.values())
    _line(10, "Twitter table reproduction", ok, str(errors))
    assert ok, errors


def test_criterion_11_sweep_determinism(tmp_path):
    args = [
        "sweep", "--model", "er", "--n", "60", "--p", "0.2", "--seed", "7",
        "--k-max", "30",
    ]
    out1, out2 = tmp_path / "one.csv", tmp_path / "two.csv"
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    b1, b2 = out1.read_bytes(), out2.read_bytes()
    ok = b1 == b2 and len(b1) > 0
    _line(11, "byte-identical sweep replay", ok, f"{len(b1)} bytes")
    assert ok
