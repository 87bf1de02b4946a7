"""Experiment driver: generate instances, sweep budgets, audit bounds.

Subcommands:
  gen    write a synthetic instance as edge-list + opinion files
  sweep  run heuristics x objectives over a budget schedule, emit CSV
  audit  re-check a stored plan against the structural bounds
  brute  exact optimum on a small instance
  table  report objective values at chosen budgets from a sweep CSV

A sweep config file is flat `key = value` text mirroring SweepConfig fields;
command-line flags override file values. Identical inputs and seeds yield
byte-identical outputs.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass, field

from . import __version__
from .adversary import Heuristic, run_heuristic
from .analysis import BoundReport, audit_plan
from .dataio import (
    ParseError,
    SweepRow,
    load_dataset,
    load_plan,
    read_sweep_csv,
    save_edgelist,
    save_opinions,
    save_plan,
    write_sweep_csv,
)
from .dynamics import influence
from .generators import RNG_NAME, GeneratorConfig, generate, make_rng
from .graph import remove_isolated
from .objectives import Objective, ObjectiveSpec
from .adversary import brute_force_optimal

__all__ = ["SweepConfig", "SweepResult", "run_sweep", "table_report", "main"]

ALL_HEURISTICS = tuple(h.value for h in Heuristic)
ALL_OBJECTIVES = tuple(o.value for o in Objective)


@dataclass
class SweepConfig:
    """Everything a sweep needs: instance source, grid, seeds, and outputs."""

    # generator source (used when no edge file is given)
    model: str = "er"
    n: int = 1000
    p: float = 0.2
    m_attach: int = 5
    p11: float = 0.7
    p22: float = 0.7
    p12: float = 0.1
    opinions: str = "uniform"
    alpha1: float = 5.0
    beta1: float = 2.0
    alpha2: float = 2.0
    beta2: float = 5.0
    # dataset source
    edges: str | None = None
    opinions_file: str | None = None
    weighted: bool = False
    # experiment grid
    heuristics: tuple[str, ...] = ALL_HEURISTICS
    objectives: tuple[str, ...] = ALL_OBJECTIVES
    lam: float = 1.0
    k_max: int | None = None
    k_step: int = 1
    seeds: tuple[int, ...] = (0,)
    mean_opinion_rule: str = "closest"
    # outputs
    out: str | None = None
    audit: bool = False
    plans_out: str | None = None


@dataclass
class SweepResult:
    rows: list[SweepRow]
    audits: list[tuple[str, str, int, list[BoundReport]]] = field(default_factory=list)
    graph_id: str = ""

    def audits_passed(self) -> bool:
        return all(r.passed for _, _, _, reports in self.audits for r in reports)

    def audit_summary(self) -> list[str]:
        lines = []
        for heuristic, objective, seed, reports in self.audits:
            status = "pass" if all(r.passed for r in reports) else "FAIL"
            lines.append(f"audit heuristic={heuristic} objective={objective} seed={seed}: {status}")
        return lines


def _instance(cfg: SweepConfig, seed: int):
    """Build (graph, opinions, graph_id) for one seed; isolated nodes are
    always dropped (identity on connected instances)."""
    if cfg.edges:
        if not cfg.opinions_file:
            raise ValueError("dataset sweeps need both --edges and --opinions-file")
        name = os.path.splitext(os.path.basename(cfg.edges))[0]
        ds = load_dataset(name, cfg.edges, cfg.opinions_file, weighted=cfg.weighted)
        g, s, _ = remove_isolated(ds.graph, ds.opinions)
        return g, s, name
    gcfg = GeneratorConfig(
        model=cfg.model,
        n=cfg.n,
        p=cfg.p,
        m_attach=cfg.m_attach,
        p11=cfg.p11,
        p22=cfg.p22,
        p12=cfg.p12,
        opinions=cfg.opinions,
        alpha1=cfg.alpha1,
        beta1=cfg.beta1,
        alpha2=cfg.alpha2,
        beta2=cfg.beta2,
        seed=seed,
    )
    g, s, _, graph_id = generate(gcfg)
    g, s, _ = remove_isolated(g, s)
    return g, s, graph_id


def run_sweep(cfg: SweepConfig) -> SweepResult:
    """Run the full grid. Budget-k values reuse the prefix of one full-budget
    plan per (heuristic, objective, seed) cell; heuristic randomness comes
    from per-cell Philox substreams so cell order never matters."""
    if not cfg.heuristics:
        raise ValueError("heuristic set must not be empty")
    if not cfg.objectives:
        raise ValueError("objective set must not be empty")
    if not cfg.seeds:
        raise ValueError("seed list must not be empty")
    if cfg.k_step < 1:
        raise ValueError(f"k_step must be at least 1, got {cfg.k_step}")
    heuristics = [Heuristic(h) for h in cfg.heuristics]
    objectives = [Objective(o) for o in cfg.objectives]
    rows: list[SweepRow] = []
    audits: list[tuple[str, str, int, list[BoundReport]]] = []
    graph_id = ""
    for seed in cfg.seeds:
        g, s, graph_id = _instance(cfg, seed)
        k_max = cfg.k_max if cfg.k_max is not None else g.n // 2
        if not (0 <= k_max <= g.n):
            raise ValueError(f"k_max must be in [0, {g.n}], got {k_max}")
        ks = list(range(0, k_max + 1, cfg.k_step))
        inf = influence(g)
        for h in heuristics:
            for o in objectives:
                spec = ObjectiveSpec(o, cfg.lam)
                # substream ids use canonical enum positions, so running a
                # subset of heuristics replays the same per-cell streams
                rng = make_rng(seed, list(Heuristic).index(h), list(Objective).index(o))
                plan = run_heuristic(
                    h, inf, g, s, ks[-1] if ks else 0, spec,
                    rng=rng, mean_opinion_rule=cfg.mean_opinion_rule,
                )
                rows.extend(
                    SweepRow(h.value, o.value, cfg.lam, k, plan.value_at(k), seed, graph_id)
                    for k in ks
                )
                if cfg.audit:
                    audits.append((h.value, o.value, seed, audit_plan(inf, g, s, plan, spec)))
                if cfg.plans_out:
                    os.makedirs(cfg.plans_out, exist_ok=True)
                    save_plan(
                        os.path.join(cfg.plans_out, f"{h.value}-{o.value}-s{seed}.jsonl"),
                        plan,
                        meta={
                            "heuristic": h.value,
                            "objective": o.value,
                            "lambda": cfg.lam,
                            "seed": seed,
                            "graph_id": graph_id,
                        },
                    )
    result = SweepResult(rows=rows, audits=audits, graph_id=graph_id)
    if cfg.out:
        write_sweep_csv(rows, cfg.out)
    return result


OBJECTIVE_ORDER = {o.value: i for i, o in enumerate(Objective)}


def table_report(rows: list[SweepRow], ks: list[int], heuristic: str = "greedy") -> str:
    """Objective-by-budget table: one row per objective, columns original
    (k=0) plus the requested budgets."""
    mine = [r for r in rows if r.heuristic == heuristic]
    if not mine:
        raise ValueError(f"no rows for heuristic {heuristic!r}")
    objectives = sorted(
        {r.objective for r in mine}, key=lambda o: OBJECTIVE_ORDER.get(o, 99)
    )
    values = {(r.objective, r.k): r.value for r in mine}
    for obj in objectives:
        for k in [0, *ks]:
            if (obj, k) not in values:
                raise ValueError(f"k={k} missing from sweep for objective {obj!r}")
    headers = ["objective", "original"] + [f"k={k}" for k in ks]
    body = [
        [obj] + [f"{values[(obj, k)]:.4g}" for k in [0, *ks]] for obj in objectives
    ]
    widths = [
        max(len(headers[c]), *(len(row[c]) for row in body))
        for c in range(len(headers))
    ]
    fmt_row = lambda cells: "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    return "\n".join([fmt_row(headers), *(fmt_row(r) for r in body)])


def _parse_config_file(path: str) -> dict:
    """Flat `key = value` lines with # comments; keys mirror SweepConfig."""
    fields = {f.name: f for f in dataclasses.fields(SweepConfig)}
    out: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParseError(f"{path}:{lineno}: expected `key = value`")
            key, _, raw_val = line.partition("=")
            key = key.strip().replace("-", "_")
            val = raw_val.strip()
            if key not in fields:
                raise ParseError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = _coerce_config_value(key, val, path, lineno)
    return out


def _coerce_config_value(key: str, val: str, path: str, lineno: int):
    try:
        if key in ("heuristics", "objectives"):
            return tuple(tok.strip() for tok in val.split(",") if tok.strip())
        if key == "seeds":
            return tuple(int(tok) for tok in val.split(",") if tok.strip())
        if key in ("audit", "weighted"):
            if val.lower() in ("true", "1", "yes"):
                return True
            if val.lower() in ("false", "0", "no"):
                return False
            raise ValueError(val)
        if key in ("n", "m_attach", "k_max", "k_step"):
            return int(val)
        if key in ("p", "p11", "p22", "p12", "lam", "alpha1", "beta1", "alpha2", "beta2"):
            return float(val)
        return val
    except ValueError:
        raise ParseError(f"{path}:{lineno}: bad value {val!r} for {key}") from None


def _add_generator_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", choices=["er", "pa", "sbm"], default=None)
    parser.add_argument("--n", type=int, default=None)
    parser.add_argument("--p", type=float, default=None)
    parser.add_argument("--m-attach", type=int, default=None)
    parser.add_argument("--p11", type=float, default=None)
    parser.add_argument("--p22", type=float, default=None)
    parser.add_argument("--p12", type=float, default=None)
    parser.add_argument("--opinions", choices=["uniform", "beta"], default=None)
    parser.add_argument("--alpha1", type=float, default=None)
    parser.add_argument("--beta1", type=float, default=None)
    parser.add_argument("--alpha2", type=float, default=None)
    parser.add_argument("--beta2", type=float, default=None)


def _add_dataset_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--edges", default=None, help="edge-list file (`u v [w]` lines)")
    parser.add_argument("--opinions-file", default=None, help="opinion file (`id value` lines)")
    parser.add_argument(
        "--weighted",
        action="store_const",
        const=True,
        default=None,
        help="edge-list lines carry a weight column",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opdisrupt",
        description="Opinion-dynamics network disruption experiments",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"opdisrupt {__version__} (rng {RNG_NAME})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a synthetic instance to files")
    _add_generator_flags(gen)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="output prefix (.edges/.opinions)")

    sweep = sub.add_parser("sweep", help="run a budget sweep, write CSV")
    sweep.add_argument("--config", default=None, help="flat key=value config file")
    _add_generator_flags(sweep)
    _add_dataset_flags(sweep)
    sweep.add_argument("--heuristics", default=None, help="comma list; default all six")
    sweep.add_argument("--objectives", default=None, help="comma list; default all three")
    sweep.add_argument("--lambda", dest="lam", type=float, default=None)
    sweep.add_argument("--k-max", type=int, default=None, help="default n//2")
    sweep.add_argument("--k-step", type=int, default=None)
    sweep.add_argument("--seed", type=int, default=None)
    sweep.add_argument("--seeds", default=None, help="comma list of seeds")
    sweep.add_argument("--mean-opinion-rule", choices=["closest", "farthest"], default=None)
    sweep.add_argument("--out", default=None, help="CSV output path")
    sweep.add_argument("--audit", action="store_const", const=True, default=None)
    sweep.add_argument("--plans-out", default=None, help="directory for plan files")

    audit = sub.add_parser("audit", help="re-check a stored plan")
    audit.add_argument("--plan", required=True)
    _add_generator_flags(audit)
    _add_dataset_flags(audit)
    audit.add_argument("--seed", type=int, default=None, help="override instance seed")
    audit.add_argument("--lambda", dest="lam", type=float, default=None)

    brute = sub.add_parser("brute", help="small-instance exact optimum")
    _add_generator_flags(brute)
    _add_dataset_flags(brute)
    brute.add_argument("--seed", type=int, default=0)
    brute.add_argument("--k", type=int, required=True)
    brute.add_argument("--objective", choices=list(ALL_OBJECTIVES), default="disagreement")
    brute.add_argument("--lambda", dest="lam", type=float, default=1.0)

    table = sub.add_parser("table", help="objective values at chosen budgets")
    table.add_argument("--in", dest="infile", required=True, help="sweep CSV")
    table.add_argument("--ks", default="", help="comma list of budgets")
    table.add_argument("--heuristic", default="greedy")
    return parser


def _sweep_config_from_args(args: argparse.Namespace) -> SweepConfig:
    cfg_values: dict = {}
    if args.config:
        cfg_values.update(_parse_config_file(args.config))
    for f in dataclasses.fields(SweepConfig):
        if f.name == "seeds":
            continue
        flag_val = getattr(args, f.name, None)
        if flag_val is not None:
            if f.name in ("heuristics", "objectives"):
                flag_val = tuple(tok.strip() for tok in flag_val.split(",") if tok.strip())
            cfg_values[f.name] = flag_val
    if getattr(args, "seeds", None) is not None:
        cfg_values["seeds"] = tuple(int(tok) for tok in args.seeds.split(",") if tok.strip())
    elif getattr(args, "seed", None) is not None:
        cfg_values["seeds"] = (args.seed,)
    return SweepConfig(**cfg_values)


def _generator_config_from_args(args: argparse.Namespace, seed: int) -> GeneratorConfig:
    kwargs = {"seed": seed}
    for name in (
        "model", "n", "p", "m_attach", "p11", "p22", "p12",
        "opinions", "alpha1", "beta1", "alpha2", "beta2",
    ):
        val = getattr(args, name, None)
        if val is not None:
            kwargs[name] = val
    return GeneratorConfig(**kwargs)


def _instance_from_args(args: argparse.Namespace, seed: int):
    if getattr(args, "edges", None):
        if not getattr(args, "opinions_file", None):
            raise ValueError("dataset instances need both --edges and --opinions-file")
        name = os.path.splitext(os.path.basename(args.edges))[0]
        ds = load_dataset(
            name, args.edges, args.opinions_file, weighted=bool(args.weighted)
        )
        g, s, _ = remove_isolated(ds.graph, ds.opinions)
        return g, s, name
    g, s, _, graph_id = generate(_generator_config_from_args(args, seed))
    g, s, _ = remove_isolated(g, s)
    return g, s, graph_id


def _cmd_gen(args: argparse.Namespace) -> int:
    g, s, _, graph_id = generate(_generator_config_from_args(args, args.seed))
    edges_path = args.out + ".edges"
    opinions_path = args.out + ".opinions"
    save_edgelist(edges_path, g, weighted=True)
    save_opinions(opinions_path, s)
    print(json.dumps({
        "graph_id": graph_id, "n": g.n, "m": g.m,
        "edges": edges_path, "opinions": opinions_path,
    }))
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _sweep_config_from_args(args)
    result = run_sweep(cfg)
    for line in result.audit_summary():
        print(line)
    if cfg.audit and not result.audits_passed():
        print("audit: bound violations detected", file=sys.stderr)
        return 1
    if not cfg.out:
        # no output file: print the CSV body to stdout
        from .dataio import SWEEP_CSV_HEADER, _fmt

        print(SWEEP_CSV_HEADER)
        for r in result.rows:
            print(
                f"{r.heuristic},{r.objective},{_fmt(r.lam)},{r.k},"
                f"{_fmt(r.value)},{r.seed},{r.graph_id}"
            )
    return 0


def _cmd_audit(args: argparse.Namespace) -> int:
    plan, meta = load_plan(args.plan)
    seed = args.seed if args.seed is not None else int(meta.get("seed", 0))
    g, s, _ = _instance_from_args(args, seed)
    objective = meta.get("objective", "disagreement")
    lam = args.lam if args.lam is not None else float(meta.get("lambda", 1.0))
    spec = ObjectiveSpec(objective, lam)
    reports = audit_plan(influence(g), g, s, plan, spec)
    for r in reports:
        print(r.line())
    return 0 if all(r.passed for r in reports) else 1


def _cmd_brute(args: argparse.Namespace) -> int:
    g, s, _ = _instance_from_args(args, args.seed)
    spec = ObjectiveSpec(args.objective, args.lam)
    plan = brute_force_optimal(influence(g), g, s, args.k, spec)
    print(json.dumps({
        "objective": args.objective,
        "lambda": args.lam,
        "k": args.k,
        "baseline": plan.trajectory[0],
        "value": plan.trajectory[-1],
        "takeovers": [[j, a] for j, a in plan.takeovers],
    }))
    return 0


def _cmd_table(args: argparse.Namespace) -> int:
    rows = read_sweep_csv(args.infile)
    ks = [int(tok) for tok in args.ks.split(",") if tok.strip()]
    print(table_report(rows, ks, heuristic=args.heuristic))
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "sweep": _cmd_sweep,
    "audit": _cmd_audit,
    "brute": _cmd_brute,
    "table": _cmd_table,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
