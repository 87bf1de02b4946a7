"""File formats: edge lists, opinion vectors, sweep CSVs, and plan records.

Edge lists are one `u v [w]` line per edge with `#` comments; node ids may
be arbitrary strings and are remapped to dense ints in first-seen order.
Opinion files are `id value` lines covering every node exactly once. Sweep
results use a fixed CSV schema with floats at 17 significant digits so a
write/read round trip is lossless. Plans are JSON-lines records.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .adversary import DisruptionPlan
from .graph import WeightedGraph, build_graph

__all__ = [
    "ParseError",
    "Dataset",
    "SWEEP_CSV_HEADER",
    "SweepRow",
    "load_edgelist",
    "load_opinions",
    "load_dataset",
    "save_edgelist",
    "save_opinions",
    "write_sweep_csv",
    "read_sweep_csv",
    "save_plan",
    "load_plan",
]

SWEEP_CSV_HEADER = "heuristic,objective,lambda,k,value,seed,graph_id"


class ParseError(ValueError):
    """Malformed input file; message carries the path and line number."""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _lines(path: str):
    """Yield (line_number, payload) with comments and blanks stripped."""
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            payload = raw.split("#", 1)[0].strip()
            if payload:
                yield lineno, payload


def load_edgelist(path: str, weighted: bool = False) -> tuple[WeightedGraph, dict[str, int]]:
    """Read an undirected edge list; returns the graph and external-id map.

    With weighted=False every line must be `u v` and weights default to 1.0;
    with weighted=True every line must be `u v w` with w in (0, 1].
    """
    id_map: dict[str, int] = {}

    def dense(token: str) -> int:
        if token not in id_map:
            id_map[token] = len(id_map)
        return id_map[token]

    edges: list[tuple[int, int, float]] = []
    seen: set[tuple[int, int]] = set()
    expected = 3 if weighted else 2
    for lineno, payload in _lines(path):
        tokens = payload.split()
        if len(tokens) != expected:
            raise ParseError(
                f"{path}:{lineno}: expected {expected} fields, got {len(tokens)}"
            )
        u, v = dense(tokens[0]), dense(tokens[1])
        if u == v:
            raise ParseError(f"{path}:{lineno}: self-loop on {tokens[0]!r}")
        if weighted:
            try:
                w = float(tokens[2])
            except ValueError:
                raise ParseError(
                    f"{path}:{lineno}: bad weight {tokens[2]!r}"
                ) from None
            if not (0.0 < w <= 1.0):
                raise ParseError(f"{path}:{lineno}: weight {w} outside (0, 1]")
        else:
            w = 1.0
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise ParseError(
                f"{path}:{lineno}: duplicate edge {tokens[0]!r} {tokens[1]!r}"
            )
        seen.add(key)
        edges.append((key[0], key[1], w))
    if not id_map:
        raise ParseError(f"{path}: no edges found")
    return build_graph(len(id_map), edges), id_map


def load_opinions(path: str, id_map: dict[str, int]) -> np.ndarray:
    """Read `id value` lines into a vector aligned with the dense ids.

    Every mapped node must appear exactly once; values outside [0, 1] are an
    error, never clamped.
    """
    n = len(id_map)
    values = np.full(n, np.nan)
    for lineno, payload in _lines(path):
        tokens = payload.split()
        if len(tokens) != 2:
            raise ParseError(f"{path}:{lineno}: expected `id value`, got {payload!r}")
        name, raw = tokens
        if name not in id_map:
            raise ParseError(f"{path}:{lineno}: unknown node id {name!r}")
        idx = id_map[name]
        if not np.isnan(values[idx]):
            raise ParseError(f"{path}:{lineno}: duplicate opinion for node {name!r}")
        try:
            val = float(raw)
        except ValueError:
            raise ParseError(f"{path}:{lineno}: bad value {raw!r}") from None
        if not (0.0 <= val <= 1.0):
            raise ParseError(f"{path}:{lineno}: opinion {val} outside [0, 1]")
        values[idx] = val
    missing = np.flatnonzero(np.isnan(values))
    if missing.size:
        inverse = {v: k for k, v in id_map.items()}
        names = ", ".join(repr(inverse[int(i)]) for i in missing[:5])
        raise ParseError(f"{path}: missing opinions for {missing.size} node(s): {names}")
    return values


@dataclass
class Dataset:
    """A named real-network instance: graph, innate opinions, and id map."""

    name: str
    graph: WeightedGraph
    opinions: np.ndarray
    id_map: dict[str, int]
    notes: str = ""


def load_dataset(
    name: str, edge_path: str, opinion_path: str, weighted: bool = False
) -> Dataset:
    graph, id_map = load_edgelist(edge_path, weighted=weighted)
    opinions = load_opinions(opinion_path, id_map)
    return Dataset(name=name, graph=graph, opinions=opinions, id_map=id_map)


def save_edgelist(path: str, g: WeightedGraph, weighted: bool = True) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for u, v, w in g.edges():
            if weighted:
                fh.write(f"{u} {v} {_fmt(w)}\n")
            else:
                fh.write(f"{u} {v}\n")


def save_opinions(path: str, values: np.ndarray) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for i, val in enumerate(np.asarray(values, dtype=float).tolist()):
            fh.write(f"{i} {_fmt(val)}\n")


@dataclass
class SweepRow:
    """One grid point of a budget sweep."""

    heuristic: str
    objective: str
    lam: float
    k: int
    value: float
    seed: int
    graph_id: str


def write_sweep_csv(rows: list[SweepRow], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(SWEEP_CSV_HEADER + "\n")
        for r in rows:
            fh.write(
                f"{r.heuristic},{r.objective},{_fmt(r.lam)},{r.k},"
                f"{_fmt(r.value)},{r.seed},{r.graph_id}\n"
            )


def read_sweep_csv(path: str) -> list[SweepRow]:
    rows: list[SweepRow] = []
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if header != SWEEP_CSV_HEADER:
            raise ParseError(
                f"{path}: bad header {header!r}, expected {SWEEP_CSV_HEADER!r}"
            )
        for lineno, raw in enumerate(fh, start=2):
            line = raw.rstrip("\n")
            if not line:
                continue
            fields = line.split(",")
            if len(fields) != 7:
                raise ParseError(f"{path}:{lineno}: expected 7 fields, got {len(fields)}")
            try:
                rows.append(
                    SweepRow(
                        heuristic=fields[0],
                        objective=fields[1],
                        lam=float(fields[2]),
                        k=int(fields[3]),
                        value=float(fields[4]),
                        seed=int(fields[5]),
                        graph_id=fields[6],
                    )
                )
            except ValueError:
                raise ParseError(f"{path}:{lineno}: malformed row {line!r}") from None
    return rows


def save_plan(path: str, plan: DisruptionPlan, meta: dict | None = None) -> None:
    """Write a plan as JSON lines: one header record, then one per takeover."""
    header = {
        "record": "plan_header",
        "stopped_early": plan.stopped_early,
        "original": np.asarray(plan.original, dtype=float).tolist(),
        "trajectory": [float(v) for v in plan.trajectory],
    }
    if meta:
        for key, val in meta.items():
            if key in header:
                raise ValueError(f"meta key {key!r} collides with a plan field")
            header[key] = val
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(header) + "\n")
        for node, value in plan.takeovers:
            fh.write(
                json.dumps({"record": "takeover", "node": int(node), "value": float(value)})
                + "\n"
            )


def load_plan(path: str) -> tuple[DisruptionPlan, dict]:
    """Read a plan file; returns the plan and any extra header metadata."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [line for line in (raw.strip() for raw in fh) if line]
    if not lines:
        raise ParseError(f"{path}: empty plan file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError:
        raise ParseError(f"{path}:1: not a JSON record") from None
    if header.get("record") != "plan_header":
        raise ParseError(f"{path}:1: expected a plan_header record")
    original = np.asarray(header["original"], dtype=float)
    takeovers: list[tuple[int, float]] = []
    for lineno, line in enumerate(lines[1:], start=2):
        try:
            rec = json.loads(line)
        except json.JSONDecodeError:
            raise ParseError(f"{path}:{lineno}: not a JSON record") from None
        if rec.get("record") != "takeover":
            raise ParseError(f"{path}:{lineno}: expected a takeover record")
        takeovers.append((int(rec["node"]), float(rec["value"])))
    final = original.copy()
    for node, value in takeovers:
        final[node] = value
    plan = DisruptionPlan(
        takeovers=takeovers,
        original=original,
        final=final,
        trajectory=[float(v) for v in header["trajectory"]],
        stopped_early=bool(header["stopped_early"]),
    )
    meta = {
        k: v
        for k, v in header.items()
        if k not in ("record", "stopped_early", "original", "trajectory")
    }
    return plan, meta
