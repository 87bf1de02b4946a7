"""Seeded synthetic graphs and innate opinions.

Three generative models: Erdos-Renyi, preferential attachment, and the
two-community stochastic block model. Edge weights are uniform on (0, 1]
(drawn as 1 - U to exclude zero). All randomness flows through an explicit
numpy Generator backed by the counter-based Philox bit generator, so a seed
plus a config replays bit-identically within this implementation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import WeightedGraph, build_graph

__all__ = [
    "RNG_NAME",
    "make_rng",
    "erdos_renyi",
    "preferential_attachment",
    "stochastic_block",
    "opinions_uniform",
    "opinions_beta_communities",
    "GeneratorConfig",
    "generate",
]

RNG_NAME = "philox4x64/seedseq-v1"


def make_rng(seed: int, *spawn_key: int) -> np.random.Generator:
    """Philox generator for a seed; spawn_key derives independent substreams."""
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(seed, spawn_key=spawn_key))
    )


def _edge_weights(rng: np.random.Generator, count: int) -> np.ndarray:
    # 1 - U[0,1) lies in (0, 1]
    return 1.0 - rng.random(count)


def _pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n, k=1)


def erdos_renyi(n: int, p: float, rng: np.random.Generator) -> WeightedGraph:
    """Each unordered pair is an edge independently with probability p."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"p must be in [0, 1], got {p}")
    iu, ju = _pairs(n)
    mask = rng.random(iu.size) < p
    us, vs = iu[mask], ju[mask]
    ws = _edge_weights(rng, us.size)
    return build_graph(n, zip(us.tolist(), vs.tolist(), ws.tolist()))


def preferential_attachment(
    n: int, m_attach: int, rng: np.random.Generator
) -> WeightedGraph:
    """Growing graph: each new node attaches to m_attach distinct existing
    nodes, chosen proportionally to current degree (without replacement).

    Starts from a complete graph on m_attach + 1 nodes, so the result is
    connected and every node has degree at least m_attach.
    """
    if m_attach < 1:
        raise ValueError(f"m_attach must be at least 1, got {m_attach}")
    if n <= m_attach:
        raise ValueError(f"n must exceed m_attach, got n={n}, m_attach={m_attach}")
    seed_size = m_attach + 1
    edges: list[tuple[int, int, float]] = []
    deg = np.zeros(n, dtype=np.int64)
    for i in range(seed_size):
        for j in range(i + 1, seed_size):
            edges.append((i, j, float(_edge_weights(rng, 1)[0])))
    deg[:seed_size] = seed_size - 1
    for v in range(seed_size, n):
        avail = deg[:v].astype(float)
        targets = []
        for _ in range(m_attach):
            probs = avail / avail.sum()
            t = int(rng.choice(v, p=probs))
            targets.append(t)
            avail[t] = 0.0  # without replacement
        for t in targets:
            edges.append((t, v, float(_edge_weights(rng, 1)[0])))
            deg[t] += 1
        deg[v] = m_attach
    return build_graph(n, edges)


def stochastic_block(
    n: int, p11: float, p22: float, p12: float, rng: np.random.Generator
) -> tuple[WeightedGraph, np.ndarray]:
    """Two equal communities; connection probability depends on membership.

    Returns the graph and the community labels (0 for the first half, 1 for
    the second).
    """
    if n < 2 or n % 2 != 0:
        raise ValueError(f"n must be even and at least 2, got {n}")
    for name, p in (("p11", p11), ("p22", p22), ("p12", p12)):
        if not (0.0 <= p <= 1.0):
            raise ValueError(f"{name} must be in [0, 1], got {p}")
    labels = np.repeat(np.array([0, 1], dtype=np.int64), n // 2)
    iu, ju = _pairs(n)
    same = labels[iu] == labels[ju]
    prob = np.where(same, np.where(labels[iu] == 0, p11, p22), p12)
    mask = rng.random(iu.size) < prob
    us, vs = iu[mask], ju[mask]
    ws = _edge_weights(rng, us.size)
    g = build_graph(n, zip(us.tolist(), vs.tolist(), ws.tolist()))
    return g, labels


def opinions_uniform(n: int, rng: np.random.Generator) -> np.ndarray:
    """i.i.d. uniform innate opinions on [0, 1]."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    return rng.random(n)


def opinions_beta_communities(
    labels: np.ndarray,
    alpha1: float,
    beta1: float,
    alpha2: float,
    beta2: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Community-conditional Beta opinions: Beta(alpha1, beta1) where the
    label is 0, Beta(alpha2, beta2) where it is 1."""
    for name, v in (
        ("alpha1", alpha1),
        ("beta1", beta1),
        ("alpha2", alpha2),
        ("beta2", beta2),
    ):
        if v <= 0:
            raise ValueError(f"{name} must be positive, got {v}")
    labels = np.asarray(labels)
    out = np.empty(labels.size)
    first = labels == 0
    out[first] = rng.beta(alpha1, beta1, int(first.sum()))
    out[~first] = rng.beta(alpha2, beta2, int((~first).sum()))
    return out


@dataclass
class GeneratorConfig:
    """Instance recipe: model, its parameters, the opinion rule, and a seed."""

    model: str = "er"  # er | pa | sbm
    n: int = 1000
    p: float = 0.2
    m_attach: int = 5
    p11: float = 0.7
    p22: float = 0.7
    p12: float = 0.1
    opinions: str = "uniform"  # uniform | beta
    alpha1: float = 5.0
    beta1: float = 2.0
    alpha2: float = 2.0
    beta2: float = 5.0
    seed: int = 0


def generate(
    cfg: GeneratorConfig,
) -> tuple[WeightedGraph, np.ndarray, np.ndarray | None, str]:
    """Build (graph, opinions, labels-or-None, graph_id) from a config.

    The graph is drawn first and the opinions second from one seeded stream,
    so a (config, seed) pair identifies the instance.
    """
    rng = make_rng(cfg.seed)
    labels: np.ndarray | None = None
    if cfg.model == "er":
        g = erdos_renyi(cfg.n, cfg.p, rng)
        graph_id = f"er-n{cfg.n}-p{cfg.p:g}-s{cfg.seed}"
    elif cfg.model == "pa":
        g = preferential_attachment(cfg.n, cfg.m_attach, rng)
        graph_id = f"pa-n{cfg.n}-m{cfg.m_attach}-s{cfg.seed}"
    elif cfg.model == "sbm":
        g, labels = stochastic_block(cfg.n, cfg.p11, cfg.p22, cfg.p12, rng)
        graph_id = (
            f"sbm-n{cfg.n}-p{cfg.p11:g}-{cfg.p22:g}-{cfg.p12:g}-s{cfg.seed}"
        )
    else:
        raise ValueError(f"unknown model {cfg.model!r} (expected er, pa, or sbm)")
    if cfg.opinions == "uniform":
        s = opinions_uniform(cfg.n, rng)
    elif cfg.opinions == "beta":
        if labels is None:
            raise ValueError("beta opinions need community labels (model sbm)")
        s = opinions_beta_communities(
            labels, cfg.alpha1, cfg.beta1, cfg.alpha2, cfg.beta2, rng
        )
    else:
        raise ValueError(
            f"unknown opinion rule {cfg.opinions!r} (expected uniform or beta)"
        )
    return g, s, labels, graph_id
