"""Synthetic stand-ins for trust networks, used as fixtures and benchmarks."""
from __future__ import annotations

import numpy as np

from .graph import ProbabilisticGraph
from .ingest import RawTrustNetwork, WeightedGraph


def _distinct_pairs(rng: np.random.Generator, n: int, m: int) -> np.ndarray:
    """``m`` distinct unordered pairs of ``0..n-1`` as an ``(m, 2)`` array with ``u < v``."""
    possible = n * (n - 1) // 2
    if m > possible:
        raise ValueError(f"{m} edges do not fit on {n} nodes")
    got = np.empty(0, np.int64)
    while got.size < m:
        a = rng.integers(0, n, size=2 * (m - got.size) + 16)
        b = rng.integers(0, n, size=a.size)
        ok = a != b
        keys = np.minimum(a, b)[ok] * n + np.maximum(a, b)[ok]
        # keep first-seen order so the draw stays deterministic
        merged = np.concatenate([got, keys])
        _, first = np.unique(merged, return_index=True)
        got = merged[np.sort(first)][:m]
    return np.stack([got // n, got % n], axis=1)


def trust_network(n: int, m: int, seed: int = 0, mutual: float = 0.3,
                  scale: tuple[int, int] = (1, 10)) -> RawTrustNetwork:
    """Directed ratings on ``n`` nodes whose symmetrization has exactly ``m`` edges.

    A fraction ``mutual`` of pairs is rated in both directions.
    """
    rng = np.random.default_rng(seed)
    pairs = _distinct_pairs(rng, n, m)
    net = RawTrustNetwork()
    for i in range(n):
        net.node(f"user{i}")
    lo, hi = scale
    for a, b in pairs.tolist():
        if rng.random() < 0.5:
            a, b = b, a
        net.add(f"user{a}", f"user{b}", float(rng.integers(lo, hi + 1)))
        if rng.random() < mutual:
            net.add(f"user{b}", f"user{a}", float(rng.integers(lo, hi + 1)))
    return net


def random_graph(n: int, m: int, seed: int = 0, p: float | None = None) -> ProbabilisticGraph:
    """Random simple graph; probabilities uniform in [0, 1) unless ``p`` is given."""
    rng = np.random.default_rng(seed)
    pairs = _distinct_pairs(rng, n, m)
    probs = np.full(m, p) if p is not None else rng.random(m)
    return ProbabilisticGraph(n, pairs[:, 0], pairs[:, 1], probs)


def planted_blocks(sizes: list[int], p_in: float = 0.9, p_out: float = 0.05,
                   cross_edges: int = 1, seed: int = 0) -> tuple[WeightedGraph, list[np.ndarray]]:
    """Complete blocks joined by a few random cross edges.

    Weights are ``10 * p_in`` inside blocks and ``10 * p_out`` across, so the
    threshold ``t = 10`` yields exactly ``p_in`` and ``p_out``. Cross weights
    may fall below 1; this is a raw weight graph, not a normalized one.
    """
    rng = np.random.default_rng(seed)
    n = sum(sizes)
    block = np.repeat(np.arange(len(sizes)), sizes)
    us, vs, ws = [], [], []
    for a in range(n):
        for b in range(a + 1, n):
            if block[a] == block[b]:
                us.append(a)
                vs.append(b)
                ws.append(10 * p_in)
    cross = set()
    while len(cross) < cross_edges:
        a, b = sorted(rng.integers(0, n, size=2).tolist())
        if block[a] != block[b]:
            cross.add((a, b))
    for a, b in sorted(cross):
        us.append(a)
        vs.append(b)
        ws.append(10 * p_out)
    members = [np.flatnonzero(block == k) for k in range(len(sizes))]
    g = WeightedGraph(n, np.array(us, np.int64), np.array(vs, np.int64), np.array(ws, np.float64))
    return g, members
