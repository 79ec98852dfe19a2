"""Turn directed trust ratings into probabilistic graphs.

Pipeline: read ratings -> symmetrize -> normalize to [1, 10] -> probabilize
with threshold ``t`` (``p = min(1, w / t)``).
"""
from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError
from .formats import ParseError, PathLike
from .graph import ProbabilisticGraph

log = logging.getLogger(__name__)

W_MIN, W_MAX = 1.0, 10.0


@dataclass
class RawTrustNetwork:
    """Directed ratings over dense ids; ``names[i]`` is the name of node ``i``."""

    names: list[str] = field(default_factory=list)
    edges: list[tuple[int, int, float]] = field(default_factory=list)
    dropped: int = 0
    _ids: dict[str, int] = field(default_factory=dict, repr=False)

    def node(self, name: str) -> int:
        i = self._ids.get(name)
        if i is None:
            i = self._ids[name] = len(self.names)
            self.names.append(name)
        return i

    def add(self, source: str, target: str, rating: float) -> bool:
        """Record a rating; unfavorable (<= 0) or non-finite ratings are dropped."""
        if not math.isfinite(rating) or rating <= 0:
            self.dropped += 1
            return False
        self.edges.append((self.node(source), self.node(target), float(rating)))
        return True

    @property
    def n(self) -> int:
        return len(self.names)


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected weighted edges, one per unordered pair, stored with ``u < v``."""

    n: int
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray

    @property
    def num_edges(self) -> int:
        return int(self.u.size)


def read_ratings(path: PathLike) -> RawTrustNetwork:
    net = RawTrustNetwork()
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ParseError(path, lineno,
                                 f"expected 'source<TAB>target<TAB>rating', got {len(parts)} fields")
            try:
                rating = float(parts[2])
            except ValueError:
                raise ParseError(path, lineno, f"bad rating {parts[2]!r}") from None
            net.add(parts[0], parts[1], rating)
    if net.dropped:
        log.warning("%s: dropped %d unfavorable or non-finite ratings", path, net.dropped)
    return net


def symmetrize(net: RawTrustNetwork) -> WeightedGraph:
    """Collapse directed ratings into one undirected edge per rated pair.

    Repeated ratings in the same direction are averaged first; a pair rated
    both ways gets the mean of the two directional values. Self-loops are
    dropped. Edges come out sorted by ``(u, v)``.
    """
    directed: dict[tuple[int, int], list[float]] = defaultdict(list)
    loops = 0
    for a, b, r in net.edges:
        if a == b:
            loops += 1
            continue
        directed[(a, b)].append(r)
    if loops:
        log.warning("dropped %d self-loop ratings", loops)

    pairs: dict[tuple[int, int], list[float]] = defaultdict(list)
    for (a, b), rs in directed.items():
        pairs[(min(a, b), max(a, b))].append(math.fsum(rs) / len(rs))
    keys = sorted(pairs)
    u = np.array([k[0] for k in keys], np.int64)
    v = np.array([k[1] for k in keys], np.int64)
    w = np.array([math.fsum(pairs[k]) / len(pairs[k]) for k in keys], np.float64)
    return WeightedGraph(net.n, u, v, w)


def normalize(g: WeightedGraph) -> WeightedGraph:
    """Affine map of the weight range onto [1, 10]; a constant range maps to 10."""
    if g.num_edges == 0:
        raise InputError("cannot normalize a graph without edges")
    lo, hi = float(g.w.min()), float(g.w.max())
    if hi == lo:
        w = np.full_like(g.w, W_MAX)
    else:
        w = W_MIN + (W_MAX - W_MIN) * (g.w - lo) / (hi - lo)
        np.clip(w, W_MIN, W_MAX, out=w)
    return WeightedGraph(g.n, g.u, g.v, w)


def probabilize(g: WeightedGraph, t: float) -> ProbabilisticGraph:
    """Edge probability ``min(1, w / t)``.

    The capped form is deliberate: probabilities must shrink as ``t`` grows.
    """
    if not (t > 0 and math.isfinite(t)):
        raise InputError(f"threshold t must be a positive finite number, got {t}")
    return ProbabilisticGraph(g.n, g.u, g.v, np.minimum(1.0, g.w / t))


def density(n: int, num_edges: int) -> float:
    """Edges over possible undirected edges."""
    return num_edges / (n * (n - 1) / 2) if n > 1 else 0.0


def ingest(path: PathLike) -> tuple[WeightedGraph, list[str]]:
    net = read_ratings(path)
    return normalize(symmetrize(net)), net.names
