"""Draw random clusterings from black-box sources.

Randomness is counter based: a Philox generator keyed by
``(seed, sample_index)`` yields the uniform for edge ``i`` as its ``i``-th
draw. A sample is therefore a pure function of the seed, the sample index
and the edge order of the graph.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Protocol, Sequence

import numpy as np

from . import _kernels
from .errors import InputError
from .graph import Clustering, DisjointSet, ProbabilisticGraph

CHUNK = 1 << 16
# evaluator samples in multi-sample selection start here, far from candidates
EVALUATOR_OFFSET = 1 << 32


@dataclass(frozen=True)
class SampleSeed:
    seed: int
    sample_index: int = 0

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise InputError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if not 0 <= self.sample_index < 2**64:
            raise InputError(f"sample index out of range: {self.sample_index}")

    def generator(self) -> np.random.Generator:
        key = np.array([self.seed, self.sample_index], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))


_local = threading.local()


def _keyed(seed: SampleSeed) -> np.random.Generator:
    """Thread-local generator re-keyed in place; same stream as ``seed.generator()``.

    Only for immediate consumption: the next call on this thread resets it.
    """
    gen = getattr(_local, "gen", None)
    if gen is None:
        gen = _local.gen = np.random.Generator(np.random.Philox(key=np.zeros(2, np.uint64)))
    gen.bit_generator.state = {
        "bit_generator": "Philox",
        "state": {"counter": np.zeros(4, np.uint64),
                  "key": np.array([seed.seed, seed.sample_index], np.uint64)},
        "buffer": np.zeros(4, np.uint64),
        "buffer_pos": 4,
        "has_uint32": 0,
        "uinteger": 0,
    }
    return gen


class EdgeStream:
    """Forward-only pass over a graph's edges in chunks.

    ``query_count`` counts edges handed out; after a full pass it equals the
    number of edges.
    """

    def __init__(self, graph: ProbabilisticGraph, chunk: int = CHUNK):
        self.graph = graph
        self.chunk = chunk
        self.query_count = 0
        self._pos = 0

    def __iter__(self) -> Iterator[tuple[np.ndarray, np.ndarray, np.ndarray]]:
        g = self.graph
        while self._pos < g.num_edges:
            lo, hi = self._pos, min(self._pos + self.chunk, g.num_edges)
            self._pos = hi
            self.query_count += hi - lo
            yield g.u[lo:hi], g.v[lo:hi], g.p[lo:hi]


class BlackBoxSource(Protocol):
    n: int

    def sample(self, seed: SampleSeed) -> Clustering: ...


class RandomGraphSource:
    """Connected components of a random edge-induced subgraph."""

    def __init__(self, graph: ProbabilisticGraph, chunk: int = CHUNK):
        self.graph = graph
        self.chunk = chunk
        self.last_stream: EdgeStream | None = None

    @property
    def n(self) -> int:
        return self.graph.n

    def sample(self, seed: SampleSeed) -> Clustering:
        rng = _keyed(seed)
        ds = DisjointSet(self.graph.n)
        stream = EdgeStream(self.graph, self.chunk)
        for u, v, p in stream:
            draws = rng.random(u.size)
            _kernels.union_sampled(ds.parent, ds.rank, u, v, p, draws)
        self.last_stream = stream
        return ds.to_clustering()


def _as_fraction(p) -> Fraction:
    if isinstance(p, Fraction):
        return p
    if isinstance(p, float):
        # decimal reading: 0.3 means 3/10, not the nearest binary double
        return Fraction(repr(p))
    return Fraction(p)


class ExplicitDistribution:
    """Finite distribution over clusterings with exact probabilities.

    Duplicate outcomes are merged and zero-probability outcomes dropped.
    Outcomes keep first-appearance order.
    """

    TOLERANCE = 1e-12

    def __init__(self, outcomes: Sequence[tuple[Clustering, object]]):
        merged: dict[Clustering, Fraction] = {}
        n = None
        for c, p in outcomes:
            if not isinstance(c, Clustering):
                c = Clustering(c)
            if n is None:
                n = c.n
            elif c.n != n:
                raise InputError("all outcomes must cover the same universe")
            q = _as_fraction(p)
            if q < 0:
                raise InputError(f"negative probability {p}")
            merged[c] = merged.get(c, Fraction(0)) + q
        if n is None:
            raise InputError("a distribution needs at least one outcome")
        total = sum(merged.values(), Fraction(0))
        if abs(float(total - 1)) > self.TOLERANCE:
            raise InputError(f"probabilities sum to {float(total)!r}, not 1")
        self.n = n
        self.outcomes = tuple((c, q) for c, q in merged.items() if q > 0)
        self._cum = np.cumsum([float(q) for _, q in self.outcomes])

    @classmethod
    def point_mass(cls, c: Clustering) -> "ExplicitDistribution":
        return cls([(c, 1)])

    def __len__(self) -> int:
        return len(self.outcomes)

    def __iter__(self):
        return iter(self.outcomes)

    def probability(self, c: Clustering) -> Fraction:
        for other, q in self.outcomes:
            if other == c:
                return q
        return Fraction(0)

    def sample(self, seed: SampleSeed) -> Clustering:
        u = _keyed(seed).random() * self._cum[-1]
        i = min(int(np.searchsorted(self._cum, u, side="right")), len(self.outcomes) - 1)
        return self.outcomes[i][0]

    def __repr__(self) -> str:
        return f"ExplicitDistribution(n={self.n}, outcomes={len(self.outcomes)})"


def as_source(obj) -> BlackBoxSource:
    if isinstance(obj, ProbabilisticGraph):
        return RandomGraphSource(obj)
    if hasattr(obj, "sample") and hasattr(obj, "n"):
        return obj
    raise TypeError(f"cannot sample clusterings from {type(obj).__name__}")


def sample_clustering(source, seed: SampleSeed | int) -> Clustering:
    if not isinstance(seed, SampleSeed):
        seed = SampleSeed(int(seed))
    return as_source(source).sample(seed)


def sample_many(source, seed: int, count: int, start: int = 0, threads: int = 1) -> list[Clustering]:
    """``count`` independent samples using sample indices ``start..start+count-1``."""
    if count < 1:
        raise InputError(f"count must be positive, got {count}")
    src = as_source(source)
    seeds = [SampleSeed(seed, start + i) for i in range(count)]
    if threads > 1 and isinstance(src, RandomGraphSource):
        from concurrent.futures import ThreadPoolExecutor

        # each worker gets its own source so last_stream is not shared
        def work(s):
            return RandomGraphSource(src.graph, src.chunk).sample(s)

        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(work, seeds))
    return [src.sample(s) for s in seeds]


def total_variation(p: dict, q: dict) -> float:
    keys = set(p) | set(q)
    return 0.5 * math.fsum(abs(float(p.get(k, 0)) - float(q.get(k, 0))) for k in keys)


def empirical_distribution(samples: Sequence[Clustering]) -> dict[Clustering, float]:
    counts: dict[Clustering, int] = {}
    for c in samples:
        counts[c] = counts.get(c, 0) + 1
    total = len(samples)
    return {c: k / total for c, k in counts.items()}
