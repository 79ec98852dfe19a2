"""Core data model: probabilistic graphs, clusterings and the disjoint-set forest.

Nodes are dense integers ``0..n-1``. Name-to-id translation happens at the
ingestion boundary (see :mod:`bbcluster.ingest`).
"""
from __future__ import annotations

from collections import Counter
from typing import Iterable

import numpy as np

from . import _kernels
from .errors import InputError


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class ProbabilisticGraph:
    """Undirected graph whose edges appear independently with probability ``p``.

    Edge order is the construction order; sampling determinism is defined
    relative to it.
    """

    __slots__ = ("n", "u", "v", "p")

    def __init__(self, n: int, u, v, p):
        n = int(n)
        if n < 0:
            raise InputError(f"node count must be non-negative, got {n}")
        u = np.ascontiguousarray(u, dtype=np.int64)
        v = np.ascontiguousarray(v, dtype=np.int64)
        p = np.ascontiguousarray(p, dtype=np.float64)
        if not (u.shape == v.shape == p.shape) or u.ndim != 1:
            raise InputError("edge arrays must be one-dimensional and equally long")
        if u.size:
            if min(u.min(), v.min()) < 0 or max(u.max(), v.max()) >= n:
                raise InputError(f"edge endpoint out of range for n={n}")
            if np.any(u == v):
                i = int(np.flatnonzero(u == v)[0])
                raise InputError(f"self-loop on node {int(u[i])} (edge {i})")
            if not np.all(np.isfinite(p)) or p.min() < 0.0 or p.max() > 1.0:
                raise InputError("edge probabilities must lie in [0, 1]")
            lo = np.minimum(u, v)
            hi = np.maximum(u, v)
            keys = lo * n + hi
            if np.unique(keys).size != keys.size:
                raise InputError("duplicate edge between the same pair of nodes")
        self.n = n
        self.u = _frozen(u)
        self.v = _frozen(v)
        self.p = _frozen(p)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, float]]) -> "ProbabilisticGraph":
        edges = list(edges)
        if not edges:
            return cls(n, np.empty(0, np.int64), np.empty(0, np.int64), np.empty(0))
        u, v, p = zip(*edges)
        return cls(n, u, v, p)

    @property
    def num_edges(self) -> int:
        return int(self.u.size)

    def edges(self):
        return zip(self.u.tolist(), self.v.tolist(), self.p.tolist())

    def __len__(self) -> int:
        return self.num_edges

    def __repr__(self) -> str:
        return f"ProbabilisticGraph(n={self.n}, edges={self.num_edges})"


class Clustering:
    """A partition of ``0..n-1`` stored as canonical per-node labels.

    The label of a node is the smallest node id in its cluster, so two
    clusterings describing the same partition have identical label arrays
    and compare equal.
    """

    __slots__ = ("labels", "_key")

    def __init__(self, labels):
        labels = np.asarray(labels)
        if labels.ndim != 1:
            raise InputError("cluster labels must be a flat sequence")
        self.labels = _frozen(_canonical_labels(labels))
        self._key = None

    @classmethod
    def _trusted(cls, labels: np.ndarray) -> "Clustering":
        # labels already canonical (smallest-member convention)
        obj = cls.__new__(cls)
        obj.labels = _frozen(labels)
        obj._key = None
        return obj

    @classmethod
    def from_clusters(cls, n: int, clusters: Iterable[Iterable[int]]) -> "Clustering":
        labels = np.full(n, -1, dtype=np.int64)
        for k, block in enumerate(clusters):
            for x in block:
                if not 0 <= x < n:
                    raise InputError(f"node {x} out of range for n={n}")
                if labels[x] != -1:
                    raise InputError(f"node {x} appears in more than one cluster")
                labels[x] = k
        if np.any(labels < 0):
            missing = int(np.flatnonzero(labels < 0)[0])
            raise InputError(f"node {missing} is not covered by any cluster")
        return cls(labels)

    @classmethod
    def singletons(cls, n: int) -> "Clustering":
        return cls._trusted(np.arange(n, dtype=np.int64))

    @property
    def n(self) -> int:
        return int(self.labels.size)

    @property
    def num_clusters(self) -> int:
        return int(np.count_nonzero(self.labels == np.arange(self.n)))

    @property
    def clusters(self) -> list[frozenset[int]]:
        """Clusters as node sets, ordered by their smallest member."""
        groups: dict[int, list[int]] = {}
        for node, lab in enumerate(self.labels.tolist()):
            groups.setdefault(lab, []).append(node)
        return [frozenset(groups[k]) for k in sorted(groups)]

    def key(self) -> bytes:
        if self._key is None:
            self._key = self.labels.astype(np.int64, copy=False).tobytes()
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, Clustering):
            return NotImplemented
        return self.labels.size == other.labels.size and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __lt__(self, other: "Clustering") -> bool:
        return self.labels.tolist() < other.labels.tolist()

    def __repr__(self) -> str:
        if self.n <= 16:
            body = ", ".join("{" + ",".join(map(str, sorted(c))) + "}" for c in self.clusters)
            return f"Clustering({{{body}}})"
        return f"Clustering(n={self.n}, clusters={self.num_clusters})"


def _canonical_labels(labels: np.ndarray) -> np.ndarray:
    if labels.size == 0:
        return np.empty(0, dtype=np.int64)
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    return first[inverse.ravel()].astype(np.int64)


def canonicalize(c) -> Clustering:
    """Relabel so every cluster is named by its smallest member.

    Accepts a :class:`Clustering` or any per-node label sequence.
    """
    if isinstance(c, Clustering):
        return Clustering._trusted(_canonical_labels(c.labels))
    return Clustering(c)


def cluster_sizes(c: Clustering) -> Counter:
    """Multiset of cluster sizes as a ``Counter`` mapping size -> multiplicity."""
    counts = np.bincount(c.labels, minlength=c.n) if c.n else np.empty(0, np.int64)
    sizes, mult = np.unique(counts[counts > 0], return_counts=True)
    return Counter(dict(zip(sizes.tolist(), mult.tolist())))


class DisjointSet:
    """Union by rank with path compression over ``n`` dense ids."""

    __slots__ = ("parent", "rank")

    def __init__(self, n: int):
        self.parent = np.arange(n, dtype=np.int64)
        self.rank = np.zeros(n, dtype=np.int8)

    def __len__(self) -> int:
        return int(self.parent.size)

    def find(self, a: int) -> int:
        return int(_kernels.find_root(self.parent, int(a)))

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of ``a`` and ``b``; False if they were already joined."""
        return bool(_kernels.union_pairs(self.parent, self.rank,
                                         np.array([a], np.int64), np.array([b], np.int64)))

    def union_many(self, us: np.ndarray, vs: np.ndarray) -> int:
        return int(_kernels.union_pairs(self.parent, self.rank,
                                        np.ascontiguousarray(us, np.int64),
                                        np.ascontiguousarray(vs, np.int64)))

    def num_sets(self) -> int:
        n = self.parent.size
        return sum(1 for i in range(n) if self.find(i) == i)

    def to_clustering(self) -> Clustering:
        return Clustering._trusted(_kernels.min_member_labels(self.parent))


def _edge_arrays(n: int, edges) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(edges, ProbabilisticGraph):
        return edges.u, edges.v
    if isinstance(edges, np.ndarray):
        arr = edges.reshape(-1, 2) if edges.size else np.empty((0, 2), np.int64)
    else:
        arr = np.array([(e[0], e[1]) for e in edges], dtype=np.int64).reshape(-1, 2)
    return arr[:, 0].astype(np.int64), arr[:, 1].astype(np.int64)


def components(n: int, edges) -> Clustering:
    """Connected components of the graph on ``n`` nodes with the given edges.

    ``edges`` may be any iterable of ``(u, v, ...)`` tuples, an ``(m, 2)``
    integer array, or a :class:`ProbabilisticGraph` (every edge present).
    """
    us, vs = _edge_arrays(n, edges)
    if us.size and (min(us.min(), vs.min()) < 0 or max(us.max(), vs.max()) >= n):
        raise InputError(f"edge endpoint out of range for n={n}")
    ds = DisjointSet(n)
    ds.union_many(us, vs)
    return ds.to_clustering()


def same_universe(x: Clustering, y: Clustering) -> int:
    if x.n != y.n:
        raise InputError(f"clusterings cover different universes ({x.n} vs {y.n} nodes)")
    return x.n
