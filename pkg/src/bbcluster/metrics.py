"""Matching-based distances between clusterings.

``symdiff_distance(x, y)`` is the cost of the cheapest injective assignment
of y's clusters to x's clusters (or to an empty set), where assigning ``s`` to
``c`` costs ``|s △ c|`` and assigning ``s`` to nothing costs ``|s|``. Clusters
of ``x`` left unassigned are free, so the distance is not symmetric: ``x`` is
always the reference and ``y`` the sample.

``balcan_distance(x, y)`` counts the elements not covered by a maximum-weight
one-to-one matching between the clusters of ``x`` and ``y``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import min_weight_full_bipartite_matching

from .graph import Clustering, same_universe

# dense assignment is used below this many matrix cells
_DENSE_CELLS = 250_000


@dataclass(frozen=True)
class Contingency:
    """Nonzero cluster intersections of two clusterings over one universe.

    Row ``k`` says that x-cluster ``xs[k]`` and y-cluster ``ys[k]`` share
    ``counts[k]`` nodes. Rows are sorted by ``(xs, ys)``; cluster ids are
    canonical labels.
    """

    n: int
    xs: np.ndarray
    ys: np.ndarray
    counts: np.ndarray
    x_size: np.ndarray  # indexed by canonical label
    y_size: np.ndarray


def contingency(x: Clustering, y: Clustering) -> Contingency:
    n = same_universe(x, y)
    if n == 0:
        e = np.empty(0, np.int64)
        return Contingency(0, e, e, e, e, e)
    keys = x.labels * n + y.labels
    uniq, counts = np.unique(keys, return_counts=True)
    return Contingency(
        n=n,
        xs=uniq // n,
        ys=uniq % n,
        counts=counts.astype(np.int64),
        x_size=np.bincount(x.labels, minlength=n),
        y_size=np.bincount(y.labels, minlength=n),
    )


@dataclass(frozen=True)
class ClusterMatching:
    """Optimal assignment behind a symmetric-difference distance.

    One entry per y-cluster. ``x_label`` is -1 when the y-cluster is sent to
    the empty set.
    """

    y_labels: np.ndarray
    x_labels: np.ndarray
    costs: np.ndarray
    benefits: np.ndarray

    @property
    def total_cost(self) -> int:
        return int(self.costs.sum())

    @property
    def pairs(self) -> list[tuple[int, int | None, int, int]]:
        return [
            (ylab, None if xlab < 0 else xlab, cost, ben)
            for ylab, xlab, cost, ben in zip(
                self.y_labels.tolist(), self.x_labels.tolist(),
                self.costs.tolist(), self.benefits.tolist())
        ]

    def __len__(self) -> int:
        return int(self.y_labels.size)


def _kept_pairs(ct: Contingency) -> np.ndarray:
    """Indices of contingency rows retained by the optimal assignment.

    A pair ``(s, c)`` lowers the cost below ``|s|`` only when ``s`` holds a
    strict majority of ``c``, so each x-cluster has at most one profitable
    partner and each y-cluster simply keeps its best profitable x-cluster.
    """
    benefit = 2 * ct.counts - ct.x_size[ct.xs]
    pos = np.flatnonzero(benefit > 0)
    if pos.size == 0:
        return pos
    # per y-cluster: largest benefit, then smallest x label
    order = pos[np.lexsort((ct.xs[pos], -benefit[pos], ct.ys[pos]))]
    ys = ct.ys[order]
    first = np.ones(order.size, dtype=bool)
    first[1:] = ys[1:] != ys[:-1]
    return order[first]


def symdiff_distance(x: Clustering, y: Clustering) -> tuple[int, ClusterMatching]:
    """Symmetric-difference distance of sample ``y`` from reference ``x``.

    Returns the distance together with the optimal cluster assignment.
    Runs in ``O(n log n)`` via one tally of label co-occurrences.
    """
    ct = contingency(x, y)
    return _symdiff_from(ct)


def _symdiff_from(ct: Contingency) -> tuple[int, ClusterMatching]:
    kept = _kept_pairs(ct)
    n = ct.n
    y_labels = np.flatnonzero(ct.y_size > 0)
    slot = np.full(n, -1, dtype=np.int64)
    slot[y_labels] = np.arange(y_labels.size)

    x_labels = np.full(y_labels.size, -1, dtype=np.int64)
    benefits = np.zeros(y_labels.size, dtype=np.int64)
    idx = slot[ct.ys[kept]]
    x_labels[idx] = ct.xs[kept]
    benefits[idx] = 2 * ct.counts[kept] - ct.x_size[ct.xs[kept]]
    costs = ct.y_size[y_labels] - benefits

    matching = ClusterMatching(y_labels, x_labels, costs, benefits)
    return n - int(benefits.sum()), matching


def benefits(x: Clustering, y: Clustering) -> Counter:
    """Positive benefits ``2|s∩c| - |c|`` of the pairs kept by the optimal assignment.

    Returned as a ``Counter`` multiset. ``symdiff_distance(x, y)`` equals
    ``n - sum(benefits)``.
    """
    _, matching = symdiff_distance(x, y)
    b = matching.benefits[matching.benefits > 0]
    return Counter(b.tolist())


def balcan_distance(x: Clustering, y: Clustering) -> int:
    """Elements outside a maximum-weight one-to-one cluster matching."""
    return _balcan_from(contingency(x, y))


def _balcan_from(ct: Contingency) -> int:
    if ct.counts.size == 0:
        return 0
    xs, ys, w = ct.xs, ct.ys, ct.counts
    x_deg = np.bincount(xs, minlength=ct.n)
    y_deg = np.bincount(ys, minlength=ct.n)
    # an intersection that is the only one for both of its clusters is always matched
    lone = (x_deg[xs] == 1) & (y_deg[ys] == 1)
    matched = int(w[lone].sum())
    rest = ~lone
    if rest.any():
        matched += _max_weight_matching(xs[rest], ys[rest], w[rest])
    return ct.n - matched


def _max_weight_matching(xs: np.ndarray, ys: np.ndarray, w: np.ndarray) -> int:
    rows, r = np.unique(xs, return_inverse=True)
    cols, c = np.unique(ys, return_inverse=True)
    a, b = rows.size, cols.size
    if a * b <= _DENSE_CELLS:
        dense = np.zeros((a, b), dtype=np.int64)
        dense[r, c] = w
        ri, ci = linear_sum_assignment(dense, maximize=True)
        return int(dense[ri, ci].sum())

    # Sparse square problem: real edges plus dummies so that a perfect
    # matching always exists and any real matching extends to one.
    # Rows: x clusters then y-dummies. Cols: y clusters then x-dummies.
    big = int(w.max()) + 1
    k = w.size
    row = np.concatenate([r, np.arange(a), a + np.arange(b), a + c])
    col = np.concatenate([c, b + np.arange(a), np.arange(b), b + r])
    val = np.concatenate([big - w, np.full(a + b + k, big)]).astype(np.float64)
    m = csr_matrix((val, (row, col)), shape=(a + b, a + b))
    ri, ci = min_weight_full_bipartite_matching(m)
    real = (ri < a) & (ci < b)
    lookup = csr_matrix((w.astype(np.float64), (r, c)), shape=(a, b))
    return int(round(np.asarray(lookup[ri[real], ci[real]]).sum()))


@dataclass(frozen=True)
class PairReport:
    symdiff: int
    balcan: int
    benefits: tuple[int, ...]


def compare(x: Clustering, y: Clustering) -> PairReport:
    """Both distances and the benefit list from a single intersection tally."""
    ct = contingency(x, y)
    d, matching = _symdiff_from(ct)
    b = matching.benefits[matching.benefits > 0]
    return PairReport(d, _balcan_from(ct), tuple(sorted(b.tolist())))


METRICS = {
    "symdiff": lambda x, y: symdiff_distance(x, y)[0],
    "balcan": balcan_distance,
}


def distance(x: Clustering, y: Clustering, metric: str = "symdiff") -> int:
    try:
        fn = METRICS[metric]
    except KeyError:
        raise ValueError(f"unknown metric {metric!r}; expected one of {sorted(METRICS)}") from None
    return fn(x, y)
