"""Exhaustive ground truth for tiny instances.

Everything here is exact: probabilities are ``Fraction`` and expectations are
accumulated over integer numerators with a common denominator. The brute
force distances enumerate every injective cluster assignment and share no
code with :mod:`bbcluster.metrics`.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator

import numpy as np

from .errors import CapacityError, InputError
from .graph import Clustering, ProbabilisticGraph, components, same_universe
from .metrics import distance
from .sampling import ExplicitDistribution

MAX_PARTITION_N = 12
MAX_ENUM_EDGES = 20
# full pairwise distance tables are cached up to this universe size
_TABLE_N = 6


def bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def iter_partitions(n: int) -> Iterator[Clustering]:
    """All set partitions of ``0..n-1`` via restricted growth strings."""
    if n > MAX_PARTITION_N:
        raise CapacityError(f"partition enumeration is limited to n <= {MAX_PARTITION_N}, got {n}")
    if n < 0:
        raise InputError("n must be non-negative")
    if n == 0:
        yield Clustering([])
        return
    a = [0] * n
    while True:
        yield Clustering(a)
        # next restricted growth string: a[0] = 0, a[i] <= 1 + max(a[:i])
        i = n - 1
        while i > 0:
            if a[i] <= max(a[:i]):
                a[i] += 1
                for j in range(i + 1, n):
                    a[j] = 0
                break
            i -= 1
        else:
            return


def enumerate_partitions(n: int) -> list[Clustering]:
    return list(iter_partitions(n))


# -- brute-force distances -------------------------------------------------

def _blocks(c: Clustering) -> list[frozenset[int]]:
    return c.clusters


def _best_injection(ys: list[frozenset], xs: list[frozenset], pair_cost, empty_cost) -> int:
    """Minimum total cost over all injective maps from ys into xs plus a reusable empty set."""
    best = math.inf
    k = len(ys)

    def rec(i: int, used: frozenset, acc: int):
        nonlocal best
        if i == k:
            best = min(best, acc)
            return
        s = ys[i]
        rec(i + 1, used, acc + empty_cost(s))
        for j, c in enumerate(xs):
            if j not in used:
                rec(i + 1, used | {j}, acc + pair_cost(s, c))

    rec(0, frozenset(), 0)
    return int(best)


def brute_symdiff_distance(x: Clustering, y: Clustering) -> int:
    same_universe(x, y)
    return _best_injection(_blocks(y), _blocks(x),
                           lambda s, c: len(s ^ c), len)


def brute_balcan_distance(x: Clustering, y: Clustering) -> int:
    same_universe(x, y)
    # elements of s not landing in f(s) are misclassified
    return _best_injection(_blocks(y), _blocks(x),
                           lambda s, c: len(s - c), len)


BRUTE_METRICS = {"symdiff": brute_symdiff_distance, "balcan": brute_balcan_distance}


# -- distributions ---------------------------------------------------------

def tightness_distribution(k: int) -> ExplicitDistribution:
    """Two nodes: apart with probability (k-1)/k, together with probability 1/k."""
    if k < 2:
        raise InputError(f"k must be at least 2, got {k}")
    return ExplicitDistribution([
        (Clustering([0, 1]), Fraction(k - 1, k)),
        (Clustering([0, 0]), Fraction(1, k)),
    ])


def exact_outcome_distribution(g: ProbabilisticGraph) -> ExplicitDistribution:
    """Component partitions of all ``2^|E|`` edge subsets with their exact probabilities."""
    m = g.num_edges
    if m > MAX_ENUM_EDGES:
        raise CapacityError(f"subset enumeration is limited to {MAX_ENUM_EDGES} edges, got {m}")
    edges = list(zip(g.u.tolist(), g.v.tolist()))
    probs = [Fraction(repr(p)) for p in g.p.tolist()]
    acc: dict[Clustering, Fraction] = {}
    for mask in product((0, 1), repeat=m):
        w = Fraction(1)
        chosen = []
        for bit, e, p in zip(mask, edges, probs):
            if bit:
                w *= p
                chosen.append(e)
            else:
                w *= 1 - p
        if w == 0:
            continue
        c = components(g.n, chosen)
        acc[c] = acc.get(c, Fraction(0)) + w
    return ExplicitDistribution(list(acc.items()))


# -- expectations ----------------------------------------------------------

def _integer_weights(probs: list[Fraction]) -> tuple[list[int], int]:
    denom = 1
    for q in probs:
        denom = denom * q.denominator // math.gcd(denom, q.denominator)
    return [q.numerator * (denom // q.denominator) for q in probs], denom


@lru_cache(maxsize=None)
def _table(n: int, metric: str) -> tuple[dict[bytes, int], list[Clustering], np.ndarray]:
    parts = enumerate_partitions(n)
    index = {c.key(): i for i, c in enumerate(parts)}
    t = np.empty((len(parts), len(parts)), dtype=np.int64)
    for i, x in enumerate(parts):
        for j, y in enumerate(parts):
            t[i, j] = distance(x, y, metric)
    t.setflags(write=False)
    return index, parts, t


def distance_table(n: int, metric: str = "symdiff") -> tuple[list[Clustering], np.ndarray]:
    """All partitions of ``0..n-1`` and the matrix ``D[i, j] = D_{part_i}(part_j)``."""
    _, parts, t = _table(n, metric)
    return parts, t


def _cost_matrix(refs: list[Clustering], d: ExplicitDistribution, metric: str) -> np.ndarray:
    outcomes = [c for c, _ in d.outcomes]
    if d.n <= _TABLE_N:
        index, _, t = _table(d.n, metric)
        return t[np.ix_([index[c.key()] for c in refs], [index[c.key()] for c in outcomes])]
    return np.array([[distance(r, y, metric) for y in outcomes] for r in refs], dtype=np.int64)


def _dot(cost: np.ndarray, weights: list[int]) -> list[int]:
    # exact integer dot products; object dtype once int64 could overflow
    if cost.size and max(weights) * int(cost.max(initial=0)) * len(weights) < 2**62:
        return (cost @ np.array(weights, dtype=np.int64)).tolist()
    return [sum(int(a) * b for a, b in zip(row, weights)) for row in cost.tolist()]


def expected_distances(refs: list[Clustering], d: ExplicitDistribution,
                       metric: str = "symdiff") -> list[Fraction]:
    """``E_Y[D_r(Y)]`` for every reference ``r``, exactly."""
    for r in refs:
        same_universe(r, d.outcomes[0][0])
    weights, denom = _integer_weights([q for _, q in d.outcomes])
    totals = _dot(_cost_matrix(refs, d, metric), weights)
    return [Fraction(t, denom) for t in totals]


def expected_distance(c: Clustering, d: ExplicitDistribution, metric: str = "symdiff") -> Fraction:
    return expected_distances([c], d, metric)[0]


def optimal_clustering(d: ExplicitDistribution, metric: str = "symdiff") -> tuple[Clustering, Fraction]:
    """Partition minimizing expected distance to a draw from ``d``.

    Ties go to the partition whose label list is lexicographically smallest.
    """
    if d.n > MAX_PARTITION_N:
        raise CapacityError(f"optimal clustering search is limited to n <= {MAX_PARTITION_N}")
    parts = enumerate_partitions(d.n)
    costs = expected_distances(parts, d, metric)
    best = min(range(len(parts)), key=lambda i: (costs[i], parts[i].labels.tolist()))
    return parts[best], costs[best]


def sampled_expected_cost(d: ExplicitDistribution, metric: str = "symdiff") -> Fraction:
    """``E_{C'}E_Y[D_{C'}(Y)]`` for independent draws ``C'`` and ``Y``."""
    per = expected_distances([c for c, _ in d.outcomes], d, metric)
    return sum((q * e for (_, q), e in zip(d.outcomes, per)), Fraction(0))


def expected_sample_ratio(d: ExplicitDistribution, metric: str = "symdiff") -> Fraction:
    """Expected cost of using one random draw, divided by the optimal expected cost.

    A zero optimum means ``d`` is a point mass; the ratio is then 1.
    """
    _, opt = optimal_clustering(d, metric)
    if opt == 0:
        return Fraction(1)
    return sampled_expected_cost(d, metric) / opt


def tail_mass(d: ExplicitDistribution, factor, metric: str = "symdiff") -> Fraction:
    """Probability that a single draw ``C'`` has ``E_Y[D_{C'}(Y)] > factor * opt``."""
    _, opt = optimal_clustering(d, metric)
    factor = Fraction(factor) if not isinstance(factor, float) else Fraction(repr(factor))
    per = expected_distances([c for c, _ in d.outcomes], d, metric)
    return sum((q for (_, q), e in zip(d.outcomes, per) if e > factor * opt), Fraction(0))


def best_of_m_failure(d: ExplicitDistribution, factor, m: int, metric: str = "symdiff") -> Fraction:
    """Probability that none of ``m`` independent draws is within ``factor * opt``."""
    return tail_mass(d, factor, metric) ** m


# -- corpora for property checks -------------------------------------------

def random_probabilistic_graph(rng: np.random.Generator, max_n: int = 6, max_edges: int = 10,
                               resolution: int = 10) -> ProbabilisticGraph:
    """Random simple graph with probabilities on the grid ``{0, 1/res, ..., 1}``."""
    n = int(rng.integers(2, max_n + 1))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    m = int(rng.integers(1, min(max_edges, len(pairs)) + 1))
    chosen = rng.choice(len(pairs), size=m, replace=False)
    edges = [(pairs[i][0], pairs[i][1], int(rng.integers(0, resolution + 1)) / resolution)
             for i in sorted(chosen.tolist())]
    return ProbabilisticGraph.from_edges(n, edges)


def random_explicit_distribution(rng: np.random.Generator, max_n: int = 5,
                                 max_support: int = 8, max_weight: int = 20) -> ExplicitDistribution:
    """Random finite distribution with integer-weighted support over partitions of ``n <= max_n``."""
    n = int(rng.integers(1, max_n + 1))
    parts = enumerate_partitions(n)
    k = int(rng.integers(1, min(max_support, len(parts)) + 1))
    chosen = rng.choice(len(parts), size=k, replace=False)
    weights = rng.integers(1, max_weight + 1, size=k).tolist()
    total = sum(weights)
    return ExplicitDistribution([(parts[i], Fraction(w, total)) for i, w in zip(chosen.tolist(), weights)])
