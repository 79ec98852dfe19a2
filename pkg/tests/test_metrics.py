from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import bbcluster.metrics as metrics
from bbcluster.errors import InputError
from bbcluster.graph import Clustering
from bbcluster.metrics import balcan_distance, benefits, compare, symdiff_distance
from bbcluster.oracle import brute_balcan_distance, brute_symdiff_distance, enumerate_partitions

from conftest import clustering_pairs, clusterings


def C(n, *blocks):
    return Clustering.from_clusters(n, blocks)


# brute-force values; each also checked by hand
SYMDIFF_CASES = [
    (C(3, [0, 1], [2]), C(3, [0, 1], [2]), 0),
    (C(2, [0], [1]), C(2, [0, 1]), 1),
    (C(2, [0, 1]), C(2, [0], [1]), 2),
    (C(3, [0, 1], [2]), C(3, [0], [1], [2]), 2),
    (C(4, [0, 1, 2, 3]), C(4, [0, 1], [2, 3]), 4),
    (C(4, [0, 1], [2, 3]), C(4, [0, 1, 2, 3]), 2),
]


@pytest.mark.parametrize("x, y, expected", SYMDIFF_CASES)
def test_symdiff_examples(x, y, expected):
    assert brute_symdiff_distance(x, y) == expected
    d, matching = symdiff_distance(x, y)
    assert d == expected
    assert matching.total_cost == expected


def test_symdiff_is_asymmetric():
    x, y = C(4, [0, 1, 2, 3]), C(4, [0, 1], [2, 3])
    assert symdiff_distance(x, y)[0] == 4
    assert symdiff_distance(y, x)[0] == 2


@pytest.mark.parametrize("x, y, expected", [
    (C(3, [0, 1], [2]), C(3, [0, 1], [2]), 0),
    (C(3, [0, 1], [2]), C(3, [0], [1], [2]), 1),
    (C(4, [0, 1, 2, 3]), C(4, [0, 1], [2, 3]), 2),
])
def test_balcan_examples(x, y, expected):
    assert brute_balcan_distance(x, y) == expected
    assert balcan_distance(x, y) == expected
    assert balcan_distance(y, x) == expected


def test_mismatched_universe_rejected():
    with pytest.raises(InputError):
        symdiff_distance(Clustering([0, 0]), Clustering([0, 0, 0]))
    with pytest.raises(InputError):
        balcan_distance(Clustering([0, 0]), Clustering([0, 0, 0]))


def test_matching_pairs_and_costs():
    x = C(4, [0, 1, 2, 3])
    y = C(4, [0, 1], [2, 3])
    d, m = symdiff_distance(x, y)
    # matching {0,1} to {0,1,2,3} has zero benefit, so both go to the empty set
    assert m.pairs == [(0, None, 2, 0), (2, None, 2, 0)]
    assert d == 4


def test_benefit_examples():
    assert benefits(C(3, [0, 1, 2]), C(3, [0, 1, 2])) == Counter({3: 1})
    # s = {0,1,2} against c = {0,1,3}: 2*2 - 3 = 1
    x = C(4, [0, 1, 3], [2])
    y = C(4, [0, 1, 2], [3])
    assert benefits(x, y) == Counter({1: 1})
    _, m = symdiff_distance(x, y)
    # tie between c={0,1,3} and c={2} goes to the smaller label
    assert m.pairs[0] == (0, 0, 2, 1)
    # no majority overlap anywhere
    assert benefits(C(4, [0, 1], [2, 3]), C(4, [0, 2], [1, 3])) == Counter()


def test_matching_is_injective_and_positive():
    rng = np.random.default_rng(3)
    for _ in range(200):
        n = int(rng.integers(1, 40))
        x = Clustering(rng.integers(0, max(1, n // 3), n))
        y = Clustering(rng.integers(0, max(1, n // 2), n))
        _, m = symdiff_distance(x, y)
        used = m.x_labels[m.x_labels >= 0]
        assert len(set(used.tolist())) == used.size
        assert np.all(m.benefits[m.x_labels >= 0] > 0)
        for ylab, xlab, cost, ben in m.pairs:
            s = set(np.flatnonzero(y.labels == ylab).tolist())
            if xlab is None:
                assert cost == len(s) and ben == 0
            else:
                c = set(np.flatnonzero(x.labels == xlab).tolist())
                assert cost == len(s ^ c)
                assert ben == 2 * len(s & c) - len(c)
                assert 2 * len(s & c) > len(c)


@given(clustering_pairs())
def test_symdiff_equals_n_minus_benefits(pair):
    x, y = pair
    b = benefits(x, y)
    assert symdiff_distance(x, y)[0] == x.n - sum(k * m for k, m in b.items())


@given(clustering_pairs(max_n=7))
def test_fast_equals_brute(pair):
    x, y = pair
    assert symdiff_distance(x, y)[0] == brute_symdiff_distance(x, y)
    assert balcan_distance(x, y) == brute_balcan_distance(x, y)


@given(clustering_pairs(max_n=12))
def test_metric_sandwich(pair):
    x, y = pair
    b = balcan_distance(x, y)
    d = symdiff_distance(x, y)[0]
    assert b <= d <= 2 * b


@given(clusterings(max_n=12))
def test_identity(c):
    assert symdiff_distance(c, c)[0] == 0
    assert balcan_distance(c, c) == 0


@given(clustering_pairs(max_n=10), st.randoms())
def test_node_relabeling_invariance(pair, rnd):
    x, y = pair
    perm = list(range(x.n))
    rnd.shuffle(perm)
    # node i becomes node perm[i]
    xp = np.empty(x.n, np.int64)
    yp = np.empty(y.n, np.int64)
    xp[perm] = x.labels
    yp[perm] = y.labels
    assert symdiff_distance(Clustering(xp), Clustering(yp))[0] == symdiff_distance(x, y)[0]
    assert balcan_distance(Clustering(xp), Clustering(yp)) == balcan_distance(x, y)


def test_exhaustive_small_universes():
    for n in range(1, 5):
        parts = enumerate_partitions(n)
        for x in parts:
            for y in parts:
                assert symdiff_distance(x, y)[0] == brute_symdiff_distance(x, y)
                assert balcan_distance(x, y) == brute_balcan_distance(x, y)


def test_sparse_assignment_path_matches_dense(monkeypatch):
    rng = np.random.default_rng(11)
    cases = []
    for _ in range(30):
        n = int(rng.integers(20, 300))
        x = Clustering(rng.integers(0, int(rng.integers(2, n)), n))
        y = Clustering(rng.integers(0, int(rng.integers(2, n)), n))
        cases.append((x, y, balcan_distance(x, y)))
    monkeypatch.setattr(metrics, "_DENSE_CELLS", 0)
    for x, y, dense in cases:
        assert balcan_distance(x, y) == dense


def test_balcan_large_instance_symmetric():
    rng = np.random.default_rng(5)
    n = 50_000
    x = Clustering(rng.integers(0, 2000, n))
    y = Clustering(np.where(rng.random(n) < 0.8, x.labels, rng.integers(0, n, n)))
    d = balcan_distance(x, y)
    assert d == balcan_distance(y, x)
    assert d <= symdiff_distance(x, y)[0] <= 2 * d


def test_compare_agrees_with_individual_calls():
    rng = np.random.default_rng(8)
    for _ in range(50):
        n = int(rng.integers(1, 60))
        x = Clustering(rng.integers(0, 5, n))
        y = Clustering(rng.integers(0, 7, n))
        rep = compare(x, y)
        assert rep.symdiff == symdiff_distance(x, y)[0]
        assert rep.balcan == balcan_distance(x, y)
        assert Counter(rep.benefits) == benefits(x, y)


def test_empty_universe():
    e = Clustering([])
    assert symdiff_distance(e, e)[0] == 0
    assert balcan_distance(e, e) == 0
