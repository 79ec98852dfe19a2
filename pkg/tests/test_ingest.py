from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bbcluster.errors import InputError
from bbcluster.ingest import (RawTrustNetwork, WeightedGraph, density, ingest, normalize,
                              probabilize, read_ratings, symmetrize)
from bbcluster.synthetic import trust_network

DATA = Path(__file__).parent / "data"


def net_of(*ratings):
    net = RawTrustNetwork()
    for a, b, r in ratings:
        net.add(a, b, r)
    return net


def as_dict(g, names):
    return {(names[a], names[b]): w for a, b, w in zip(g.u.tolist(), g.v.tolist(), g.w.tolist())}


def test_symmetrize_lone_edge():
    net = net_of(("A", "B", 6))
    assert as_dict(symmetrize(net), net.names) == {("A", "B"): 6.0}


def test_symmetrize_mutual_pair_averages():
    net = net_of(("A", "B", 4), ("B", "A", 8))
    assert as_dict(symmetrize(net), net.names) == {("A", "B"): 6.0}


def test_symmetrize_drops_self_loops():
    g = symmetrize(net_of(("A", "A", 9)))
    assert g.num_edges == 0


def test_symmetrize_duplicates_averaged_before_pairing():
    net = net_of(("A", "B", 2), ("A", "B", 4), ("B", "A", 9))
    # A->B averages to 3, then (3 + 9) / 2
    assert as_dict(symmetrize(net), net.names) == {("A", "B"): 6.0}


def test_unfavorable_ratings_dropped():
    net = net_of(("A", "B", -3), ("A", "C", 0), ("A", "D", float("nan")), ("A", "E", 5))
    assert net.dropped == 3
    assert len(net.edges) == 1


def test_normalize_examples():
    g = WeightedGraph(4, np.array([0, 1, 2]), np.array([1, 2, 3]), np.array([0.0, 5.0, 10.0]))
    assert normalize(g).w.tolist() == [1.0, 5.5, 10.0]
    flat = WeightedGraph(3, np.array([0, 1]), np.array([1, 2]), np.array([3.0, 3.0]))
    assert normalize(flat).w.tolist() == [10.0, 10.0]
    full = WeightedGraph(4, np.array([0, 1, 2]), np.array([1, 2, 3]), np.array([1.0, 4.0, 10.0]))
    assert normalize(full).w.tolist() == [1.0, 4.0, 10.0]


def test_normalize_empty_rejected():
    with pytest.raises(InputError):
        normalize(WeightedGraph(2, np.empty(0, int), np.empty(0, int), np.empty(0)))


@given(st.lists(st.floats(0.01, 1e4), min_size=1, max_size=40))
def test_normalize_range_and_order(ws):
    k = len(ws)
    g = WeightedGraph(k + 1, np.arange(k), np.arange(1, k + 1), np.array(ws))
    out = normalize(g).w
    assert np.all((out >= 1) & (out <= 10))
    order = np.argsort(ws, kind="stable")
    assert np.all(np.diff(out[order]) >= 0)


def test_probabilize_examples():
    g = WeightedGraph(3, np.array([0, 1]), np.array([1, 2]), np.array([5.0, 10.0]))
    assert probabilize(g, 10).p.tolist() == [0.5, 1.0]
    assert probabilize(g, 5).p.tolist() == [1.0, 1.0]
    assert np.all(probabilize(g, 1e12).p < 1e-10)
    assert np.all(probabilize(g, 1e-9).p == 1.0)
    for bad in (0, -1, float("inf"), float("nan")):
        with pytest.raises(InputError):
            probabilize(g, bad)


@given(st.floats(0.1, 100), st.floats(0.1, 100))
def test_probabilize_monotone_in_t(t1, t2):
    g = normalize(symmetrize(trust_network(30, 60, seed=1)))
    lo, hi = sorted((t1, t2))
    assert np.all(probabilize(g, lo).p >= probabilize(g, hi).p)


def test_symmetrize_output_simple():
    g = symmetrize(trust_network(80, 300, seed=4, mutual=0.6))
    assert np.all(g.u < g.v)
    keys = g.u * g.n + g.v
    assert np.unique(keys).size == keys.size


def test_three_line_fixture():
    g, names = ingest(DATA / "three_ratings.tsv")
    assert names == ["alice", "bob", "carol"]
    # (alice, bob) = (4 + 8) / 2 = 6 and (bob, carol) = 2, mapped onto [1, 10]
    assert as_dict(g, names) == {("alice", "bob"): 10.0, ("bob", "carol"): 1.0}


def test_read_ratings_errors(tmp_path):
    bad = tmp_path / "bad.tsv"
    bad.write_text("a\tb\n")
    with pytest.raises(InputError, match=":1:"):
        read_ratings(bad)
    bad.write_text("# header\na\tb\tx\n")
    with pytest.raises(InputError, match=":2:"):
        read_ratings(bad)


def test_fixture_density_matches_table():
    # the 62-node / 105-edge network is listed with density 0.055
    net = read_ratings(DATA / "trust62.tsv")
    g = symmetrize(net)
    assert (net.n, g.num_edges) == (62, 105)
    assert abs(density(net.n, g.num_edges) - 0.055) < 0.001
    assert abs(density(310, 774) - 0.016) < 0.001


def test_synthetic_network_exact_edge_count():
    for n, m in [(62, 105), (310, 774), (20, 190)]:
        net = trust_network(n, m, seed=3)
        assert symmetrize(net).num_edges == m


def test_pipeline_deterministic():
    a, na = ingest(DATA / "trust62.tsv")
    b, nb = ingest(DATA / "trust62.tsv")
    assert na == nb
    assert a.w.tobytes() == b.w.tobytes() and a.u.tobytes() == b.u.tobytes()
