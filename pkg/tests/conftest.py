import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bbcluster.graph import Clustering

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def clusterings(draw, n=None, max_n=8):
    if n is None:
        n = draw(st.integers(1, max_n))
    labels = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    return Clustering(labels)


@st.composite
def clustering_pairs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    return draw(clusterings(n=n)), draw(clusterings(n=n))


def dfs_components(n, edges):
    """Reference component labelling by iterative depth-first search."""
    adj = [[] for _ in range(n)]
    for u, v, *_ in edges:
        adj[u].append(v)
        adj[v].append(u)
    label = [-1] * n
    for start in range(n):
        if label[start] != -1:
            continue
        label[start] = start
        stack = [start]
        while stack:
            a = stack.pop()
            for b in adj[a]:
                if label[b] == -1:
                    label[b] = start
                    stack.append(b)
    return label


# -- acceptance reporting ---------------------------------------------------

_ACCEPTANCE = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    crit = item.get_closest_marker("criterion")
    if crit is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        status = "PASS" if rep.outcome == "passed" else "FAIL"
        _ACCEPTANCE.append((crit.args[0], status, crit.args[1], rep.duration))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, status, title, dur in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"{status}  criterion {num:>2}: {title} ({dur:.1f}s)")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
