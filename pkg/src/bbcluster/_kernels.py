"""Compiled inner loops for the disjoint-set forest.

The arrays are owned by :class:`bbcluster.graph.DisjointSet`; these functions
only mutate them in place.
"""
import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def find_root(parent, a):
    root = a
    while parent[root] != root:
        root = parent[root]
    # path compression
    while parent[a] != root:
        nxt = parent[a]
        parent[a] = root
        a = nxt
    return root


@njit(cache=True, nogil=True)
def union_pairs(parent, rank, us, vs):
    """Union every (us[i], vs[i]); returns the number of merges performed."""
    merges = 0
    for i in range(us.shape[0]):
        ra = find_root(parent, us[i])
        rb = find_root(parent, vs[i])
        if ra == rb:
            continue
        if rank[ra] < rank[rb]:
            ra, rb = rb, ra
        parent[rb] = ra
        if rank[ra] == rank[rb]:
            rank[ra] += 1
        merges += 1
    return merges


@njit(cache=True, nogil=True)
def union_sampled(parent, rank, us, vs, ps, draws):
    """Union the edges whose uniform draw falls below their probability."""
    merges = 0
    for i in range(us.shape[0]):
        if draws[i] < ps[i]:
            ra = find_root(parent, us[i])
            rb = find_root(parent, vs[i])
            if ra == rb:
                continue
            if rank[ra] < rank[rb]:
                ra, rb = rb, ra
            parent[rb] = ra
            if rank[ra] == rank[rb]:
                rank[ra] += 1
            merges += 1
    return merges


@njit(cache=True, nogil=True)
def min_member_labels(parent):
    """Label every node by the smallest node id in its tree."""
    n = parent.shape[0]
    roots = np.empty(n, dtype=np.int64)
    for i in range(n):
        roots[i] = find_root(parent, i)
    smallest = np.full(n, n, dtype=np.int64)
    for i in range(n):
        r = roots[i]
        if i < smallest[r]:
            smallest[r] = i
    out = np.empty(n, dtype=np.int64)
    for i in range(n):
        out[i] = smallest[roots[i]]
    return out
