"""Threshold sweeps: component sizes, benefits and pairwise distances per ``t``."""
from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

from .errors import InputError
from .graph import cluster_sizes
from .ingest import WeightedGraph, probabilize
from .metrics import compare
from .sampling import sample_many


@dataclass(frozen=True)
class SweepConfig:
    t_min: float = 2.0
    t_max: float = 30.0
    t_step: float = 2.0
    samples_per_t: int = 30
    seed: int = 0

    def __post_init__(self):
        if not (self.t_min > 0 and self.t_max > 0 and self.t_step > 0):
            raise InputError("t_min, t_max and t_step must be positive")
        if self.t_min > self.t_max:
            raise InputError(f"t_min {self.t_min} exceeds t_max {self.t_max}")
        if self.samples_per_t < 2:
            raise InputError("pairwise distances need at least 2 samples per t")

    def values(self) -> list[float]:
        count = int(math.floor((self.t_max - self.t_min) / self.t_step + 1e-9)) + 1
        return [float(round(self.t_min + k * self.t_step, 10)) for k in range(count)]


@dataclass
class SweepResult:
    sizes: list[tuple[float, int, int, int]]
    benefits: list[tuple[float, int, int]]
    distances: list[tuple[float, int, int, int, int]]


def run_sweep(g: WeightedGraph, config: SweepConfig, threads: int = 1) -> SweepResult:
    """Sample ``samples_per_t`` clusterings per ``t`` and compare every pair.

    Sample ``s`` at the ``k``-th threshold uses sample index
    ``k * samples_per_t + s``. Pair comparisons use the lower-indexed sample
    as the reference clustering.
    """
    res = SweepResult([], [], [])
    k = config.samples_per_t
    pairs = list(combinations(range(k), 2))
    with ThreadPoolExecutor(max(1, threads)) as pool:
        for ti, t in enumerate(config.values()):
            graph = probabilize(g, t)
            samples = sample_many(graph, config.seed, k, start=ti * k, threads=threads)
            for s, c in enumerate(samples):
                for size, count in sorted(cluster_sizes(c).items()):
                    res.sizes.append((t, s, size, count))
            reports = pool.map(lambda ij: compare(samples[ij[0]], samples[ij[1]]), pairs)
            for pi, ((i, j), rep) in enumerate(zip(pairs, reports)):
                res.distances.append((t, i, j, rep.symdiff, rep.balcan))
                for b in sorted(rep.benefits, reverse=True):
                    res.benefits.append((t, pi, b))
    return res


def write_sweep(result: SweepResult, out_dir) -> dict[str, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    tables = {
        "sizes.csv": (("t", "sample_index", "component_size", "count"), result.sizes),
        "benefits.csv": (("t", "pair_index", "benefit"), result.benefits),
        "distances.csv": (("t", "i", "j", "symdiff_distance", "balcan_distance"), result.distances),
    }
    paths = {}
    for name, (header, rows) in tables.items():
        path = out / name
        with open(path, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows((repr(r[0]), *r[1:]) for r in rows)
        paths[name] = path
    return paths
