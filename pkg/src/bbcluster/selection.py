"""Best-of-m candidate selection and the sample-size calculators behind it."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError
from .graph import Clustering
from .metrics import symdiff_distance
from .sampling import EVALUATOR_OFFSET, as_source, sample_many

DEFAULT_CHERNOFF_CONSTANT = 2.0
# absorbs float noise in ln-ratios before taking a ceiling, e.g. log2(1024)
_CEIL_SLACK = 1e-9


def _ceil(x: float) -> int:
    return math.ceil(x - _CEIL_SLACK)


def candidates_needed(epsilon: float, tau: float) -> int:
    """Smallest ``m`` with ``(1 + epsilon)^-m <= tau``."""
    if not epsilon > 0:
        raise InputError(f"epsilon must be positive, got {epsilon}")
    if not 0 < tau < 1:
        raise InputError(f"tau must lie in (0, 1), got {tau}")
    return max(1, _ceil(math.log(1 / tau) / math.log1p(epsilon)))


def evaluators_needed(n: int, delta: float, m: int, p: float,
                      chernoff_constant: float = DEFAULT_CHERNOFF_CONSTANT) -> int:
    """Evaluation samples so every candidate total is within ``1 ± delta`` w.p. ``1 - p``.

    Returns ``ceil(n / delta**2 * c * ln(m / p))``, at least 1. The constant
    ``c`` comes from a multiplicative Chernoff bound with a union bound over
    the ``m`` candidates; treat the result as a heuristic sizing.
    """
    if n < 1 or m < 1:
        raise InputError("n and m must be positive")
    if not delta > 0:
        raise InputError(f"delta must be positive, got {delta}")
    if not 0 < p < 1:
        raise InputError(f"p must lie in (0, 1), got {p}")
    if not chernoff_constant > 0:
        raise InputError("the Chernoff constant must be positive")
    return max(1, _ceil(n / delta**2 * chernoff_constant * math.log(m / p)))


@dataclass(frozen=True)
class SelectionParams:
    epsilon: float
    tau: float
    delta: float
    m: int
    l: int

    def __post_init__(self):
        if self.m < 1 or self.l < 1:
            raise InputError(f"m and l must be at least 1 (got m={self.m}, l={self.l})")

    @classmethod
    def derive(cls, n: int, epsilon: float, tau: float, delta: float, p: float,
               m: int | None = None, l: int | None = None,
               chernoff_constant: float = DEFAULT_CHERNOFF_CONSTANT) -> "SelectionParams":
        if m is None:
            m = candidates_needed(epsilon, tau)
        if l is None:
            l = evaluators_needed(n, delta, m, p, chernoff_constant)
        return cls(epsilon, tau, delta, m, l)


@dataclass(frozen=True)
class SelectionResult:
    chosen: Clustering
    chosen_index: int
    scores: list[float] = field(repr=False)
    candidates: list[Clustering] = field(repr=False, default_factory=list)


def select_candidate(source, params: SelectionParams, seed: int, threads: int = 1) -> SelectionResult:
    """Draw ``m`` candidates and ``l`` evaluators; keep the candidate closest to the evaluators.

    Score ``d_i = sum_j D_{C_i}(X_j) / n`` with the candidate as reference.
    Ties go to the lowest candidate index. Candidates use sample indices
    ``0..m-1`` and evaluators start at ``EVALUATOR_OFFSET``, so the two sets
    never share a draw.
    """
    src = as_source(source)
    cands = sample_many(src, seed, params.m, threads=threads)
    evals = sample_many(src, seed, params.l, start=EVALUATOR_OFFSET, threads=threads)

    # repeated draws are common on small supports; score each distinct one once
    distinct: dict[Clustering, int] = {}
    for x in evals:
        distinct[x] = distinct.get(x, 0) + 1
    cache: dict[Clustering, int] = {}
    totals = []
    for c in cands:
        if c not in cache:
            cache[c] = sum(k * symdiff_distance(c, x)[0] for x, k in distinct.items())
        totals.append(cache[c])

    n = max(src.n, 1)
    best = int(np.argmin(totals))
    return SelectionResult(cands[best], best, [t / n for t in totals], cands)
