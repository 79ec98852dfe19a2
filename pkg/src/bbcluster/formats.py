"""Plain-text file formats.

Probabilistic graph (and normalized weight graph)::

    #nodes=<n>
    u<TAB>v<TAB>p

Clustering: one ``node_id<TAB>cluster_label`` line per node.

Explicit distribution: one ``probability<TAB>label_0,label_1,...`` line per
outcome; probabilities may be fractions such as ``3/8``.

Symbol table: ``node_id<TAB>name``.
"""
from __future__ import annotations

import os
from fractions import Fraction
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import InputError
from .graph import Clustering, ProbabilisticGraph
from .sampling import ExplicitDistribution

PathLike = str | os.PathLike


class ParseError(InputError):
    def __init__(self, path, lineno: int, msg: str):
        super().__init__(f"{path}:{lineno}: {msg}")
        self.path = path
        self.lineno = lineno


def _lines(path: PathLike):
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n").rstrip("\r")
            if line.strip():
                yield lineno, line


def _write(path: PathLike, lines: Iterable[str]) -> None:
    # newline="" keeps "\n" on every platform so outputs are byte-stable
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for line in lines:
            fh.write(line)
            fh.write("\n")


def read_edge_table(path: PathLike) -> tuple[int, np.ndarray, np.ndarray, np.ndarray]:
    n = None
    us, vs, ws = [], [], []
    for lineno, line in _lines(path):
        if line.startswith("#"):
            if line.startswith("#nodes="):
                try:
                    n = int(line[len("#nodes="):])
                except ValueError:
                    raise ParseError(path, lineno, f"bad node count {line!r}") from None
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ParseError(path, lineno, f"expected 3 tab-separated fields, got {len(parts)}")
        try:
            us.append(int(parts[0]))
            vs.append(int(parts[1]))
            ws.append(float(parts[2]))
        except ValueError as exc:
            raise ParseError(path, lineno, str(exc)) from None
    if n is None:
        raise ParseError(path, 1, "missing '#nodes=<n>' header")
    return n, np.array(us, np.int64), np.array(vs, np.int64), np.array(ws, np.float64)


def read_graph(path: PathLike) -> ProbabilisticGraph:
    n, u, v, p = read_edge_table(path)
    try:
        return ProbabilisticGraph(n, u, v, p)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def format_float(x: float) -> str:
    return repr(float(x))


def write_edge_table(path: PathLike, n: int, u, v, w) -> None:
    rows = (f"{a}\t{b}\t{format_float(c)}" for a, b, c in zip(
        np.asarray(u).tolist(), np.asarray(v).tolist(), np.asarray(w).tolist()))
    _write(path, [f"#nodes={n}", *rows])


def write_graph(path: PathLike, g: ProbabilisticGraph) -> None:
    write_edge_table(path, g.n, g.u, g.v, g.p)


def read_clustering(path: PathLike) -> Clustering:
    entries: dict[int, str] = {}
    for lineno, line in _lines(path):
        if line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ParseError(path, lineno, "expected 'node_id<TAB>cluster_label'")
        try:
            node = int(parts[0])
        except ValueError:
            raise ParseError(path, lineno, f"bad node id {parts[0]!r}") from None
        if node in entries:
            raise ParseError(path, lineno, f"node {node} listed twice")
        entries[node] = parts[1]
    n = len(entries)
    if set(entries) != set(range(n)):
        raise InputError(f"{path}: node ids must be exactly 0..{n - 1}")
    # labels are opaque tokens; canonicalization renames them
    names: dict[str, int] = {}
    labels = [names.setdefault(entries[i], len(names)) for i in range(n)]
    return Clustering(np.array(labels, dtype=np.int64))


def write_clustering(path: PathLike, c: Clustering) -> None:
    _write(path, (f"{i}\t{lab}" for i, lab in enumerate(c.labels.tolist())))


def read_distribution(path: PathLike) -> ExplicitDistribution:
    outcomes = []
    for lineno, line in _lines(path):
        if line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ParseError(path, lineno, "expected 'probability<TAB>labels'")
        try:
            prob = Fraction(parts[0].strip())
            labels = [int(x) for x in parts[1].split(",")] if parts[1] else []
        except ValueError as exc:
            raise ParseError(path, lineno, str(exc)) from None
        outcomes.append((Clustering(np.array(labels, dtype=np.int64)), prob))
    try:
        return ExplicitDistribution(outcomes)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def write_distribution(path: PathLike, d: ExplicitDistribution) -> None:
    _write(path, (f"{q}\t{','.join(map(str, c.labels.tolist()))}" for c, q in d.outcomes))


def write_symbols(path: PathLike, names: list[str]) -> None:
    _write(path, (f"{i}\t{name}" for i, name in enumerate(names)))


def read_symbols(path: PathLike) -> list[str]:
    out = []
    for lineno, line in _lines(path):
        idx, _, name = line.partition("\t")
        if int(idx) != len(out):
            raise ParseError(path, lineno, "symbol ids must be consecutive from 0")
        out.append(name)
    return out


def ensure_dir(path: PathLike) -> Path:
    p = Path(path)
    p.mkdir(parents=True, exist_ok=True)
    return p
