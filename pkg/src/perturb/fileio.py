"""Edge-list file format.

First line ``n m`` for an undirected graph or ``n m directed`` for a digraph,
followed by m lines ``u v`` (0-based, space-separated).  Undirected files
store u < v with lines sorted lexicographically; in directed files a line is
the arc u -> v.  Lines starting with ``#`` are comments.
"""

from __future__ import annotations

import os
from .graphs import Graph, Orientation

__all__ = ["read_graph", "write_graph", "read_digraph", "write_digraph"]


class EdgeListFormatError(ValueError):
    pass


def _parse(path) -> tuple[int, list, bool]:
    lines = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if line and not line.startswith("#"):
                lines.append(line)
    if not lines:
        raise EdgeListFormatError(f"{path}: empty edge-list file")
    header = lines[0].split()
    directed = False
    if len(header) == 3 and header[2] == "directed":
        directed = True
    elif len(header) != 2:
        raise EdgeListFormatError(f"{path}: bad header {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError as exc:
        raise EdgeListFormatError(f"{path}: bad header {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise EdgeListFormatError(
            f"{path}: header declares {m} edges but file has {len(lines) - 1}"
        )
    pairs = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListFormatError(f"{path}: bad edge line {line!r}")
        u, v = int(parts[0]), int(parts[1])
        if not directed and u >= v:
            raise EdgeListFormatError(
                f"{path}: undirected lines must satisfy u < v, got {line!r}"
            )
        pairs.append((u, v))
    return n, pairs, directed


def read_graph(path) -> Graph:
    n, pairs, directed = _parse(path)
    if directed:
        raise EdgeListFormatError(f"{path}: expected an undirected file")
    return Graph(n, pairs)


def read_digraph(path) -> Orientation:
    n, pairs, directed = _parse(path)
    if not directed:
        raise EdgeListFormatError(f"{path}: expected a directed file")
    base = Graph(n, [(min(u, v), max(u, v)) for u, v in pairs])
    return Orientation(base, pairs)


def write_graph(g: Graph, path) -> None:
    _atomic_write(path, _render(g.n, g.edges, directed=False))


def write_digraph(d: Orientation, path) -> None:
    _atomic_write(path, _render(d.n, sorted(d.arcs), directed=True))


def _render(n: int, pairs, directed: bool) -> str:
    header = f"{n} {len(pairs)} directed" if directed else f"{n} {len(pairs)}"
    body = "".join(f"{u} {v}\n" for u, v in pairs)
    return header + "\n" + body


def _atomic_write(path, text: str) -> None:
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)
