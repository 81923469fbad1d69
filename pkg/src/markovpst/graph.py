"""Undirected simple graphs, standard generators and the random-walk transition rule.

Vertices are dense integers ``0..n-1``. A :class:`Graph` is immutable and
hashable so that derived walk data can be cached per graph.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Literal, Sequence, TextIO

import numpy as np


class GraphError(ValueError):
    """Base class for graph validation failures."""


class SelfLoopError(GraphError):
    pass


class VertexRangeError(GraphError):
    pass


class DisconnectedGraphError(GraphError):
    pass


class EdgeListFormatError(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``edges`` holds each edge once as ``(j, k)`` with ``j < k``, sorted.
    Use :func:`from_edge_list` rather than the constructor for untrusted input.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    name: str = field(default="", compare=False)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for j, k in self.edges:
            adj[j].append(k)
            adj[k].append(j)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def out_degree(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.neighbors)

    @cached_property
    def _edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def has_edge(self, j: int, k: int) -> bool:
        return (min(j, k), max(j, k)) in self._edge_set

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by smallest vertex."""
        seen = [False] * self.n
        comps = []
        for root in range(self.n):
            if seen[root]:
                continue
            seen[root] = True
            comp = [root]
            queue = deque([root])
            while queue:
                v = queue.popleft()
                for w in self.neighbors[v]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n >= 1 and len(self.components()) == 1

    def require_connected(self) -> None:
        if self.n < 2:
            raise GraphError(f"a walk needs at least 2 vertices, got n={self.n}")
        if not self.is_connected():
            raise DisconnectedGraphError(f"{self!r} has {len(self.components())} components")

    def subgraph(self, vertices: Sequence[int]) -> Graph:
        """Induced subgraph relabelled to ``0..len(vertices)-1`` in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[j], index[k]) for j, k in self.edges if j in index and k in index]
        return _build(len(vertices), edges, name=f"{self.name}[{','.join(map(str, vertices))}]")

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for j, k in self.edges:
            a[j, k] = a[k, j] = 1
        return a

    def __repr__(self) -> str:
        label = self.name or "Graph"
        return f"<{label} n={self.n} |E|={len(self.edges)}>"


def _build(n: int, edges: Iterable[tuple[int, int]], name: str = "") -> Graph:
    canon = sorted({(min(j, k), max(j, k)) for j, k in edges})
    return Graph(n=n, edges=tuple(canon), name=name)


def from_edge_list(
    n: int,
    edges: Iterable[Sequence[int]],
    *,
    require_connected: bool = True,
    name: str = "",
) -> Graph:
    """Validate an edge list and build a :class:`Graph`.

    Duplicate pairs and reversed duplicates collapse to one edge. Raises
    :class:`SelfLoopError`, :class:`VertexRangeError` or, when
    ``require_connected`` is set, :class:`DisconnectedGraphError`.
    """
    if n < 2:
        raise GraphError(f"need n >= 2, got {n}")
    pairs = []
    for pair in edges:
        j, k = (int(v) for v in pair)
        if not (0 <= j < n and 0 <= k < n):
            raise VertexRangeError(f"edge ({j}, {k}) outside 0..{n - 1}")
        if j == k:
            raise SelfLoopError(f"self-loop at vertex {j}")
        pairs.append((j, k))
    g = _build(n, pairs, name=name)
    if require_connected:
        g.require_connected()
    return g


def path(n: int) -> Graph:
    if n < 2:
        raise GraphError(f"path needs n >= 2, got {n}")
    return _build(n, ((j, j + 1) for j in range(n - 1)), name=f"path:{n}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return _build(n, ((j, (j + 1) % n) for j in range(n)), name=f"cycle:{n}")


def hypercube(d: int) -> Graph:
    if d < 1:
        raise GraphError(f"hypercube needs d >= 1, got {d}")
    n = 1 << d
    edges = ((v, v ^ (1 << b)) for v in range(n) for b in range(d) if not v & (1 << b))
    return _build(n, edges, name=f"hypercube:{d}")


def star(n: int) -> Graph:
    """Star with centre 0 and leaves ``1..n-1``."""
    if n < 2:
        raise GraphError(f"star needs n >= 2, got {n}")
    return _build(n, ((0, j) for j in range(1, n)), name=f"star:{n}")


def product(g1: Graph, g2: Graph, kind: Literal["tensor", "cartesian"]) -> Graph:
    """Tensor or Cartesian product; vertex ``(a, b)`` becomes ``a * g2.n + b``.

    The result is not checked for connectedness: the tensor product of two
    bipartite graphs is always disconnected, and callers may want to inspect
    the components.
    """
    n2 = g2.n
    edges: list[tuple[int, int]] = []
    if kind == "tensor":
        for (a, c), (b, d) in itertools.product(g1.edges, g2.edges):
            edges.append((a * n2 + b, c * n2 + d))
            edges.append((a * n2 + d, c * n2 + b))
    elif kind == "cartesian":
        for a in range(g1.n):
            edges.extend((a * n2 + b, a * n2 + d) for b, d in g2.edges)
        for b in range(n2):
            edges.extend((a * n2 + b, c * n2 + b) for a, c in g1.edges)
    else:
        raise ValueError(f"unknown product kind {kind!r}")
    return _build(g1.n * n2, edges, name=f"{kind}:{g1.name},{g2.name}")


def transition_probability(g: Graph, j: int, k: int) -> Fraction:
    """Exact random-walk probability ``1/d_j`` of moving from ``j`` to neighbour ``k``."""
    for v in (j, k):
        if not 0 <= v < g.n:
            raise VertexRangeError(f"vertex {v} outside 0..{g.n - 1}")
    if j != k and g.has_edge(j, k):
        return Fraction(1, g.out_degree[j])
    return Fraction(0)


def transition_matrix(g: Graph) -> np.ndarray:
    """Floating view of the full transition matrix (rows sum to 1)."""
    deg = np.asarray(g.out_degree, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.nan_to_num(g.adjacency_matrix() / deg[:, None])


# -- edge-list text format ---------------------------------------------------


def write_edge_list(g: Graph, fh: TextIO) -> None:
    fh.write(dumps_edge_list(g))


def dumps_edge_list(g: Graph) -> str:
    lines = []
    if g.name:
        lines.append(f"# {g.name}")
    lines.append(f"n {g.n}")
    lines.extend(f"{j} {k}" for j, k in g.edges)
    return "\n".join(lines) + "\n"


def loads_edge_list(text: str, *, require_connected: bool = True) -> Graph:
    """Parse the edge-list format.

    The first non-comment line is ``n <count>``. An optional ``labels a b c ...``
    line may follow; edge lines then name vertices by label instead of index.
    Every other line is a ``j k`` pair. Lines starting with ``#`` are ignored.
    """
    n = None
    labels: dict[str, int] | None = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise EdgeListFormatError(f"line {lineno}: expected 'n <count>', got {line!r}")
            n = int(parts[1])
            continue
        if parts[0] == "labels" and labels is None and not edges:
            if len(parts) - 1 != n or len(set(parts[1:])) != n:
                raise EdgeListFormatError(f"line {lineno}: need {n} distinct labels")
            labels = {lab: i for i, lab in enumerate(parts[1:])}
            continue
        if len(parts) != 2:
            raise EdgeListFormatError(f"line {lineno}: expected 'j k', got {line!r}")
        if labels is not None:
            try:
                edges.append((labels[parts[0]], labels[parts[1]]))
            except KeyError as exc:
                raise EdgeListFormatError(f"line {lineno}: unknown label {exc}") from None
        else:
            try:
                edges.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise EdgeListFormatError(f"line {lineno}: non-integer vertex in {line!r}") from None
    if n is None:
        raise EdgeListFormatError("missing 'n <count>' header")
    return from_edge_list(n, edges, require_connected=require_connected)


def read_edge_list(fh: TextIO, *, require_connected: bool = True) -> Graph:
    return loads_edge_list(fh.read(), require_connected=require_connected)
