"""Arc-space states and the walk operator ``U = S (2 Pi - I)``.

A state lives on directed arcs ``(j, k)``; arc ``(j, k)`` is encoded as the
integer ``j * n + k``, i.e. its position in the ``n**2``-dimensional product
space. Only arcs along edges of the graph ever carry amplitude, so the
numerical kernel (:class:`WalkStep`) works on a dense vector over the
``2|E|`` edge arcs and never forms ``Pi`` explicitly. All amplitudes are real.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping

import numpy as np

from markovpst._format import fmt
from markovpst.graph import Graph, GraphError, VertexRangeError

PRUNE = 1e-14
DEFAULT_ORACLE_CAP = 40


@dataclass(frozen=True, eq=True)
class ArcState:
    """Sparse real vector over directed arcs of an ``n``-vertex graph.

    ``amplitudes`` maps encoded arcs ``j * n + k`` to nonzero amplitudes.
    Treat instances as values; operations never mutate their inputs.
    """

    n: int
    amplitudes: Mapping[int, float]

    @classmethod
    def from_arcs(cls, n: int, arcs: Mapping[tuple[int, int], float]) -> ArcState:
        amps: dict[int, float] = {}
        for (j, k), a in arcs.items():
            if not (0 <= j < n and 0 <= k < n):
                raise VertexRangeError(f"arc ({j}, {k}) outside 0..{n - 1}")
            code = j * n + k
            amps[code] = amps.get(code, 0.0) + float(a)
        return cls(n, {c: a for c, a in amps.items() if abs(a) > 0.0})

    @classmethod
    def zero(cls, n: int) -> ArcState:
        return cls(n, {})

    def items(self) -> Iterator[tuple[tuple[int, int], float]]:
        """Yield ``((j, k), amplitude)`` in ascending encoded order."""
        for code in sorted(self.amplitudes):
            yield divmod(code, self.n), self.amplitudes[code]

    def arcs(self) -> dict[tuple[int, int], float]:
        return dict(self.items())

    def amplitude(self, j: int, k: int) -> float:
        return self.amplitudes.get(j * self.n + k, 0.0)

    def norm(self) -> float:
        return math.sqrt(math.fsum(a * a for a in self.amplitudes.values()))

    def __len__(self) -> int:
        return len(self.amplitudes)

    def scaled(self, factor: float) -> ArcState:
        return ArcState(self.n, {c: factor * a for c, a in self.amplitudes.items()})

    def isclose(self, other: ArcState, atol: float = 1e-10) -> bool:
        """Same support and every amplitude within ``atol``."""
        if self.n != other.n or self.amplitudes.keys() != other.amplitudes.keys():
            return False
        return all(abs(a - other.amplitudes[c]) <= atol for c, a in self.amplitudes.items())

    def max_abs_diff(self, other: ArcState) -> float:
        _check_same_n(self, other)
        codes = self.amplitudes.keys() | other.amplitudes.keys()
        return max(
            (abs(self.amplitudes.get(c, 0.0) - other.amplitudes.get(c, 0.0)) for c in codes),
            default=0.0,
        )

    def to_dense(self) -> np.ndarray:
        v = np.zeros(self.n * self.n)
        for c, a in self.amplitudes.items():
            v[c] = a
        return v

    @classmethod
    def from_dense(cls, n: int, v: np.ndarray, prune: float = PRUNE) -> ArcState:
        idx = np.flatnonzero(np.abs(v) > prune)
        return cls(n, {int(c): float(v[c]) for c in idx})

    def dumps(self) -> str:
        """One ``j k amplitude`` line per arc, ascending encoded order."""
        return "".join(f"{j} {k} {fmt(a)}\n" for (j, k), a in self.items())

    @classmethod
    def loads(cls, n: int, text: str) -> ArcState:
        arcs: dict[tuple[int, int], float] = {}
        for line in text.splitlines():
            parts = line.split()
            # skips comments and the CLI's trailing "fidelity k f" lines
            if len(parts) != 3 or not parts[0].isdigit():
                continue
            j, k, a = parts
            arcs[int(j), int(k)] = float(a)
        return cls.from_arcs(n, arcs)


def _check_same_n(a: ArcState, b: ArcState) -> None:
    if a.n != b.n:
        raise ValueError(f"states over different vertex counts: {a.n} vs {b.n}")


class WalkStep:
    """Precomputed arc layout of a connected graph for the walk operator.

    Vectors handled here are indexed by edge-arc position (``0..2|E|-1``,
    ascending encoded order, hence grouped by source vertex). A 2-D array of
    shape ``(2|E|, b)`` evolves ``b`` states at once.
    """

    def __init__(self, g: Graph):
        g.require_connected()
        self.graph = g
        n = g.n
        codes = sorted(j * n + k for j in range(n) for k in g.neighbors[j])
        self.codes = np.asarray(codes, dtype=np.int64)
        self.source, self.target = np.divmod(self.codes, n)
        self.position = {int(c): i for i, c in enumerate(self.codes)}
        self.reverse = np.asarray(
            [self.position[int(k * n + j)] for j, k in zip(self.source, self.target)],
            dtype=np.int64,
        )
        deg = np.asarray(g.out_degree, dtype=float)
        # sqrt(p_jk) on each arc: the coefficients of psi_source
        self.weight = np.sqrt(1.0 / deg[self.source])
        self.group_start = np.searchsorted(self.source, np.arange(n))
        for arr in (self.codes, self.source, self.target, self.reverse, self.weight, self.group_start):
            arr.setflags(write=False)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def num_arcs(self) -> int:
        return len(self.codes)

    def _w(self, x: np.ndarray) -> np.ndarray:
        return self.weight if x.ndim == 1 else self.weight[:, None]

    def overlaps(self, x: np.ndarray) -> np.ndarray:
        """``<psi_j | x>`` for every vertex ``j`` (one row per vertex)."""
        return np.add.reduceat(self._w(x) * x, self.group_start, axis=0)

    def vertex_mass(self, x: np.ndarray) -> np.ndarray:
        """Squared amplitude summed over the outgoing arcs of each vertex."""
        return np.add.reduceat(x * x, self.group_start, axis=0)

    def reflect(self, x: np.ndarray) -> np.ndarray:
        c = self.overlaps(x)
        return 2.0 * self._w(x) * c[self.source] - x

    def swap(self, x: np.ndarray) -> np.ndarray:
        return x[self.reverse]

    def step(self, x: np.ndarray) -> np.ndarray:
        y = self.swap(self.reflect(x))
        y[np.abs(y) < PRUNE] = 0.0
        return y

    def evolve(self, x: np.ndarray, t: int) -> np.ndarray:
        if t < 0:
            raise ValueError(f"t must be >= 0, got {t}")
        x = np.array(x, dtype=float)
        for _ in range(t):
            x = self.step(x)
        return x

    def psi_vectors(self, vertices=None) -> np.ndarray:
        """Columns are ``psi_j`` for the requested vertices (all by default)."""
        vertices = np.arange(self.n) if vertices is None else np.asarray(vertices)
        return np.where(self.source[:, None] == vertices[None, :], self.weight[:, None], 0.0)

    def to_vector(self, s: ArcState) -> np.ndarray:
        if s.n != self.n:
            raise ValueError(f"state over {s.n} vertices, graph has {self.n}")
        x = np.zeros(self.num_arcs)
        for c, a in s.amplitudes.items():
            try:
                x[self.position[c]] = a
            except KeyError:
                j, k = divmod(c, self.n)
                raise GraphError(f"arc ({j}, {k}) is not an edge of {self.graph!r}") from None
        return x

    def to_state(self, x: np.ndarray) -> ArcState:
        idx = np.flatnonzero(np.abs(x) > PRUNE)
        return ArcState(self.n, {int(self.codes[i]): float(x[i]) for i in idx})


@lru_cache(maxsize=256)
def walk_step(g: Graph) -> WalkStep:
    return WalkStep(g)


def _check_vertex(g: Graph, j: int) -> None:
    if not 0 <= j < g.n:
        raise VertexRangeError(f"vertex {j} outside 0..{g.n - 1}")


def psi_state(g: Graph, j: int) -> ArcState:
    """Basis state of vertex ``j``: amplitude ``sqrt(1/d_j)`` on each outgoing arc."""
    _check_vertex(g, j)
    g.require_connected()
    a = math.sqrt(1.0 / g.out_degree[j])
    return ArcState(g.n, {j * g.n + k: a for k in g.neighbors[j]})


def overlap(a: ArcState, b: ArcState) -> float:
    _check_same_n(a, b)
    if len(a) > len(b):
        a, b = b, a
    return math.fsum(v * b.amplitudes[c] for c, v in a.amplitudes.items() if c in b.amplitudes)


def apply_reflection(g: Graph, s: ArcState) -> ArcState:
    """``(2 Pi - I) s``, computed group by group over source vertices."""
    w = walk_step(g)
    return w.to_state(w.reflect(w.to_vector(s)))


def apply_swap(s: ArcState) -> ArcState:
    n = s.n
    return ArcState(n, {(c % n) * n + c // n: a for c, a in s.amplitudes.items()})


def step(g: Graph, s: ArcState) -> ArcState:
    w = walk_step(g)
    return w.to_state(w.step(w.to_vector(s)))


def evolve(g: Graph, s: ArcState, t: int) -> ArcState:
    """Apply the walk operator ``t`` times; ``t = 0`` returns ``s`` itself."""
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if t == 0:
        return s
    w = walk_step(g)
    return w.to_state(w.evolve(w.to_vector(s), t))


def fidelities(g: Graph, s: ArcState) -> np.ndarray:
    """``<psi_k | s>`` for every vertex ``k``."""
    w = walk_step(g)
    return w.overlaps(w.to_vector(s))


def oracle_cap() -> int:
    return int(os.environ.get("MARKOVPST_ORACLE_CAP", DEFAULT_ORACLE_CAP))


def dense_oracle_step(g: Graph, cap: int | None = None) -> np.ndarray:
    """Explicit ``n**2 x n**2`` matrix of the walk operator.

    Built term by term from the projector sum and the swap permutation, with
    no shared code with :class:`WalkStep`; it exists to cross-check it.
    """
    cap = oracle_cap() if cap is None else cap
    n = g.n
    if n > cap:
        raise ValueError(f"dense oracle limited to {cap} vertices, graph has {n}")
    g.require_connected()
    adj = g.adjacency_matrix().astype(float)
    dim = n * n
    proj = np.zeros((dim, dim))
    for j in range(n):
        e_j = np.zeros(n)
        e_j[j] = 1.0
        row = adj[j] / adj[j].sum()
        psi = np.kron(e_j, np.sqrt(row))
        proj += np.outer(psi, psi)
    swap = np.zeros((dim, dim))
    for j in range(n):
        for k in range(n):
            swap[j * n + k, k * n + j] = 1.0
    return swap @ (2.0 * proj - np.eye(dim))
