"""Closed-form walk states on cycles and paths, and per-vertex probability profiles.

The closed forms are written directly in terms of arcs; they share nothing
with the numerical kernel in :mod:`markovpst.arcs` and are tested against it.

Probability profiles report two numbers per ``(t, k)``:

``amplitude``
    the fidelity ``<psi_k | U^t psi_j>``;
``probability``
    the squared amplitude carried by arcs leaving ``k`` (the chance of
    finding the walker at ``k`` when the first register is measured).

Both equal 1 exactly when the state is ``psi_k``. On a two-branch state the
walker sits at each branch's vertex with probability 1/2, while the fidelity
is 1/2 at interior vertices and ``1/sqrt(2)`` at the path ends.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterable, Literal

from markovpst._format import fmt
from markovpst.arcs import PRUNE, ArcState, overlap, psi_state, walk_step
from markovpst.graph import Graph, GraphError, VertexRangeError, path

Regime = Literal["endpoint", "early", "middle", "late", "cycle"]

HALF_SQRT2 = math.sqrt(0.5)


@dataclass(frozen=True)
class PropagatedState:
    state: ArcState
    t: int
    regime: Regime


def _check(n: int, j: int, t: int, min_n: int) -> None:
    if n < min_n:
        raise GraphError(f"need n >= {min_n}, got {n}")
    if not 0 <= j < n:
        raise VertexRangeError(f"vertex {j} outside 0..{n - 1}")
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")


def cycle_state(n: int, j: int, t: int) -> PropagatedState:
    """State after ``t`` steps on the ``n``-cycle starting from ``psi_j``.

    Two arcs of weight ``1/sqrt(2)``: one running clockwise, one
    counter-clockwise, each pointing back at the vertex it just left.
    """
    _check(n, j, t, 3)
    arcs = {}
    for a, b in (((j + t) % n, (j + t - 1) % n), ((j - t) % n, (j - t + 1) % n)):
        arcs[a, b] = arcs.get((a, b), 0.0) + HALF_SQRT2
    return PropagatedState(ArcState.from_arcs(n, arcs), t, "cycle")


def path_state(n: int, j: int, t: int) -> PropagatedState:
    """State after ``t`` steps on the ``n``-vertex path starting from ``psi_j``.

    Vertices past the midpoint are handled by the reflection ``v -> n-1-v``;
    times past ``n-1`` use ``U^(n-1) psi_j = psi_(n-1-j)``, which makes every
    vertex periodic with period ``2(n-1)``.
    """
    _check(n, j, t, 2)
    last = n - 1
    if t > last:
        t_r = t % (2 * last)
        if t_r <= last:
            inner = path_state(n, j, t_r)
        else:
            inner = path_state(n, last - j, t_r - last)
        return PropagatedState(inner.state, t, inner.regime)
    if j > last - j:
        inner = path_state(n, last - j, t)
        mirrored = {(last - a, last - b): amp for (a, b), amp in inner.state.items()}
        return PropagatedState(ArcState.from_arcs(n, mirrored), t, inner.regime)

    if j == 0:
        arc = (0, 1) if t == 0 else (t, t - 1)
        return PropagatedState(ArcState.from_arcs(n, {arc: 1.0}), t, "endpoint")

    if t <= j:
        kets, regime = [(j + t, j + t - 1), (j - t, j - t + 1)], "early"
    elif t <= n - j - 1:
        kets, regime = [(j + t, j + t - 1), (t - j, t - j - 1)], "middle"
    else:
        kets, regime = [(2 * n - t - j - 2, 2 * n - j - t - 1), (t - j, t - j - 1)], "late"
    arcs: dict[tuple[int, int], float] = {}
    for arc in kets:
        arcs[arc] = arcs.get(arc, 0.0) + HALF_SQRT2
    return PropagatedState(ArcState.from_arcs(n, arcs), t, regime)


@dataclass
class ProbabilityProfile:
    """Sparse table of ``(t, k) -> (amplitude, probability)``; missing pairs are zero."""

    n: int
    start: int
    t_max: int
    rows: list[tuple[int, int, float, float]] = field(default_factory=list)

    def _lookup(self, t: int, k: int) -> tuple[float, float]:
        for row in self.rows:
            if row[0] == t and row[1] == k:
                return row[2], row[3]
        return 0.0, 0.0

    def amplitude(self, t: int, k: int) -> float:
        return self._lookup(t, k)[0]

    def probability(self, t: int, k: int) -> float:
        return self._lookup(t, k)[1]

    def at(self, t: int) -> dict[int, float]:
        """Probability by vertex at time ``t``."""
        return {k: p for tt, k, _, p in self.rows if tt == t and p > 0}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "k", "amplitude", "probability"])
        for t, k, a, p in self.rows:
            w.writerow([t, k, fmt(a), fmt(p)])
        return buf.getvalue()


def profile_from_states(g: Graph, start: int, states: Iterable[ArcState]) -> ProbabilityProfile:
    """Tabulate fidelity and vertex occupation for ``states[t]``, ``t = 0, 1, ...``."""
    psis = [psi_state(g, k) for k in range(g.n)]
    rows = []
    t = -1
    for t, s in enumerate(states):
        mass = [0.0] * g.n
        for (a, _), amp in s.items():
            mass[a] += amp * amp
        for k in range(g.n):
            f = overlap(psis[k], s)
            if abs(f) > PRUNE or mass[k] > PRUNE:
                rows.append((t, k, f, mass[k]))
    return ProbabilityProfile(g.n, start, t, rows)


def path_probability_profile(n: int, j: int, t_max: int) -> ProbabilityProfile:
    """Profile on the ``n``-path from the closed form, for ``1 <= j <= n-j-1``."""
    if n < 2:
        raise GraphError(f"need n >= 2, got {n}")
    if not 1 <= j <= n - j - 1:
        raise ValueError(f"start vertex {j} outside 1..{(n - 1) // 2} for n={n}")
    if not 0 <= t_max <= n - 1:
        raise ValueError(f"t_max must lie in 0..{n - 1}, got {t_max}")
    states = (path_state(n, j, t).state for t in range(t_max + 1))
    return profile_from_states(path(n), j, states)


def numeric_profile(g: Graph, j: int, t_max: int) -> ProbabilityProfile:
    """Profile on any connected graph by stepping the numerical kernel."""
    if t_max < 0:
        raise ValueError(f"t_max must be >= 0, got {t_max}")
    w = walk_step(g)

    def states():
        x = w.to_vector(psi_state(g, j))
        for t in range(t_max + 1):
            if t:
                x = w.step(x)
            yield w.to_state(x)

    return profile_from_states(g, j, states())
