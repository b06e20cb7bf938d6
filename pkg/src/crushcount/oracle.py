"""Exact ground truth by exhaustive enumeration.

Everything here is deliberately simple: colourings are enumerated in
odometer order (vertex 0 is the most significant digit) in numpy blocks and
tested edge by edge. A second, independent exact route,
:func:`window_prefix_counts`, counts stable prefix colourings with a
sliding-window transfer matrix; it reaches instances (e.g. 4x4 grids with 5
colours) that plain enumeration cannot, and the two routes are cross-checked
in the test suite.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .coloring import Coloring
from .errors import InvalidInputError, OracleBudgetExceeded
from .grid import Hypergraph

DEFAULT_BUDGET = 10 ** 8
_BLOCK = 1 << 18


@dataclass(frozen=True)
class ExactCount:
    stable_count: int
    total_count: int
    c: int

    @property
    def ell(self) -> float:
        return float(Fraction(self.stable_count, self.total_count))

    def to_dict(self) -> dict:
        return {"c": self.c, "stableCount": str(self.stable_count),
                "totalCount": str(self.total_count), "ell": self.ell}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _require_budget(h: Hypergraph, c: int, budget: int) -> int:
    if c < 1:
        raise InvalidInputError(f"colour count must be positive, got {c}")
    total = c ** h.vertex_count
    if total > budget:
        raise OracleBudgetExceeded(
            f"enumerating {c}^{h.vertex_count} = {total} colourings exceeds the budget of {budget}")
    return total


def _blocks(n_vertices: int, c: int, lo: int = 0, hi: int | None = None) -> Iterator[np.ndarray]:
    """Colourings with odometer indices in ``[lo, hi)``, as ``(B, |V|)`` arrays."""
    hi = c ** n_vertices if hi is None else hi
    place = c ** np.arange(n_vertices - 1, -1, -1, dtype=np.int64)
    for start in range(lo, hi, _BLOCK):
        idx = np.arange(start, min(hi, start + _BLOCK), dtype=np.int64)
        yield (idx[:, None] // place[None, :]) % c


def _stable_mask(h: Hypergraph, colors: np.ndarray) -> np.ndarray:
    stable = np.ones(len(colors), dtype=bool)
    for e in h.edges:
        cols = colors[:, e.vertices]
        stable &= ~np.all(cols == cols[:, :1], axis=1)
    return stable


def _count_range(h: Hypergraph, c: int, lo: int, hi: int) -> int:
    return sum(int(_stable_mask(h, block).sum()) for block in _blocks(h.vertex_count, c, lo, hi))


def exact_count(h: Hypergraph, c: int, budget: int = DEFAULT_BUDGET, workers: int = 1) -> ExactCount:
    """Count stable colourings by visiting all ``c**|V|`` of them."""
    total = _require_budget(h, c, budget)
    if workers > 1 and total > _BLOCK:
        from concurrent.futures import ThreadPoolExecutor

        bounds = np.linspace(0, total, workers + 1).astype(np.int64).tolist()
        with ThreadPoolExecutor(workers) as pool:
            parts = pool.map(lambda ab: _count_range(h, c, ab[0], ab[1]), zip(bounds, bounds[1:]))
            stable = sum(parts)
    else:
        stable = _count_range(h, c, 0, total)
    return ExactCount(stable, total, c)


def exact_count_symmetric(h: Hypergraph, c: int, budget: int = DEFAULT_BUDGET) -> ExactCount:
    """Same count via the colour-permutation quotient: fix vertex 0 to colour 0, multiply by c."""
    total = _require_budget(h, c, budget)
    if h.vertex_count == 0:
        return ExactCount(1, 1, c)
    share = c ** (h.vertex_count - 1)
    return ExactCount(c * _count_range(h, c, 0, share), total, c)


def enumerate_stable(h: Hypergraph, c: int, budget: int = DEFAULT_BUDGET) -> list[Coloring]:
    """All stable colourings in lexicographic colour order."""
    _require_budget(h, c, budget)
    out = []
    for block in _blocks(h.vertex_count, c):
        for row in block[_stable_mask(h, block)].tolist():
            out.append(Coloring(tuple(row), c))
    return out


def stable_array(h: Hypergraph, c: int, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Stable colourings as a ``(S, |V|)`` array, lexicographic order."""
    _require_budget(h, c, budget)
    parts = [block[_stable_mask(h, block)] for block in _blocks(h.vertex_count, c)]
    if not parts:
        return np.zeros((0, h.vertex_count), dtype=np.int64)
    return np.concatenate(parts)


def exact_chromatic_polynomial_points(h: Hypergraph, c_values: Sequence[int],
                                      budget: int = DEFAULT_BUDGET) -> list[ExactCount]:
    return [exact_count(h, c, budget) for c in c_values]


def level_sizes(h: Hypergraph, c: int, budget: int = DEFAULT_BUDGET) -> list[int]:
    """``|Y_t|`` for ``t = 0..|V|`` by enumeration.

    Each colouring is tallied at its prefix-stable level (the smallest
    ``maxVertex`` of a monochromatic edge), then the tallies are summed from
    the top, since a colouring at level ``s`` belongs to ``Y_0 .. Y_s``.
    """
    _require_budget(h, c, budget)
    n = h.vertex_count
    hist = np.zeros(n + 1, dtype=np.int64)
    for block in _blocks(n, c):
        level = np.full(len(block), n, dtype=np.int64)
        for e in h.edges:
            cols = block[:, e.vertices]
            mono = np.all(cols == cols[:, :1], axis=1)
            np.minimum(level, np.where(mono, e.max_vertex, n), out=level)
        hist += np.bincount(level, minlength=n + 1)
    return [int(x) for x in np.cumsum(hist[::-1])[::-1]]


def window_prefix_counts(h: Hypergraph, c: int, max_states: int = 1 << 24) -> list[int]:
    """Stable colourings of every prefix hypergraph, by a sliding-window transfer matrix.

    Returns ``S_0..S_|V|`` where ``S_t`` counts the stable colourings of the
    first ``t`` vertices under the edges contained in them. The state is the
    colour string of the last ``w`` vertices, ``w`` being the largest
    ``maxVertex - minVertex`` of an edge, so ``c**w`` must fit in ``max_states``.
    """
    if c < 1:
        raise InvalidInputError(f"colour count must be positive, got {c}")
    n = h.vertex_count
    w = max((e.max_vertex - e.min_vertex for e in h.edges), default=0)
    if c ** w > max_states:
        raise OracleBudgetExceeded(f"window of {w} vertices needs {c}^{w} states (max {max_states})")
    exact_int = c ** n < (1 << 62)
    dtype = np.int64 if exact_int else object
    size = c ** w
    counts = np.zeros(size, dtype=dtype)
    counts[0] = 1
    # digit d (1-based) of a state is the colour of the vertex d steps back
    place = c ** np.arange(w, dtype=np.int64)
    states = np.arange(size, dtype=np.int64)
    out = [1]
    for v in range(n):
        new = np.zeros(size, dtype=dtype)
        for a in range(c):
            ok = np.ones(size, dtype=bool)
            for i in h.edges_ending_at[v]:
                mono = np.ones(size, dtype=bool)
                for u in h.edges[i].vertices[:-1]:
                    d = v - u
                    mono &= (states // place[d - 1]) % c == a
                ok &= ~mono
            contrib = np.where(ok, counts, 0)
            if w:
                # states sharing the w-1 most recent colours merge into one successor
                new[a::c] += contrib.reshape(c, size // c).sum(axis=0)
            else:
                new[0] += contrib.sum()
        counts = new
        out.append(int(counts.sum()))
    return out


def exact_level_probabilities(h: Hypergraph, c: int, budget: int = DEFAULT_BUDGET,
                              method: str = "auto") -> list[Fraction]:
    """Exact ``c_t = |Y_{t+1}| / |Y_t|`` for ``t = 0..|V|-1``.

    ``method`` is ``"enumerate"`` (all colourings), ``"window"`` (transfer
    matrix) or ``"auto"`` (enumeration when within budget).
    """
    if method == "auto":
        method = "enumerate" if c ** h.vertex_count <= budget else "window"
    n = h.vertex_count
    if method == "enumerate":
        sizes = level_sizes(h, c, budget)
        return [Fraction(sizes[t + 1], sizes[t]) for t in range(n)]
    if method == "window":
        prefix = window_prefix_counts(h, c)
        # |Y_t| = S_t * c**(n - t)
        return [Fraction(prefix[t + 1], prefix[t] * c) for t in range(n)]
    raise InvalidInputError(f"unknown method {method!r}")
