"""Moser-Tardos sampling of weak proper colourings.

Three edge-selection rules are available:

``"lex"`` (default)
    Resample the k vertices of the lexicographically first monochromatic edge.
``"first-found"``
    Resample the first monochromatic edge in storage order. Not certified
    uniform; meant for exploring run times.
``"rewind"``
    Find the lexicographically first monochromatic edge and resample every
    vertex covered by it or by any edge ranked before it. The events "edge j
    is the first monochromatic edge" are pairwise exclusive, so this variant
    is exactly uniform; it is much slower away from tiny instances.

Only ``"rewind"`` is exactly uniform on two-dimensional grids. ``"lex"`` is
exactly uniform when edges ending at different vertices never overlap out of
order (single rows, disjoint edges) and slightly biased otherwise; see
:func:`exact_output_distribution`.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from ._backend import kernels
from .coloring import Coloring
from .errors import InvalidInputError
from .grid import Hypergraph
from .rng import RngStream, SplitMix64, level_seed

RULES = ("lex", "first-found", "rewind")
_UNBOUNDED = (1 << 62)


@dataclass(frozen=True)
class SampleStats:
    resample_count: int
    initial_assignments: int
    budget_exceeded: bool = False


@dataclass(frozen=True)
class ConstraintTables:
    """Kernel input for one (hypergraph, prefix, rule) triple."""

    ev: np.ndarray
    vrank: np.ndarray
    cover: np.ndarray
    cover_end: np.ndarray
    edge_ids: tuple[int, ...]
    rewind: bool


def _check_rule(rule: str) -> None:
    if rule not in RULES:
        raise InvalidInputError(f"unknown selection rule {rule!r}; expected one of {RULES}")


def constraint_tables(h: Hypergraph, t: int | None = None, rule: str = "lex") -> ConstraintTables:
    """Tables for sampling the prefix of ``t`` vertices (``None`` means all of ``h``)."""
    _check_rule(rule)
    t = h.vertex_count if t is None else t
    if not 0 <= t <= h.vertex_count:
        raise InvalidInputError(f"prefix length {t} outside [0, {h.vertex_count}]")

    def build():
        order = range(len(h.edges)) if rule == "first-found" else h.lex_order
        ids = tuple(i for i in order if h.edges[i].max_vertex < t)
        k = h.k or 0
        ev = np.ascontiguousarray(
            np.array([h.edges[i].vertices for i in ids], dtype=np.int32).reshape(len(ids), k))
        vrank = np.full(h.vertex_count, len(ids), dtype=np.int32)
        seen = set()
        cover = []
        cover_end = np.empty(len(ids), dtype=np.int32)
        for rank, row in enumerate(ev.tolist()):
            for v in row:
                if vrank[v] > rank:
                    vrank[v] = rank
                if v not in seen:
                    seen.add(v)
                    cover.append(v)
            cover_end[rank] = len(cover)
        for arr in (ev, vrank, cover_end):
            arr.setflags(write=False)
        cover_arr = np.array(cover, dtype=np.int32)
        cover_arr.setflags(write=False)
        return ConstraintTables(ev, vrank, cover_arr, cover_end, ids, rule == "rewind")

    return h.cache(("constraints", t, rule), build)


def default_budget(edge_count: int, k: int | None) -> int:
    """Resampling cap: 1000 times (1 + the local-lemma expected-resample bound)."""
    if not edge_count or not k:
        return 1000
    return int(math.ceil(1000 * (1 + edge_count / (k * k + 2 * k - 2))))


def _resolve(h, t, c, budget, rule):
    if c < 1:
        raise InvalidInputError(f"colour count must be positive, got {c}")
    tables = constraint_tables(h, t, rule)
    if c == 1 and len(tables.edge_ids):
        raise InvalidInputError("a single colour makes every edge monochromatic; sampling cannot terminate")
    if budget is None:
        budget = default_budget(len(tables.edge_ids), h.k)
    elif budget < 1:
        raise InvalidInputError("resample budget must be at least 1")
    return tables, budget


def _as_stream(rng) -> RngStream:
    if isinstance(rng, RngStream):
        return rng
    return RngStream(int(rng))


def mt_sample_prefix(h: Hypergraph, t: int, c: int, rng: RngStream | int,
                     budget: int | None = None, rule: str = "lex"):
    """Sample a member of level set ``Y_t``.

    The first ``t`` vertices come from Moser-Tardos on the prefix hypergraph;
    the remaining vertices keep their independent uniform initial colours.

    Returns
    -------
    (Coloring or None, SampleStats)
        The colouring is ``None`` exactly when ``stats.budget_exceeded``.
    """
    tables, budget = _resolve(h, t, c, budget, rule)
    stream = _as_stream(rng)
    out = np.empty(h.vertex_count, dtype=np.int32)
    r = kernels.mt_fill(tables.ev, tables.vrank, tables.cover, tables.cover_end, out,
                        c, stream.seed, budget, tables.rewind)
    if r < 0:
        return None, SampleStats(budget, h.vertex_count, True)
    return Coloring(tuple(out.tolist()), c), SampleStats(int(r), h.vertex_count, False)


def mt_sample(h: Hypergraph, c: int, rng: RngStream | int, budget: int | None = None,
              rule: str = "lex"):
    """Las Vegas sample of a stable colouring of ``h``; see :func:`mt_sample_prefix`."""
    return mt_sample_prefix(h, h.vertex_count, c, rng, budget, rule)


def sample_many(h: Hypergraph, c: int, count: int, master_seed: int, purpose: str = "sample",
                level: int = 0, budget: int | None = None, rule: str = "lex",
                t: int | None = None):
    """Draw samples with stream indices ``0..count-1`` in one kernel call.

    Sample ``i`` equals ``mt_sample_prefix(h, t, c, RngStream(master_seed, purpose, level, i))``.

    Returns
    -------
    colors : (count, |V|) int32 array
    resamples : (count,) int64 array

    Raises
    ------
    SamplerBudgetExceeded
        If any sample runs out of budget.
    """
    from .errors import SamplerBudgetExceeded

    tables, budget = _resolve(h, t, c, budget, rule)
    colors = np.empty((count, h.vertex_count), dtype=np.int32)
    resamples = np.empty(count, dtype=np.int64)
    failed = kernels.mt_batch(tables.ev, tables.vrank, tables.cover, tables.cover_end,
                              h.vertex_count, c, level_seed(master_seed, purpose, level),
                              0, count, budget, tables.rewind, colors, resamples)
    if failed >= 0:
        raise SamplerBudgetExceeded(
            f"sample {failed} exceeded the budget of {budget} resampling steps", level, failed)
    return colors, resamples


def mt_trace(h: Hypergraph, c: int, rng: RngStream | int, budget: int | None = None,
             rule: str = "lex") -> Iterator[tuple[int, tuple[int, ...], tuple[int, ...]]]:
    """Step through one sampler run in pure Python.

    Yields ``(edge_index, before, after)`` per resampling step, where
    ``edge_index`` is the storage index of the selected edge. Uses the same
    stream as :func:`mt_sample`, so the last ``after`` (or the initial
    colouring when no step happens) is the same output.
    """
    tables, budget = _resolve(h, None, c, budget, rule)
    gen: SplitMix64 = _as_stream(rng).generator()
    colors = [gen.below(c) for _ in range(h.vertex_count)]
    edges = [tuple(r) for r in tables.ev.tolist()]
    steps = 0
    while True:
        j = next((r for r, e in enumerate(edges) if len({colors[v] for v in e}) == 1), None)
        if j is None:
            return
        if steps >= budget:
            return
        steps += 1
        before = tuple(colors)
        targets = tables.cover[:tables.cover_end[j]].tolist() if tables.rewind else edges[j]
        for v in targets:
            colors[v] = gen.below(c)
        yield tables.edge_ids[j], before, tuple(colors)


def exact_output_distribution(h: Hypergraph, c: int, rule: str = "lex", tol: float = 1e-15,
                              max_states: int = 200_000) -> dict[tuple[int, ...], float]:
    """Exact output law of the sampler from a uniform start, by propagating the Markov chain.

    Feasible for tiny instances only (``c**|V| <= max_states``). Returns a map
    from stable colouring to probability.
    """
    tables, _ = _resolve(h, None, c, None, rule)
    n = h.vertex_count
    total = c ** n
    if total > max_states:
        raise InvalidInputError(f"{total} states exceed max_states={max_states}")
    states = np.array(list(itertools.product(range(c), repeat=n)), dtype=np.int64).reshape(total, n)
    weights = c ** np.arange(n - 1, -1, -1, dtype=np.int64)
    ev = tables.ev
    first = np.full(total, -1, dtype=np.int64)
    for j in range(len(ev) - 1, -1, -1):
        cols = states[:, ev[j]]
        first[np.all(cols == cols[:, :1], axis=1)] = j
    mass = np.full(total, 1.0 / total)
    out = np.zeros(total)
    while True:
        stable = first < 0
        out[stable] += mass[stable]
        mass[stable] = 0.0
        if mass.sum() < tol:
            break
        nxt = np.zeros(total)
        for j in range(len(ev)):
            rows = np.nonzero((first == j) & (mass > 0))[0]
            if not len(rows):
                continue
            targets = tables.cover[:tables.cover_end[j]] if tables.rewind else ev[j]
            targets = np.asarray(targets, dtype=np.int64)
            base = states[rows] @ weights - states[rows][:, targets] @ weights[targets]
            share = mass[rows] / c ** len(targets)
            for combo in itertools.product(range(c), repeat=len(targets)):
                np.add.at(nxt, base + np.dot(combo, weights[targets]), share)
        mass = nxt
    return {tuple(states[i].tolist()): float(out[i]) for i in np.nonzero(first < 0)[0]}
