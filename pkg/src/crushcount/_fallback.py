"""Pure-Python kernels, used when the compiled extension is unavailable.

Signatures and draw order mirror ``_kernels.pyx`` exactly, so both backends
produce identical results for identical stream keys.

Constraint tables shared by the MT kernels:

``ev``
    ``(E, k)`` edges in selection order (rank 0 is tried first).
``vrank``
    per vertex, the smallest rank of an edge containing it (``E`` if none).
``cover`` / ``cover_end``
    vertices in order of first appearance along ``ev``; the vertices covered by
    ranks ``0..j`` are ``cover[:cover_end[j]]``. Only the rewind rule uses them.
"""
from __future__ import annotations

import numpy as np

from .rng import MASK64, SplitMix64, absorb, absorb_array, mix64_array, GAMMA


def _mt_core(edges, vrank, cover, cover_end, colors, n_vertices, c, gen, budget, rewind):
    below = gen.below
    for v in range(n_vertices):
        colors[v] = below(c)
    n_edges = len(edges)
    start = 0
    count = 0
    while True:
        j = start
        while j < n_edges:
            e = edges[j]
            first = colors[e[0]]
            for v in e:
                if colors[v] != first:
                    break
            else:
                break
            j += 1
        if j == n_edges:
            return count
        if count >= budget:
            return -1
        count += 1
        if rewind:
            for i in range(cover_end[j]):
                colors[cover[i]] = below(c)
            start = 0
        else:
            start = n_edges
            for v in edges[j]:
                colors[v] = below(c)
                if vrank[v] < start:
                    start = vrank[v]


def _lists(ev, vrank, cover, cover_end):
    return ([tuple(r) for r in np.asarray(ev).tolist()], np.asarray(vrank).tolist(),
            np.asarray(cover).tolist(), np.asarray(cover_end).tolist())


def mt_fill(ev, vrank, cover, cover_end, colors_out, c, seed, budget, rewind):
    """Run one Moser-Tardos sample into ``colors_out``; returns resample count or -1."""
    edges, vr, cv, ce = _lists(ev, vrank, cover, cover_end)
    n = len(colors_out)
    colors = [0] * n
    result = _mt_core(edges, vr, cv, ce, colors, n, int(c), SplitMix64(seed), budget, rewind)
    colors_out[:] = colors
    return result


def mt_batch(ev, vrank, cover, cover_end, n_vertices, c, level_seed, start, stop, budget,
             rewind, out_colors, out_resamples):
    """Samples ``start..stop-1``; rows of ``out_colors`` are offset by ``start``. Returns first failing index or -1."""
    edges, vr, cv, ce = _lists(ev, vrank, cover, cover_end)
    colors = [0] * n_vertices
    for i in range(start, stop):
        r = _mt_core(edges, vr, cv, ce, colors, n_vertices, int(c),
                     SplitMix64(absorb(level_seed, i)), budget, rewind)
        if r < 0:
            return i
        out_colors[i - start, :] = colors
        out_resamples[i - start] = r
    return -1


def level_batch(ev, vrank, cover, cover_end, end_ev, n_vertices, c, level_seed, start, stop,
                budget, rewind):
    """Count samples of the prefix that also avoid every monochromatic edge in ``end_ev``.

    Returns ``(hits, total_resamples, failed_index)`` with ``failed_index`` -1 on success.
    """
    edges, vr, cv, ce = _lists(ev, vrank, cover, cover_end)
    ending = [tuple(r) for r in np.asarray(end_ev).tolist()]
    colors = [0] * n_vertices
    hits = 0
    total = 0
    c = int(c)
    for i in range(start, stop):
        r = _mt_core(edges, vr, cv, ce, colors, n_vertices, c,
                     SplitMix64(absorb(level_seed, i)), budget, rewind)
        if r < 0:
            return hits, total, i
        total += r
        ok = True
        for e in ending:
            first = colors[e[0]]
            if all(colors[v] == first for v in e):
                ok = False
                break
        hits += ok
    return hits, total, -1


def mc_batch(ev, n_vertices, c, level_seed, start, stop):
    """Plain Monte Carlo: number of stable colourings among samples ``start..stop-1``.

    Vectorised over samples with numpy; each sample still consumes its own
    stream draw by draw, including Lemire rejections.
    """
    ev = np.asarray(ev)
    c = int(c)
    hits = 0
    threshold = ((1 << 32) - c) % c
    chunk = 1 << 16
    with np.errstate(over="ignore"):
        for lo in range(start, stop, chunk):
            hi = min(stop, lo + chunk)
            state = absorb_array(level_seed, np.arange(lo, hi, dtype=np.uint64))
            colors = np.empty((hi - lo, n_vertices), dtype=np.int64)
            for v in range(n_vertices):
                state += np.uint64(GAMMA)
                m = (mix64_array(state) >> np.uint64(32)) * np.uint64(c)
                low = m & np.uint64(0xFFFFFFFF)
                redo = low < threshold
                while redo.any():
                    state[redo] += np.uint64(GAMMA)
                    m2 = (mix64_array(state[redo]) >> np.uint64(32)) * np.uint64(c)
                    m[redo] = m2
                    low = m & np.uint64(0xFFFFFFFF)
                    redo = low < threshold
                colors[:, v] = (m >> np.uint64(32)).astype(np.int64)
            stable = np.ones(hi - lo, dtype=bool)
            for e in ev:
                stable &= ~np.all(colors[:, e] == colors[:, e[:1]], axis=1)
            hits += int(stable.sum())
    return hits
