"""Counting engines: plain Monte Carlo and multilevel splitting.

The splitting estimator walks the vertices in order. Level ``t`` estimates
``c_t = |Y_{t+1}| / |Y_t|``: it draws members of ``Y_t`` (Moser-Tardos on the
first ``t`` vertices), colours vertex ``t`` uniformly, and checks only the
edges that end at ``t``. Vertices beyond ``t`` cannot affect membership and
are never drawn. Levels where no edge ends are exactly 1 and are skipped.
The product of the level ratios is accumulated in log space.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._backend import BACKEND, kernels
from .errors import InvalidInputError, SamplerBudgetExceeded
from .grid import Hypergraph, serialize_hypergraph
from .lll import check_fpras_condition
from .oracle import exact_level_probabilities  # noqa: F401  (re-exported)
from .rng import RngStream, level_seed
from .sampler import constraint_tables, default_budget

log = logging.getLogger(__name__)

_LN10 = math.log(10.0)


@dataclass(frozen=True)
class LevelEstimate:
    t: int
    c_hat: float
    samples: int
    hits: int
    skipped_exact: bool
    mean_resamples: float

    def to_dict(self) -> dict:
        return {"t": self.t, "cHat": self.c_hat, "samples": self.samples, "hits": self.hits,
                "skippedExact": self.skipped_exact, "meanResamples": self.mean_resamples}


@dataclass(frozen=True)
class McReport:
    samples: int
    hits: int
    ell_hat: float
    relative_error_estimate: float | None
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"params": self.params, "samples": self.samples, "hits": self.hits,
                "ellHat": self.ell_hat, "relativeErrorEstimate": self.relative_error_estimate}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def mantissa_exponent(log_value: float) -> tuple[float, int]:
    """Render ``exp(log_value)`` as ``(mantissa, exponent)`` with mantissa in ``[1, 10)``."""
    if log_value == -math.inf:
        return 0.0, 0
    x = log_value / _LN10
    exponent = math.floor(x)
    mantissa = 10.0 ** (x - exponent)
    if mantissa >= 10.0:
        mantissa /= 10.0
        exponent += 1
    return mantissa, exponent


@dataclass
class EstimateReport:
    params: dict
    levels: list[LevelEstimate]
    log_ell: float
    log_count: float
    total_samples: int
    total_resamples: int
    diagnostics: list[str] = field(default_factory=list)
    runtime: dict = field(default_factory=dict)

    @property
    def ell(self) -> float:
        return math.exp(self.log_ell)

    @property
    def ell_mantissa_exp(self) -> tuple[float, int]:
        return mantissa_exponent(self.log_ell)

    @property
    def count_mantissa_exp(self) -> tuple[float, int]:
        return mantissa_exponent(self.log_count)

    def payload(self) -> dict:
        """Everything except run-time facts (wall time, worker count, backend)."""
        finite = math.isfinite(self.log_ell)
        return {
            "params": self.params,
            "levels": [lv.to_dict() for lv in self.levels],
            "logEll": self.log_ell if finite else None,
            "ellMantissaExp": list(self.ell_mantissa_exp),
            "logCount": self.log_count if finite else None,
            "countMantissaExp": list(self.count_mantissa_exp),
            "totalSamples": self.total_samples,
            "totalResamples": self.total_resamples,
            "diagnostics": list(self.diagnostics),
        }

    def to_dict(self) -> dict:
        d = self.payload()
        d["runtime"] = dict(self.runtime)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def levels_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["t", "cHat", "samples", "hits", "meanResamples", "skipped"])
        for lv in self.levels:
            writer.writerow([lv.t, repr(lv.c_hat), lv.samples, lv.hits, repr(lv.mean_resamples),
                             int(lv.skipped_exact)])
        return buf.getvalue()


def hypergraph_params(h: Hypergraph) -> dict:
    if h.shape is not None:
        return {"m": h.shape[0], "n": h.shape[1], "k": h.k, "vertexCount": h.vertex_count,
                "edgeCount": len(h.edges)}
    digest = hashlib.sha256(serialize_hypergraph(h).encode()).hexdigest()[:16]
    return {"hypergraphDigest": digest, "k": h.k, "vertexCount": h.vertex_count,
            "edgeCount": len(h.edges)}


def _chunks(start: int, stop: int, parts: int) -> list[tuple[int, int]]:
    bounds = np.linspace(start, stop, max(1, parts) + 1).round().astype(np.int64).tolist()
    return [(a, b) for a, b in zip(bounds, bounds[1:]) if b > a]


def _run_chunks(fn, total: int, workers: int):
    chunks = _chunks(0, total, workers)
    if workers <= 1 or len(chunks) <= 1:
        return [fn(a, b) for a, b in chunks]
    with ThreadPoolExecutor(workers) as pool:
        return list(pool.map(lambda ab: fn(*ab), chunks))


def _stream(seed) -> RngStream:
    return seed if isinstance(seed, RngStream) else RngStream(int(seed))


def monte_carlo_estimate(h: Hypergraph, c: int, n_samples: int, seed: int | RngStream = 0,
                         workers: int = 1) -> McReport:
    """Fraction of ``n_samples`` uniform colourings that are stable."""
    if n_samples < 1:
        raise InvalidInputError("need at least one sample")
    if c < 1:
        raise InvalidInputError(f"colour count must be positive, got {c}")
    stream = _stream(seed)
    if stream.purpose == "sample":
        stream = RngStream(stream.master_seed, "mc", stream.level)
    base = stream.level_seed
    ev = np.ascontiguousarray(h.edge_array())
    hits = sum(_run_chunks(
        lambda a, b: kernels.mc_batch(ev, h.vertex_count, c, base, a, b), n_samples, workers))
    ell_hat = hits / n_samples
    rel = math.sqrt((1.0 - ell_hat) / (ell_hat * n_samples)) if hits else None
    params = dict(hypergraph_params(h), c=c, masterSeed=stream.master_seed, samples=n_samples)
    return McReport(n_samples, int(hits), ell_hat, rel, params)


def t_sample_schedule(vertex_count: int, epsilon: float, delta: float) -> int:
    """Chernoff sample count per level: ``ceil(54 (|V|/eps)^2 ln(2|V|/delta))``."""
    if not epsilon > 0:
        raise InvalidInputError(f"epsilon must be positive, got {epsilon}")
    if not 0 < delta < 1:
        raise InvalidInputError(f"delta must lie in (0, 1), got {delta}")
    if vertex_count < 1:
        return 0
    return math.ceil(54.0 * (vertex_count / epsilon) ** 2 * math.log(2.0 * vertex_count / delta))


def estimate_level(h: Hypergraph, c: int, t: int, samples: int, seed: int | RngStream = 0,
                   budget: int | None = None, workers: int = 1, rule: str = "lex") -> LevelEstimate:
    """Estimate one conditional probability ``c_t``."""
    if not 0 <= t < h.vertex_count:
        raise InvalidInputError(f"level {t} outside [0, {h.vertex_count})")
    ending = h.edges_ending_at[t]
    if not ending:
        return LevelEstimate(t, 1.0, 0, 0, True, 0.0)
    if samples < 1:
        raise InvalidInputError("samples per level must be positive")
    tables = constraint_tables(h, t, rule)
    if budget is None:
        budget = default_budget(len(tables.edge_ids), h.k)
    end_ev = np.ascontiguousarray(np.array([h.edges[i].vertices for i in ending], dtype=np.int32))
    stream = _stream(seed)
    base = level_seed(stream.master_seed, "split", t)

    def run(a, b):
        return kernels.level_batch(tables.ev, tables.vrank, tables.cover, tables.cover_end, end_ev,
                                   t + 1, c, base, a, b, budget, tables.rewind)

    results = _run_chunks(run, samples, workers)
    failures = [f for _, _, f in results if f >= 0]
    if failures:
        raise SamplerBudgetExceeded(
            f"level {t}: sample {min(failures)} needed more than {budget} resampling steps; "
            f"(c={c}, k={h.k}) is likely outside the tractable regime", level=t,
            sample_index=min(failures))
    hits = sum(r[0] for r in results)
    resamples = sum(r[1] for r in results)
    return LevelEstimate(t, hits / samples, samples, int(hits), False, resamples / samples)


def splitting_estimate(h: Hypergraph, c: int, epsilon: float = 0.1, delta: float = 0.05,
                       seed: int | RngStream = 0, samples_per_level: int | None = None,
                       budget: int | None = None, workers: int = 1, rule: str = "lex",
                       progress=None) -> EstimateReport:
    """Multilevel-splitting estimate of the stable fraction ``ell`` and count ``ell * c**|V|``.

    Parameters
    ----------
    samples_per_level : int, optional
        Overrides the Chernoff schedule :func:`t_sample_schedule`.
    budget : int, optional
        Per-sample resampling cap (default :func:`~crushcount.sampler.default_budget`).
    workers : int
        Threads per level; results do not depend on it.
    progress : callable, optional
        Called with each finished :class:`LevelEstimate`.
    """
    if c < 1:
        raise InvalidInputError(f"colour count must be positive, got {c}")
    schedule = t_sample_schedule(h.vertex_count, epsilon, delta)
    per_level = schedule if samples_per_level is None else int(samples_per_level)
    stream = _stream(seed)
    started = time.perf_counter()
    params = dict(hypergraph_params(h), c=c, epsilon=epsilon, delta=delta,
                  masterSeed=stream.master_seed, samplesPerLevel=per_level,
                  chernoffSamplesPerLevel=schedule, budget=budget, rule=rule)
    diagnostics = []
    if h.k is not None and h.k >= 2 and c >= 2 and h.shape is not None:
        verdict = check_fpras_condition(c, h.k)
        params["lllFeasible"] = verdict.feasible
        if not verdict.feasible:
            diagnostics.append(
                f"(c={c}, k={h.k}) fails the local-lemma condition; no polynomial-time guarantee")

    levels: list[LevelEstimate] = []
    if c == 1 and h.edges:
        diagnostics.append("single colour: every edge is monochromatic, ell = 0 exactly")
        log_ell = -math.inf
    else:
        log_ell = 0.0
        for t in range(h.vertex_count):
            lv = estimate_level(h, c, t, per_level, stream, budget, workers, rule)
            levels.append(lv)
            if progress is not None:
                progress(lv)
            if lv.c_hat == 0.0:
                msg = (f"level {t}: no sample reached the next level; ell_hat = 0. "
                       f"Increase samples per level (currently {per_level}).")
                log.warning(msg)
                diagnostics.append(msg)
                log_ell = -math.inf
            elif log_ell != -math.inf:
                log_ell += math.log(lv.c_hat)
    log_count = log_ell + h.vertex_count * math.log(c) if log_ell != -math.inf else -math.inf
    return EstimateReport(
        params=params,
        levels=levels,
        log_ell=log_ell,
        log_count=log_count,
        total_samples=sum(lv.samples for lv in levels),
        total_resamples=int(round(sum(lv.mean_resamples * lv.samples for lv in levels))),
        diagnostics=diagnostics,
        runtime={"wallTime": time.perf_counter() - started, "workerCount": workers,
                 "backend": BACKEND},
    )
