"""Goodness-of-fit of sampler output against the uniform law on the stable set."""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import InvalidInputError
from .grid import Hypergraph
from .oracle import DEFAULT_BUDGET, stable_array
from .sampler import sample_many


@dataclass
class UniformityReport:
    stable: np.ndarray      # (S, |V|) stable colourings, lexicographic order
    observed: np.ndarray    # (S,) sample counts
    samples: int
    chi2: float
    df: int
    p_value: float
    tv_distance: float
    params: dict

    @property
    def expected(self) -> float:
        return self.samples / len(self.stable)

    def rejected(self, alpha: float = 0.01) -> bool:
        return self.p_value < alpha

    def to_dict(self, include_counts: bool = True) -> dict:
        d = {
            "params": self.params,
            "stableCount": int(len(self.stable)),
            "samples": self.samples,
            "chi2": self.chi2,
            "df": self.df,
            "pValue": self.p_value,
            "tvDistance": self.tv_distance,
        }
        if include_counts:
            d["counts"] = [
                {"coloring": ",".join(map(str, row)), "observed": int(o), "expected": self.expected}
                for row, o in zip(self.stable.tolist(), self.observed.tolist())
            ]
        return d

    def to_json(self, include_counts: bool = True) -> str:
        return json.dumps(self.to_dict(include_counts), indent=2)


def _encode(rows: np.ndarray, c: int) -> np.ndarray:
    n = rows.shape[1]
    weights = c ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return rows.astype(np.int64) @ weights


def uniformity_test(h: Hypergraph, c: int, samples: int | None = None, seed: int = 0,
                    rule: str = "lex", budget: int | None = None,
                    oracle_budget: int = DEFAULT_BUDGET) -> UniformityReport:
    """Chi-square test of ``samples`` sampler outputs (default ``50 |S|``) against uniform on ``S``."""
    stable = stable_array(h, c, oracle_budget)
    size = len(stable)
    if size < 2:
        raise InvalidInputError(f"stable set has {size} element(s); nothing to test")
    if samples is None:
        samples = 50 * size
    drawn, _ = sample_many(h, c, samples, seed, purpose="uniformity", budget=budget, rule=rule)
    keys = _encode(stable, c)
    pos = np.searchsorted(keys, _encode(drawn, c))
    if np.any(pos >= size) or np.any(keys[np.minimum(pos, size - 1)] != _encode(drawn, c)):
        raise AssertionError("sampler returned a colouring outside the stable set")
    observed = np.bincount(pos, minlength=size)
    chi2, p = stats.chisquare(observed)
    tv = 0.5 * float(np.abs(observed / samples - 1.0 / size).sum())
    params = {"vertexCount": h.vertex_count, "edgeCount": len(h.edges), "k": h.k, "c": c,
              "masterSeed": seed, "rule": rule}
    if h.shape is not None:
        params.update(m=h.shape[0], n=h.shape[1])
    return UniformityReport(stable, observed, samples, float(chi2), size - 1, float(p), tv, params)
