"""Lovász Local Lemma feasibility analysis for Candy Crush grids.

With every bad event "edge e is monochromatic" (probability ``c**-(k-1)``)
sharing variables with at most ``k**2 + 2k - 2`` others, the symmetric local
lemma holds when

    1/c <= x**(1/(k-1)) * (1 - x)**((k**2 + 2k - 2)/(k-1)),   x = 1/(k**2 + 2k - 1),

and Moser-Tardos then needs at most ``x/(1-x)`` expected resamplings per edge.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass

from .errors import InvalidInputError
from .grid import Hypergraph

FEASIBILITY_TOL = 1e-12


def dependency_degree(k: int) -> int:
    return k * k + 2 * k - 2


def optimal_x(k: int) -> float:
    return 1.0 / (k * k + 2 * k - 1)


def lll_rhs(k: int) -> float:
    """Right-hand side of the feasibility inequality."""
    if k < 2:
        raise InvalidInputError(f"k must be at least 2, got {k}")
    x = optimal_x(k)
    return x ** (1.0 / (k - 1)) * (1.0 - x) ** (dependency_degree(k) / (k - 1))


@dataclass(frozen=True)
class FeasibilityVerdict:
    c: int
    k: int
    rhs: float
    feasible: bool
    dependency_degree: int
    optimal_x: float
    per_edge_resample_bound: float


def check_fpras_condition(c: int, k: int) -> FeasibilityVerdict:
    if k < 2:
        raise InvalidInputError(f"k must be at least 2, got {k}")
    if c < 2:
        raise InvalidInputError(f"c must be at least 2, got {c}")
    rhs = lll_rhs(k)
    x = optimal_x(k)
    return FeasibilityVerdict(
        c=c, k=k, rhs=rhs,
        feasible=1.0 / c <= rhs + FEASIBILITY_TOL,
        dependency_degree=dependency_degree(k),
        optimal_x=x,
        per_edge_resample_bound=x / (1.0 - x),
    )


def min_colors(k: int) -> int:
    """Smallest ``c >= 2`` satisfying the feasibility inequality."""
    c = max(2, math.ceil(1.0 / lll_rhs(k) - FEASIBILITY_TOL))
    while not check_fpras_condition(c, k).feasible:
        c += 1
    while c > 2 and check_fpras_condition(c - 1, k).feasible:
        c -= 1
    return c


def expected_resample_bound(h: Hypergraph, k: int | None = None) -> float:
    """Sum over edges of ``x/(1-x)``: the expected number of Moser-Tardos resamplings."""
    k = h.k if k is None else k
    if h.k is not None and k != h.k:
        raise InvalidInputError(f"k={k} does not match the hypergraph's edge size {h.k}")
    if not h.edges:
        return 0.0
    return len(h.edges) * check_fpras_condition(2, k).per_edge_resample_bound


def dependency_counts(h: Hypergraph, edge_index: int) -> tuple[int, int]:
    """Numbers of other edges meeting ``edge_index`` that are parallel / perpendicular to it."""
    e = h.edges[edge_index]
    others = {j for v in e.vertices for j in h.incidence[v]} - {edge_index}
    parallel = sum(1 for j in others if h.edges[j].orientation == e.orientation)
    return parallel, len(others) - parallel


@dataclass(frozen=True)
class RegionReport:
    c_range: tuple[int, int]
    k_range: tuple[int, int]
    grid: tuple[tuple[bool, ...], ...]   # grid[i][j] <-> c = c_lo + i, k = k_lo + j
    min_colors_per_k: tuple[int, ...]

    @property
    def c_values(self) -> range:
        return range(self.c_range[0], self.c_range[1] + 1)

    @property
    def k_values(self) -> range:
        return range(self.k_range[0], self.k_range[1] + 1)

    def feasible(self, c: int, k: int) -> bool:
        return self.grid[c - self.c_range[0]][k - self.k_range[0]]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["c"] + [f"k={k}" for k in self.k_values])
        for c, row in zip(self.c_values, self.grid):
            writer.writerow([c] + [int(x) for x in row])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "cRange": list(self.c_range),
            "kRange": list(self.k_range),
            "grid": [[int(x) for x in row] for row in self.grid],
            "minColorsPerK": list(self.min_colors_per_k),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def scan_region(c_range: tuple[int, int], k_range: tuple[int, int]) -> RegionReport:
    """Feasibility matrix over inclusive ranges of colour counts and run lengths."""
    c_lo, c_hi = c_range
    k_lo, k_hi = k_range
    if c_lo > c_hi or k_lo > k_hi:
        raise InvalidInputError("empty range")
    if c_lo < 2 or k_lo < 2:
        raise InvalidInputError("ranges must start at c >= 2 and k >= 2")
    grid = tuple(
        tuple(check_fpras_condition(c, k).feasible for k in range(k_lo, k_hi + 1))
        for c in range(c_lo, c_hi + 1)
    )
    return RegionReport((c_lo, c_hi), (k_lo, k_hi), grid,
                        tuple(min_colors(k) for k in range(k_lo, k_hi + 1)))


def verdict_dict(v: FeasibilityVerdict) -> dict:
    d = asdict(v)
    return {
        "c": d["c"], "k": d["k"], "rhs": d["rhs"], "feasible": d["feasible"],
        "dependencyDegree": d["dependency_degree"], "optimalX": d["optimal_x"],
        "perEdgeResampleBound": d["per_edge_resample_bound"],
    }

