"""Colourings and the stability predicates."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidInputError
from .grid import Hypergraph


@dataclass(frozen=True)
class Coloring:
    """Colour ``colors[v]`` in ``[0, c)`` for every vertex ``v`` (0-based colours)."""

    colors: tuple[int, ...]
    c: int

    def __post_init__(self):
        if self.c < 1:
            raise InvalidInputError(f"colour count must be positive, got {self.c}")
        colors = tuple(int(x) for x in self.colors)
        for x in colors:
            if not 0 <= x < self.c:
                raise InvalidInputError(f"colour {x} outside [0, {self.c})")
        object.__setattr__(self, "colors", colors)

    def __len__(self) -> int:
        return len(self.colors)

    def to_string(self) -> str:
        return ",".join(map(str, self.colors))

    @classmethod
    def from_string(cls, text: str, c: int) -> "Coloring":
        text = text.strip()
        return cls(tuple(int(x) for x in text.split(",")) if text else (), c)


def _check(h: Hypergraph, col: Coloring) -> Sequence[int]:
    if len(col.colors) != h.vertex_count:
        raise InvalidInputError(
            f"colouring has {len(col.colors)} entries, hypergraph has {h.vertex_count} vertices")
    return col.colors


def _mono(colors: Sequence[int], verts: Sequence[int]) -> bool:
    first = colors[verts[0]]
    return all(colors[v] == first for v in verts)


def is_monochromatic(h: Hypergraph, col: Coloring, edge_index: int) -> bool:
    colors = _check(h, col)
    if not 0 <= edge_index < len(h.edges):
        raise InvalidInputError(f"edge index {edge_index} out of range")
    return _mono(colors, h.edges[edge_index].vertices)


def is_stable(h: Hypergraph, col: Coloring) -> bool:
    colors = _check(h, col)
    return not any(_mono(colors, e.vertices) for e in h.edges)


def first_monochromatic_edge(h: Hypergraph, col: Coloring) -> int | None:
    """Storage index of the lexicographically first monochromatic edge, or ``None``."""
    colors = _check(h, col)
    for i in h.lex_order:
        if _mono(colors, h.edges[i].vertices):
            return i
    return None


def prefix_stable_level(h: Hypergraph, col: Coloring) -> int:
    """Largest ``t`` such that the colouring lies in level set ``Y_t``.

    ``Y_t`` holds the colourings in which no edge contained in the first ``t``
    vertices is monochromatic, so the answer is the smallest ``maxVertex`` of a
    monochromatic edge (``|V|`` when stable).
    """
    colors = _check(h, col)
    level = h.vertex_count
    for e in h.edges:
        if e.max_vertex < level and _mono(colors, e.vertices):
            level = e.max_vertex
    return level


def in_level(h: Hypergraph, col: Coloring, t: int) -> bool:
    return prefix_stable_level(h, col) >= t
