"""Candy Crush grid hypergraphs and general k-uniform hypergraphs.

Vertices are integers ``0..|V|-1``; their numeric order is the lexicographic
order used by the level sets and by the Moser-Tardos edge-selection rule.
Grid cell ``(row, col)`` of an ``m x n`` grid is vertex ``row * n + col``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

import numpy as np

from .errors import InvalidInputError

HORIZONTAL = "horizontal"
VERTICAL = "vertical"
GENERIC = "generic"


@dataclass(frozen=True)
class GridSpec:
    m: int
    n: int
    k: int

    def __post_init__(self):
        for name in ("m", "n", "k"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
                raise InvalidInputError(f"{name} must be an integer, got {value!r}")
        if self.m < 1 or self.n < 1:
            raise InvalidInputError(f"grid dimensions must be positive, got {self.m}x{self.n}")
        if self.k < 2:
            raise InvalidInputError(f"run length k must be at least 2, got {self.k}")


@dataclass(frozen=True)
class Hyperedge:
    """A sorted tuple of distinct vertex ids."""

    vertices: tuple[int, ...]
    orientation: str = GENERIC

    @property
    def min_vertex(self) -> int:
        return self.vertices[0]

    @property
    def max_vertex(self) -> int:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.vertices)


class Hypergraph:
    """An immutable k-uniform hypergraph with precomputed incidence indexes.

    Parameters
    ----------
    vertex_count : int
        Number of vertices; ids are ``0..vertex_count-1``.
    edges : iterable of Hyperedge or of vertex sequences
        Edge list. Storage order is kept as given.
    k : int, optional
        Uniform edge size. Inferred from the edges when omitted; an edgeless
        hypergraph may leave it as ``None``.
    shape : (m, n), optional
        Grid dimensions when the hypergraph came from :func:`build_candy_grid`.
    """

    def __init__(self, vertex_count: int, edges: Iterable, k: int | None = None,
                 shape: tuple[int, int] | None = None):
        if vertex_count < 0:
            raise InvalidInputError("vertex count must be non-negative")
        normalized = []
        for e in edges:
            if not isinstance(e, Hyperedge):
                e = Hyperedge(tuple(int(v) for v in e))
            verts = tuple(sorted(e.vertices))
            if len(set(verts)) != len(verts):
                raise InvalidInputError(f"duplicate vertex in edge {e.vertices}")
            if verts and (verts[0] < 0 or verts[-1] >= vertex_count):
                raise InvalidInputError(f"edge {e.vertices} has a vertex outside [0, {vertex_count})")
            normalized.append(Hyperedge(verts, e.orientation))
        sizes = {len(e) for e in normalized}
        if len(sizes) > 1:
            raise InvalidInputError(f"non-uniform edge sizes {sorted(sizes)}")
        if sizes:
            (size,) = sizes
            if k is not None and k != size:
                raise InvalidInputError(f"declared k={k} but edges have size {size}")
            k = size
        if k is not None and k < 1:
            raise InvalidInputError("edge size must be positive")

        self._vertex_count = int(vertex_count)
        self._edges = tuple(normalized)
        self._k = k
        self._shape = shape

        incidence = [[] for _ in range(vertex_count)]
        ending = [[] for _ in range(vertex_count)]
        for i, e in enumerate(self._edges):
            for v in e.vertices:
                incidence[v].append(i)
            ending[e.max_vertex].append(i)
        self._incidence = tuple(tuple(x) for x in incidence)
        self._edges_ending_at = tuple(tuple(x) for x in ending)
        # Lexicographic edge priority: compare vertex tuples. On a row-major
        # grid this puts the horizontal run first when two edges share their
        # lowest vertex, since v + 1 < v + n.
        self._lex_order = tuple(sorted(range(len(self._edges)), key=lambda i: self._edges[i].vertices))
        self._tables = {}

    @property
    def vertex_count(self) -> int:
        return self._vertex_count

    @property
    def edges(self) -> tuple[Hyperedge, ...]:
        return self._edges

    @property
    def k(self) -> int | None:
        return self._k

    @property
    def shape(self) -> tuple[int, int] | None:
        return self._shape

    @property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        return self._incidence

    @property
    def edges_ending_at(self) -> tuple[tuple[int, ...], ...]:
        return self._edges_ending_at

    @property
    def lex_order(self) -> tuple[int, ...]:
        """Edge indices sorted by lexicographic priority."""
        return self._lex_order

    def edge_array(self) -> np.ndarray:
        """``(|E|, k)`` int32 array of edge vertices in storage order."""
        key = ("edge_array",)
        if key not in self._tables:
            k = self._k or 0
            arr = np.array([e.vertices for e in self._edges], dtype=np.int32).reshape(len(self._edges), k)
            arr.setflags(write=False)
            self._tables[key] = arr
        return self._tables[key]

    def cache(self, key, build):
        """Memoise derived tables on the (immutable) hypergraph."""
        if key not in self._tables:
            self._tables[key] = build()
        return self._tables[key]

    def edge_key(self) -> list[tuple[int, ...]]:
        return sorted(e.vertices for e in self._edges)

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self._vertex_count == other._vertex_count and self._k == other._k
                and self.edge_key() == other.edge_key())

    def __hash__(self):
        return hash((self._vertex_count, self._k, tuple(self.edge_key())))

    def __repr__(self):
        shape = f", shape={self._shape}" if self._shape else ""
        return f"Hypergraph(|V|={self._vertex_count}, |E|={len(self._edges)}, k={self._k}{shape})"


def build_candy_grid(spec: GridSpec) -> Hypergraph:
    """All horizontal and vertical runs of ``k`` consecutive cells of an ``m x n`` grid."""
    m, n, k = spec.m, spec.n, spec.k
    edges = []
    for row in range(m):
        for col in range(n - k + 1):
            base = row * n + col
            edges.append(Hyperedge(tuple(range(base, base + k)), HORIZONTAL))
    for col in range(n):
        for row in range(m - k + 1):
            edges.append(Hyperedge(tuple((row + i) * n + col for i in range(k)), VERTICAL))
    return Hypergraph(m * n, edges, k=k, shape=(m, n))


def candy_grid(m: int, n: int, k: int = 3) -> Hypergraph:
    return build_candy_grid(GridSpec(m, n, k))


def prefix_subhypergraph(h: Hypergraph, t: int) -> Hypergraph:
    """Restrict ``h`` to vertices ``0..t-1`` keeping the edges that fit entirely inside."""
    if not 0 <= t <= h.vertex_count:
        raise InvalidInputError(f"prefix length {t} outside [0, {h.vertex_count}]")
    if t == h.vertex_count:
        return h
    return Hypergraph(t, [e for e in h.edges if e.max_vertex < t], k=h.k)


def vertex_coordinates(h: Hypergraph, v: int) -> tuple[int, int]:
    if h.shape is None:
        raise InvalidInputError("hypergraph has no grid shape")
    return divmod(v, h.shape[1])


def parse_hypergraph(source: str | TextIO) -> Hypergraph:
    """Read the line-oriented ``V <count>`` / ``E <ids...>`` format."""
    text = source if isinstance(source, str) else source.read()
    vertex_count = None
    edges: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        tag, args = fields[0], fields[1:]
        try:
            values = [int(a) for a in args]
        except ValueError:
            raise InvalidInputError(f"line {lineno}: non-integer field in {raw!r}") from None
        if vertex_count is None:
            if tag != "V" or len(values) != 1 or values[0] < 0:
                raise InvalidInputError(f"line {lineno}: expected 'V <count>' header, got {raw!r}")
            vertex_count = values[0]
            continue
        if tag != "E" or not values:
            raise InvalidInputError(f"line {lineno}: expected 'E <id> ... <id>', got {raw!r}")
        if edges and len(values) != len(edges[0]):
            raise InvalidInputError(
                f"line {lineno}: non-uniform edge size {len(values)} (expected {len(edges[0])})")
        for v in values:
            if not 0 <= v < vertex_count:
                raise InvalidInputError(f"line {lineno}: vertex id {v} out of range")
        if len(set(values)) != len(values):
            raise InvalidInputError(f"line {lineno}: duplicate vertex within edge")
        edges.append(tuple(values))
    if vertex_count is None:
        raise InvalidInputError("missing 'V <count>' header")
    return Hypergraph(vertex_count, edges)


def serialize_hypergraph(h: Hypergraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"V {h.vertex_count}")
    for verts in sorted((e.vertices for e in h.edges), key=lambda vs: (vs[-1], vs)):
        lines.append("E " + " ".join(map(str, verts)))
    return "\n".join(lines) + "\n"


def count_windows(m: int, n: int, k: int) -> int:
    """Closed-form edge count of an ``m x n`` grid with runs of length ``k``."""
    return m * max(0, n - k + 1) + n * max(0, m - k + 1)

