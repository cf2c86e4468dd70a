"""Simple undirected graphs, subgraph algebra, G(n, p) sampling and the edge-list format.

Vertices are the integers ``0 .. n-1``.  A :class:`Graph` may carry an explicit
set of surviving vertices (``alive``) so that vertex deletion keeps vertex
identity instead of renumbering; colourings and cycles stay addressable across
``G - H`` steps.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

logger = logging.getLogger(__name__)

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graph input (range, self-loops, parse errors)."""


def canonical_edge(u: int, v: int) -> Edge:
    if u == v:
        raise GraphError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph.

    ``edges`` holds canonical pairs ``(u, v)`` with ``u < v``.  ``alive`` is the
    vertex set; it defaults to ``range(vertex_count)``.
    """

    vertex_count: int
    edges: frozenset[Edge]
    alive: frozenset[int] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.alive is None:
            object.__setattr__(self, "alive", frozenset(range(self.vertex_count)))

    # -- basic counts -------------------------------------------------------
    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def num_vertices(self) -> int:
        """v(G): the number of surviving vertices."""
        return len(self.alive)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def is_full(self) -> bool:
        return len(self.alive) == self.vertex_count

    @cached_property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {v: [] for v in self.alive}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in adj.items()}

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self.adjacency.get(v, ())

    def degree(self, v: int) -> int:
        return len(self.neighbours(v))

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        return canonical_edge(u, v) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def vertices(self) -> list[int]:
        return sorted(self.alive)

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Sorted adjacency in CSR form over ``range(vertex_count)``."""
        indptr = np.zeros(self.vertex_count + 1, dtype=np.int64)
        adj = self.adjacency
        for v in range(self.vertex_count):
            indptr[v + 1] = indptr[v] + len(adj.get(v, ()))
        indices = np.fromiter(
            (w for v in range(self.vertex_count) for w in adj.get(v, ())),
            dtype=np.int64,
            count=int(indptr[-1]),
        )
        return indptr, indices

    def induced(self, vertices: Iterable[int]) -> "Graph":
        keep = frozenset(vertices)
        bad = keep - self.alive
        if bad:
            raise GraphError(f"vertices not in graph: {sorted(bad)}")
        es = frozenset((u, v) for u, v in self.edges if u in keep and v in keep)
        return Graph(self.vertex_count, es, keep)

    def edge_subgraph(self, edges: Iterable[Edge]) -> "Graph":
        """Subgraph spanned by ``edges``; its vertex set is their endpoints."""
        es = frozenset(canonical_edge(*e) for e in edges)
        missing = es - self.edges
        if missing:
            raise GraphError(f"edges not in graph: {sorted(missing)}")
        verts = frozenset(x for e in es for x in e)
        return Graph(self.vertex_count, es, verts)

    def count_induced_edges(self, vertices: Iterable[int]) -> int:
        keep = set(vertices)
        return sum(1 for u, v in self.edges if u in keep and v in keep)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.alive))

    def __repr__(self) -> str:
        extra = "" if self.is_full else f", alive={len(self.alive)}"
        return f"Graph(n={self.vertex_count}, e={len(self.edges)}{extra})"


def _check_vertex(n: int, v: int) -> None:
    if not 0 <= v < n:
        raise GraphError(f"vertex {v} out of range [0, {n})")


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a canonical graph; duplicate and reversed pairs collapse."""
    if n < 0:
        raise GraphError("vertex count must be nonnegative")
    es = set()
    for u, v in edges:
        u, v = int(u), int(v)
        _check_vertex(n, u)
        _check_vertex(n, v)
        es.add(canonical_edge(u, v))
    return Graph(n, frozenset(es))


def remove_vertices_of(g: Graph, h: Graph | Iterable[int]) -> Graph:
    """``G - H``: delete the vertices of ``h`` and every edge incident with them."""
    drop = set(h.alive) if isinstance(h, Graph) else {int(v) for v in h}
    for v in drop:
        _check_vertex(g.vertex_count, v)
        if v not in g.alive:
            raise GraphError(f"vertex {v} is not a vertex of the graph")
    es = frozenset((u, v) for u, v in g.edges if u not in drop and v not in drop)
    return Graph(g.vertex_count, es, g.alive - drop)


def remove_edges(g: Graph, es: Iterable[tuple[int, int]]) -> Graph:
    """Same vertex set, edge set ``E(g) minus es``.  Absent edges are an error."""
    drop = {canonical_edge(*e) for e in es}
    missing = drop - g.edges
    if missing:
        raise GraphError(f"edges not present: {sorted(missing)}")
    return Graph(g.vertex_count, g.edges - drop, g.alive)


def add_edges(g: Graph, es: Iterable[tuple[int, int]]) -> Graph:
    new = set()
    for u, v in es:
        if u not in g.alive or v not in g.alive:
            raise GraphError(f"edge ({u}, {v}) leaves the vertex set")
        new.add(canonical_edge(u, v))
    return Graph(g.vertex_count, g.edges | new, g.alive)


def union(*graphs: Graph) -> Graph:
    if not graphs:
        raise GraphError("union of no graphs")
    n = max(x.vertex_count for x in graphs)
    return Graph(
        n,
        frozenset().union(*(x.edges for x in graphs)),
        frozenset().union(*(x.alive for x in graphs)),
    )


def relabel(g: Graph, mapping: dict[int, int] | list[int]) -> Graph:
    """Apply a vertex permutation of ``range(n)``."""
    m = dict(enumerate(mapping)) if isinstance(mapping, list) else mapping
    es = frozenset(canonical_edge(m[u], m[v]) for u, v in g.edges)
    return Graph(g.vertex_count, es, frozenset(m[v] for v in g.alive))


# -- random graphs -----------------------------------------------------------

def make_rng(seed: int | np.random.SeedSequence | np.random.Generator) -> np.random.Generator:
    """PCG64 generator.  Integers and ``SeedSequence`` objects give portable streams."""
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.PCG64(seed))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))


def sample_gnp(
    n: int, p: float, seed: int | np.random.SeedSequence | np.random.Generator
) -> Graph:
    """Sample G(n, p).

    One uniform double is drawn per vertex pair, pairs taken in lexicographic
    order ``(0,1), (0,2), ..., (n-2,n-1)``; the pair is an edge iff its draw is
    ``< p``.  Drawing every pair regardless of ``p`` couples samples that share
    a stream: for ``p1 <= p2`` the first graph is a subgraph of the second.
    """
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability {p} outside [0, 1]")
    if n < 0:
        raise GraphError("vertex count must be nonnegative")
    rng = make_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    draws = rng.random(iu.size)
    mask = draws < p
    es = frozenset(zip(iu[mask].tolist(), ju[mask].tolist()))
    return Graph(n, es)


# -- edge-list text format ---------------------------------------------------

def serialize_edge_list(g: Graph) -> str:
    if not g.is_full:
        raise GraphError("edge-list format cannot express deleted vertices")
    lines = [str(g.vertex_count)]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse ``n`` on the first line then ``u v`` per line; ``#`` lines are comments."""
    n: int | None = None
    es: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            nums = [int(x) for x in parts]
        except ValueError:
            raise GraphError(f"line {lineno}: malformed line {raw!r}") from None
        if n is None:
            if len(nums) != 1 or nums[0] < 0:
                raise GraphError(f"line {lineno}: expected a vertex count, got {raw!r}")
            n = nums[0]
            continue
        if len(nums) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        u, v = nums
        for x in (u, v):
            if not 0 <= x < n:
                raise GraphError(f"line {lineno}: endpoint {x} out of range [0, {n})")
        e = canonical_edge(u, v)
        if e in es:
            logger.warning("line %d: duplicate edge %s collapsed", lineno, e)
        es.add(e)
    if n is None:
        raise GraphError("empty input: missing vertex count")
    return Graph(n, frozenset(es))


# -- small named graphs used by tests, docs and the CLI ---------------------

def cycle_graph(length: int, n: int | None = None) -> Graph:
    n = length if n is None else n
    return graph_from_edges(n, [(i, (i + 1) % length) for i in range(length)])


def complete_graph(n: int) -> Graph:
    return graph_from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with parts ``0..a-1`` and ``a..a+b-1``."""
    return graph_from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])
