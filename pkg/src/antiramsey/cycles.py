"""Fixed-length cycles, C_ell-components, construction sequences and step configurations.

A construction sequence grows a component one cycle at a time: each added
cycle shares an edge with the current graph and is not already inside it.
Every step is classified as ``A(k)`` (the cycle meets the current graph in a
``k``-vertex path, the remaining vertices are new) or ``B(j)`` (one shared edge
``u1u2`` plus one further old vertex ``u_j``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from scipy.cluster.hierarchy import DisjointSet

from . import kernels
from .graph import Edge, Graph, GraphError, canonical_edge


class CycleError(GraphError):
    """Bad cycle input or an unclassifiable construction step."""


class ClassificationError(CycleError):
    """No configuration matches a step; carries the offending pair for diagnosis."""

    def __init__(self, message: str, h: Graph, cycle: "Cycle"):
        super().__init__(message)
        self.h = h
        self.cycle = cycle


def _cycle_edges(vs: Sequence[int]) -> frozenset[Edge]:
    n = len(vs)
    return frozenset(canonical_edge(vs[i], vs[(i + 1) % n]) for i in range(n))


def canonical_rotation(vs: Sequence[int]) -> tuple[int, ...]:
    """Start at the minimum vertex, then go towards its smaller cycle neighbour."""
    vs = list(vs)
    n = len(vs)
    i = vs.index(min(vs))
    fwd = tuple(vs[(i + k) % n] for k in range(n))
    bwd = tuple(vs[(i - k) % n] for k in range(n))
    return fwd if fwd[1] < bwd[1] else bwd


@dataclass(frozen=True, order=True)
class Cycle:
    """A cycle given by its canonical vertex sequence."""

    vertices: tuple[int, ...]
    edge_set: frozenset[Edge] = field(compare=False, repr=False, default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        vs = tuple(int(v) for v in self.vertices)
        if len(vs) < 3 or len(set(vs)) != len(vs):
            raise CycleError(f"not a cycle: {vs}")
        object.__setattr__(self, "vertices", canonical_rotation(vs))
        object.__setattr__(self, "edge_set", _cycle_edges(self.vertices))

    @property
    def length(self) -> int:
        return len(self.vertices)

    def labellings(self) -> list[tuple[int, ...]]:
        """All 2*ell labellings u_1..u_ell (rotations, both directions)."""
        vs = self.vertices
        n = len(vs)
        out = []
        for d in (1, -1):
            for s in range(n):
                out.append(tuple(vs[(s + d * k) % n] for k in range(n)))
        return out

    def in_graph(self, g: Graph) -> bool:
        return self.edge_set <= g.edges

    def to_json(self) -> list[int]:
        return list(self.vertices)


def cycle_of(vs: Sequence[int]) -> Cycle:
    return Cycle(tuple(vs))


def enumerate_cycles(g: Graph, ell: int) -> list[Cycle]:
    """Every ``ell``-cycle of ``g`` once, in lexicographic canonical order."""
    if ell < 3:
        raise CycleError("cycle length must be at least 3")
    indptr, indices = g.csr()
    raw = kernels.fixed_length_cycles(indptr, indices, g.vertex_count, ell)
    return [Cycle(tuple(int(x) for x in c)) for c in raw]


def edge_intersection_graph(cycles: Sequence[Cycle]) -> Graph:
    by_edge: dict[Edge, list[int]] = {}
    for i, c in enumerate(cycles):
        for e in c.edge_set:
            by_edge.setdefault(e, []).append(i)
    pairs = set()
    for idx in by_edge.values():
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                pairs.add((idx[a], idx[b]))
    return Graph(len(cycles), frozenset(pairs))


# -- configurations ------------------------------------------------------------

@dataclass(frozen=True)
class Configuration:
    """``kind`` is ``"A"`` or ``"B"``; ``index`` is k or j; ``labelling`` is u_1..u_ell."""

    kind: str
    index: int
    labelling: tuple[int, ...]

    @property
    def tag(self) -> str:
        return f"{self.kind}{self.index}"

    @property
    def klass(self) -> str:
        """Exclusivity class: ``A<k>`` for A configurations, ``B`` for all B_j."""
        return self.tag if self.kind == "A" else "B"

    def to_json(self) -> dict:
        return {"config": self.tag, "labelling": list(self.labelling)}


def _is_a(h: Graph, u: Sequence[int], k: int) -> bool:
    if any(not h.has_edge(u[i], u[i + 1]) for i in range(k - 1)):
        return False
    if any(x not in h.alive for x in u[:k]):
        return False
    return all(x not in h.alive for x in u[k:])


def _is_b(h: Graph, u: Sequence[int], j: int) -> bool:
    ell = len(u)
    if not h.has_edge(u[0], u[1]) or h.has_edge(u[1], u[2]):
        return False
    if u[j - 1] not in h.alive:
        return False
    return all(u[i] not in h.alive for i in range(2, ell) if i != j - 1)


def check_configuration(h: Graph, conf: Configuration) -> bool:
    """Re-check the defining conditions of ``conf`` literally against ``h``."""
    if conf.kind == "A":
        return _is_a(h, conf.labelling, conf.index)
    return _is_b(h, conf.labelling, conf.index)


def _candidates(ell: int):
    for k in range(2, ell + 1):
        yield "A", k
    for j in range(3, ell):
        yield "B", j


def _check_step_pre(h: Graph, c: Cycle, ell: int) -> None:
    if ell < 5:
        raise CycleError("configuration classification needs ell >= 5")
    if c.length != ell:
        raise CycleError(f"cycle has length {c.length}, expected {ell}")
    if not (c.edge_set & h.edges):
        raise CycleError("added cycle shares no edge with the current graph")
    if c.edge_set <= h.edges:
        raise CycleError("added cycle already lies in the current graph")


def try_classify(h: Graph, c: Cycle, ell: int) -> Configuration | None:
    _check_step_pre(h, c, ell)
    labels = c.labellings()
    for kind, idx in _candidates(ell):
        test = _is_a if kind == "A" else _is_b
        for u in labels:
            if test(h, u, idx):
                return Configuration(kind, idx, u)
    return None


def matching_classes(h: Graph, c: Cycle, ell: int) -> set[str]:
    """Every configuration class realised by some labelling (for exclusivity checks)."""
    _check_step_pre(h, c, ell)
    out = set()
    for kind, idx in _candidates(ell):
        test = _is_a if kind == "A" else _is_b
        if any(test(h, u, idx) for u in c.labellings()):
            out.add(f"A{idx}" if kind == "A" else "B")
    return out


def classify_step(h_i: Graph, c: Cycle, ell: int, strict: bool = False) -> Configuration:
    """Configuration of adding ``c`` to ``h_i``.

    Tries A_2..A_ell then B_3..B_{ell-1}, each over all 2*ell labellings, and
    returns the first match.  With ``strict`` the remaining classes are also
    tested and a second matching class is an error.
    """
    conf = try_classify(h_i, c, ell)
    if conf is None:
        raise ClassificationError(
            f"no configuration matches adding {c.vertices}; is m(G) < (l-1)/(l-2)?", h_i, c
        )
    if strict:
        classes = matching_classes(h_i, c, ell)
        if len(classes) > 1:
            raise ClassificationError(f"several configuration classes match: {sorted(classes)}", h_i, c)
    return conf


# -- construction sequences ----------------------------------------------------

@dataclass(frozen=True)
class ConstructionStep:
    added_cycle: Cycle
    e_new: int
    v_new: int
    c_new: int
    config: Configuration | None

    def to_json(self) -> dict:
        d = {
            "cycle": self.added_cycle.to_json(),
            "e_new": self.e_new,
            "v_new": self.v_new,
            "c_new": self.c_new,
        }
        d["config"] = None if self.config is None else self.config.to_json()
        return d


def _count_components(edges: Iterable[Edge], verts: set[int]) -> int:
    if not verts:
        return 0
    ds = DisjointSet(sorted(verts))
    for u, v in edges:
        if u in verts and v in verts:
            ds.merge(u, v)
    return ds.n_subsets


def make_step(h: Graph, c: Cycle, ell: int | None = None, classify: bool = True) -> tuple[ConstructionStep, Graph]:
    """Step record for adding ``c`` to ``h`` and the resulting graph."""
    new_edges = c.edge_set - h.edges
    new_verts = set(c.vertices) - h.alive
    nxt = Graph(h.vertex_count, h.edges | c.edge_set, h.alive | frozenset(c.vertices))
    conf = None
    ell = c.length if ell is None else ell
    if classify and ell >= 5:
        conf = try_classify(h, c, ell)
    step = ConstructionStep(c, len(new_edges), len(new_verts), _count_components(new_edges, new_verts), conf)
    return step, nxt


def cycle_graph_of(c: Cycle, n: int) -> Graph:
    return Graph(n, c.edge_set, frozenset(c.vertices))


def grow_sequence(
    members: Sequence[Cycle],
    n: int,
    prefix: Sequence[Cycle],
    deferred: Sequence[tuple[Cycle, frozenset[Edge]]] = (),
    classify: bool = True,
) -> tuple[list[ConstructionStep], Graph]:
    """Construction sequence starting with ``prefix``, then greedy.

    The greedy phase adds the lexicographically smallest eligible member.  A
    ``deferred`` cycle is held back until its paired edge set lies in the
    current graph, then added at once; this realises sequences in which a
    designated cycle is added onto a designated path.
    """
    if not prefix:
        raise CycleError("a construction sequence needs a start cycle")
    start = prefix[0]
    h = cycle_graph_of(start, n)
    steps: list[ConstructionStep] = []
    ell = start.length
    for c in prefix[1:]:
        if not (c.edge_set & h.edges) or c.edge_set <= h.edges:
            raise CycleError(f"cycle {c.vertices} cannot extend the sequence here")
        step, h = make_step(h, c, ell, classify)
        steps.append(step)
    waiting = [(c, ready) for c, ready in deferred if not c.edge_set <= h.edges]
    held = {c for c, _ in waiting}
    pool = sorted(set(members) - set(prefix) - held)
    while True:
        progressed = False
        for idx, (c, ready) in enumerate(waiting):
            if ready <= h.edges and (c.edge_set & h.edges) and not c.edge_set <= h.edges:
                step, h = make_step(h, c, ell, classify)
                steps.append(step)
                waiting.pop(idx)
                progressed = True
                break
        if progressed:
            continue
        for c in pool:
            if (c.edge_set & h.edges) and not c.edge_set <= h.edges:
                step, h = make_step(h, c, ell, classify)
                steps.append(step)
                progressed = True
                break
        if progressed:
            continue
        # nothing ordinary left: release a held cycle if it can attach at all
        for idx, (c, _) in enumerate(waiting):
            if (c.edge_set & h.edges) and not c.edge_set <= h.edges:
                step, h = make_step(h, c, ell, classify)
                steps.append(step)
                waiting.pop(idx)
                progressed = True
                break
        if not progressed:
            break
    return steps, h


def construction_sequence(
    members: Sequence[Cycle], start: Cycle, classify: bool = True, n: int | None = None
) -> list[ConstructionStep]:
    """Steps H_1 -> H_2 -> ... starting from ``start`` (H_1 itself is not a step)."""
    if start not in set(members):
        raise CycleError(f"start cycle {start.vertices} is not a member of the component")
    if n is None:
        n = 1 + max(v for c in members for v in c.vertices)
    steps, _ = grow_sequence(members, n, [start], classify=classify)
    return steps


@dataclass(frozen=True)
class CLComponent:
    union_graph: Graph
    member_cycles: tuple[Cycle, ...]
    start: Cycle
    sequence: tuple[ConstructionStep, ...]

    @property
    def ell(self) -> int:
        return self.start.length

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "vertices": self.union_graph.vertices(),
            "edges": [list(e) for e in self.union_graph.sorted_edges()],
            "cycles": [c.to_json() for c in self.member_cycles],
            "start": self.start.to_json(),
            "steps": [s.to_json() for s in self.sequence],
        }


def group_cycles(cycles: Sequence[Cycle]) -> list[list[Cycle]]:
    """Connected components of the edge-intersection graph, via union-find on edges."""
    ds = DisjointSet(range(len(cycles)))
    owner: dict[Edge, int] = {}
    for i, c in enumerate(cycles):
        for e in c.edge_set:
            if e in owner:
                ds.merge(owner[e], i)
            else:
                owner[e] = i
    groups: dict[int, list[Cycle]] = {}
    for i, c in enumerate(cycles):
        groups.setdefault(ds[i], []).append(c)
    return sorted((sorted(gr) for gr in groups.values()), key=lambda gr: gr[0])


def component_from_cycles(members: Sequence[Cycle], n: int, classify: bool = True) -> CLComponent:
    members = sorted(members)
    steps, h = grow_sequence(members, n, [members[0]], classify=classify)
    return CLComponent(h, tuple(members), members[0], tuple(steps))


def cl_components(g: Graph, ell: int, classify: bool = True) -> list[CLComponent]:
    """C_ell-components of ``g``, ordered by their smallest cycle."""
    cycles = enumerate_cycles(g, ell)
    return [component_from_cycles(gr, g.vertex_count, classify) for gr in group_cycles(cycles)]


# -- path helpers used by the colouring cases ----------------------------------

def paths_between(h: Graph, a: int, b: int, num_vertices: int) -> list[tuple[int, ...]]:
    """All simple paths from ``a`` to ``b`` in ``h`` with exactly ``num_vertices`` vertices."""
    out: list[tuple[int, ...]] = []
    path = [a]
    on = {a}

    def rec() -> None:
        last = path[-1]
        if len(path) == num_vertices:
            if last == b:
                out.append(tuple(path))
            return
        for w in h.neighbours(last):
            if w in on or (w == b and len(path) + 1 != num_vertices):
                continue
            path.append(w)
            on.add(w)
            rec()
            path.pop()
            on.discard(w)

    if a in h.alive and b in h.alive:
        rec()
    return sorted(out)


def path_edges(p: Sequence[int]) -> frozenset[Edge]:
    return frozenset(canonical_edge(p[i], p[i + 1]) for i in range(len(p) - 1))
