"""Executing a colouring plan on one C_ell-component.

A :class:`Plan` fixes a construction sequence, some preset colour classes and
the steps whose new edges are left to the presets.  Running it:

1. each preset class receives a fresh colour (later classes overwrite earlier
   ones, which is how a case recolours part of an alternating cycle);
2. H_1 and every other step get a fresh colour on two non-adjacent uncoloured
   edges, H_1 on its own edges and a step on its new edges; a step whose new
   edges already repeat a colour may be left as is;
3. the result must be proper and every ell-cycle of the component must repeat
   a colour.  Otherwise the plan is rejected and the caller tries the next.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from ..cycles import (
    ConstructionStep,
    Cycle,
    CycleError,
    cycle_graph_of,
    grow_sequence,
    make_step,
)
from ..graph import Edge, Graph, canonical_edge
from .model import first_conflict


class PlanFailure(Exception):
    pass


class ClaimFailure(Exception):
    """A structural statement the case analysis relies on is false for this input."""


def claim(cond: bool, message: str) -> None:
    if not cond:
        raise ClaimFailure(message)


@dataclass(frozen=True)
class SeqView:
    """A construction sequence together with the graphs H_1, H_2, ..., H_t.

    ``graphs[i]`` is the graph before step ``i`` (so ``graphs[0]`` is H_1).
    """

    start: Cycle
    steps: tuple[ConstructionStep, ...]
    graphs: tuple[Graph, ...]

    @property
    def ell(self) -> int:
        return self.start.length

    @property
    def final(self) -> Graph:
        return self.graphs[-1]

    def cycles(self) -> list[Cycle]:
        return [self.start] + [s.added_cycle for s in self.steps]

    def new_edges(self, i: int) -> list[Edge]:
        return sorted(self.steps[i].added_cycle.edge_set - self.graphs[i].edges)

    def index_of(self, c: Cycle) -> int:
        for i, s in enumerate(self.steps):
            if s.added_cycle == c:
                return i
        raise KeyError(c.vertices)

    def census(self) -> list[str | None]:
        return [None if s.config is None else s.config.tag for s in self.steps]

    def to_json(self) -> dict:
        return {"start": self.start.to_json(), "steps": [s.to_json() for s in self.steps]}


def view_from_steps(start: Cycle, steps: Sequence[ConstructionStep], n: int) -> SeqView:
    h = cycle_graph_of(start, n)
    graphs = [h]
    for s in steps:
        h = Graph(n, h.edges | s.added_cycle.edge_set, h.alive | frozenset(s.added_cycle.vertices))
        graphs.append(h)
    return SeqView(start, tuple(steps), tuple(graphs))


def view_from_cycles(cycles: Sequence[Cycle], n: int) -> SeqView:
    """Sequence adding exactly ``cycles`` in order; each must be a legal growth step."""
    h = cycle_graph_of(cycles[0], n)
    steps = []
    ell = cycles[0].length
    for c in cycles[1:]:
        if not (c.edge_set & h.edges) or c.edge_set <= h.edges:
            raise CycleError(f"cycle {c.vertices} cannot extend the sequence here")
        step, h = make_step(h, c, ell)
        steps.append(step)
    return view_from_steps(cycles[0], steps, n)


def grow_view(
    members: Sequence[Cycle],
    n: int,
    prefix: Sequence[Cycle],
    deferred: Sequence[tuple[Cycle, frozenset[Edge]]] = (),
) -> SeqView:
    steps, _ = grow_sequence(members, n, prefix, deferred)
    return view_from_steps(prefix[0], steps, n)


def rebuild_prefix(view: SeqView, i1: int, new_start: Cycle, members: Sequence[Cycle]) -> SeqView:
    """Same H_{i1} rebuilt from ``new_start``, followed by the original steps from ``i1`` on."""
    n = view.final.vertex_count
    target = view.graphs[i1]
    inner = [c for c in members if c.edge_set <= target.edges]
    steps, h = grow_sequence(inner, n, [new_start])
    claim(h.edges == target.edges, "a rebuilt prefix does not reach the same subgraph")
    cycles = [new_start] + [s.added_cycle for s in steps] + [s.added_cycle for s in view.steps[i1:]]
    return view_from_cycles(cycles, n)


@dataclass(frozen=True)
class Plan:
    name: str
    view: SeqView
    presets: tuple[tuple[Edge, ...], ...] = ()
    special: frozenset[int] = field(default_factory=frozenset)


def _nonadjacent_pairs(edges: Sequence[Edge]):
    for a, b in combinations(sorted(edges), 2):
        if not set(a) & set(b):
            yield a, b


DEFAULT_NODE_LIMIT = 20_000


def run_plan(
    plan: Plan,
    members: Sequence[Cycle],
    first_colour: int,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> tuple[dict[Edge, int], int]:
    """Colour one component according to ``plan``; returns the assignment and next free colour.

    The default rule leaves open which two non-adjacent edges share the fresh
    colour.  The choices are searched depth first, lexicographically smallest
    pair first.  After H_1 or step ``i`` is done every edge of the current graph
    has its final colour (special steps are preset and the rest of the edges
    get fresh colours), so each ell-cycle inside it must already repeat a
    colour; that prunes the search.
    """
    view = plan.view
    ell = view.ell
    for i, s in enumerate(view.steps):
        if i in plan.special:
            continue
        conf = s.config
        if conf is None or conf.kind != "A" or conf.index > ell - 2:
            tag = None if conf is None else conf.tag
            raise PlanFailure(f"step {i} has configuration {tag}, which the default rule cannot handle")
    colour: dict[Edge, int] = {}
    nxt = first_colour
    for cls in plan.presets:
        for e in cls:
            colour[canonical_edge(*e)] = nxt
        nxt += 1
    bad = first_conflict(colour)
    if bad is not None:
        raise PlanFailure(f"presets clash at vertex {bad[0]} colour {bad[1]}")

    # units: (edges to colour, graph complete afterwards)
    units: list[tuple[list[Edge], Graph]] = [(sorted(view.start.edge_set), view.graphs[0])]
    for i in range(len(view.steps)):
        if i not in plan.special:
            units.append((view.new_edges(i), view.graphs[i + 1]))
        else:
            units.append(([], view.graphs[i + 1]))
    done_at: list[list[Cycle]] = [[] for _ in units]
    for c in members:
        for k, (_, g) in enumerate(units):
            if c.edge_set <= g.edges:
                done_at[k].append(c)
                break
        else:
            raise PlanFailure(f"cycle {c.vertices} is not covered by the sequence")
    nodes = 0
    first_failure: list[str] = []

    def ok_after(k: int) -> bool:
        for c in done_at[k]:
            cs = [colour[e] for e in c.edge_set if e in colour]
            if len(cs) == len(set(cs)):
                if not first_failure:
                    first_failure.append(f"cycle {c.vertices} stays rainbow")
                return False
        return True

    def solve(k: int, fresh: int) -> int | None:
        nonlocal nodes
        if k == len(units):
            return fresh
        nodes += 1
        if nodes > node_limit:
            raise PlanFailure(f"default-pair search exceeded {node_limit} nodes")
        edges, _ = units[k]
        free = [e for e in edges if e not in colour]
        # leaving the unit alone comes last; the prune decides whether it is fine
        options: list[tuple[Edge, Edge] | None] = list(_nonadjacent_pairs(free))
        options.append(None)
        for opt in options:
            if opt is not None:
                a, b = opt
                colour[a] = colour[b] = fresh
            if ok_after(k):
                end = solve(k + 1, fresh + (opt is not None))
                if end is not None:
                    return end
            if opt is not None:
                del colour[a], colour[b]
        return None

    end = solve(0, nxt)
    if end is None:
        raise PlanFailure(first_failure[0] if first_failure else "no choice of default pairs works")
    bad = first_conflict(colour)
    if bad is not None:  # pragma: no cover - classes are matchings by construction
        raise PlanFailure(f"improper at vertex {bad[0]} colour {bad[1]}")
    return dict(colour), end
