"""Independent certificate checking.

Only graph-core and cycle enumeration are used here, so a bug in the
constructors cannot hide itself.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from ..cycles import Cycle, enumerate_cycles
from ..graph import Graph, graph_from_edges
from .model import ColouringError, EdgeColouring


class PartialColouringError(ColouringError):
    pass


@dataclass(frozen=True)
class Certificate:
    graph: Graph
    ell: int
    colouring: EdgeColouring
    proper: bool
    rainbow_cycle: Cycle | None

    @property
    def ok(self) -> bool:
        return self.proper and self.rainbow_cycle is None

    def to_json(self) -> dict:
        return {
            "n": self.graph.vertex_count,
            "ell": self.ell,
            "edges": [[u, v, self.colouring.assignment[(u, v)]] for u, v in self.graph.sorted_edges()],
            "proper": self.proper,
            "rainbow": None if self.rainbow_cycle is None else list(self.rainbow_cycle.vertices),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json()) + "\n"


def is_proper(g: Graph, col: EdgeColouring) -> bool:
    for v in g.alive:
        cs = [col.assignment[(min(v, w), max(v, w))] for w in g.neighbours(v)]
        if len(cs) != len(set(cs)):
            return False
    return True


def verify_certificate(g: Graph, ell: int, col: EdgeColouring) -> Certificate:
    missing = [e for e in g.sorted_edges() if e not in col.assignment]
    if missing:
        raise PartialColouringError(f"{len(missing)} edges uncoloured, first {missing[0]}")
    proper = is_proper(g, col)
    rainbow = None
    for c in enumerate_cycles(g, ell):
        colours = {col.assignment[e] for e in c.edge_set}
        if len(colours) == ell:
            rainbow = c
            break
    return Certificate(g, ell, col, proper, rainbow)


def parse_certificate(text: str) -> tuple[Graph, int, EdgeColouring]:
    """Read the certificate JSON; the stored verdict is ignored and recomputed."""
    try:
        d = json.loads(text)
        n, ell, rows = int(d["n"]), int(d["ell"]), d["edges"]
        g = graph_from_edges(n, [(int(r[0]), int(r[1])) for r in rows])
        col = EdgeColouring.from_items((int(r[0]), int(r[1]), int(r[2])) for r in rows)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ColouringError(f"malformed certificate: {exc}") from None
    return g, ell, col
