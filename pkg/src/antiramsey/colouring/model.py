"""Edge colourings and the errors raised while building them."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ..graph import Edge, Graph, canonical_edge


class ColouringError(ValueError):
    """Base class for colouring failures."""


class PreconditionError(ColouringError):
    """The input graph violates the density precondition; ``witness`` shows why."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class DeadEnd(ColouringError):
    """The case analysis could not produce a valid colouring of a component.

    ``component`` is a JSON-ready description of the component and the
    construction sequence that failed; ``reasons`` lists what was tried.
    """

    def __init__(self, message: str, component: dict | None = None, reasons: list[str] | None = None):
        super().__init__(message)
        self.component = component or {}
        self.reasons = reasons or []


class ImproperColouring(ColouringError):
    def __init__(self, vertex: int, colour: int):
        super().__init__(f"vertex {vertex} has two incident edges of colour {colour}")
        self.vertex = vertex
        self.colour = colour


@dataclass
class EdgeColouring:
    """Edge -> colour map.  Colours are nonnegative integers with no meaning beyond equality."""

    assignment: dict[Edge, int] = field(default_factory=dict)
    next_fresh: int = 0

    @classmethod
    def from_items(cls, items: Iterable[tuple[int, int, int]]) -> "EdgeColouring":
        col = cls()
        for u, v, c in items:
            col.assign((u, v), int(c))
        return col

    def fresh(self) -> int:
        c = self.next_fresh
        self.next_fresh += 1
        return c

    def assign(self, edge: tuple[int, int], colour: int) -> None:
        if colour < 0:
            raise ColouringError("colours are nonnegative integers")
        self.assignment[canonical_edge(*edge)] = colour
        self.next_fresh = max(self.next_fresh, colour + 1)

    def get(self, edge: tuple[int, int]) -> int | None:
        return self.assignment.get(canonical_edge(*edge))

    def __contains__(self, edge) -> bool:
        return canonical_edge(*edge) in self.assignment

    def __len__(self) -> int:
        return len(self.assignment)

    def colours(self) -> set[int]:
        return set(self.assignment.values())

    def copy(self) -> "EdgeColouring":
        return EdgeColouring(dict(self.assignment), self.next_fresh)

    def uncoloured(self, g: Graph) -> list[Edge]:
        return [e for e in g.sorted_edges() if e not in self.assignment]

    def is_total_on(self, g: Graph) -> bool:
        return all(e in self.assignment for e in g.edges)

    def items(self) -> list[tuple[int, int, int]]:
        return [(u, v, c) for (u, v), c in sorted(self.assignment.items())]


def first_conflict(assignment: Mapping[Edge, int]) -> tuple[int, int] | None:
    """``(vertex, colour)`` of the smallest properness violation, or ``None``."""
    seen: dict[tuple[int, int], Edge] = {}
    bad = None
    for (u, v), c in sorted(assignment.items()):
        for x in (u, v):
            if (x, c) in seen:
                cand = (x, c)
                if bad is None or cand < bad:
                    bad = cand
            else:
                seen[(x, c)] = (u, v)
    return bad
