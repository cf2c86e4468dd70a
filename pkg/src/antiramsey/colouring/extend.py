from __future__ import annotations

from ..graph import Graph
from .model import EdgeColouring, ImproperColouring, first_conflict


def extend_to_proper(g: Graph, partial: EdgeColouring) -> EdgeColouring:
    """Give every uncoloured edge its own fresh colour.

    Existing colours are never changed, so any cycle that already carries a
    repeated colour keeps it.
    """
    bad = first_conflict(partial.assignment)
    if bad is not None:
        raise ImproperColouring(*bad)
    out = partial.copy()
    for e in g.sorted_edges():
        if e not in out:
            out.assign(e, out.fresh())
    return out
