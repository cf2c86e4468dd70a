"""Exhaustive search over proper colourings of small graphs."""
from __future__ import annotations

from ..cycles import enumerate_cycles
from ..graph import Graph
from .model import ColouringError, EdgeColouring

ORACLE_EDGE_CAP = 12


class SearchLimitError(ColouringError):
    pass


def find_rainbow_free_colouring(
    g: Graph, ell: int, max_edges: int = ORACLE_EDGE_CAP, node_limit: int | None = None
) -> EdgeColouring | None:
    """A proper colouring of ``g`` with no rainbow ``ell``-cycle, or ``None``.

    Colourings are enumerated up to renaming of colours, i.e. as ordered
    partitions of the sorted edge list into matchings: edge ``i`` joins an
    earlier class or opens the next one.  A branch is cut as soon as some cycle
    whose edges are all coloured is rainbow.
    """
    edges = g.sorted_edges()
    if len(edges) > max_edges:
        raise SearchLimitError(f"exhaustive search is capped at {max_edges} edges, got {len(edges)}")
    cycles = enumerate_cycles(g, ell)
    if not cycles:
        return EdgeColouring.from_items((u, v, i) for i, (u, v) in enumerate(edges))
    pos = {e: i for i, e in enumerate(edges)}
    closing: list[list[list[int]]] = [[] for _ in edges]
    for c in cycles:
        idx = sorted(pos[e] for e in c.edge_set)
        closing[idx[-1]].append(idx)
    colour = [-1] * len(edges)
    used_at: dict[int, set[int]] = {v: set() for v in g.alive}
    nodes = 0

    def rec(i: int, k: int) -> bool:
        nonlocal nodes
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise SearchLimitError(f"search exceeded {node_limit} nodes")
        if i == len(edges):
            return True
        u, v = edges[i]
        for c in range(k + 1):
            if c in used_at[u] or c in used_at[v]:
                continue
            colour[i] = c
            if all(len({colour[j] for j in cyc}) < ell for cyc in closing[i]):
                used_at[u].add(c)
                used_at[v].add(c)
                if rec(i + 1, max(k, c + 1)):
                    return True
                used_at[u].discard(c)
                used_at[v].discard(c)
        colour[i] = -1
        return False

    if not rec(0, 0):
        return None
    return EdgeColouring.from_items((u, v, colour[i]) for i, (u, v) in enumerate(edges))


def forces_rainbow_bruteforce(g: Graph, ell: int) -> bool:
    """True iff every proper colouring of ``g`` has a rainbow ``ell``-cycle (at most 12 edges)."""
    return find_rainbow_free_colouring(g, ell) is None
