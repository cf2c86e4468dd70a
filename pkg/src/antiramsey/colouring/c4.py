"""Colouring graphs whose C_4-chains are sparse, so that no 4-cycle is rainbow."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from ..cycles import enumerate_cycles, grow_sequence, group_cycles
from ..density import max_density
from ..graph import Graph
from .extend import extend_to_proper
from .model import DeadEnd, EdgeColouring, PreconditionError
from .oracle import SearchLimitError, find_rainbow_free_colouring

CHAIN_BOUND = Fraction(4, 3)
EXHAUSTIVE_EDGE_CAP = 16
EXHAUSTIVE_NODE_LIMIT = 2_000_000


def _pair(edges):
    for a, b in combinations(sorted(edges), 2):
        if not set(a) & set(b):
            return a, b
    return None


def colour_c4_rainbow_free(g: Graph) -> EdgeColouring:
    """Proper colouring of ``g`` with no rainbow 4-cycle.

    Maximal C_4-chains are the C_4-components.  Each must have density below
    4/3.  When every step of a chain adds two new vertices, each step gets a
    fresh colour on the two outer edges of its new 3-edge path (and the first
    4-cycle on a pair of opposite edges).  Otherwise the chain is small and is
    coloured by exhaustive search.  Remaining edges get distinct fresh colours.
    """
    col = EdgeColouring()
    n = g.vertex_count
    for members in group_cycles(enumerate_cycles(g, 4)):
        edges = sorted({e for c in members for e in c.edge_set})
        chain = Graph(n, frozenset(edges), frozenset(x for e in edges for x in e))
        md = max_density(chain)
        if md.value >= CHAIN_BOUND:
            raise PreconditionError(f"a C_4-chain has density {md.value}, not below 4/3", witness=md)
        steps, _ = grow_sequence(members, n, [members[0]], classify=False)
        if all(s.v_new == 2 for s in steps):
            h_edges = set(members[0].edge_set)
            a, b = _pair(members[0].edge_set)
            c = col.fresh()
            col.assign(a, c)
            col.assign(b, c)
            for s in steps:
                new = s.added_cycle.edge_set - h_edges
                a, b = _pair(new)
                c = col.fresh()
                col.assign(a, c)
                col.assign(b, c)
                h_edges |= s.added_cycle.edge_set
        else:
            try:
                found = find_rainbow_free_colouring(chain, 4, EXHAUSTIVE_EDGE_CAP, EXHAUSTIVE_NODE_LIMIT)
            except SearchLimitError as exc:
                raise DeadEnd(f"exhaustive chain colouring gave up: {exc}", {"edges": [list(e) for e in edges]}) from None
            if found is None:
                raise DeadEnd("a C_4-chain of density below 4/3 admits no good colouring",
                              {"edges": [list(e) for e in edges]})
            base = col.next_fresh
            for (u, v), c in found.assignment.items():
                col.assign((u, v), base + c)
        for cyc in members:
            cs = [col.assignment[e] for e in cyc.edge_set if e in col.assignment]
            if len(cs) == len(set(cs)):
                raise DeadEnd(f"4-cycle {cyc.vertices} left rainbow", {"edges": [list(e) for e in edges]})
    return extend_to_proper(g, col)
