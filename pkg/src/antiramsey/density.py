"""Maximum density m(G), maximum 2-density m_2(H), and bounded dense-subgraph search.

All values are exact :class:`fractions.Fraction` objects.  ``max_density`` uses
a parametric minimum-cut formulation and is exact; ``max_density_bruteforce``
enumerates every vertex subset and serves as its oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, maximum_flow

from . import kernels
from .graph import Graph, GraphError

Rational = Fraction

BRUTEFORCE_CAP = 20
SEARCH_CAP = 14
_INT32_MAX = 2**31 - 1


class DensityError(GraphError):
    """Raised for inputs outside the supported range of a density routine."""


@dataclass(frozen=True)
class DensityWitness:
    value: Fraction
    witness_vertices: tuple[int, ...]

    def to_json(self) -> dict:
        return {"value": format_rational(self.value), "vertices": list(self.witness_vertices)}


def format_rational(x: Fraction) -> str:
    """``p/q`` with the denominator always written, e.g. ``1/1``."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def cycle_two_density(ell: int) -> Fraction:
    """m_2(C_ell) = (ell-1)/(ell-2)."""
    if ell < 3:
        raise DensityError("cycle length must be at least 3")
    return Fraction(ell - 1, ell - 2)


def _ratio(g: Graph, vertices) -> Fraction:
    vs = list(vertices)
    return Fraction(g.count_induced_edges(vs), len(vs))


# -- exact densest subgraph ----------------------------------------------------

def _components(g: Graph) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for s in g.vertices():
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.neighbours(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def _best_set_above(vertices: list[int], g: Graph, lam: Fraction) -> list[int]:
    """Vertex set maximising ``e(S) - lam*|S|`` (empty if the maximum is 0).

    Goldberg's cut network scaled by ``lam = a/b``: ``s->v`` has capacity
    ``b*m``, ``v->t`` has ``b*m + 2a - b*d(v)`` and each edge carries ``b`` in
    both directions.  A cut with source side ``{s} + S`` costs
    ``b*m*n + 2*(a*|S| - b*e(S))``.
    """
    a, b = lam.numerator, lam.denominator
    vset = set(vertices)
    m = sum(1 for u, v in g.edges if u in vset)
    k = len(vertices)
    if b * m * (k + 2) + 2 * a >= _INT32_MAX:
        return _best_set_above_nx(vertices, g, a, b, m)
    index = {v: i + 2 for i, v in enumerate(vertices)}
    rows, cols, caps = [], [], []
    for v in vertices:
        rows += [0, index[v]]
        cols += [index[v], 1]
        caps += [b * m, b * m + 2 * a - b * g.degree(v)]
    for u, v in g.edges:
        if u in vset:
            rows += [index[u], index[v]]
            cols += [index[v], index[u]]
            caps += [b, b]
    cap = csr_matrix((np.array(caps, dtype=np.int32), (rows, cols)), shape=(k + 2, k + 2))
    res = maximum_flow(cap, 0, 1)
    if res.flow_value >= b * m * k:
        return []
    residual = (cap - res.flow).tocsr()
    residual.data[residual.data < 0] = 0
    residual.eliminate_zeros()
    side = breadth_first_order(residual, 0, directed=True, return_predecessors=False)
    return sorted(vertices[i - 2] for i in side.tolist() if i >= 2)


def _best_set_above_nx(vertices: list[int], g: Graph, a: int, b: int, m: int) -> list[int]:
    """Same cut with networkx and arbitrary-precision capacities."""
    vset = set(vertices)
    net = nx.DiGraph()
    s, t = "s", "t"
    for v in vertices:
        net.add_edge(s, v, capacity=b * m)
        net.add_edge(v, t, capacity=b * m + 2 * a - b * g.degree(v))
    for u, v in g.edges:
        if u in vset:
            net.add_edge(u, v, capacity=b)
            net.add_edge(v, u, capacity=b)
    cut, (side, _) = nx.minimum_cut(net, s, t)
    if cut >= b * m * len(vertices):
        return []
    return sorted(x for x in side if x != s)


def max_density(g: Graph) -> DensityWitness:
    """m(G) with a witness vertex set whose induced subgraph attains it.

    Each connected component is solved by Dinkelbach iteration: starting from
    the component's own ratio, repeatedly replace ``lam`` by the ratio of the
    set maximising ``e(S) - lam*|S|`` until no set beats ``lam``.  Each round
    strictly increases ``lam`` through the finite set of ratios ``e/v``.
    """
    if g.num_vertices == 0:
        raise DensityError("max_density needs at least one vertex")
    best = DensityWitness(Fraction(0), (min(g.alive),))
    for comp in _components(g):
        if len(comp) < 2:
            continue
        current = comp
        lam = _ratio(g, comp)
        while True:
            better = _best_set_above(comp, g, lam)
            if not better:
                break
            new = _ratio(g, better)
            if new <= lam:  # pragma: no cover - guarded by the cut test
                break
            current, lam = better, new
        if lam > best.value:
            best = DensityWitness(lam, tuple(current))
    return best


# -- brute force ---------------------------------------------------------------

def _subset_table(g: Graph, cap: int) -> tuple[list[int], np.ndarray, np.ndarray]:
    verts = g.vertices()
    k = len(verts)
    if k > cap:
        raise DensityError(f"exhaustive search is capped at {cap} vertices, got {k}")
    index = {v: i for i, v in enumerate(verts)}
    masks = [0] * k
    for u, v in g.edges:
        masks[index[u]] |= 1 << index[v]
        masks[index[v]] |= 1 << index[u]
    counts = kernels.subset_edge_counts(k, masks)
    sizes = np.bitwise_count(np.arange(1 << k, dtype=np.uint64)).astype(np.int64)
    return verts, counts, sizes


def _best_by_size(counts: np.ndarray, sizes: np.ndarray, k: int, score, min_size: int):
    best = None
    for size in range(min_size, k + 1):
        sel = np.flatnonzero(sizes == size)
        idx = sel[int(np.argmax(counts[sel]))]
        val = score(int(counts[idx]), size)
        if best is None or val > best[0]:
            best = (val, int(idx))
    return best


def _mask_vertices(verts: list[int], mask: int) -> tuple[int, ...]:
    return tuple(v for i, v in enumerate(verts) if mask >> i & 1)


def max_density_bruteforce(g: Graph) -> DensityWitness:
    """Exhaustive m(G) over all nonempty vertex subsets (at most 20 vertices)."""
    if g.num_vertices == 0:
        raise DensityError("max_density needs at least one vertex")
    verts, counts, sizes = _subset_table(g, BRUTEFORCE_CAP)
    val, mask = _best_by_size(counts, sizes, len(verts), lambda e, v: Fraction(e, v), 1)
    return DensityWitness(val, _mask_vertices(verts, mask))


def max_2_density(h: Graph) -> DensityWitness:
    """m_2(H) = max (e(J)-1)/(v(J)-2) over subgraphs with at least 3 vertices."""
    if h.num_vertices < 3:
        raise DensityError("m_2 needs a graph with at least 3 vertices")
    verts, counts, sizes = _subset_table(h, BRUTEFORCE_CAP)
    val, mask = _best_by_size(counts, sizes, len(verts), lambda e, v: Fraction(e - 1, v - 2), 3)
    return DensityWitness(val, _mask_vertices(verts, mask))


# -- bounded search ------------------------------------------------------------

def two_core(g: Graph) -> set[int]:
    deg = {v: g.degree(v) for v in g.alive}
    stack = [v for v, d in deg.items() if d < 2]
    removed = set(stack)
    while stack:
        v = stack.pop()
        for w in g.neighbours(v):
            if w in removed:
                continue
            deg[w] -= 1
            if deg[w] < 2:
                removed.add(w)
                stack.append(w)
    return set(g.alive) - removed


def find_small_dense_subgraph(
    g: Graph, bound: Fraction, max_vertices: int = 12
) -> DensityWitness | None:
    """Some vertex set ``S`` with ``|S| <= max_vertices`` and ``e(S)/|S| >= bound``.

    Only connected sets are searched, which loses nothing: some component of a
    dense set is at least as dense.  For ``bound >= 1`` the search runs inside
    the 2-core, since deleting a vertex of degree at most 1 from a set of
    density at least 1 does not lower its density.
    """
    if max_vertices > SEARCH_CAP:
        raise DensityError(f"max_vertices is capped at {SEARCH_CAP}, got {max_vertices}")
    if max_vertices < 1 or g.num_vertices == 0:
        return None
    bound = Fraction(bound)
    if bound <= 0:
        v = min(g.alive)
        return DensityWitness(Fraction(0), (v,))
    allowed_set = two_core(g) if bound >= 1 else set(g.alive)
    if not allowed_set:
        return None
    core = g.induced(allowed_set)
    if max_density(core).value < bound:
        return None
    allowed = np.zeros(g.vertex_count, dtype=bool)
    allowed[list(allowed_set)] = True
    indptr, indices = core.csr()
    found = kernels.dense_subgraph_search(
        indptr, indices, g.vertex_count, bound.numerator, bound.denominator, max_vertices, allowed
    )
    if found is None:
        return None
    verts = tuple(int(v) for v in found)
    return DensityWitness(_ratio(g, verts), verts)
