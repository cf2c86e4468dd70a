"""Pure-Python kernels.  Same signatures and results as the compiled ``_ckernels``.

Graphs arrive in CSR form: ``indptr`` (length n+1) and ``indices`` with each
adjacency list sorted ascending.
"""
from __future__ import annotations

import numpy as np


def fixed_length_cycles(indptr, indices, n: int, ell: int) -> list[tuple[int, ...]]:
    """All ``ell``-cycles, canonical and in lexicographic order.

    Canonical form: the cycle starts at its minimum vertex and the second vertex
    is the smaller of that vertex's two cycle neighbours.
    """
    indptr = [int(x) for x in indptr]
    indices = [int(x) for x in indices]
    adj = [indices[indptr[v]:indptr[v + 1]] for v in range(n)]
    out: list[tuple[int, ...]] = []
    path = [0] * ell
    on_path = [False] * n

    for s in range(n):
        if len(adj[s]) < 2:
            continue
        path[0] = s
        on_path[s] = True
        adj_s = set(adj[s])

        def extend(depth: int) -> None:
            last = path[depth - 1]
            if depth == ell:
                if last in adj_s and path[1] < last:
                    out.append(tuple(path))
                return
            for w in adj[last]:
                if w <= s or on_path[w]:
                    continue
                # reflection pruning: the final vertex must exceed path[1]
                if depth == ell - 1 and w < path[1]:
                    continue
                on_path[w] = True
                path[depth] = w
                extend(depth + 1)
                on_path[w] = False

        extend(1)
        on_path[s] = False
    return out


def subset_edge_counts(n: int, nbr_masks) -> np.ndarray:
    """``counts[m]`` = number of edges induced by the vertex bitmask ``m``."""
    counts = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        lo = 1 << b
        base = np.arange(lo, dtype=np.uint64)
        counts[lo:2 * lo] = counts[:lo] + np.bitwise_count(base & np.uint64(int(nbr_masks[b]))).astype(np.int64)
    return counts


def dense_subgraph_search(indptr, indices, n: int, num: int, den: int, kmax: int, allowed):
    """Connected vertex set ``S`` with ``|S| <= kmax`` and ``den*e(S) >= num*|S|``.

    Enumeration is ESU (each connected set visited once, rooted at its minimum
    vertex) restricted to vertices with ``allowed[v]`` true.  A branch is cut when
    even the most favourable completion within the size budget cannot reach the
    bound.  Returns the vertex list, or ``None``.
    """
    indptr = [int(x) for x in indptr]
    indices = [int(x) for x in indices]
    allowed = [bool(x) for x in allowed]
    adj = [[w for w in indices[indptr[v]:indptr[v + 1]] if allowed[w]] for v in range(n)]
    in_s = [0] * n        # number of S-neighbours of each vertex (for S members: internal)
    member = [False] * n
    excl = [0] * n        # >0 when the vertex is in S or adjacent to S
    s_list: list[int] = []

    def fval(edges: int, size: int) -> int:
        return den * edges - num * size

    def bound_ok(edges: int, size: int, ext_degs: list[int]) -> bool:
        # best case: r more vertices, each bringing its S-degree, plus a complete
        # graph among them
        if fval(edges, size) >= 0:
            return True
        top = sorted(ext_degs, reverse=True)
        gain = 0
        for r in range(1, kmax - size + 1):
            gain += top[r - 1] if r - 1 < len(top) else 0
            if fval(edges + gain + r * (r - 1) // 2, size + r) >= 0:
                return True
        return False

    def add(v: int) -> int:
        member[v] = True
        s_list.append(v)
        gained = in_s[v]
        for w in adj[v]:
            in_s[w] += 1
            excl[w] += 1
        excl[v] += 1
        return gained

    def remove(v: int) -> None:
        member[v] = False
        s_list.pop()
        for w in adj[v]:
            in_s[w] -= 1
            excl[w] -= 1
        excl[v] -= 1

    def extend(root: int, ext: list[int], edges: int) -> list[int] | None:
        size = len(s_list)
        if fval(edges, size) >= 0:
            return list(s_list)
        if size == kmax or not ext:
            return None
        # only ext members can be S-adjacent later in this subtree; vertices
        # added further out see current S not at all
        if not bound_ok(edges, size, [in_s[w] for w in ext]):
            return None
        ext = sorted(ext, key=lambda w: (-in_s[w], w))
        while ext:
            w = ext.pop(0)
            new_ext = list(ext)
            for u in adj[w]:
                if u > root and excl[u] == 0:
                    new_ext.append(u)
            gained = add(w)
            found = extend(root, new_ext, edges + gained)
            remove(w)
            if found is not None:
                return found
        return None

    for root in range(n):
        if not allowed[root]:
            continue
        add(root)
        ext = [u for u in adj[root] if u > root]
        found = extend(root, ext, 0)
        remove(root)
        if found is not None:
            return sorted(found)
    return None
