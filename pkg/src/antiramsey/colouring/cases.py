"""Plans for colouring one C_ell-component without a rainbow ell-cycle.

The census of a construction sequence (the configuration of every step)
selects the case:

* only A_k with k <= ell-2: a fresh colour on two non-adjacent new edges per step;
* one A_ell step (case 1), two A_{ell-1} steps (case 2, ell = 5 only),
  one A_{ell-1} step (case 3), one B_j step (case 4).

Each case yields candidate :class:`Plan` objects in a fixed order.  Where the
argument picks a structure "without loss of generality" (which cycle starts
the sequence, which of several paths, which orientation), every admissible
choice becomes a candidate.  Structural facts the argument asserts are checked
with :func:`claim`; a false one aborts the component with a diagnostic.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterator, Sequence

from ..cycles import Configuration, Cycle, CycleError, enumerate_cycles, path_edges, paths_between
from ..graph import Edge, Graph, canonical_edge
from .engine import Plan, SeqView, claim, grow_view, rebuild_prefix, view_from_cycles

MAX_DEPTH = 3


def ce(u: int, v: int) -> Edge:
    return canonical_edge(u, v)


def excess(tag: str, ell: int) -> int:
    """Contribution of one step to (ell-2)e(H) - (ell-1)v(H) + ell."""
    return int(tag[1:]) - 2 if tag[0] == "A" else ell - 1


def check_census(view: SeqView) -> None:
    ell = view.ell
    tags = view.census()
    claim(all(t is not None for t in tags), f"unclassifiable step in census {tags}")
    n_l = tags.count(f"A{ell}")
    n_l1 = tags.count(f"A{ell - 1}")
    n_b = sum(1 for t in tags if t[0] == "B")
    claim(n_l <= 1, f"{n_l} steps of configuration A{ell}")
    claim(n_l1 <= 2, f"{n_l1} steps of configuration A{ell - 1}")
    claim(n_b <= 1, f"{n_b} steps of configuration B")
    claim(n_l1 < 2 or ell == 5, "two A_{ell-1} steps with ell > 5")
    claim(sum(excess(t, ell) for t in tags) <= ell - 1, f"census {tags} exceeds the density budget")


def case_of(view: SeqView) -> str:
    ell = view.ell
    tags = view.census()
    if any(t[0] == "B" for t in tags):
        return "case4"
    if f"A{ell}" in tags:
        return "case1"
    n_l1 = tags.count(f"A{ell - 1}")
    if n_l1 == 2:
        return "case2"
    if n_l1 == 1:
        return "case3"
    return "default"


def _special(view: SeqView) -> list[tuple[int, Configuration]]:
    ell = view.ell
    out = []
    for i, s in enumerate(view.steps):
        c = s.config
        if c.kind == "B" or c.index >= ell - 1:
            out.append((i, c))
    return out


def _inside(members: Sequence[Cycle], h: Graph) -> list[Cycle]:
    return [c for c in members if c.edge_set <= h.edges]


def _alternate(cycle_vs: Sequence[int]) -> tuple[tuple[Edge, ...], tuple[Edge, ...]]:
    n = len(cycle_vs)
    es = [ce(cycle_vs[i], cycle_vs[(i + 1) % n]) for i in range(n)]
    return tuple(es[0::2]), tuple(es[1::2])


def _cycles_of_union(edges: frozenset[Edge], n: int) -> list[Cycle]:
    g = Graph(n, edges, frozenset(x for e in edges for x in e))
    out: list[Cycle] = []
    for length in range(3, len(edges) + 1):
        out.extend(enumerate_cycles(g, length))
    return out


def _pairs_covering(members: Sequence[Cycle], target: frozenset[Edge]) -> list[tuple[Cycle, Cycle]]:
    """Ordered pairs (D1, D2) of edge-sharing cycles whose union contains ``target``."""
    out = []
    for d1, d2 in combinations(members, 2):
        if (d1.edge_set & d2.edge_set) and target <= (d1.edge_set | d2.edge_set):
            out.append((d1, d2))
            out.append((d2, d1))
    return out


# -- default -------------------------------------------------------------------

def plans_default(view: SeqView, members, depth) -> Iterator[Plan]:
    yield Plan("default", view)


# -- case 1 and case 3 share their structure -----------------------------------

def _reverse_a(lab: tuple[int, ...], k: int) -> tuple[int, ...]:
    """Reverse the k-path of an A_k labelling, keeping the new part attached."""
    ell = len(lab)
    path = lab[:k][::-1]
    rest = lab[k:][::-1]
    return path + rest if ell > k else path


def _same_census(old: SeqView, new: SeqView) -> bool:
    return sorted(old.census()) == sorted(new.census())


def _step_index(view: SeqView, c: Cycle) -> int | None:
    try:
        return view.index_of(c)
    except KeyError:
        return None


def _path_plans(
    view: SeqView, members, i1: int, conf: Configuration, name: str, depth: int
) -> Iterator[Plan]:
    """Cases 1 and 3: the special step closes a k-path P (k = ell or ell-1)."""
    ell = view.ell
    k = conf.index
    u = conf.labelling
    h = view.graphs[i1]
    c = view.steps[i1].added_cycle
    p = u[:k]
    p_edges = path_edges(p)
    paths = paths_between(h, p[0], p[-1], k)
    claim(tuple(p) in paths, "the closing path is missing from H_i")
    others = [q for q in paths if q != tuple(p)]
    n = view.final.vertex_count

    if not others:
        for lab in (u, _reverse_a(u, k)):
            e23 = ce(lab[1], lab[2])
            closing = ce(lab[0], lab[-1])
            for c1 in _inside(members, h):
                if e23 not in c1.edge_set:
                    continue
                nv = rebuild_prefix(view, i1, c1, members)
                if not _same_census(view, nv):
                    # the new start moved the excess into other steps
                    yield from generate_plans(nv, members, depth + 1, f"{name}: restart at {c1.vertices}")
                    continue
                yield Plan(
                    f"{name}: unique path, H_1 through {e23}",
                    nv,
                    ((closing, e23),),
                    frozenset({nv.index_of(c)}),
                )
        return

    if k == ell:
        kinds = (("2l-2", 2 * ell - 2), ("2l-4", 2 * ell - 4), ("l", ell))
    else:
        kinds = (("2l-4", 2 * ell - 4), ("2l-6", 2 * ell - 6), ("l", ell))
    lengths = {x for _, x in kinds}
    found: dict[int, list[tuple[tuple[int, ...], Cycle]]] = {x: [] for x in lengths}
    for q in others:
        cyc = _cycles_of_union(p_edges | path_edges(q), n)
        if k == ell:
            hit = [x for x in cyc if x.length in lengths]
            claim(bool(hit), f"P u P' for {q} has no cycle of length in {sorted(lengths)}")
            for x in hit:
                if x.length == ell:
                    claim(ell % 2 == 0, "P u P' contains an ell-cycle although ell is odd")
                    claim(len(p_edges & x.edge_set) == ell // 2, "P meets the ell-cycle in other than ell/2 edges")
        else:
            hit = [x for x in cyc if x.length in lengths and x.length % 2 == 0]
            claim(bool(hit), f"P u P' for {q} has no even cycle of length in {sorted(lengths)}")
        for x in hit:
            found[x.length].append((q, x))
    inside = _inside(members, h)
    member_set = set(members)
    for kind, length in kinds:
        for q, cp in found[length]:
            if kind == "l":
                if cp not in member_set:
                    continue
                nv = grow_view(members, n, [cp], [(c, p_edges)])
                i = _step_index(nv, c)
                if i is None or not _same_census(view, nv):
                    # C is absorbed by another step here, so the special step moved
                    yield from generate_plans(nv, members, depth + 1, f"{name}: start {cp.vertices}")
                    continue
                a, b = _alternate(cp.vertices)
                yield Plan(f"{name}: ell-cycle start {cp.vertices}", nv, (a, b), frozenset({i}))
                continue
            for d1, d2 in _pairs_covering(inside, cp.edge_set):
                try:
                    nv = grow_view(members, n, [d1, d2], [(c, p_edges)])
                except CycleError:
                    continue
                i = _step_index(nv, c)
                if i is None or not _same_census(view, nv):
                    yield from generate_plans(nv, members, depth + 1, f"{name}: start {d1.vertices}, {d2.vertices}")
                    continue
                a, b = _alternate(cp.vertices)
                idx = frozenset({i})
                label = f"{name}: {kind} cycle {cp.vertices} from {d1.vertices}, {d2.vertices}"
                if kind == "2l-2":
                    yield Plan(label + ", one colour", nv, (a,), idx)
                    yield Plan(label + ", one colour (other half)", nv, (b,), idx)
                elif kind == "2l-6":
                    common = sorted(cp.edge_set & d1.edge_set)
                    for e, f in _end_first_pairs(common):
                        yield Plan(label + f", recolour {e} {f}", nv, (a, b, (e, f)), idx)
                else:
                    yield Plan(label + ", two colours", nv, (a, b), idx)


def _end_first_pairs(path: list[Edge]) -> list[tuple[Edge, Edge]]:
    """Non-adjacent pairs of a path's edges, the pair of end edges first."""
    deg: dict[int, int] = {}
    for e in path:
        for x in e:
            deg[x] = deg.get(x, 0) + 1
    ends = [e for e in path if any(deg[x] == 1 for x in e)]
    pairs = [(a, b) for a, b in combinations(path, 2) if not set(a) & set(b)]
    first = [pr for pr in pairs if pr[0] in ends and pr[1] in ends]
    return first + [pr for pr in pairs if pr not in first]


def plans_case1(view, members, depth) -> Iterator[Plan]:
    (i1, conf), = [(i, c) for i, c in _special(view) if c.tag == f"A{view.ell}"]
    yield from _path_plans(view, members, i1, conf, "case1", depth)


def plans_case3(view, members, depth) -> Iterator[Plan]:
    (i1, conf), = [(i, c) for i, c in _special(view) if c.tag == f"A{view.ell - 1}"]
    yield from _path_plans(view, members, i1, conf, "case3", depth)


# -- case 2 (ell = 5, two A_4 steps) --------------------------------------------

def _a4_steps(view: SeqView) -> list[tuple[int, Configuration]]:
    return [(i, s.config) for i, s in enumerate(view.steps) if s.config.tag == "A4"]


def _rev4(lab: tuple[int, ...]) -> tuple[int, ...]:
    return (lab[3], lab[2], lab[1], lab[0], lab[4])


def plans_case2(view: SeqView, members, depth) -> Iterator[Plan]:
    claim(view.ell == 5, "two A_{ell-1} steps with ell > 5")
    (i1, cu), (i2, cv) = _a4_steps(view)
    n = view.final.vertex_count
    u = cu.labelling
    c = view.steps[i1].added_cycle
    h1 = view.graphs[i1]
    pe = [ce(u[0], u[1]), ce(u[1], u[2]), ce(u[2], u[3])]
    inside = _inside(members, h1)
    full = [d for d in inside if set(pe) <= d.edge_set]
    if full:
        yield from _case2a(view, members, full, c, u, n)
        return
    two = [d for d in inside if {pe[0], pe[1]} <= d.edge_set or {pe[1], pe[2]} <= d.edge_set]
    if two:
        yield from _case2b(view, members, two, i1, c, u, depth)
        return
    claim(not any({pe[0], pe[2]} <= d.edge_set for d in inside), "a 5-cycle holds the two outer edges of P only")
    yield from _case2c(view, members, i1, u, depth)


def _case2a(view, members, full, c, u, n) -> Iterator[Plan]:
    u1, u2, u3, u4, u5 = u
    for d in full:
        x5 = next(x for x in d.vertices if x not in u[:4])
        h2 = Graph(n, d.edge_set | c.edge_set, frozenset(d.vertices) | frozenset(c.vertices))
        cpp = {frozenset(p) for p in ((u1, x5), (x5, u4), (u4, u5), (u5, u1))}
        # P' inside H_2: the second A_4 step comes right after C
        for x in members:
            if x.edge_set <= h2.edges or not (x.edge_set & h2.edges):
                continue
            try:
                nv = grow_view(members, n, [d, c, x])
            except CycleError:
                continue
            conf = nv.steps[1].config
            if conf is None or conf.tag != "A4" or nv.steps[0].config.tag != "A4":
                continue
            v = conf.labelling
            v1, v4, v5 = v[0], v[3], v[4]
            ends = {v1, v4}
            special = frozenset({0, 1})
            if ends == {u1, u3}:
                claim(path_edges(v[:4]) <= h2.edges, "P' leaves H_2")
                yield Plan("case2a: ends u1,u3", nv,
                           ((ce(u4, x5), ce(u1, u2), ce(u3, v5)), (ce(u2, u3), ce(u4, u5), ce(v5, u1))), special)
                continue
            if ends == {u2, u4}:
                yield Plan("case2a: ends u2,u4", nv,
                           ((ce(u1, x5), ce(u4, u3), ce(u2, v5)), (ce(u3, u2), ce(u1, u5), ce(v5, u4))), special)
                continue
            base = (ce(u1, u2), ce(u4, u3))
            if frozenset(ends) in cpp:
                xe = sorted(x.edge_set)
                for a, b in combinations(xe, 2):
                    if not set(a) & set(b):
                        yield Plan(f"case2a: ends adjacent on C'', {a} {b}", nv, (base, (a, b)), special)
            elif ends == {u1, u4}:
                yield Plan("case2a: ends u1,u4", nv, (base,), special)
            elif x5 in ends and ends & {u2, u3}:
                yield Plan("case2a: ends x5,u2/u3", nv, (base, (ce(v5, x5), ce(u2, u3))), special)
            elif u5 in ends and ends & {u2, u3}:
                yield Plan("case2a: ends u5,u2/u3", nv, (base, (ce(v5, u5), ce(u2, u3))), special)
            else:
                claim(False, f"case 2(a): unexpected ends {sorted(ends)} of P'")
        # P' not inside H_2
        try:
            nv = grow_view(members, n, [d, c])
        except CycleError:
            continue
        a4 = _a4_steps(nv)
        if len(a4) != 2 or a4[0][0] != 0:
            continue
        i2, cv = a4[1]
        for v in (cv.labelling, _rev4(cv.labelling)):
            if ce(v[2], v[3]) in h2.edges:
                continue
            yield Plan("case2a: P' outside H_2", nv,
                       ((ce(u1, u2), ce(u3, u4)), (ce(v[2], v[3]), ce(v[4], v[0]))), frozenset({0, i2}))


def _case2b(view, members, two, i1, c, u, depth) -> Iterator[Plan]:
    for lab in (u, _rev4(u)):
        u1, u2, u3, u4, u5 = lab
        for d in two:
            es = d.edge_set
            if not ({ce(u1, u2), ce(u2, u3)} <= es) or ce(u3, u4) in es:
                continue
            dv = d.labellings()
            # D = u1 u2 u3 x4 x5
            order = next(o for o in dv if o[:3] == (u1, u2, u3))
            x4, x5 = order[3], order[4]
            nv = rebuild_prefix(view, i1, d, members)
            if not _same_census(view, nv):
                yield from generate_plans(nv, members, depth + 1, f"case2b: restart at {d.vertices}")
                continue
            (j1, _), (j2, cv) = _a4_steps(nv)
            special = frozenset({j1, j2})
            cpp = (u1, x5, x4, u3, u4, u5)
            cpp_edges = frozenset(ce(cpp[i], cpp[(i + 1) % 6]) for i in range(6))
            v = cv.labelling
            pv = path_edges(v[:4])
            alternatives = paths_between(nv.graphs[j2], v[0], v[3], 4)
            if any(path_edges(q) <= cpp_edges for q in alternatives):
                a, b = _alternate(cpp)
                yield Plan("case2b: P' on the 6-cycle", nv, (a, b), special)
                continue
            if len(alternatives) != 1:
                # this choice of H_1 does not make C'' the only 6-cycle; another one will
                continue
            if pv <= es:
                claim(bool(pv & {ce(u1, u2), ce(u2, u3)}), "case 2(b): P' inside H_1 avoids u1u2, u2u3")
                yield Plan("case2b: P' inside H_1", nv, ((ce(u4, u5), ce(v[0], v[1]), ce(v[2], v[3])),), special)
                continue
            for j in range(3):
                ej = ce(v[j], v[j + 1])
                if ej in es:
                    continue
                for estar in sorted({ce(u5, u1), ce(u5, u4)} - {ej}):
                    for f in sorted({ce(v[4], v[0]), ce(v[4], v[3])}):
                        if set(f) & set(ej):
                            continue
                        yield Plan(f"case2b: edge {ej} off H_1", nv,
                                   ((ce(u2, u3), ce(x4, x5), estar), (ej, f)), special)


def _case2c(view, members, i1, u, depth) -> Iterator[Plan]:
    e23 = ce(u[1], u[2])
    h1 = view.graphs[i1]
    for d in _inside(members, h1):
        if e23 not in d.edge_set:
            continue
        nv = rebuild_prefix(view, i1, d, members)
        if not _same_census(view, nv):
            yield from generate_plans(nv, members, depth + 1, f"case2c: restart at {d.vertices}")
            continue
        (j1, cu), (j2, cv) = _a4_steps(nv)
        special = frozenset({j1, j2})
        v = cv.labelling
        claim(len(paths_between(nv.graphs[j2], v[0], v[3], 4)) == 1, "case 2(c): P' is not the only 4-path")
        if path_edges(v[:4]) == path_edges(u[:4]):
            # the edge joining v5 to u4
            yield Plan("case2c: P' = P", nv, ((ce(u[1], u[2]), ce(u[4], u[0]), ce(v[4], u[3])),), special)
            continue
        any_orient = False
        for lu in (u, _rev4(u)):
            for lv in (v, _rev4(v)):
                if lv[0] in (lu[0], lu[1], lu[3]):
                    continue
                any_orient = True
                c1 = [ce(lu[1], lu[2]), ce(lu[4], lu[0])]
                e_23 = ce(lv[1], lv[2])
                e_51 = ce(lv[4], lv[0])
                if e_23 in c1:
                    yield Plan("case2c: v2v3 already coloured", nv, (tuple(c1 + [e_51]),), special)
                else:
                    yield Plan("case2c: fresh colour on v2v3", nv, (tuple(c1), (e_23, e_51)), special)
        claim(any_orient, "case 2(c): no orientation with v1 outside {u1,u2,u4}")


# -- case 4 ---------------------------------------------------------------------

def plans_case4(view: SeqView, members, depth) -> Iterator[Plan]:
    ell = view.ell
    (i1, conf), = [(i, c) for i, c in _special(view) if c.kind == "B"]
    u = conf.labelling
    j = conf.index
    h = view.graphs[i1]
    c = view.steps[i1].added_cycle
    n = view.final.vertex_count
    before = view.cycles()[: i1 + 1]
    after = [s.added_cycle for s in view.steps[i1 + 1:]]
    reductions = [(q, Cycle(tuple(q) + tuple(u[j:])), "P'") for q in paths_between(h, u[0], u[j - 1], j)]
    reductions += [
        (q, Cycle(tuple(q) + tuple(u[2: j - 1][::-1])), "P''")
        for q in paths_between(h, u[1], u[j - 1], ell - j + 3)
    ]
    for q, d, which in reductions:
        try:
            nv = view_from_cycles(before + [d, c] + after, n)
        except CycleError:
            # a later cycle is already covered once D is in; regrow the tail
            nv = grow_view(members, n, before + [d, c])
        yield from generate_plans(nv, members, depth + 1, f"case4 via {which} {q}")
    if not reductions:
        yield Plan("case4: direct", view, ((ce(u[1], u[2]), ce(u[-1], u[0])),), frozenset({i1}))


HANDLERS = {
    "default": plans_default,
    "case1": plans_case1,
    "case2": plans_case2,
    "case3": plans_case3,
    "case4": plans_case4,
}


def generate_plans(view: SeqView, members, depth: int = 0, prefix: str = "") -> Iterator[Plan]:
    if depth > MAX_DEPTH:
        return
    check_census(view)
    case = case_of(view)
    for plan in HANDLERS[case](view, members, depth):
        name = f"{prefix} / {plan.name}" if prefix else plan.name
        yield Plan(name, plan.view, plan.presets, plan.special)
