"""Proper colourings without rainbow ell-cycles for graphs of small maximum density."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..cycles import Cycle, enumerate_cycles, group_cycles
from ..density import cycle_two_density, max_density
from ..graph import Graph, remove_edges
from .cases import generate_plans
from .engine import ClaimFailure, PlanFailure, grow_view, run_plan
from .extend import extend_to_proper
from .model import ColouringError, DeadEnd, EdgeColouring, PreconditionError, first_conflict


@dataclass
class ComponentReport:
    cycles: int
    case: str
    plan: str
    attempts: int


@dataclass
class ColouringReport:
    colouring: EdgeColouring
    components: list[ComponentReport] = field(default_factory=list)


def _component_json(members: list[Cycle], view=None) -> dict:
    edges = sorted({e for c in members for e in c.edge_set})
    d = {"edges": [list(e) for e in edges], "cycles": [c.to_json() for c in members]}
    if view is not None:
        d["sequence"] = view.to_json()
    return d


def colour_component(members: list[Cycle], n: int, col: EdgeColouring) -> ComponentReport:
    """Colour one C_ell-component in place, trying candidate plans in order."""
    view = grow_view(members, n, [members[0]])
    reasons: list[str] = []
    try:
        for attempt, plan in enumerate(generate_plans(view, members), start=1):
            try:
                colour, nxt = run_plan(plan, members, col.next_fresh)
            except PlanFailure as exc:
                reasons.append(f"{plan.name}: {exc}")
                continue
            for e, c in colour.items():
                col.assign(e, c)
            col.next_fresh = max(col.next_fresh, nxt)
            case = plan.name.split(":")[0].split(" ")[0]
            return ComponentReport(len(members), case, plan.name, attempt)
    except ClaimFailure as exc:
        raise DeadEnd(f"case analysis claim failed: {exc}", _component_json(members, view), reasons) from None
    raise DeadEnd("no candidate colouring plan verified", _component_json(members, view), reasons)


def colour_rainbow_free_report(g: Graph, ell: int) -> ColouringReport:
    if ell < 5:
        raise ColouringError("the density lemma needs ell >= 5; use colour_c4_rainbow_free for ell = 4")
    if g.num_vertices > 0:
        md = max_density(g)
        bound = cycle_two_density(ell)
        if md.value >= bound:
            raise PreconditionError(
                f"m(G) = {md.value} is not below {bound}", witness=md
            )
    col = EdgeColouring()
    report = ColouringReport(col)
    residual = g
    cycles = enumerate_cycles(g, ell)
    # Taking the components of the residual graph one at a time is the same as
    # walking the components of g: removing one component's edges destroys no
    # cycle of another.
    for members in group_cycles(cycles):
        report.components.append(colour_component(members, g.vertex_count, col))
        used = {e for c in members for e in c.edge_set}
        residual = remove_edges(residual, used)
        bad = first_conflict(col.assignment)
        if bad is not None:  # pragma: no cover - run_plan already checks each component
            raise DeadEnd(f"improper partial colouring at vertex {bad[0]}", _component_json(members))
    report.colouring = extend_to_proper(g, col)
    return report


def colour_rainbow_free(g: Graph, ell: int) -> EdgeColouring:
    """Total proper colouring of ``g`` in which every ell-cycle repeats a colour.

    Requires ``ell >= 5`` and ``m(g) < (ell-1)/(ell-2)``, checked exactly.
    """
    return colour_rainbow_free_report(g, ell).colouring


def lemma_bound(ell: int) -> Fraction:
    return cycle_two_density(ell)
