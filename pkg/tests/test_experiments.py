from __future__ import annotations

import csv
import io
from fractions import Fraction

import pytest

from antiramsey.experiments import (
    DEAD_END,
    PRECONDITION_FAIL,
    SUCCESS,
    CellSummary,
    ExperimentError,
    TrialRecord,
    colourability_scan,
    csv_columns,
    dead_end_count,
    edge_probability,
    emit_csv,
    find_k24,
    k24_presence_scan,
    monotone_within,
    obstruction_scan,
    scan_exponent,
    summarise,
)
from antiramsey.graph import complete_bipartite, complete_graph, cycle_graph


def test_exponents():
    assert scan_exponent(4) == Fraction(2, 3)
    assert scan_exponent(5) == Fraction(3, 4)
    assert scan_exponent(7) == Fraction(5, 6)


def test_edge_probability_recomputes():
    p = edge_probability(2.0, 100, Fraction(3, 4))
    assert p == pytest.approx(2.0 * 100 ** -0.75)
    with pytest.raises(ExperimentError):
        edge_probability(10.0, 4, Fraction(1, 4))


def test_k24_detector():
    assert find_k24(complete_bipartite(2, 4)) is not None
    assert find_k24(complete_bipartite(2, 3)) is None
    assert find_k24(cycle_graph(8)) is None
    (u, v), shared = find_k24(complete_graph(6))
    assert len(shared) == 4 and u not in shared and v not in shared


def test_zero_c_gives_nothing():
    for r in k24_presence_scan([30], [0.0], 5, seed=1):
        assert not r.obstruction_found and r.p == 0.0
    for r in obstruction_scan(5, [30], [0.0], 5, seed=1):
        assert not r.obstruction_found
    for r in colourability_scan(5, [30], [0.0], 5, seed=1):
        assert r.colourer_outcome == SUCCESS


def test_records_follow_grid_order():
    recs = k24_presence_scan([20, 30], [0.5, 2.0], 3, seed=4)
    assert [(r.n, r.c, r.trial) for r in recs][:4] == [(20, 0.5, 0), (20, 0.5, 1), (20, 0.5, 2), (20, 2.0, 0)]
    assert len(recs) == 12


def test_samples_nested_along_c():
    """A trial's stream does not depend on c, so presence can only switch on."""
    recs = obstruction_scan(5, [60], [0.5, 1.0, 2.0, 4.0], 20, seed=9)
    by_trial: dict[int, list[bool]] = {}
    for r in recs:
        by_trial.setdefault(r.trial, []).append(r.obstruction_found)
    for seq in by_trial.values():
        assert seq == sorted(seq)


def test_colourability_outcomes():
    recs = colourability_scan(5, [30], [0.5, 5.0], 10, seed=2)
    assert dead_end_count(recs) == 0
    assert {r.colourer_outcome for r in recs} <= {SUCCESS, PRECONDITION_FAIL}
    for r in recs:
        bound = Fraction(4, 3)
        assert (r.colourer_outcome == PRECONDITION_FAIL) == (r.density_of_densest_small_subgraph >= bound)


def test_scan_preconditions():
    with pytest.raises(ExperimentError):
        obstruction_scan(8, [10], [1.0], 1)
    with pytest.raises(ExperimentError):
        colourability_scan(4, [10], [1.0], 1)
    with pytest.raises(ExperimentError):
        colourability_scan(5, [80], [1.0], 1)
    with pytest.raises(ExperimentError):
        k24_presence_scan([10], [1.0], 0)


def test_parallel_equals_sequential():
    a = obstruction_scan(5, [40], [1.0, 3.0], 6, seed=3)
    b = obstruction_scan(5, [40], [1.0, 3.0], 6, seed=3, workers=2)
    assert emit_csv(a) == emit_csv(b)


def test_emit_csv_shape():
    assert emit_csv([]) == ",".join(csv_columns()) + "\n"
    r = TrialRecord(5, 10, 1.0, Fraction(3, 4), 0.1, 7, 0, True, None, Fraction(4, 3), 12)
    text = emit_csv([r])
    lines = text.splitlines()
    assert len(lines) == 2
    row = next(csv.DictReader(io.StringIO(text)))
    assert row["exponent"] == "3/4"
    assert row["density_of_densest_small_subgraph"] == "4/3"
    assert row["obstruction_found"] == "true"
    assert "elapsed_ms" not in row
    assert emit_csv([r], timing=True).splitlines()[1].endswith(",12")


def test_csv_deterministic():
    a = emit_csv(k24_presence_scan([40], [1.0, 4.0], 10, seed=11))
    b = emit_csv(k24_presence_scan([40], [1.0, 4.0], 10, seed=11))
    assert a == b
    assert a != emit_csv(k24_presence_scan([40], [1.0, 4.0], 10, seed=12))


def test_summaries_and_monotonicity():
    cells = [CellSummary(100, 0.1, 100, 0), CellSummary(100, 1.0, 100, 50), CellSummary(100, 10.0, 100, 100)]
    assert monotone_within(cells)
    assert not monotone_within([CellSummary(100, 0.1, 100, 90), CellSummary(100, 1.0, 100, 10)])
    recs = [TrialRecord(5, 10, 1.0, Fraction(3, 4), 0.1, 0, t, t % 2 == 0, DEAD_END if t == 0 else None, None)
            for t in range(4)]
    (cell,) = summarise(recs)
    assert (cell.trials, cell.hits, cell.fraction) == (4, 2, 0.5)
    assert dead_end_count(recs) == 1
