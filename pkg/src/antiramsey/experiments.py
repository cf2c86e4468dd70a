"""Seeded Monte Carlo scans of G(n, p) around the rainbow-cycle thresholds.

The asymptotic threshold statements cannot be checked on a desk.  These scans
give finite-size transition curves instead: for each ``(n, c)`` they sample
``G(n, p)`` with ``p = c * n**(-exponent)`` and record what was found.

Trial ``t`` at size ``n`` draws its graph from the stream
``SeedSequence(seed, spawn_key=(n, t))``.  The stream does not depend on
``c``, so along one stream the samples are nested as ``c`` grows (see
:func:`antiramsey.graph.sample_gnp`) and every monotone property is monotone
in ``c`` trial by trial.
"""
from __future__ import annotations

import csv
import io
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .colouring import DeadEnd, PreconditionError, colour_rainbow_free, verify_certificate
from .density import cycle_two_density, find_small_dense_subgraph, format_rational, max_density
from .graph import Graph, GraphError, sample_gnp

logger = logging.getLogger(__name__)

DEFAULT_N = (50, 100, 200)
DEFAULT_C = (0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0)
DEFAULT_TRIALS = 200
COLOUR_N_CAP = 60
OBSTRUCTION_MAX_VERTICES = 12
K24_EXPONENT = Fraction(3, 4)

SUCCESS = "success"
PRECONDITION_FAIL = "precondition_fail"
DEAD_END = "dead_end"


class ExperimentError(ValueError):
    pass


@dataclass(frozen=True)
class TrialRecord:
    """One sampled graph and what a scan found in it.

    ``p`` equals ``c * n ** -float(exponent)``.  ``elapsed_ms`` is wall-clock
    time and is left out of CSV output unless asked for, so that output is
    reproducible byte for byte.
    """

    ell: int
    n: int
    c: float
    exponent: Fraction
    p: float
    seed: int
    trial: int
    obstruction_found: bool
    colourer_outcome: str | None
    density_of_densest_small_subgraph: Fraction | None
    elapsed_ms: int = 0


def edge_probability(c: float, n: int, exponent: Fraction) -> float:
    p = float(c) * float(n) ** -float(exponent)
    if not 0.0 <= p <= 1.0:
        raise ExperimentError(f"c = {c} gives p = {p} outside [0, 1] at n = {n}")
    return p


def scan_exponent(ell: int) -> Fraction:
    """1/m_2(C_ell) = (ell-2)/(ell-1)."""
    return 1 / cycle_two_density(ell)


def trial_stream(seed: int, n: int, trial: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(int(seed), spawn_key=(int(n), int(trial)))


# -- detectors -----------------------------------------------------------------

def find_k24(g: Graph) -> tuple[tuple[int, int], tuple[int, ...]] | None:
    """A copy of K_{2,4}: a vertex pair and four common neighbours, or None.

    K_{2,4} is present exactly when two vertices share at least four neighbours.
    """
    n = g.vertex_count
    if n < 6 or g.num_edges < 8:
        return None
    a = np.zeros((n, n), dtype=np.int32)
    if g.edges:
        us, vs = np.array(sorted(g.edges)).T
        a[us, vs] = 1
        a[vs, us] = 1
    common = a @ a
    np.fill_diagonal(common, 0)
    hits = np.argwhere(np.triu(common) >= 4)
    if hits.size == 0:
        return None
    u, v = (int(x) for x in hits[0])
    shared = np.flatnonzero(a[u] & a[v])[:4]
    return (u, v), tuple(int(x) for x in shared)


# -- per-trial work --------------------------------------------------------------

def _k24_trial(args) -> TrialRecord:
    n, c, seed, trial = args
    t0 = time.perf_counter()
    p = edge_probability(c, n, K24_EXPONENT)
    g = sample_gnp(n, p, trial_stream(seed, n, trial))
    found = find_k24(g) is not None
    ms = int((time.perf_counter() - t0) * 1000)
    return TrialRecord(4, n, c, K24_EXPONENT, p, seed, trial, found, None, None, ms)


def _obstruction_trial(args) -> TrialRecord:
    ell, n, c, seed, trial = args
    t0 = time.perf_counter()
    exponent = scan_exponent(ell)
    p = edge_probability(c, n, exponent)
    g = sample_gnp(n, p, trial_stream(seed, n, trial))
    w = find_small_dense_subgraph(g, cycle_two_density(ell), OBSTRUCTION_MAX_VERTICES)
    ms = int((time.perf_counter() - t0) * 1000)
    return TrialRecord(
        ell, n, c, exponent, p, seed, trial, w is not None, None, None if w is None else w.value, ms
    )


def _colour_trial(args) -> TrialRecord:
    ell, n, c, seed, trial = args
    t0 = time.perf_counter()
    exponent = scan_exponent(ell)
    p = edge_probability(c, n, exponent)
    g = sample_gnp(n, p, trial_stream(seed, n, trial))
    m = max_density(g).value
    try:
        col = colour_rainbow_free(g, ell)
    except PreconditionError:
        outcome = PRECONDITION_FAIL
    except DeadEnd as exc:
        logger.error("dead end at n=%d c=%s trial=%d: %s", n, c, trial, exc)
        outcome = DEAD_END
    else:
        cert = verify_certificate(g, ell, col)
        outcome = SUCCESS if cert.ok else DEAD_END
    ms = int((time.perf_counter() - t0) * 1000)
    return TrialRecord(ell, n, c, exponent, p, seed, trial, outcome == PRECONDITION_FAIL, outcome, m, ms)


def _run(
    worker: Callable, jobs: list, workers: int, label: str
) -> list[TrialRecord]:
    """Run ``jobs`` in order; parallel runs return the same list as sequential ones."""
    logger.info("%s: %d trials", label, len(jobs))
    if workers <= 1 or len(jobs) < 2:
        return [worker(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def _check_grid(n_list: Sequence[int], c_list: Sequence[float], trials: int) -> None:
    if trials < 1:
        raise ExperimentError("trials must be at least 1")
    if not n_list or not c_list:
        raise ExperimentError("empty n or c grid")
    if any(n < 1 for n in n_list):
        raise ExperimentError("every n must be positive")
    if any(c < 0 for c in c_list):
        raise ExperimentError("every c must be nonnegative")


# -- scans -------------------------------------------------------------------------

def k24_presence_scan(
    n_list: Sequence[int] = DEFAULT_N,
    c_list: Sequence[float] = DEFAULT_C,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    workers: int = 1,
) -> list[TrialRecord]:
    """Presence of K_{2,4} in G(n, c * n^(-3/4))."""
    _check_grid(n_list, c_list, trials)
    for n in n_list:
        for c in c_list:
            edge_probability(c, n, K24_EXPONENT)
    jobs = [(n, float(c), seed, t) for n in n_list for c in c_list for t in range(trials)]
    return _run(_k24_trial, jobs, workers, "k24 scan")


def obstruction_scan(
    ell: int,
    n_list: Sequence[int] = DEFAULT_N,
    c_list: Sequence[float] = DEFAULT_C,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    workers: int = 1,
) -> list[TrialRecord]:
    """Presence of a set of at most 12 vertices with density at least m_2(C_ell)."""
    if ell not in (4, 5, 6, 7):
        raise ExperimentError(f"obstruction scan supports ell in 4..7, got {ell}")
    _check_grid(n_list, c_list, trials)
    exponent = scan_exponent(ell)
    for n in n_list:
        for c in c_list:
            edge_probability(c, n, exponent)
    jobs = [(ell, n, float(c), seed, t) for n in n_list for c in c_list for t in range(trials)]
    return _run(_obstruction_trial, jobs, workers, f"obstruction scan ell={ell}")


def colourability_scan(
    ell: int,
    n_list: Sequence[int] = (20, 40, 60),
    c_list: Sequence[float] = DEFAULT_C,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    workers: int = 1,
    n_cap: int = COLOUR_N_CAP,
) -> list[TrialRecord]:
    """Colour every sample below the density bound and verify the certificate."""
    if ell < 5:
        raise ExperimentError(f"colourability scan needs ell >= 5, got {ell}")
    _check_grid(n_list, c_list, trials)
    if max(n_list) > n_cap:
        raise ExperimentError(f"colourability scan is capped at n = {n_cap}, got {max(n_list)}")
    exponent = scan_exponent(ell)
    for n in n_list:
        for c in c_list:
            edge_probability(c, n, exponent)
    jobs = [(ell, n, float(c), seed, t) for n in n_list for c in c_list for t in range(trials)]
    return _run(_colour_trial, jobs, workers, f"colourability scan ell={ell}")


# -- summaries and output ----------------------------------------------------------

@dataclass(frozen=True)
class CellSummary:
    n: int
    c: float
    trials: int
    hits: int

    @property
    def fraction(self) -> float:
        return self.hits / self.trials

    @property
    def sigma(self) -> float:
        f = self.fraction
        return (f * (1 - f) / self.trials) ** 0.5


def summarise(records: Iterable[TrialRecord]) -> list[CellSummary]:
    """Per ``(n, c)`` count of records with ``obstruction_found``, in first-seen order."""
    cells: dict[tuple[int, float], list[int]] = {}
    for r in records:
        cell = cells.setdefault((r.n, r.c), [0, 0])
        cell[0] += 1
        cell[1] += int(r.obstruction_found)
    return [CellSummary(n, c, t, h) for (n, c), (t, h) in cells.items()]


def monotone_within(cells: Sequence[CellSummary], k: float = 3.0) -> bool:
    """No later cell falls below an earlier one by more than ``k`` combined sigmas."""
    for i, a in enumerate(cells):
        for b in cells[i + 1:]:
            slack = k * (a.sigma**2 + b.sigma**2) ** 0.5
            if b.fraction < a.fraction - slack:
                return False
    return True


def dead_end_count(records: Iterable[TrialRecord]) -> int:
    return sum(1 for r in records if r.colourer_outcome == DEAD_END)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def csv_columns(timing: bool = False) -> list[str]:
    names = [f.name for f in fields(TrialRecord)]
    return names if timing else names[:-1]


def emit_csv(records: Sequence[TrialRecord], timing: bool = False) -> str:
    """Header plus one row per record, in record order; rationals as ``p/q``."""
    cols = csv_columns(timing)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in records:
        if not isinstance(r, TrialRecord):
            raise GraphError("emit_csv expects TrialRecord objects")
        w.writerow([_cell(x) for x in astuple(r)[: len(cols)]])
    return buf.getvalue()
