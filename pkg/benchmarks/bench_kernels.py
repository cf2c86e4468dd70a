"""Compare the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each workload is run on both backends.  The outputs are checked for equality
before any timing is reported.
"""
from __future__ import annotations

import argparse
import timeit
from fractions import Fraction

import numpy as np

from antiramsey import _pykernels
from antiramsey.density import two_core
from antiramsey.graph import complete_graph, sample_gnp

try:
    from antiramsey import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None


def _masks(g):
    masks = [0] * g.vertex_count
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def workloads():
    rng = np.random.default_rng(5)
    k8 = complete_graph(8)
    sparse = sample_gnp(60, 0.08, rng)
    dense = sample_gnp(16, 0.5, rng)
    g = sample_gnp(200, 1.0 * 200 ** -0.75, np.random.default_rng(11))
    core = g.induced(two_core(g))
    allowed = np.zeros(g.vertex_count, dtype=bool)
    allowed[list(core.alive)] = True
    bound = Fraction(4, 3)
    return {
        "cycles K8 ell=6": ("fixed_length_cycles", (*k8.csr(), 8, 6)),
        "cycles G(60, 0.08) ell=7": ("fixed_length_cycles", (*sparse.csr(), 60, 7)),
        "subset counts n=16": ("subset_edge_counts", (16, _masks(dense))),
        "dense search G(200, n^-3/4) k<=10": (
            "dense_subgraph_search",
            (*core.csr(), g.vertex_count, bound.numerator, bound.denominator, 10, allowed),
        ),
    }


def _plain(x):
    """Nested lists of Python ints, so numpy and list outputs compare equal."""
    if x is None:
        return None
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_plain(y) for y in x]
    return int(x)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _ckernels is None:
        raise SystemExit("compiled kernels are not built; run pip install -e . --no-build-isolation")
    print(f"{'workload':40} {'cython ms':>10} {'python ms':>10} {'speed-up':>9}")
    for label, (name, call_args) in workloads().items():
        fc, fp = getattr(_ckernels, name), getattr(_pykernels, name)
        if _plain(fc(*call_args)) != _plain(fp(*call_args)):
            raise SystemExit(f"backends disagree on {label}")
        tc = min(timeit.repeat(lambda: fc(*call_args), number=1, repeat=args.repeat)) * 1e3
        tp = min(timeit.repeat(lambda: fp(*call_args), number=1, repeat=args.repeat)) * 1e3
        print(f"{label:40} {tc:10.2f} {tp:10.2f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
