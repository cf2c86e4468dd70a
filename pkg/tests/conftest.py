from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from antiramsey import _pykernels, kernels
from antiramsey.graph import graph_from_edges

try:
    from antiramsey import _ckernels
except ImportError:  # pragma: no cover - depends on the build
    _ckernels = None

# the backend fixture only swaps module attributes, so sharing it across examples is fine
settings.register_profile("default", suppress_health_check=[HealthCheck.function_scoped_fixture], deadline=None)
settings.load_profile("default")

KERNEL_NAMES = ("fixed_length_cycles", "subset_edge_counts", "dense_subgraph_search")


@pytest.fixture(params=["cython", "python"])
def backend(request, monkeypatch):
    """Run the test once per kernel implementation."""
    impl = _ckernels if request.param == "cython" else _pykernels
    if impl is None:
        pytest.skip("compiled kernels not built")
    for name in KERNEL_NAMES:
        monkeypatch.setattr(kernels, name, getattr(impl, name))
    return request.param


@st.composite
def small_graphs(draw, min_n: int = 1, max_n: int = 9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return graph_from_edges(n, chosen)


# -- acceptance summary -----------------------------------------------------------

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} ({detail})")
