"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module.  Set ``ANTIRAMSEY_PURE_PYTHON=1`` to force the
fallback.  ``BACKEND`` names the active one.
"""
from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("ANTIRAMSEY_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

fixed_length_cycles = _impl.fixed_length_cycles
subset_edge_counts = _impl.subset_edge_counts
dense_subgraph_search = _impl.dense_subgraph_search

__all__ = ["BACKEND", "fixed_length_cycles", "subset_edge_counts", "dense_subgraph_search"]
