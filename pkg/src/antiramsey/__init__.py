"""Proper edge colourings without rainbow cycles, for sparse graphs."""
from __future__ import annotations

__version__ = "0.1.0"
