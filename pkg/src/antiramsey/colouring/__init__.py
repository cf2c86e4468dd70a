"""Constructing and checking proper edge colourings without rainbow cycles."""
from __future__ import annotations

from .c4 import colour_c4_rainbow_free
from .extend import extend_to_proper
from .lemma import ColouringReport, colour_rainbow_free, colour_rainbow_free_report
from .model import ColouringError, DeadEnd, EdgeColouring, ImproperColouring, PreconditionError
from .oracle import find_rainbow_free_colouring, forces_rainbow_bruteforce
from .verify import Certificate, parse_certificate, verify_certificate

__all__ = [
    "Certificate",
    "ColouringError",
    "ColouringReport",
    "DeadEnd",
    "EdgeColouring",
    "ImproperColouring",
    "PreconditionError",
    "colour_c4_rainbow_free",
    "colour_rainbow_free",
    "colour_rainbow_free_report",
    "extend_to_proper",
    "find_rainbow_free_colouring",
    "forces_rainbow_bruteforce",
    "parse_certificate",
    "verify_certificate",
]
