"""AMR infrastructure: PENMAN I/O, SMATCH and fine-grained scoring, corpus preparation, templates."""

from .graph import AmrError, AmrGraph, Diagnostic, InvalidGraphError, validate
from .penman import PenmanError, delinearize, linearize, parse_penman, serialize_penman
from .triples import Triple, TripleSet, decompose

__version__ = "0.1.0"

__all__ = [
    "AmrError",
    "AmrGraph",
    "Diagnostic",
    "InvalidGraphError",
    "PenmanError",
    "Triple",
    "TripleSet",
    "decompose",
    "delinearize",
    "linearize",
    "parse_penman",
    "serialize_penman",
    "validate",
]
