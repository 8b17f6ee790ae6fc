"""Exact Wiener indices and Wiener complexity of zero-divisor graphs of
finite semisimple rings M_{n_1}(GF(q_1)) x ... x M_{n_l}(GF(q_l)).

Closed-form evaluators live in :mod:`zdwiener.formulas`; the independent
brute-force graph oracle lives in :mod:`zdwiener.zdgraph`.
"""

from .errors import (
    InternalConsistencyError,
    InvalidParameterError,
    ParseError,
    ResourceLimitError,
    ZDError,
)
from .matring import RingSpec, VertexClass, parse_ring_spec

__version__ = "0.1.0"

__all__ = [
    "RingSpec",
    "VertexClass",
    "parse_ring_spec",
    "ZDError",
    "InvalidParameterError",
    "ParseError",
    "ResourceLimitError",
    "InternalConsistencyError",
]
