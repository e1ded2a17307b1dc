"""Exact unit indices and 2-class numbers of Q(sqrt2, sqrt p1, sqrt p2)."""

import json

from ._triq import (
    InconsistencyError,
    PreconditionError,
    analyze_json,
    fundamental_unit,
    h2,
    norm_signature,
    unit_index,
    verified_index,
)

__all__ = [
    "InconsistencyError",
    "PreconditionError",
    "analyze",
    "analyze_json",
    "fundamental_unit",
    "h2",
    "norm_signature",
    "unit_index",
    "verified_index",
]


def analyze(p1, p2):
    """Full case report for a prime pair as a dict (schema 1)."""
    return json.loads(analyze_json(p1, p2))
