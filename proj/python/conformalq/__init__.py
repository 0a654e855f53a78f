"""Conformal invariants of space-like surfaces in Lorentzian space forms."""

from ._core import (
    Chart,
    ChartError,
    ExprParseError,
    GeometryError,
    classify,
    fixtures,
    invariants,
    load_chart,
    parse_chart,
    verify,
)

__all__ = [
    "Chart",
    "ChartError",
    "ExprParseError",
    "GeometryError",
    "classify",
    "fixtures",
    "invariants",
    "load_chart",
    "parse_chart",
    "verify",
]
