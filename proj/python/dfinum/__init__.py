"""Exact arithmetic for D-finite functions and P-recursive sequences."""

from ._dfinum import (
    DfinumError,
    closure,
    evaluate,
    format_operator,
    format_polynomial,
    gallery,
    gallery_names,
    limit,
    normalize_operator,
    root_limit,
    root_sequence,
    run_cli,
    singularities,
)

__all__ = [
    "DfinumError",
    "closure",
    "evaluate",
    "format_operator",
    "format_polynomial",
    "gallery",
    "gallery_names",
    "limit",
    "normalize_operator",
    "root_limit",
    "root_sequence",
    "run_cli",
    "singularities",
]
