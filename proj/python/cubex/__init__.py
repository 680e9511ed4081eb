"""CAT(0) cube complex combinatorics with exact arithmetic."""

from ._cubex import (
    Action,
    Complex,
    CubexError,
    __version__,
    artin_fc,
    artin_report,
    continuity,
    eta,
    family,
    ideal_points,
    load_complex,
    median_closure,
    parse_complex,
    phi,
    verify_weights,
    weights,
)

__all__ = [
    "Action",
    "Complex",
    "CubexError",
    "__version__",
    "artin_fc",
    "artin_report",
    "continuity",
    "eta",
    "family",
    "ideal_points",
    "load_complex",
    "median_closure",
    "parse_complex",
    "phi",
    "verify_weights",
    "weights",
]
