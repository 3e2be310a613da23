"""Finite-topology laboratory for e*-theta regularity and normality."""

from .core import (
    Space,
    Subset,
    TopologyError,
    Verdict,
    Witness,
    closure,
    delta_closure,
    delta_interior,
    interior,
    regular_closed_family,
    regular_open_family,
    validate_space,
)

__version__ = "0.1.0"
