"""Executable topology workbench: finite spaces, frames and hyperspaces
with dual-algorithm oracles, plus symbolic backends for the classic
infinite counterexamples."""

from .spaces import (
    FinSpace,
    Hulls,
    InputError,
    OracleMismatch,
    Preorder,
    PrincipalUltrafilter,
    SpaceProperties,
    alexandroff_space,
    build_space,
    discrete,
    hulls,
    indiscrete,
    irreducible_closed_sets,
    is_compact,
    property_report,
    property_violations,
    sierpinski,
    specialization_preorder,
    ultrafilter_limits,
)

__all__ = [
    "FinSpace",
    "Hulls",
    "InputError",
    "OracleMismatch",
    "Preorder",
    "PrincipalUltrafilter",
    "SpaceProperties",
    "alexandroff_space",
    "build_space",
    "discrete",
    "hulls",
    "indiscrete",
    "irreducible_closed_sets",
    "is_compact",
    "property_report",
    "property_violations",
    "sierpinski",
    "specialization_preorder",
    "ultrafilter_limits",
]

__version__ = "0.1.0"
