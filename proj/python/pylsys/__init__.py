"""Parametric L-systems for subdivision curves."""

from ._lsys import (
    CATALOG_DIR,
    AffineError,
    ArityError,
    DomainError,
    LsysError,
    ParseError,
    affine_combine,
    bezier_oracle,
    bspline_oracle,
    catalog,
    check,
    derive,
    format_definition,
    lift_with_weight,
    project_to_plane,
    run_catalog,
    svg_polyline,
    sweep,
    verify,
)

__all__ = [
    "CATALOG_DIR",
    "AffineError",
    "ArityError",
    "DomainError",
    "LsysError",
    "ParseError",
    "affine_combine",
    "bezier_oracle",
    "bspline_oracle",
    "catalog",
    "check",
    "derive",
    "format_definition",
    "lift_with_weight",
    "project_to_plane",
    "run_catalog",
    "svg_polyline",
    "sweep",
    "verify",
]
