"""Exact enumeration of the extremal rays of the submodular cone."""

from ._subcone import (
    canonicalize,
    capture_recapture,
    coordinates,
    f_j,
    f_j_weight,
    matrix,
    neighbors,
    orbit_size,
    order,
    run_dd,
    triplets,
    verify_extremal,
    weight,
)

__all__ = [
    "canonicalize",
    "capture_recapture",
    "coordinates",
    "f_j",
    "f_j_weight",
    "matrix",
    "neighbors",
    "orbit_size",
    "order",
    "run_dd",
    "triplets",
    "verify_extremal",
    "weight",
]
