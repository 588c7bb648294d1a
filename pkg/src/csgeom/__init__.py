"""Coherent-state overlaps, projective embeddings and distance identities."""

from .embed import (
    EmbeddedVector,
    bargmann_distance,
    cayley_distance,
    diastasis,
    differential_rank,
    iota,
    iota_lorentz,
    pseudo_distance,
    ray_geodesic_point,
    study_distance,
    wick_distance,
)
from .liecore import FlagSpec
from .models import Disc, Grassmann, ProjSpace, kernel, overlap, parse_model, potential
from .numerics import Signature

__version__ = "0.1.0"

__all__ = [
    "Disc",
    "EmbeddedVector",
    "FlagSpec",
    "Grassmann",
    "ProjSpace",
    "Signature",
    "bargmann_distance",
    "cayley_distance",
    "diastasis",
    "differential_rank",
    "iota",
    "iota_lorentz",
    "kernel",
    "overlap",
    "parse_model",
    "potential",
    "pseudo_distance",
    "ray_geodesic_point",
    "study_distance",
    "wick_distance",
]
