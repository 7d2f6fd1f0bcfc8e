"""Acute and non-obtuse geodesic triangulations of the cuboctahedron surface."""

from .surface import PolyhedralSurface, SurfacePoint, build_cuboctahedron
from .tolerances import DEFAULT, Tolerances

__version__ = "0.1.0"

__all__ = ["DEFAULT", "PolyhedralSurface", "SurfacePoint", "Tolerances", "build_cuboctahedron"]
