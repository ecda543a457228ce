"""Isometric inflation of the unit cube.

A cube's surface can be bent, without stretching, into a non-convex
polyhedron of larger volume. This package builds that polyhedron exactly
over Q(sqrt 2), verifies the isometry triangle by triangle, and measures
the volume gain.
"""

from .construct import (
    ConstructionParams,
    apex,
    build_cube,
    build_dented_cube,
    build_limit_octahedron,
    build_limit_stellated,
    build_p,
    build_q,
    corner_points,
    make_params,
)
from .isometry import verify_dented_isometry, verify_isometry
from .measure import (
    breakeven,
    maximize,
    polynomial,
    vol_p_closed_form,
    vol_q_closed_form,
)
from .mesh import Mesh, Point3
from .meshops import hull_certify, is_convex, reflex_edges, signed_volume, validate
from .scalar import SQRT2, QSqrt2, parse_rational

__version__ = "0.1.0"
