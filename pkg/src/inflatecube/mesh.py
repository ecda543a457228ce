"""Exact points and polygonal meshes."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .scalar import QSqrt2, as_qsqrt2

__all__ = [
    "Point3",
    "Mesh",
    "FACE_ROLES",
    "sub",
    "add",
    "scale",
    "dot",
    "cross",
    "sqdist",
    "midpoint",
    "face_normal",
]

FACE_ROLES = frozenset(
    {
        "cube-face",
        "inner-square",
        "edge-rectangle",
        "hull-triangle",
        "pyramid-lateral",
        "dent-face",
    }
)


class Point3(NamedTuple):
    x: QSqrt2
    y: QSqrt2
    z: QSqrt2

    @classmethod
    def of(cls, x, y, z) -> Point3:
        return cls(as_qsqrt2(x), as_qsqrt2(y), as_qsqrt2(z))

    def to_floats(self) -> tuple[float, float, float]:
        return (self.x.to_float(), self.y.to_float(), self.z.to_float())


def add(p: Point3, q: Point3) -> Point3:
    return Point3(p.x + q.x, p.y + q.y, p.z + q.z)


def sub(p: Point3, q: Point3) -> Point3:
    return Point3(p.x - q.x, p.y - q.y, p.z - q.z)


def scale(k, p: Point3) -> Point3:
    return Point3(k * p.x, k * p.y, k * p.z)


def dot(p: Point3, q: Point3) -> QSqrt2:
    return p.x * q.x + p.y * q.y + p.z * q.z


def cross(p: Point3, q: Point3) -> Point3:
    return Point3(
        p.y * q.z - p.z * q.y,
        p.z * q.x - p.x * q.z,
        p.x * q.y - p.y * q.x,
    )


def sqdist(p: Point3, q: Point3) -> QSqrt2:
    v = sub(p, q)
    return dot(v, v)


def midpoint(p: Point3, q: Point3) -> Point3:
    return scale(Fraction(1, 2), add(p, q))


def face_normal(points: list[Point3]) -> Point3:
    """Unnormalized normal of a planar polygon, right-handed w.r.t. its order.

    Uses the first vertex and the first later pair spanning a non-zero area,
    so collinear leading vertices are tolerated.
    """
    p0 = points[0]
    n = len(points)
    for i in range(1, n - 1):
        v = cross(sub(points[i], p0), sub(points[i + 1], p0))
        if v.x or v.y or v.z:
            return v
    return Point3(QSqrt2(), QSqrt2(), QSqrt2())


@dataclass(frozen=True)
class Mesh:
    """Embedded polyhedron with exact vertices and outward-oriented faces.

    ``faces`` are vertex-index cycles, counterclockwise seen from outside.
    ``info`` carries builder metadata (e.g. the construction parameter).
    """

    vertices: tuple[Point3, ...]
    faces: tuple[tuple[int, ...], ...]
    face_roles: tuple[str, ...]
    name: str = ""
    eps: Fraction | None = None
    info: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.faces) != len(self.face_roles):
            raise ValueError("one role per face required")
        unknown = set(self.face_roles) - FACE_ROLES
        if unknown:
            raise ValueError(f"unknown face roles: {sorted(unknown)}")

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edges as sorted index pairs, in first-seen order."""
        seen = {}
        for f in self.faces:
            for i in range(len(f)):
                u, w = f[i], f[(i + 1) % len(f)]
                seen.setdefault((min(u, w), max(u, w)), None)
        return list(seen)

    @property
    def n_edges(self) -> int:
        return len(self.edges())

    def face_points(self, fi: int) -> list[Point3]:
        return [self.vertices[i] for i in self.faces[fi]]

    def vertex_index(self, p: Point3) -> int:
        return self.vertices.index(p)

    def translated(self, offset: Point3) -> Mesh:
        return Mesh(
            tuple(add(v, offset) for v in self.vertices),
            self.faces,
            self.face_roles,
            self.name,
            self.eps,
            dict(self.info),
        )

    def without_faces(self, drop: set[int]) -> Mesh:
        keep = [i for i in range(self.n_faces) if i not in drop]
        return Mesh(
            self.vertices,
            tuple(self.faces[i] for i in keep),
            tuple(self.face_roles[i] for i in keep),
            self.name,
            self.eps,
            dict(self.info),
        )
