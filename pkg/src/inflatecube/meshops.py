"""Exact predicates and measures on closed polygonal meshes.

Everything that decides a yes/no question (planarity, convexity, reflex
edges, hull membership) runs on exact Q(sqrt 2) signs. Dihedral angles are
floats and only ever reported, never used to decide.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from .mesh import Mesh, Point3, cross, dot, face_normal, sub
from .scalar import QSqrt2

__all__ = [
    "ValidationReport",
    "DihedralInfo",
    "validate",
    "triangulate",
    "signed_volume",
    "is_convex",
    "hull_certify",
    "reflex_edges",
    "dihedral_angle",
    "coplanar_face_groups",
    "face_plane",
]


@dataclass
class ValidationReport:
    closed: bool
    oriented: bool
    euler_ok: bool
    planar_faces: bool
    messages: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.closed and self.oriented and self.euler_ok and self.planar_faces

    def __bool__(self) -> bool:
        return self.ok


class DihedralInfo(NamedTuple):
    edge: tuple[int, int]
    angle: float
    reflex: bool


def face_plane(m: Mesh, fi: int) -> tuple[Point3, QSqrt2]:
    """Outward normal ``n`` and offset ``c`` with ``n . x = c`` on face ``fi``."""
    pts = m.face_points(fi)
    n = face_normal(pts)
    return n, dot(n, pts[0])


def _directed_edges(m: Mesh) -> dict[tuple[int, int], list[int]]:
    out: dict[tuple[int, int], list[int]] = {}
    for fi, f in enumerate(m.faces):
        for i in range(len(f)):
            out.setdefault((f[i], f[(i + 1) % len(f)]), []).append(fi)
    return out


def validate(m: Mesh) -> ValidationReport:
    """Check edge pairing, orientation, exact face planarity and Euler number."""
    msgs: list[str] = []
    planar = True
    for fi, f in enumerate(m.faces):
        if len(f) < 3 or len(set(f)) != len(f):
            planar = False
            msgs.append(f"face {fi}: needs >= 3 distinct vertices")
            continue
        n, c = face_plane(m, fi)
        if not (n.x or n.y or n.z):
            planar = False
            msgs.append(f"face {fi}: degenerate (zero area)")
            continue
        off = [i for i in f if dot(n, m.vertices[i]) != c]
        if off:
            planar = False
            msgs.append(f"face {fi}: vertices {off} off the face plane")

    directed = _directed_edges(m)
    undirected = Counter((min(u, w), max(u, w)) for (u, w) in directed for _ in directed[(u, w)])
    closed = all(k == 2 for k in undirected.values())
    for e, k in undirected.items():
        if k != 2:
            msgs.append(f"edge {e}: used by {k} face(s)")
    oriented = all(len(fs) == 1 for fs in directed.values()) and all(
        (w, u) in directed for (u, w) in directed
    )
    if not oriented:
        bad = [e for e, fs in directed.items() if len(fs) != 1 or (e[1], e[0]) not in directed]
        msgs.append(f"inconsistent orientation at directed edges {bad[:4]}")

    used = {i for f in m.faces for i in f}
    chi = len(used) - len(undirected) + len(m.faces)
    euler_ok = chi == 2
    if not euler_ok:
        msgs.append(f"Euler characteristic {chi} != 2")
    if len(used) != m.n_vertices:
        msgs.append(f"{m.n_vertices - len(used)} unreferenced vertices")
    return ValidationReport(closed, oriented, euler_ok, planar, msgs)


def triangulate(m: Mesh) -> Mesh:
    """Fan-triangulate every face from its first vertex."""
    faces, roles = [], []
    for f, role in zip(m.faces, m.face_roles):
        for i in range(1, len(f) - 1):
            faces.append((f[0], f[i], f[i + 1]))
            roles.append(role)
    return Mesh(m.vertices, tuple(faces), tuple(roles), m.name, m.eps, dict(m.info))


def _det(p: Point3, q: Point3, r: Point3) -> QSqrt2:
    return dot(p, cross(q, r))


def signed_volume(m: Mesh) -> QSqrt2:
    """Exact enclosed volume, ``sum det(v0, v1, v2) / 6`` over fan triangles."""
    rep = validate(m)
    if not (rep.closed and rep.oriented):
        raise ValueError("volume undefined: mesh is not a closed oriented surface")
    total = QSqrt2()
    vs = m.vertices
    for f in m.faces:
        p0 = vs[f[0]]
        for i in range(1, len(f) - 1):
            total = total + _det(p0, vs[f[i]], vs[f[i + 1]])
    return total / 6


def is_convex(m: Mesh) -> bool:
    """Every vertex lies weakly inside every face plane."""
    for fi in range(m.n_faces):
        n, c = face_plane(m, fi)
        for v in m.vertices:
            if (dot(n, v) - c).sign() > 0:
                return False
    return True


def _on_boundary_of_convex(m: Mesh, p: Point3) -> bool:
    touching = False
    for fi in range(m.n_faces):
        n, c = face_plane(m, fi)
        s = (dot(n, p) - c).sign()
        if s > 0:
            return False
        touching = touching or s == 0
    return touching


def hull_certify(m: Mesh, pts: Iterable[Point3]) -> bool:
    """Certify that ``m`` is the convex hull of ``pts``.

    The mesh must be convex, its vertex set must be drawn from ``pts`` and
    every point must lie on its boundary.
    """
    pts = list(pts)
    if not is_convex(m):
        return False
    pset = set(pts)
    if any(v not in pset for v in m.vertices):
        return False
    return all(_on_boundary_of_convex(m, p) for p in pts)


def _edge_faces(m: Mesh, edge: tuple[int, int]) -> tuple[int, int]:
    u, w = edge
    directed = _directed_edges(m)
    if (u, w) not in directed or (w, u) not in directed:
        raise KeyError(f"edge {edge} is not an interior edge of the mesh")
    return directed[(u, w)][0], directed[(w, u)][0]


def _off_edge_vertex(m: Mesh, fi: int, u: int, w: int) -> Point3:
    pu, pw = m.vertices[u], m.vertices[w]
    d = sub(pw, pu)
    for i in m.faces[fi]:
        if i in (u, w):
            continue
        c = cross(d, sub(m.vertices[i], pu))
        if c.x or c.y or c.z:
            return m.vertices[i]
    raise ValueError(f"face {fi} is degenerate")


def _edge_sign(m: Mesh, u: int, w: int, f1: int, f2: int) -> int:
    # > 0: the far side of f2 pokes outside f1's plane, i.e. a reflex edge
    n1, c1 = face_plane(m, f1)
    y = _off_edge_vertex(m, f2, u, w)
    return (dot(n1, y) - c1).sign()


def _float_angle(m: Mesh, f1: int, f2: int, reflex_sign: int) -> float:
    n1 = np.array(face_plane(m, f1)[0].to_floats())
    n2 = np.array(face_plane(m, f2)[0].to_floats())
    cosang = float(np.dot(n1, n2) / (np.linalg.norm(n1) * np.linalg.norm(n2)))
    turn = math.acos(max(-1.0, min(1.0, cosang)))
    if reflex_sign > 0:
        return math.pi + turn
    if reflex_sign < 0:
        return math.pi - turn
    return math.pi


def dihedral_angle(m: Mesh, edge: tuple[int, int]) -> float:
    """Interior dihedral angle (radians, in (0, 2*pi)) along ``edge``."""
    u, w = edge
    f1, f2 = _edge_faces(m, (u, w))
    return _float_angle(m, f1, f2, _edge_sign(m, u, w, f1, f2))


def reflex_edges(m: Mesh) -> list[DihedralInfo]:
    out = []
    directed = _directed_edges(m)
    for u, w in m.edges():
        f1, f2 = directed[(u, w)][0], directed[(w, u)][0]
        s = _edge_sign(m, u, w, f1, f2)
        if s > 0:
            out.append(DihedralInfo((u, w), _float_angle(m, f1, f2, s), True))
    return out


def coplanar_face_groups(m: Mesh) -> list[list[int]]:
    """Maximal groups of edge-connected faces lying in one common plane."""
    parent = list(range(m.n_faces))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    directed = _directed_edges(m)
    for u, w in m.edges():
        f1, f2 = directed[(u, w)][0], directed[(w, u)][0]
        if _edge_sign(m, u, w, f1, f2) == 0:
            parent[find(f1)] = find(f2)
    groups: dict[int, list[int]] = {}
    for fi in range(m.n_faces):
        groups.setdefault(find(fi), []).append(fi)
    return sorted(groups.values())
