"""Exact meshes for the unit cube, the polytope Q and the inflated solid P.

The cube is ``[-1/2, 1/2]^3``. For a rational ``eps`` in ``(0, 1/2)`` the
inner square of every face (what is left after cutting an ``eps x eps``
square from each corner) is pushed outward by ``t = (sqrt2 - 1) * eps``,
which makes corners on adjacent faces exactly ``2 * eps`` apart. Q is the
hull of those 24 corners; P caps each of Q's eight triangles with a
pyramid of right isosceles lateral faces.

Faces are generated per symmetry orbit rather than by a hull algorithm;
:func:`inflatecube.meshops.hull_certify` confirms the result afterwards.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .mesh import Mesh, Point3, dot, face_normal, sub
from .scalar import SQRT2, QSqrt2, as_qsqrt2, parse_rational

__all__ = [
    "ConstructionParams",
    "make_params",
    "build_cube",
    "corner_points",
    "build_q",
    "apex",
    "build_p",
    "build_dented_cube",
    "build_limit_octahedron",
    "build_limit_stellated",
    "SIGNS",
    "OCTANTS",
]

HALF = Fraction(1, 2)
SIGNS = (1, -1)
OCTANTS = tuple(itertools.product(SIGNS, repeat=3))


def _to_fraction(eps) -> Fraction:
    if isinstance(eps, str):
        return parse_rational(eps)
    if isinstance(eps, float):
        raise TypeError("epsilon must be exact (int, Fraction or 'p/q' string)")
    if isinstance(eps, QSqrt2):
        if not eps.is_rational():
            raise TypeError("epsilon must be rational")
        return eps.a
    return Fraction(eps)


@dataclass(frozen=True)
class ConstructionParams:
    """``eps`` with its derived face push ``t`` and slab depth ``d``."""

    eps: Fraction
    t: QSqrt2
    d: QSqrt2

    @property
    def h(self) -> Fraction:
        """Half side of the inner square, ``1/2 - eps``."""
        return HALF - self.eps

    @property
    def out(self) -> QSqrt2:
        """Distance of a pushed face plane from the centre, ``1/2 + t``."""
        return self.t + HALF


def _params(eps: Fraction) -> ConstructionParams:
    return ConstructionParams(eps, (SQRT2 - 1) * eps, SQRT2 * eps)


def make_params(eps) -> ConstructionParams:
    eps = _to_fraction(eps)
    if not (0 < eps < HALF):
        raise ValueError("epsilon out of (0,1/2)")
    return _params(eps)


def _axis_point(axis: int, value, others: tuple) -> Point3:
    """Point with ``value`` on ``axis`` and ``others`` on the remaining axes."""
    coords = list(others)
    coords.insert(axis, value)
    return Point3(*(as_qsqrt2(c) for c in coords))


def _orient_outward(pts: list[Point3], idx: list[int]) -> tuple[int, ...]:
    # valid for faces of a solid that is star-shaped about the origin
    n = face_normal([pts[i] for i in idx])
    if dot(n, pts[idx[0]]).sign() < 0:
        idx = idx[::-1]
    return tuple(idx)


def build_cube() -> Mesh:
    verts = [Point3(*(QSqrt2(Fraction(s, 2)) for s in o)) for o in OCTANTS]
    index = {o: i for i, o in enumerate(OCTANTS)}
    faces = []
    for axis in range(3):
        for s in SIGNS:
            ring = []
            for p, q in ((1, 1), (-1, 1), (-1, -1), (1, -1)):
                o = [p, q]
                o.insert(axis, s)
                ring.append(index[tuple(o)])
            faces.append(_orient_outward(verts, ring))
    return Mesh(tuple(verts), tuple(faces), ("cube-face",) * 6, name="cube")


def _corner(p: ConstructionParams, axis: int, s: int, a: int, b: int) -> Point3:
    """Corner on face (axis, s) with in-face signs ``a``, ``b``."""
    return _axis_point(axis, s * p.out, (a * p.h, b * p.h))


def corner_points(p: ConstructionParams) -> list[Point3]:
    """The 24 pushed inner-square corners, grouped by face (axis, sign)."""
    return [
        _corner(p, axis, s, a, b)
        for axis in range(3)
        for s in SIGNS
        for a, b in ((1, 1), (-1, 1), (-1, -1), (1, -1))
    ]


def _octant_corners(p: ConstructionParams, octant: tuple[int, int, int]) -> list[Point3]:
    """The three corners nearest the cube vertex ``octant/2`` (hull triangle)."""
    out = []
    for axis in range(3):
        others = tuple(octant[j] for j in range(3) if j != axis)
        out.append(_corner(p, axis, octant[axis], *others))
    return out


def _edge_rectangle(p: ConstructionParams, axis: int, s1: int, s2: int) -> list[Point3]:
    """Rectangle along the cube edge parallel to ``axis`` at signs (s1, s2)."""
    i, j = (k for k in range(3) if k != axis)
    pts = []
    for end in (1, -1):
        sig = [0, 0, 0]
        sig[axis], sig[i], sig[j] = end, s1, s2
        tri = _octant_corners(p, tuple(sig))
        pts.extend([tri[i], tri[j]])
    # (end+, face i), (end+, face j), (end-, face i), (end-, face j) -> cycle
    return [pts[0], pts[1], pts[3], pts[2]]


def _q_faces(p: ConstructionParams, verts: list[Point3]):
    index = {v: k for k, v in enumerate(verts)}
    faces, roles = [], []
    for axis in range(3):
        for s in SIGNS:
            ring = [index[_corner(p, axis, s, a, b)]
                    for a, b in ((1, 1), (-1, 1), (-1, -1), (1, -1))]
            faces.append(_orient_outward(verts, ring))
            roles.append("inner-square")
    for axis in range(3):
        for s1 in SIGNS:
            for s2 in SIGNS:
                ring = [index[q] for q in _edge_rectangle(p, axis, s1, s2)]
                faces.append(_orient_outward(verts, ring))
                roles.append("edge-rectangle")
    for o in OCTANTS:
        ring = [index[q] for q in _octant_corners(p, o)]
        faces.append(_orient_outward(verts, ring))
        roles.append("hull-triangle")
    return faces, roles


def build_q(p: ConstructionParams) -> Mesh:
    verts = corner_points(p)
    faces, roles = _q_faces(p, verts)
    return Mesh(tuple(verts), tuple(faces), tuple(roles), name="Q", eps=p.eps)


def _apex_coord(eps: Fraction) -> QSqrt2:
    # centroid of the hull triangle pushed out by eps*sqrt(2/3) along the
    # diagonal; the irrational height cancels to this closed form
    return HALF + (2 * SQRT2 - 3) * eps / 3


def apex(p: ConstructionParams, octant: tuple[int, int, int]) -> Point3:
    c = _apex_coord(p.eps)
    return Point3(*(s * c for s in octant))


def _cap_triangles(verts, faces, roles, apex_of):
    """Replace every hull triangle by three lateral faces to its apex."""
    new_faces, new_roles = [], []
    for f, role in zip(faces, roles):
        if role != "hull-triangle":
            new_faces.append(f)
            new_roles.append(role)
            continue
        top = apex_of(f)
        verts.append(top)
        k = len(verts) - 1
        for i in range(3):
            new_faces.append((f[i], f[(i + 1) % 3], k))
            new_roles.append("pyramid-lateral")
    return new_faces, new_roles


def _octant_of(verts, f) -> tuple[int, int, int]:
    s = [QSqrt2(), QSqrt2(), QSqrt2()]
    for i in f:
        s = [s[k] + verts[i][k] for k in range(3)]
    return tuple(c.sign() for c in s)


def build_p(p: ConstructionParams) -> Mesh:
    verts = corner_points(p)
    faces, roles = _q_faces(p, verts)
    faces, roles = _cap_triangles(verts, faces, roles,
                                  lambda f: apex(p, _octant_of(verts, f)))
    return Mesh(tuple(verts), tuple(faces), tuple(roles), name="P", eps=p.eps)


def build_dented_cube(delta) -> Mesh:
    """Unit cube with its (+,+,+) corner pushed inward.

    The corner tetrahedron cut off by the plane through the three edge
    points at distance ``delta`` from the vertex is reflected through that
    plane, so the vertex lands at ``(1/2 - 2*delta/3) * (1, 1, 1)``.
    """
    delta = _to_fraction(delta)
    if not (0 < delta <= 1):
        raise ValueError("delta out of (0,1]")
    return _dented(delta, pushed=True)


def _dented(delta: Fraction, pushed: bool) -> Mesh:
    cube = build_cube()
    v_idx = cube.vertex_index(Point3(*(QSqrt2(HALF) for _ in range(3))))
    v = cube.vertices[v_idx]

    def edge_point(other: Point3) -> Point3:
        # point at distance delta from v towards the adjacent vertex `other`
        return Point3(*(vc - delta * (vc - oc) for vc, oc in zip(v, other)))

    top = Point3(*(QSqrt2(HALF - 2 * delta / 3) for _ in range(3))) if pushed else v
    verts: list[Point3] = []
    index: dict[Point3, int] = {}

    def vid(q: Point3) -> int:
        if q not in index:
            index[q] = len(verts)
            verts.append(q)
        return index[q]

    faces, roles = [], []
    dents = []
    for f in cube.faces:
        ring: list[Point3] = []
        if v_idx in f:
            k = f.index(v_idx)
            before = cube.vertices[f[k - 1]]
            after = cube.vertices[f[(k + 1) % len(f)]]
            a_prev, a_next = edge_point(before), edge_point(after)
            for i in f:
                if i == v_idx:
                    ring.extend([a_prev, a_next])
                else:
                    ring.append(cube.vertices[i])
            dents.append((a_next, a_prev))
        else:
            ring = [cube.vertices[i] for i in f]
        ids = []
        for q in ring:
            j = vid(q)
            if not ids or ids[-1] != j:
                ids.append(j)
        while len(ids) > 1 and ids[0] == ids[-1]:
            ids.pop()
        faces.append(tuple(ids))
        roles.append("cube-face")
    for a_next, a_prev in dents:
        faces.append((vid(a_next), vid(a_prev), vid(top)))
        roles.append("dent-face" if pushed else "cube-face")
    name = "dented-cube" if pushed else "dented-cube-template"
    return Mesh(tuple(verts), tuple(faces), tuple(roles), name=name,
                info={"delta": delta})


def _limit_vertices() -> list[Point3]:
    r = SQRT2 / 2
    z = QSqrt2()
    out = []
    for axis in range(3):
        for s in SIGNS:
            c = [z, z, z]
            c[axis] = s * r
            out.append(Point3(*c))
    return out


def _octahedron() -> tuple[list[Point3], list[tuple[int, ...]]]:
    verts = _limit_vertices()
    faces = []
    for o in OCTANTS:
        ring = [2 * axis + (0 if o[axis] > 0 else 1) for axis in range(3)]
        faces.append(_orient_outward(verts, ring))
    return verts, faces


def build_limit_octahedron() -> Mesh:
    """The eps -> 1/2 limit of Q: regular octahedron with unit edges."""
    verts, faces = _octahedron()
    return Mesh(tuple(verts), tuple(faces), ("hull-triangle",) * 8,
                name="octahedron", eps=HALF)


def build_limit_stellated() -> Mesh:
    """The eps -> 1/2 limit of P: the octahedron with a pyramid on every face.

    ``info["coplanar_groups"]`` records how many maximal coplanar face
    groups the 24 lateral triangles form.
    """
    from .meshops import coplanar_face_groups

    verts, faces = _octahedron()
    p = _params(HALF)
    faces, roles = _cap_triangles(verts, faces, ["hull-triangle"] * 8,
                                  lambda f: apex(p, _octant_of(verts, f)))
    m = Mesh(tuple(verts), tuple(faces), tuple(roles), name="stellated", eps=HALF)
    m.info["coplanar_groups"] = len(coplanar_face_groups(m))
    return m
