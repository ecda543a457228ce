"""Intrinsic isometry between the cube surface and the surface of P.

Two polyhedral surfaces are isometric when they admit triangulations into
pairwise congruent triangles glued the same way. The cube surface is cut
into 108 triangles: per face the inner square (2), four edge strips of
width eps (2 each) and four eps x eps corner squares, each split along the
diagonal through the cube vertex (2 each). The same abstract complex is
then placed on the cube and on P, and every triangle's squared side
lengths are compared exactly.

On P the cube vertices go to the pyramid apexes, the inner corners to the
corners of Q and the edge points (distance eps from a cube vertex along an
edge) to the midpoints of the pyramid base edges. A corner square folds
along its diagonal onto halves of two lateral faces; an edge strip lies
flat on half of an edge rectangle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .construct import (
    HALF,
    OCTANTS,
    SIGNS,
    _dented,
    _to_fraction,
    apex,
    build_dented_cube,
    build_p,
    make_params,
)
from .mesh import Mesh, Point3, cross, dot, face_normal, midpoint, sqdist, sub
from .meshops import face_plane, triangulate, validate
from .scalar import QSqrt2

__all__ = [
    "TemplateTriangle",
    "SurfaceComplex",
    "RealizedComplex",
    "CongruenceVerdict",
    "IsometryReport",
    "build_template",
    "realize_on_cube",
    "realize_on_p",
    "verify_congruence",
    "vertex_total_angles",
    "total_area",
    "covers_mesh",
    "verify_isometry",
    "dented_complexes",
    "verify_dented_isometry",
]

ANGLE_TOL = 1e-9
AXES = "xyz"


@dataclass(frozen=True)
class TemplateTriangle:
    """Abstract triangle; side ``k`` joins ``corners[k]`` and ``corners[k+1]``."""

    corners: tuple[str, str, str]
    sq_lengths: tuple[QSqrt2, QSqrt2, QSqrt2]
    region: str
    face: str = ""


@dataclass(frozen=True)
class SurfaceComplex:
    eps: Fraction | None
    triangles: tuple[TemplateTriangle, ...]
    gluing: dict[tuple[int, int], tuple[int, int]]
    cone_vertices: frozenset[str]
    corners: tuple[str, ...]

    @property
    def n_glued_pairs(self) -> int:
        return len(self.gluing) // 2

    def structure_problems(self) -> list[str]:
        """Violations of closedness, glued-length equality, triangle inequality."""
        probs = []
        for ti, tri in enumerate(self.triangles):
            a, b, c = tri.sq_lengths
            # 16 * area**2 in terms of squared sides
            if (2 * (a * b + b * c + c * a) - a * a - b * b - c * c).sign() <= 0:
                probs.append(f"triangle {ti} {tri.corners}: degenerate side lengths")
            for k in range(3):
                mate = self.gluing.get((ti, k))
                if mate is None:
                    probs.append(f"triangle {ti} side {k}: unglued")
                    continue
                if self.gluing.get(mate) != (ti, k):
                    probs.append(f"triangle {ti} side {k}: gluing not an involution")
                if self.triangles[mate[0]].sq_lengths[mate[1]] != tri.sq_lengths[k]:
                    probs.append(f"triangle {ti} side {k}: glued to a side of other length")
        return probs


@dataclass(frozen=True)
class RealizedComplex:
    base: SurfaceComplex
    positions: dict[str, Point3]
    name: str = ""

    def sq_lengths(self, ti: int) -> tuple[QSqrt2, QSqrt2, QSqrt2]:
        c = self.base.triangles[ti].corners
        p = [self.positions[k] for k in c]
        return (sqdist(p[0], p[1]), sqdist(p[1], p[2]), sqdist(p[2], p[0]))

    def violations(self) -> list[int]:
        return [
            ti for ti, tri in enumerate(self.base.triangles)
            if self.sq_lengths(ti) != tri.sq_lengths
        ]

    def with_position(self, corner: str, p: Point3) -> RealizedComplex:
        pos = dict(self.positions)
        pos[corner] = p
        return RealizedComplex(self.base, pos, self.name)


@dataclass
class CongruenceVerdict:
    passed: bool
    n_triangles: int
    n_congruent: int
    first_violation: str | None = None

    def __bool__(self) -> bool:
        return self.passed

    def __str__(self) -> str:
        head = "PASS" if self.passed else "FAIL"
        msg = f"{head}: {self.n_congruent}/{self.n_triangles} triangles congruent"
        if self.first_violation:
            msg += f"; first violation: {self.first_violation}"
        return msg


@dataclass
class IsometryReport:
    subject: str
    checks: list[tuple[str, bool, str]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, bool(ok), detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def lines(self) -> list[str]:
        out = [f"isometry check: {self.subject}"]
        for name, ok, detail in self.checks:
            out.append(f"  {'PASS' if ok else 'FAIL'}  {name}" + (f": {detail}" if detail else ""))
        out.extend(f"  note: {n}" for n in self.notes)
        out.append(f"  verdict: {'PASS' if self.passed else 'FAIL'}")
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())


# -- corner naming -------------------------------------------------------

def _sg(s: int) -> str:
    return "+" if s > 0 else "-"


def _vertex_id(octant) -> str:
    return "V" + "".join(_sg(s) for s in octant)


def _inner_id(axis: int, s: int, a: int, b: int) -> str:
    return f"I{_sg(s)}{AXES[axis]}{_sg(a)}{_sg(b)}"


def _edge_id(octant, axis: int) -> str:
    return f"E{''.join(_sg(s) for s in octant)}{AXES[axis]}"


def _face_id(axis: int, s: int) -> str:
    return f"{_sg(s)}{AXES[axis]}"


def _parse_octant(text: str) -> tuple[int, int, int]:
    return tuple(1 if c == "+" else -1 for c in text)


# -- template ------------------------------------------------------------

def _with_axis(axis: int, value, others):
    coords = list(others)
    coords.insert(axis, value)
    return coords


def _cube_position(corner: str, eps: Fraction) -> Point3:
    h = HALF - eps
    kind = corner[0]
    if kind == "V":
        c = [Fraction(s, 2) for s in _parse_octant(corner[1:4])]
    elif kind == "I":
        s = 1 if corner[1] == "+" else -1
        axis = AXES.index(corner[2])
        a, b = _parse_octant(corner[3:5])
        c = _with_axis(axis, s * HALF, (a * h, b * h))
    else:
        octant = _parse_octant(corner[1:4])
        axis = AXES.index(corner[4])
        c = [Fraction(s, 2) for s in octant]
        c[axis] = octant[axis] * h
    return Point3(*(QSqrt2(x) for x in c))


def _face_triangles(axis: int, s: int) -> list[tuple[tuple[str, str, str], str]]:
    i, j = (k for k in range(3) if k != axis)
    tris = []
    I = lambda a, b: _inner_id(axis, s, a, b)  # noqa: E731

    def octant(a, b):
        return tuple(_with_axis(axis, s, (a, b)))

    tris.append(((I(-1, -1), I(1, -1), I(1, 1)), "inner-square"))
    tris.append(((I(-1, -1), I(1, 1), I(-1, 1)), "inner-square"))
    # strips along the face sides u = +-1/2 (parallel to axis j)
    for a in SIGNS:
        e_lo, e_hi = _edge_id(octant(a, -1), j), _edge_id(octant(a, 1), j)
        tris.append(((I(a, -1), e_lo, e_hi), "edge-strip"))
        tris.append(((I(a, -1), e_hi, I(a, 1)), "edge-strip"))
    # strips along the face sides w = +-1/2 (parallel to axis i)
    for b in SIGNS:
        e_lo, e_hi = _edge_id(octant(-1, b), i), _edge_id(octant(1, b), i)
        tris.append(((I(-1, b), e_lo, e_hi), "edge-strip"))
        tris.append(((I(-1, b), e_hi, I(1, b)), "edge-strip"))
    # corner squares, cut along the diagonal through the cube vertex
    for a in SIGNS:
        for b in SIGNS:
            o = octant(a, b)
            v = _vertex_id(o)
            tris.append(((v, _edge_id(o, i), I(a, b)), "corner-half"))
            tris.append(((v, I(a, b), _edge_id(o, j)), "corner-half"))
    return tris


def _assemble(eps, raw, positions: dict[str, Point3], cone) -> SurfaceComplex:
    """Orient ``raw`` triangles outward on the cube and glue them."""
    triangles = []
    for corners, region, face in raw:
        p = [positions[c] for c in corners]
        n = face_normal(p)
        if dot(n, p[0]).sign() < 0:
            corners = (corners[0], corners[2], corners[1])
            p = [p[0], p[2], p[1]]
        sq = (sqdist(p[0], p[1]), sqdist(p[1], p[2]), sqdist(p[2], p[0]))
        triangles.append(TemplateTriangle(tuple(corners), sq, region, face))
    sides = {}
    for ti, tri in enumerate(triangles):
        for k in range(3):
            key = (tri.corners[k], tri.corners[(k + 1) % 3])
            if key in sides:
                raise ValueError(f"directed side {key} used twice")
            sides[key] = (ti, k)
    gluing = {}
    for (u, w), loc in sides.items():
        mate = sides.get((w, u))
        if mate is not None:
            gluing[loc] = mate
    corners = tuple(sorted({c for t in triangles for c in t.corners}))
    return SurfaceComplex(eps, tuple(triangles), gluing, frozenset(cone), corners)


def build_template(eps) -> SurfaceComplex:
    """The 108-triangle subdivision of the cube surface for parameter ``eps``."""
    eps = make_params(eps).eps
    raw = []
    for axis in range(3):
        for s in SIGNS:
            for corners, region in _face_triangles(axis, s):
                raw.append((corners, region, _face_id(axis, s)))
    names = {c for corners, _, _ in raw for c in corners}
    positions = {c: _cube_position(c, eps) for c in names}
    cone = {_vertex_id(o) for o in OCTANTS}
    return _assemble(eps, raw, positions, cone)


def realize_on_cube(t: SurfaceComplex) -> RealizedComplex:
    if t.eps is None:
        raise ValueError("template carries no eps; use the complex's own realizations")
    return RealizedComplex(t, {c: _cube_position(c, t.eps) for c in t.corners}, "cube")


def _p_position(corner: str, p) -> Point3:
    kind = corner[0]
    if kind == "V":
        return apex(p, _parse_octant(corner[1:4]))
    if kind == "I":
        s = 1 if corner[1] == "+" else -1
        axis = AXES.index(corner[2])
        a, b = _parse_octant(corner[3:5])
        return Point3(*_with_axis(axis, s * p.out, (QSqrt2(a * p.h), QSqrt2(b * p.h))))
    octant = _parse_octant(corner[1:4])
    axis = AXES.index(corner[4])
    ends = []
    for face_axis in range(3):
        if face_axis == axis:
            continue
        others = tuple(octant[k] for k in range(3) if k != face_axis)
        ends.append(_p_position(_inner_id(face_axis, octant[face_axis], *others), p))
    return midpoint(*ends)


def realize_on_p(t: SurfaceComplex, m: Mesh) -> RealizedComplex:
    """Place the template on P; ``m`` must be P built for the same eps."""
    if t.eps is None or m.eps != t.eps:
        raise ValueError(f"eps mismatch: template {t.eps}, mesh {m.eps}")
    p = make_params(t.eps)
    positions = {c: _p_position(c, p) for c in t.corners}
    verts = set(m.vertices)
    missing = [c for c, q in positions.items() if c[0] in "VI" and q not in verts]
    if missing:
        raise ValueError(f"mesh has no vertex for template corners {missing[:3]}")
    return RealizedComplex(t, positions, "P")


def verify_congruence(a: RealizedComplex, b: RealizedComplex) -> CongruenceVerdict:
    if a.base is not b.base and a.base != b.base:
        return CongruenceVerdict(False, 0, 0, "realizations of different complexes")
    tris = a.base.triangles
    bad = sorted(set(a.violations()) | set(b.violations()))
    first = None
    if bad:
        ti = bad[0]
        tri = tris[ti]
        which = a.name if ti in a.violations() else b.name
        first = (f"triangle {ti} {tri.corners} ({tri.region}) on {which or 'realization'}: "
                 f"squared sides {[str(x) for x in (a if which == a.name else b).sq_lengths(ti)]} "
                 f"vs intrinsic {[str(x) for x in tri.sq_lengths]}")
    return CongruenceVerdict(not bad, len(tris), len(tris) - len(bad), first)


def _angles(sq: tuple[QSqrt2, QSqrt2, QSqrt2]) -> tuple[float, float, float]:
    """Angles at corners 0, 1, 2 from squared sides (side k = corners k, k+1)."""
    s01, s12, s20 = (x.to_float() for x in sq)

    def at(opp, x, y):
        c = (x + y - opp) / (2 * math.sqrt(x * y))
        return math.acos(max(-1.0, min(1.0, c)))

    return at(s12, s01, s20), at(s20, s01, s12), at(s01, s12, s20)


def vertex_total_angles(r: RealizedComplex) -> dict[str, float]:
    totals = {c: 0.0 for c in r.base.corners}
    for ti, tri in enumerate(r.base.triangles):
        for c, ang in zip(tri.corners, _angles(r.sq_lengths(ti))):
            totals[c] += ang
    return totals


def _heron(sq) -> float:
    a, b, c = (x.to_float() for x in sq)
    return math.sqrt(max(0.0, 2 * (a * b + b * c + c * a) - a * a - b * b - c * c)) / 4


def total_area(r: RealizedComplex) -> float:
    return math.fsum(_heron(r.sq_lengths(ti)) for ti in range(len(r.base.triangles)))


def _angle_check(r: RealizedComplex, tol: float = ANGLE_TOL) -> tuple[bool, str]:
    totals = vertex_total_angles(r)
    flat = [c for c in totals if c not in r.base.cone_vertices]
    cone = [c for c in totals if c in r.base.cone_vertices]
    bad_flat = [c for c in flat if abs(totals[c] - 2 * math.pi) > tol]
    bad_cone = [c for c in cone if abs(totals[c] - 1.5 * math.pi) > tol]
    detail = (f"{len(flat) - len(bad_flat)}/{len(flat)} corners at 2pi, "
              f"{len(cone) - len(bad_cone)}/{len(cone)} at 3pi/2")
    if bad_flat or bad_cone:
        detail += f" (off: {(bad_flat + bad_cone)[:4]})"
    return not (bad_flat or bad_cone), detail


def _face_tests(m: Mesh, fi: int):
    """Plane and inward edge normals of the convex face ``fi``."""
    n, c = face_plane(m, fi)
    pts = m.face_points(fi)
    edges = []
    for k in range(len(pts)):
        a, b = pts[k], pts[(k + 1) % len(pts)]
        edges.append((a, cross(n, sub(b, a))))
    return n, c, edges


def _in_convex_face(tests, q: Point3) -> bool:
    n, c, edges = tests
    if dot(n, q) != c:
        return False
    return all(dot(inward, sub(q, a)).sign() >= 0 for a, inward in edges)


def covers_mesh(r: RealizedComplex, m: Mesh, tol: float = ANGLE_TOL) -> tuple[bool, str]:
    """Check every (convex) face of ``m`` is tiled by realized triangles.

    Each realized triangle must lie inside exactly one face, and the
    triangle areas assigned to a face must add up to that face's area.
    """
    owner: dict[int, int] = {}
    tests = [_face_tests(m, fi) for fi in range(m.n_faces)]
    for ti, tri in enumerate(r.base.triangles):
        pts = [r.positions[c] for c in tri.corners]
        hosts = [fi for fi in range(m.n_faces) if all(_in_convex_face(tests[fi], q) for q in pts)]
        if len(hosts) != 1:
            return False, f"triangle {ti} {tri.corners} lies in {len(hosts)} faces"
        owner[ti] = hosts[0]
    tri_mesh = triangulate(m)
    face_area = [0.0] * m.n_faces
    k = 0
    for fi, f in enumerate(m.faces):
        for _ in range(len(f) - 2):
            a, b, c = (tri_mesh.vertices[i] for i in tri_mesh.faces[k])
            face_area[fi] += _heron((sqdist(a, b), sqdist(b, c), sqdist(c, a)))
            k += 1
    covered = [0.0] * m.n_faces
    for ti, fi in owner.items():
        covered[fi] += _heron(r.sq_lengths(ti))
    worst = max(abs(x - y) for x, y in zip(face_area, covered))
    ok = worst <= tol
    return ok, f"{m.n_faces} faces tiled by {len(owner)} triangles, max area gap {worst:.1e}"


def _check_pair(report: IsometryReport, cube_r: RealizedComplex,
                target_r: RealizedComplex, target: Mesh, tol: float) -> None:
    base = cube_r.base
    probs = base.structure_problems()
    report.add("template gluing", not probs,
               f"{len(base.triangles)} triangles, {len(base.corners)} corners, "
               f"{base.n_glued_pairs} glued side pairs" + (f"; {probs[0]}" if probs else ""))
    report.add("congruence", bool(v := verify_congruence(cube_r, target_r)), str(v))
    for r in (cube_r, target_r):
        ok, detail = _angle_check(r, tol)
        report.add(f"angle sums on {r.name}", ok, detail)
    for r in (cube_r, target_r):
        area = total_area(r)
        report.add(f"total area on {r.name}", abs(area - 6) <= tol, f"{area:.12f}")
    rep = validate(target)
    report.add(f"{target.name} mesh validation", rep.ok, "; ".join(rep.messages) or
               f"V={target.n_vertices} E={target.n_edges} F={target.n_faces}")
    ok, detail = covers_mesh(target_r, target, tol)
    report.add(f"template tiles {target.name}", ok, detail)


def verify_isometry(eps, tol: float = ANGLE_TOL) -> IsometryReport:
    """Full check that the surface of P(eps) is isometric to the cube surface."""
    p = make_params(eps)
    report = IsometryReport(f"P(eps={p.eps}) vs unit cube surface")
    t = build_template(p.eps)
    m = build_p(p)
    _check_pair(report, realize_on_cube(t), realize_on_p(t, m), m, tol)
    from .measure import vol_p_closed_form

    vol = vol_p_closed_form(p.eps)
    report.notes.append(
        f"vol(P) = {vol} ~ {vol.to_float():.7f} ({'>' if vol > 1 else '<='} 1 = vol(cube))"
    )
    return report


def dented_complexes(delta) -> tuple[SurfaceComplex, RealizedComplex, RealizedComplex, Mesh]:
    """Shared triangulation of the cube surface and of the dented cube.

    The cube is subdivided with the same faces as the dented mesh (the dent
    triangles lying flat on the cube faces); corners are mesh vertex ids.
    """
    dented = build_dented_cube(delta)
    flat = _dented(dented.info["delta"], pushed=False)
    flat_tri = triangulate(flat)
    dent_tri = triangulate(dented)
    pos_flat = {f"v{i}": q for i, q in enumerate(flat_tri.vertices)}
    pos_dent = {f"v{i}": q for i, q in enumerate(dent_tri.vertices)}
    raw = [
        (tuple(f"v{i}" for i in f), role, "")
        for f, role in zip(flat_tri.faces, dent_tri.face_roles)
    ]
    cone = {c for c, q in pos_flat.items() if all(abs(x) == HALF for x in q)}
    base = _assemble(None, raw, pos_flat, cone)
    return (base, RealizedComplex(base, pos_flat, "cube"),
            RealizedComplex(base, pos_dent, "dented cube"), dented)


def verify_dented_isometry(delta, tol: float = ANGLE_TOL) -> IsometryReport:
    delta = _to_fraction(delta)
    base, cube_r, dent_r, dented = dented_complexes(delta)
    report = IsometryReport(f"dented cube (delta={delta}) vs unit cube surface")
    _check_pair(report, cube_r, dent_r, dented, tol)
    return report
