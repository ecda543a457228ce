import math
from fractions import Fraction

import pytest

from inflatecube.construct import (
    build_cube,
    build_dented_cube,
    build_limit_octahedron,
    build_limit_stellated,
    build_p,
    build_q,
    corner_points,
    make_params,
)
from inflatecube.mesh import Point3
from inflatecube.meshops import (
    dihedral_angle,
    hull_certify,
    is_convex,
    reflex_edges,
    signed_volume,
    triangulate,
    validate,
)
from inflatecube.scalar import QSqrt2

GRID = [Fraction(k, 43) for k in range(1, 22)]  # 21 values in (0, 1/2)


def _all_meshes():
    out = [build_cube(), build_limit_octahedron(), build_limit_stellated()]
    out += [build_dented_cube(d) for d in (Fraction(1, 4), Fraction(1, 2), Fraction(1))]
    for eps in (Fraction(1, 4), Fraction(1, 9), Fraction(7, 16)):
        p = make_params(eps)
        out += [build_q(p), build_p(p)]
    return out


@pytest.mark.parametrize("m", _all_meshes(), ids=lambda m: f"{m.name}-{m.eps or m.info.get('delta', '')}")
def test_every_generated_mesh_is_valid(m):
    rep = validate(m)
    assert rep.ok, rep.messages
    assert signed_volume(m).sign() > 0
    assert signed_volume(triangulate(m)) == signed_volume(m)
    offset = Point3(QSqrt2(1), QSqrt2(2), QSqrt2(3))
    assert signed_volume(m.translated(offset)) == signed_volume(m)


def test_open_cube_is_not_closed():
    rep = validate(build_cube().without_faces({0}))
    assert not rep.closed
    assert not rep.ok
    with pytest.raises(ValueError, match="volume undefined"):
        signed_volume(build_cube().without_faces({0}))


def test_flipped_face_breaks_orientation():
    c = build_cube()
    faces = list(c.faces)
    faces[0] = faces[0][::-1]
    bad = type(c)(c.vertices, tuple(faces), c.face_roles)
    rep = validate(bad)
    assert rep.closed and not rep.oriented


def test_nonplanar_face_detected():
    c = build_cube()
    verts = list(c.vertices)
    v = verts[0]
    verts[0] = Point3(v.x + Fraction(1, 10), v.y, v.z)
    rep = validate(type(c)(tuple(verts), c.faces, c.face_roles))
    assert not rep.planar_faces


@pytest.mark.parametrize(
    "mesh, n", [(build_cube(), 12), (build_q(make_params(Fraction(1, 4))), 44),
                (build_p(make_params(Fraction(1, 4))), 60)]
)
def test_triangulate_counts(mesh, n):
    t = triangulate(mesh)
    assert t.n_faces == n
    assert t.vertices == mesh.vertices


@pytest.mark.parametrize("eps", GRID)
def test_q_convex_p_not(eps):
    p = make_params(eps)
    q, m = build_q(p), build_p(p)
    assert is_convex(q)
    assert hull_certify(q, corner_points(p))
    assert not is_convex(m)
    assert not hull_certify(m, corner_points(p))


def _base_edges(q):
    return {
        (min(u, w), max(u, w))
        for f, role in zip(q.faces, q.face_roles) if role == "hull-triangle"
        for u, w in zip(f, f[1:] + f[:1])
    }


@pytest.mark.parametrize("eps", GRID)
def test_reflex_edges_are_pyramid_bases(eps):
    p = make_params(eps)
    q, m = build_q(p), build_p(p)
    reflex = reflex_edges(m)
    assert len(reflex) == 24
    assert {d.edge for d in reflex} == _base_edges(q)
    assert all(d.reflex and d.angle > math.pi for d in reflex)


def test_convex_meshes_have_no_reflex_edges(quarter):
    assert reflex_edges(build_cube()) == []
    assert reflex_edges(build_q(quarter)) == []


def test_hull_certify_needs_every_point(quarter):
    q = build_q(quarter)
    pts = corner_points(quarter)
    assert hull_certify(q, pts)
    outside = Point3(QSqrt2(2), QSqrt2(0), QSqrt2(0))
    assert not hull_certify(q, pts + [outside])
    inside = Point3(QSqrt2(0), QSqrt2(0), QSqrt2(0))
    assert not hull_certify(q, pts + [inside])
    assert not hull_certify(q, pts[:-1])


def test_dihedral_cube():
    c = build_cube()
    for e in c.edges():
        assert dihedral_angle(c, e) == pytest.approx(math.pi / 2, abs=1e-12)


def test_dihedral_square_rectangle(quarter):
    q = build_q(quarter)
    sq = q.faces[q.face_roles.index("inner-square")]
    e = (sq[0], sq[1])
    assert dihedral_angle(q, e) == pytest.approx(3 * math.pi / 4, abs=1e-12)


def test_dihedral_base_edge_reflex(quarter):
    m = build_p(quarter)
    e = reflex_edges(m)[0].edge
    assert dihedral_angle(m, e) > math.pi
    assert dihedral_angle(m, e[::-1]) == pytest.approx(dihedral_angle(m, e))


def test_dihedral_missing_edge():
    with pytest.raises(KeyError):
        dihedral_angle(build_cube(), (0, 7))


def test_angles_sum_consistent_with_flag(quarter):
    m = build_p(quarter)
    reflex = {d.edge for d in reflex_edges(m)}
    for e in m.edges():
        a = dihedral_angle(m, e)
        assert 0 < a < 2 * math.pi
        assert (a > math.pi) == (e in reflex)
