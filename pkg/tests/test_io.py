import csv
import io
import math
import re
from fractions import Fraction

import numpy as np
import pytest

from inflatecube.construct import build_cube, build_dented_cube, build_limit_stellated, build_p, build_q, make_params
from inflatecube.io import net_layout, obj_volume, read_obj, write_csv, write_net_svg, write_obj
from inflatecube.isometry import build_template, realize_on_p
from inflatecube.measure import SweepRow, sweep
from inflatecube.meshops import reflex_edges, signed_volume


@pytest.fixture(scope="module")
def net_inputs():
    p = make_params(Fraction(1, 4))
    t = build_template(p.eps)
    m = build_p(p)
    return t, realize_on_p(t, m), m


def test_obj_cube():
    text = write_obj(build_cube())
    lines = text.splitlines()
    assert sum(ln.startswith("v ") for ln in lines) == 8
    assert sum(ln.startswith("f ") for ln in lines) == 6
    assert min(int(x) for ln in lines if ln.startswith("f ") for x in ln.split()[1:]) == 1


@pytest.mark.parametrize(
    "mesh",
    [build_cube(), build_q(make_params(Fraction(1, 4))), build_p(make_params(Fraction(1, 4))),
     build_dented_cube(Fraction(1, 2)), build_limit_stellated()],
    ids=lambda m: m.name,
)
@pytest.mark.parametrize("precision", [12, 17])
def test_obj_round_trip(mesh, precision):
    verts, faces = read_obj(write_obj(mesh, precision))
    assert len(verts) == mesh.n_vertices and len(faces) == mesh.n_faces
    assert [tuple(f) for f in faces] == list(mesh.faces)
    assert obj_volume(verts, faces) == pytest.approx(signed_volume(mesh).to_float(), abs=1e-9)


def test_obj_p_counts():
    text = write_obj(build_p(make_params(Fraction(1, 4))))
    assert text.count("\nv ") == 32 and text.count("\nf ") == 42
    assert text == write_obj(build_p(make_params(Fraction(1, 4))))


@pytest.mark.parametrize("precision", [5, 18])
def test_obj_precision_range(precision):
    with pytest.raises(ValueError):
        write_obj(build_cube(), precision)


def test_net_counts(net_inputs):
    t, r, _ = net_inputs
    svg = write_net_svg(t, r, 100)
    assert len(re.findall(r'<g id="face[+-][xyz]"', svg)) == 6
    assert svg.count("<polygon") == 108
    assert svg.startswith("<?xml") and 'version="1.1"' in svg
    for kind in ("cut", "mountain", "valley", "flat"):
        assert f">{kind}</text>" in svg


def test_net_fold_classes_match_reflex_edges(net_inputs):
    t, r, m = net_inputs
    layout = net_layout(t, r, 100)
    reflex = {frozenset((m.vertices[u], m.vertices[w])) for (u, w), *_ in reflex_edges(m)}
    valley_segments = [e for e in layout.fold_edges if e.kind == "valley"]
    covered = set()
    for e in valley_segments:
        a, b = (r.positions[c] for c in e.corners)
        host = [s for s in reflex if _on_segment(a, s) and _on_segment(b, s)]
        assert len(host) == 1
        covered.add(host[0])
    assert covered == reflex and len(valley_segments) == 48
    # corner-square diagonals become lateral edges: always mountain folds
    diag = [e for e in layout.fold_edges
            if {e.corners[0][0], e.corners[1][0]} == {"V", "I"}]
    assert len(diag) == 24 and all(e.kind == "mountain" for e in diag)


def _on_segment(q, seg):
    a, b = tuple(seg)
    pa, pb, pq = (np.array(x.to_floats()) for x in (a, b, q))
    return abs(np.linalg.norm(pa - pq) + np.linalg.norm(pq - pb) - np.linalg.norm(pa - pb)) < 1e-12


def test_net_edge_lengths(net_inputs):
    t, r, _ = net_inputs
    for scale in (1.0, 37.5):
        layout = net_layout(t, r, scale)
        for e in layout.fold_edges:
            drawn = math.dist(e.start, e.end)
            assert drawn == pytest.approx(math.sqrt(e.sq_length.to_float()) * scale, abs=1e-9)


def test_net_area_and_orientation(net_inputs):
    t, r, _ = net_inputs
    scale = 40.0
    layout = net_layout(t, r, scale)
    total = 0.0
    for _, (a, b, c), _ in layout.triangles:
        signed = ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])) / 2
        assert signed > 0  # faces are unfolded without mirroring
        total += signed
    assert total == pytest.approx(6 * scale**2, abs=1e-9)


def test_net_faces_do_not_overlap(net_inputs):
    t, r, _ = net_inputs
    layout = net_layout(t, r, 1.0)
    boxes = []
    for ring in layout.placements.values():
        xs, ys = [p[0] for p in ring], [p[1] for p in ring]
        boxes.append((min(xs), max(xs), min(ys), max(ys)))
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            a, b = boxes[i], boxes[j]
            overlap_x = min(a[1], b[1]) - max(a[0], b[0])
            overlap_y = min(a[3], b[3]) - max(a[2], b[2])
            assert overlap_x <= 1e-12 or overlap_y <= 1e-12


def test_net_cut_count(net_inputs):
    t, r, _ = net_inputs
    counts = net_layout(t, r).counts()
    # 7 of the 12 cube edges are cut in a cross net, 3 segments each, drawn on both sides
    assert counts["cut"] == 7 * 3 * 2


def test_csv():
    rows = [SweepRow(0.1, 1.2, 1.2, 0.2), SweepRow(0.25, 1.1481812160876685, 1.1481812160876685,
                                                    0.1481812160876685), SweepRow(0.3, 1.0, 1.0, 0.0)]
    text = write_csv(rows)
    lines = text.split("\n")
    assert lines[0] == "eps,vol_closed,vol_mesh,gain"
    assert len(text.splitlines()) == 4 and text.endswith("\n") and "\r" not in text
    parsed = list(csv.DictReader(io.StringIO(text)))
    assert float(parsed[1]["gain"]) == pytest.approx(0.1481813, abs=1e-7)
    assert parsed[1]["gain"] == f"{0.1481812160876685:.15g}" == "0.148181216087668"


def test_csv_empty():
    assert write_csv([]) == "eps,vol_closed,vol_mesh,gain\n"


def test_csv_sweep_deterministic():
    rows = sweep(0.1, 0.2, 3)
    assert write_csv(rows) == write_csv(sweep(0.1, 0.2, 3))
