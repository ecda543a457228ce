"""Text exports: OBJ meshes, an SVG fold net of the cube, CSV sweep tables."""

from __future__ import annotations

import csv
import io as _stdio
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .isometry import RealizedComplex, SurfaceComplex, realize_on_cube
from .measure import SweepRow
from .mesh import Mesh, cross, dot, sub
from .scalar import QSqrt2

__all__ = [
    "write_obj",
    "read_obj",
    "obj_volume",
    "FoldEdge",
    "NetLayout",
    "net_layout",
    "write_net_svg",
    "write_csv",
]


def write_obj(m: Mesh, precision: int = 17) -> str:
    if not 6 <= precision <= 17:
        raise ValueError("precision must be in [6, 17]")
    lines = [f"# {m.name or 'mesh'}" + (f" eps={m.eps}" if m.eps is not None else ""),
             f"# V={m.n_vertices} F={m.n_faces}"]
    for v in m.vertices:
        lines.append("v " + " ".join(f"{c:.{precision}g}" for c in v.to_floats()))
    for f in m.faces:
        lines.append("f " + " ".join(str(i + 1) for i in f))
    return "\n".join(lines) + "\n"


def read_obj(text: str) -> tuple[np.ndarray, list[tuple[int, ...]]]:
    """Parse ``v`` and ``f`` records; returns float vertices and 0-based faces."""
    verts, faces = [], []
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        if parts[0] == "v":
            verts.append([float(x) for x in parts[1:4]])
        elif parts[0] == "f":
            # tolerate "i/t/n" records
            faces.append(tuple(int(tok.split("/")[0]) - 1 for tok in parts[1:]))
    return np.asarray(verts, dtype=float), faces


def obj_volume(verts: np.ndarray, faces: Sequence[Sequence[int]]) -> float:
    total = 0.0
    for f in faces:
        p0 = verts[f[0]]
        for i in range(1, len(f) - 1):
            total += float(np.dot(p0, np.cross(verts[f[i]], verts[f[i + 1]])))
    return total / 6.0


# -- fold net ------------------------------------------------------------

# the cross: +z in the middle, +-x left/right, +-y above/below, -z under -y
_NET_ADJACENT = {
    frozenset(p) for p in [("+z", "+x"), ("+z", "-x"), ("+z", "+y"), ("+z", "-y"), ("-y", "-z")]
}


def _unfold(face: str, x: Fraction, y: Fraction, z: Fraction) -> tuple[Fraction, Fraction]:
    return {
        "+z": lambda: (x, y),
        "+x": lambda: (1 - z, y),
        "-x": lambda: (z - 1, y),
        "+y": lambda: (x, 1 - z),
        "-y": lambda: (x, z - 1),
        "-z": lambda: (x, -2 - y),
    }[face]()


class FoldEdge(NamedTuple):
    start: tuple[float, float]
    end: tuple[float, float]
    kind: str  # mountain | valley | flat | cut
    corners: tuple[str, str]
    sq_length: QSqrt2


@dataclass
class NetLayout:
    scale: float
    placements: dict[str, tuple[tuple[float, float], ...]] = field(default_factory=dict)
    triangles: list[tuple[str, tuple[tuple[float, float], ...], str]] = field(default_factory=list)
    fold_edges: list[FoldEdge] = field(default_factory=list)

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for e in self.fold_edges:
            out[e.kind] = out.get(e.kind, 0) + 1
        return out


def _fold_kind(p: RealizedComplex, ti: int, k: int, tj: int, kj: int) -> str:
    tri = p.base.triangles[ti]
    u, w, x = (p.positions[tri.corners[(k + s) % 3]] for s in range(3))
    y = p.positions[p.base.triangles[tj].corners[(kj + 2) % 3]]
    s = dot(cross(sub(w, u), sub(x, u)), sub(y, u)).sign()
    return "flat" if s == 0 else ("valley" if s > 0 else "mountain")


def net_layout(t: SurfaceComplex, p: RealizedComplex, scale: float = 100.0) -> NetLayout:
    """Lay the template out on the cross net, classifying folds by P's shape."""
    if p.base is not t and p.base != t:
        raise ValueError("realization does not belong to this template")
    cube = realize_on_cube(t)
    layout = NetLayout(scale)

    def to2d(face: str, corner: str) -> tuple[float, float]:
        q = cube.positions[corner]
        u, v = _unfold(face, q.x.a, q.y.a, q.z.a)
        return (float(u) * scale, float(v) * scale)

    faces = sorted({tri.face for tri in t.triangles})
    for face in faces:
        axis, s = "xyz".index(face[1]), (1 if face[0] == "+" else -1)
        ring = []
        for a, b in ((1, 1), (-1, 1), (-1, -1), (1, -1)):
            c = [Fraction(a, 2), Fraction(b, 2)]
            c.insert(axis, Fraction(s, 2))
            u, v = _unfold(face, *c)
            ring.append((float(u) * scale, float(v) * scale))
        layout.placements[face] = tuple(ring)
    for tri in t.triangles:
        layout.triangles.append((tri.face, tuple(to2d(tri.face, c) for c in tri.corners), tri.region))

    for (ti, k), (tj, kj) in sorted(t.gluing.items()):
        tri, other = t.triangles[ti], t.triangles[tj]
        a, b = tri.corners[k], tri.corners[(k + 1) % 3]
        seam = tri.face != other.face
        if seam and frozenset((tri.face, other.face)) not in _NET_ADJACENT:
            # a cut is drawn on both sides of the net, once per glued side
            layout.fold_edges.append(
                FoldEdge(to2d(tri.face, a), to2d(tri.face, b), "cut", (a, b), tri.sq_lengths[k]))
            continue
        if (tj, kj) < (ti, k):
            continue
        layout.fold_edges.append(FoldEdge(to2d(tri.face, a), to2d(tri.face, b),
                                          _fold_kind(p, ti, k, tj, kj), (a, b), tri.sq_lengths[k]))
    return layout


_STYLE = {
    "cut": 'stroke="#000000" stroke-width="1.2"',
    "mountain": 'stroke="#c0392b" stroke-width="1" stroke-dasharray="8 3 2 3"',
    "valley": 'stroke="#2455c3" stroke-width="1" stroke-dasharray="5 3"',
    "flat": 'stroke="#b0b0b0" stroke-width="0.5"',
}


def write_net_svg(t: SurfaceComplex, p: RealizedComplex, scale: float = 100.0) -> str:
    """SVG 1.1 drawing of the cube net with the folds that produce P."""
    layout = net_layout(t, p, scale)
    margin = 0.25 * scale
    xs = [pt[0] for ring in layout.placements.values() for pt in ring]
    ys = [-pt[1] for ring in layout.placements.values() for pt in ring]
    x0, y0 = min(xs) - margin, min(ys) - margin
    width = max(xs) - min(xs) + 2 * margin
    height = max(ys) - min(ys) + 2 * margin + 0.9 * scale

    def xy(pt):
        return f"{pt[0] - x0:.6f},{-pt[1] - y0:.6f}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:.3f}" height="{height:.3f}" viewBox="0 0 {width:.3f} {height:.3f}">',
        f"<title>cube net, eps={t.eps}</title>",
    ]
    for face in layout.placements:
        out.append(f'<g id="face{face}" class="face">')
        for f, pts, region in layout.triangles:
            if f == face:
                out.append(f'  <polygon class="tri {region}" points="{" ".join(xy(q) for q in pts)}" '
                           f'fill="#f4f1e8" stroke="none"/>')
        out.append("</g>")
    out.append('<g id="folds" fill="none">')
    for e in layout.fold_edges:
        out.append(f'  <line class="{e.kind}" x1="{xy(e.start).split(",")[0]}" '
                   f'y1="{xy(e.start).split(",")[1]}" x2="{xy(e.end).split(",")[0]}" '
                   f'y2="{xy(e.end).split(",")[1]}" {_STYLE[e.kind]}/>')
    out.append("</g>")
    ly = height - 0.7 * scale
    out.append('<g id="legend" font-family="sans-serif" font-size="12">')
    for k, kind in enumerate(("cut", "mountain", "valley", "flat")):
        x = margin + k * 1.1 * scale
        out.append(f'  <line x1="{x:.3f}" y1="{ly:.3f}" x2="{x + 0.4 * scale:.3f}" '
                   f'y2="{ly:.3f}" {_STYLE[kind]}/>')
        out.append(f'  <text x="{x + 0.45 * scale:.3f}" y="{ly + 4:.3f}">{kind}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_csv(rows: Iterable[SweepRow]) -> str:
    buf = _stdio.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["eps", "vol_closed", "vol_mesh", "gain"])
    for r in rows:
        w.writerow([f"{x:.15g}" for x in (r.eps, r.vol_closed, r.vol_mesh, r.gain)])
    return buf.getvalue()
