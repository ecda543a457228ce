"""Command-line front end.

Exit codes: 0 success / PASS, 1 verification FAIL, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import construct, isometry, measure, meshops
from . import io as mio
from .scalar import parse_rational

SHAPES = ("cube", "q", "p", "dented", "octahedron", "stellated")


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _params(eps: Fraction) -> construct.ConstructionParams:
    try:
        return construct.make_params(eps)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror or exc}") from None


def _build(shape: str, eps: Fraction | None) -> meshops.Mesh:
    if shape == "cube":
        return construct.build_cube()
    if shape == "octahedron":
        return construct.build_limit_octahedron()
    if shape == "stellated":
        return construct.build_limit_stellated()
    if eps is None:
        raise UsageError(f"--epsilon is required for shape {shape!r}")
    if shape == "dented":
        try:
            return construct.build_dented_cube(eps)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    p = _params(eps)
    return construct.build_q(p) if shape == "q" else construct.build_p(p)


def cmd_build(args) -> int:
    m = _build(args.shape, args.epsilon)
    if not 6 <= args.precision <= 17:
        raise UsageError("--precision must be in [6, 17]")
    _write(args.out, mio.write_obj(m, args.precision))
    vol = meshops.signed_volume(m)
    print(f"{m.name}: V={m.n_vertices} E={m.n_edges} F={m.n_faces} "
          f"volume={vol} ~ {vol.to_float():.10f} -> {args.out}")
    if "coplanar_groups" in m.info:
        print(f"maximal coplanar face groups: {m.info['coplanar_groups']}")
    return 0


def cmd_volume(args) -> int:
    p = _params(args.epsilon)
    closed = measure.vol_p_closed_form(p.eps)
    poly = measure.polynomial().evaluate(p.eps)
    mesh = meshops.signed_volume(construct.build_p(p))
    vq = measure.vol_q_closed_form(p.eps)
    print(f"eps = {p.eps}")
    print(f"vol(Q) closed form : {vq} ~ {vq.to_float():.10f}")
    print(f"vol(P) closed form : {closed} ~ {closed.to_float():.10f}")
    print(f"vol(P) polynomial  : {poly} ~ {poly.to_float():.10f}")
    print(f"vol(P) mesh        : {mesh} ~ {mesh.to_float():.10f}")
    agree = closed == poly == mesh
    print(f"exact agreement    : {'yes' if agree else 'NO'}")
    print(f"gain over cube     : {(closed - 1).to_float():+.10f}")
    return 0 if agree else 1


def cmd_sweep(args) -> int:
    try:
        rows = measure.sweep(args.eps_from, args.eps_to, args.steps)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = mio.write_csv(rows)
    if args.out:
        _write(args.out, text)
        best = max(rows, key=lambda r: r.gain)
        print(f"{len(rows)} rows -> {args.out}; max gain {best.gain:.10f} at eps={best.eps:g}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_optimize(args) -> int:
    eps_star, vol_star = measure.maximize()
    g_eps, g_vol = measure.golden_section_max(measure.polynomial(), 0.0, 0.5)
    print(f"eps*      = {eps_star:.9f}")
    print(f"vol*      = {vol_star:.9f}")
    print(f"golden    = eps {g_eps:.9f}, vol {g_vol:.9f}")
    print(f"breakeven = {measure.breakeven():.9f}")
    return 0


def cmd_verify(args) -> int:
    p = _params(args.epsilon)
    report = isometry.verify_isometry(p.eps, args.tolerance)
    q, m = construct.build_q(p), construct.build_p(p)
    q_ok = meshops.validate(q).ok
    report.add("Q mesh validation", q_ok, f"V={q.n_vertices} E={q.n_edges} F={q.n_faces}")
    report.add("Q convex", meshops.is_convex(q))
    report.add("Q is the hull of the 24 corners",
               meshops.hull_certify(q, construct.corner_points(p)))
    reflex = meshops.reflex_edges(m)
    base_edges = {
        (min(u, w), max(u, w))
        for f, role in zip(q.faces, q.face_roles) if role == "hull-triangle"
        for u, w in zip(f, f[1:] + f[:1])
    }
    report.add("P non-convex", not meshops.is_convex(m))
    report.add("reflex edges of P are the pyramid base edges",
               {d.edge for d in reflex} == base_edges, f"{len(reflex)} reflex edges")
    print(report)
    return 0 if report.passed else 1


def cmd_net(args) -> int:
    p = _params(args.epsilon)
    t = isometry.build_template(p.eps)
    r = isometry.realize_on_p(t, construct.build_p(p))
    _write(args.out, mio.write_net_svg(t, r, args.scale))
    counts = mio.net_layout(t, r, args.scale).counts()
    print(f"net for eps={p.eps} -> {args.out}: "
          + ", ".join(f"{k} {counts.get(k, 0)}" for k in ("cut", "mountain", "valley", "flat")))
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inflatecube",
        description="Build, measure and verify isometric inflations of the unit cube.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="write a mesh as OBJ")
    b.add_argument("--shape", choices=SHAPES, required=True)
    b.add_argument("--epsilon", type=_rational, help="exact rational p/q (delta for 'dented')")
    b.add_argument("--out", required=True)
    b.add_argument("--precision", type=int, default=17)
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("volume", help="exact volumes of Q and P")
    v.add_argument("--epsilon", type=_rational, required=True)
    v.set_defaults(func=cmd_volume)

    s = sub.add_parser("sweep", help="CSV table of vol(P) over an eps grid")
    s.add_argument("--from", dest="eps_from", type=float, default=0.01)
    s.add_argument("--to", dest="eps_to", type=float, default=0.49)
    s.add_argument("--steps", type=int, default=49)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)

    o = sub.add_parser("optimize", help="volume-maximising eps and breakeven point")
    o.set_defaults(func=cmd_optimize)

    c = sub.add_parser("verify", help="isometry, convexity, hull and mesh checks")
    c.add_argument("--epsilon", type=_rational, required=True)
    c.add_argument("--tolerance", type=float, default=isometry.ANGLE_TOL,
                   help="float tolerance for angle and area sums")
    c.set_defaults(func=cmd_verify)

    n = sub.add_parser("net", help="SVG fold net of the cube surface")
    n.add_argument("--epsilon", type=_rational, required=True)
    n.add_argument("--out", required=True)
    n.add_argument("--scale", type=float, default=100.0)
    n.set_defaults(func=cmd_net)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"inflatecube: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
