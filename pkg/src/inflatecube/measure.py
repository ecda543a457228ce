"""Closed-form volumes of Q and P, their cubic in eps, and its extrema.

Q is cut by the six planes through the inner cube's faces into an inner
cube, six slabs, twelve triangular prisms and eight corner tetrahedra, all
of depth ``d = sqrt(2) * eps``. P adds eight pyramids of the same volume as
the corner tetrahedra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .construct import HALF, _to_fraction, build_limit_stellated, build_p, make_params
from .meshops import signed_volume
from .scalar import SQRT2, QSqrt2

__all__ = [
    "VolumePolynomial",
    "VolumeBreakdown",
    "SweepRow",
    "vol_q_closed_form",
    "vol_p_closed_form",
    "polynomial",
    "breakdown",
    "maximize",
    "breakeven",
    "golden_section_max",
    "sweep",
]


@dataclass(frozen=True)
class VolumePolynomial:
    """``c0 + c1*eps + c2*eps**2 + c3*eps**3`` with exact coefficients."""

    c0: QSqrt2
    c1: QSqrt2
    c2: QSqrt2
    c3: QSqrt2

    @property
    def coefficients(self) -> tuple[QSqrt2, QSqrt2, QSqrt2, QSqrt2]:
        return (self.c0, self.c1, self.c2, self.c3)

    def evaluate(self, eps) -> QSqrt2:
        eps = QSqrt2(_to_fraction(eps))
        acc = QSqrt2()
        for c in reversed(self.coefficients):
            acc = acc * eps + c
        return acc

    def __call__(self, eps: float) -> float:
        c0, c1, c2, c3 = (c.to_float() for c in self.coefficients)
        return c0 + eps * (c1 + eps * (c2 + eps * c3))

    def derivative(self, eps: float) -> float:
        _, c1, c2, c3 = (c.to_float() for c in self.coefficients)
        return c1 + eps * (2 * c2 + eps * 3 * c3)


@dataclass(frozen=True)
class VolumeBreakdown:
    interior_cube: QSqrt2
    slabs: QSqrt2
    prisms: QSqrt2
    corner_tets: QSqrt2
    pyramids: QSqrt2
    d: QSqrt2

    @property
    def q_total(self) -> QSqrt2:
        return self.interior_cube + self.slabs + self.prisms + self.corner_tets

    @property
    def p_total(self) -> QSqrt2:
        return self.q_total + self.pyramids


@dataclass(frozen=True)
class SweepRow:
    eps: float
    vol_closed: float
    vol_mesh: float
    gain: float


def _closed_eps(eps) -> Fraction:
    eps = _to_fraction(eps)
    if not (0 < eps <= HALF):
        raise ValueError("epsilon out of (0,1/2]")
    return eps


def _pieces(eps: Fraction) -> VolumeBreakdown:
    d = SQRT2 * eps
    side = 1 - 2 * eps
    return VolumeBreakdown(
        interior_cube=QSqrt2(side**3),
        slabs=6 * side**2 * d,
        prisms=12 * side * d * d / 2,
        corner_tets=8 * d**3 / 6,
        pyramids=8 * d**3 / 6,
        d=d,
    )


def breakdown(eps) -> VolumeBreakdown:
    return _pieces(make_params(eps).eps)


def vol_q_closed_form(eps) -> QSqrt2:
    return _pieces(_closed_eps(eps)).q_total


def vol_p_closed_form(eps) -> QSqrt2:
    return _pieces(_closed_eps(eps)).p_total


def polynomial() -> VolumePolynomial:
    # expanded by hand from the piece formulas; the tests re-derive both
    # higher coefficients from exact mesh volumes
    return VolumePolynomial(
        QSqrt2(1),
        6 * (SQRT2 - 1),
        24 * (1 - SQRT2),
        QSqrt2(-32, Fraction(88, 3)),
    )


def maximize() -> tuple[float, float]:
    """Interior maximiser of the volume cubic on (0, 1/2) and its value."""
    poly = polynomial()
    _, c1, c2, c3 = (c.to_float() for c in poly.coefficients)
    # 3*c3*e^2 + 2*c2*e + c1 = 0; c3 > 0 so the smaller root is the maximum
    a, b, c = 3 * c3, 2 * c2, c1
    disc = math.sqrt(b * b - 4 * a * c)
    # the cancellation-free form of the smaller root (b < 0)
    eps_star = 2 * c / (-b + disc)
    return eps_star, poly(eps_star)


def breakeven() -> float:
    """The eps in (0, 1/2) at which P's volume falls back to exactly 1."""
    _, c1, c2, c3 = (c.to_float() for c in polynomial().coefficients)
    # vol - 1 = eps * (c1 + c2*eps + c3*eps^2)
    disc = math.sqrt(c2 * c2 - 4 * c3 * c1)
    return 2 * c1 / (-c2 + disc)


def golden_section_max(f: Callable[[float], float], lo: float, hi: float,
                       tol: float = 1e-12) -> tuple[float, float]:
    """Maximise a unimodal ``f`` on ``[lo, hi]`` by golden-section search."""
    invphi = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


def _sweep_row(eps: Fraction) -> SweepRow:
    closed = vol_p_closed_form(eps).to_float()
    solid = build_limit_stellated() if eps == HALF else build_p(make_params(eps))
    mesh = signed_volume(solid).to_float()
    return SweepRow(float(eps), closed, mesh, closed - 1.0)


def sweep(eps_from: float, eps_to: float, steps: int) -> list[SweepRow]:
    """Volumes of P on an even grid, by closed form and by mesh integration.

    Each grid value is snapped to the nearest rational with denominator
    10**6 and both pipelines use that rational. At ``eps = 1/2`` the mesh
    side uses the stellated limit solid.
    """
    if not (0 < eps_from < eps_to <= 0.5):
        raise ValueError("sweep range must satisfy 0 < from < to <= 1/2")
    if steps < 2:
        raise ValueError("sweep needs at least 2 steps")
    rows = []
    for k in range(steps):
        x = eps_from + (eps_to - eps_from) * k / (steps - 1)
        eps = Fraction(round(x * 10**6), 10**6)
        rows.append(_sweep_row(eps))
    return rows
