"""Exact arithmetic in the quadratic field Q(sqrt 2).

Every coordinate, squared length and volume produced by the cube
construction is of the form ``a + b*sqrt(2)`` with rational ``a`` and ``b``.
:class:`QSqrt2` stores the two rational parts as :class:`fractions.Fraction`
(arbitrary precision, always in lowest terms) so equality is structural and
signs are decided exactly.
"""

from __future__ import annotations

import math
import re
from decimal import Decimal, localcontext
from fractions import Fraction
from numbers import Rational

__all__ = ["QSqrt2", "SQRT2", "parse_rational", "as_qsqrt2"]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (optional sign, ``q > 0``) into a Fraction.

    Raises
    ------
    ValueError
        If ``text`` is not of that form or ``q`` is zero.
    """
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"malformed rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in rational: {text!r}")
    return Fraction(num, den)


def _sgn(x: Fraction) -> int:
    return (x > 0) - (x < 0)


class QSqrt2:
    """Immutable number ``a + b*sqrt(2)`` with rational ``a`` and ``b``."""

    __slots__ = ("_a", "_b")

    def __init__(self, a=0, b=0) -> None:
        object.__setattr__(self, "_a", a if type(a) is Fraction else Fraction(a))
        object.__setattr__(self, "_b", b if type(b) is Fraction else Fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("QSqrt2 is immutable")

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    # -- representation -------------------------------------------------

    def __repr__(self) -> str:
        return f"QSqrt2({str(self._a)!r}, {str(self._b)!r})"

    def __str__(self) -> str:
        """Common-denominator form, e.g. ``(12 + 11√2)/24``."""
        den = math.lcm(self._a.denominator, self._b.denominator)
        p = self._a.numerator * (den // self._a.denominator)
        q = self._b.numerator * (den // self._b.denominator)
        if q == 0:
            num = str(p)
            compound = False
        else:
            rad = "√2" if abs(q) == 1 else f"{abs(q)}√2"
            if p == 0:
                num = rad if q > 0 else f"-{rad}"
                compound = False
            else:
                num = f"{p} {'+' if q > 0 else '-'} {rad}"
                compound = True
        if den == 1:
            return num
        return f"({num})/{den}" if compound else f"{num}/{den}"

    # -- coercion -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> QSqrt2 | None:
        if isinstance(other, QSqrt2):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return QSqrt2(other)
        return None

    # -- field operations -----------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QSqrt2(self._a + o._a, self._b + o._b)

    __radd__ = __add__

    def __neg__(self) -> QSqrt2:
        return QSqrt2(-self._a, -self._b)

    def __pos__(self) -> QSqrt2:
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QSqrt2(self._a - o._a, self._b - o._b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a1, b1, a2, b2 = self._a, self._b, o._a, o._b
        return QSqrt2(a1 * a2 + 2 * b1 * b2, a1 * b2 + a2 * b1)

    __rmul__ = __mul__

    def conjugate(self) -> QSqrt2:
        """Galois conjugate ``a - b*sqrt(2)``."""
        return QSqrt2(self._a, -self._b)

    def norm(self) -> Fraction:
        """Field norm ``a**2 - 2*b**2``; zero only for zero."""
        return self._a * self._a - 2 * self._b * self._b

    def inverse(self) -> QSqrt2:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero divisor")
        return QSqrt2(self._a / n, -self._b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> QSqrt2:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = QSqrt2(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- order ----------------------------------------------------------

    def sign(self) -> int:
        """Exact sign of ``a + b*sqrt(2)`` in {-1, 0, +1}."""
        sa, sb = _sgn(self._a), _sgn(self._b)
        if sa >= 0 and sb >= 0:
            return 1 if (sa or sb) else 0
        if sa <= 0 and sb <= 0:
            return -1
        # opposite signs: compare a**2 against 2*b**2
        if sa > 0:
            return _sgn(self.norm())
        return -_sgn(self.norm())

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._a == o._a and self._b == o._b

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b))

    def _cmp(self, other):
        o = self._coerce(other)
        if o is None:
            return None
        return (self - o).sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __bool__(self) -> bool:
        return bool(self._a) or bool(self._b)

    def __abs__(self) -> QSqrt2:
        return -self if self.sign() < 0 else self

    # -- conversion -----------------------------------------------------

    def is_rational(self) -> bool:
        return self._b == 0

    def __float__(self) -> float:
        return self.to_float()

    def to_float(self) -> float:
        """Correctly rounded double (via 60-digit decimal evaluation)."""
        if self._b == 0:
            return float(self._a)
        with localcontext() as ctx:
            ctx.prec = 60
            a = Decimal(self._a.numerator) / Decimal(self._a.denominator)
            b = Decimal(self._b.numerator) / Decimal(self._b.denominator)
            return float(a + b * Decimal(2).sqrt())


SQRT2 = QSqrt2(0, 1)


def as_qsqrt2(x) -> QSqrt2:
    """Coerce an int, Fraction, ``"p/q"`` string or QSqrt2 to QSqrt2."""
    if isinstance(x, QSqrt2):
        return x
    if isinstance(x, str):
        return QSqrt2(parse_rational(x))
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or 'p/q' string")
    return QSqrt2(x)
