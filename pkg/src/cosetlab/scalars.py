"""Exact Gaussian-rational scalars (a + b*i with a, b rational).

Plain ``int`` and ``Fraction`` values mix freely with :class:`GaussRat`;
helpers :func:`conj`, :func:`abs2` and :func:`as_complex` accept all three.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["GaussRat", "I", "conj", "abs2", "as_complex", "is_exact", "to_scalar", "fmt_scalar"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected a rational, got {type(x).__name__}")


class GaussRat:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    @staticmethod
    def _coerce(x):
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (int, Fraction, Rational)):
            return GaussRat(x, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        n = self * o.conjugate()
        return GaussRat(n.re / d, n.im / d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def conjugate(self) -> GaussRat:
        return GaussRat(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction, Rational)):
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"

    def __str__(self):
        return fmt_scalar(self)


I = GaussRat(0, 1)


def conj(x):
    if isinstance(x, GaussRat):
        return x.conjugate()
    if isinstance(x, complex):
        return x.conjugate()
    return x


def abs2(x):
    """|x|^2, exact for rationals and Gaussian rationals."""
    if isinstance(x, GaussRat):
        return x.abs2()
    if isinstance(x, complex):
        return x.real * x.real + x.imag * x.imag
    return x * x


def as_complex(x) -> complex:
    return complex(x)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, GaussRat))


def to_scalar(x):
    """Collapse a real GaussRat to a Fraction; leave everything else alone."""
    if isinstance(x, GaussRat) and x.im == 0:
        return x.re
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return x


def fmt_scalar(x) -> str:
    """Lossless text form: "num/den" for rationals, "re+im*i" for Gaussian rationals."""
    x = to_scalar(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, GaussRat):
        sign = "+" if x.im >= 0 else "-"
        im = abs(x.im)
        return f"{x.re.numerator}/{x.re.denominator}{sign}{im.numerator}/{im.denominator}*i"
    if isinstance(x, complex):
        return repr(x)
    return repr(float(x))
