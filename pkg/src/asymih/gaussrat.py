"""Exact Gaussian rationals a + b*i with a, b in Q."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["GaussRat", "as_gauss", "ZERO", "ONE", "I"]


class GaussRat:
    """Immutable element of Q(i).

    Both parts are ``Fraction`` objects in lowest terms, so equality and
    hashing are structural.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussRat":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    # -- predicates --------------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def is_one(self) -> bool:
        return self.re == 1 and not self.im

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussRat._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussRat._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussRat._raw(a * c, b)
        return GaussRat._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussRat._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "GaussRat":
        return GaussRat._raw(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus a^2 + b^2."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussRat":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussRat._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.im:
            if not other.re:
                raise ZeroDivisionError("division by zero in Q(i)")
            return GaussRat._raw(self.re / other.re, self.im / other.re)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def magnitude_bound(self) -> Fraction:
        """|re| + |im|, an exact upper bound for the modulus."""
        return abs(self.re) + abs(self.im)

    # -- comparison / hashing ---------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- printing ----------------------------------------------------------
    def __repr__(self):
        return f"GaussRat({self})"

    def __str__(self):
        re, im = self.re, self.im
        if not im:
            return str(re)
        im_part = _imag_str(im)
        if not re:
            return im_part
        sign = "-" if im < 0 else "+"
        return f"{re}{sign}{_imag_str(abs(im))}"

    def to_json(self):
        """[re, im] as strings, exact."""
        return [str(self.re), str(self.im)]

    @classmethod
    def from_json(cls, pair) -> "GaussRat":
        re, im = pair
        return cls(Fraction(re), Fraction(im))


def _imag_str(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}*i"


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot build an exact rational from {type(x).__name__}")


def _coerce(x):
    if isinstance(x, GaussRat):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussRat._raw(Fraction(x), Fraction(0))
    return NotImplemented


def as_gauss(x) -> GaussRat:
    c = _coerce(x)
    if c is NotImplemented:
        raise TypeError(f"not an exact Gaussian rational: {x!r}")
    return c


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)
