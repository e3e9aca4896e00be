"""Exact Gaussian-rational scalars.

Internally the library computes with plain ``int`` and ``fractions.Fraction``
whenever a value is real, and only falls back to :class:`GaussianRational`
when an imaginary part is actually present.  Every arithmetic result of a
:class:`GaussianRational` is normalized back down, so a real computation never
pays for the complex wrapper.  :func:`scalar` lifts any of these values to the
canonical public form.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

Value = Union[int, Fraction, "GaussianRational"]


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _shrink(q: Fraction) -> Union[int, Fraction]:
    return q.numerator if q.denominator == 1 else q


def normalize(x) -> Value:
    """Return the cheapest exact representation of ``x``."""
    if isinstance(x, GaussianRational):
        return _shrink(x.re) if x.im == 0 else x
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return _shrink(x)
    if isinstance(x, Rational):
        return _shrink(Fraction(x))
    raise TypeError(f"not an exact scalar: {x!r}")


class GaussianRational:
    """Element ``re + im*i`` of Q(i), both parts exact rationals.

    Instances are immutable.  Comparison with ``int``/``Fraction`` works when
    the imaginary part is zero, and the hash agrees with the real value then.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _q(re))
        object.__setattr__(self, "im", _q(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def of(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return cls(_q(x), 0)

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _parts(x):
        if isinstance(x, GaussianRational):
            return x.re, x.im
        if isinstance(x, (int, Fraction)):
            return x, 0
        if isinstance(x, Rational):
            return Fraction(x), 0
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return normalize(GaussianRational(self.re + p[0], self.im + p[1]))

    __radd__ = __add__

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return normalize(GaussianRational(self.re - p[0], self.im - p[1]))

    def __rsub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return normalize(GaussianRational(p[0] - self.re, p[1] - self.im))

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = p
        return normalize(GaussianRational(a * c - b * d, a * d + b * c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        c, d = p
        den = c * c + d * d
        if den == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        a, b = self.re, self.im
        return normalize(GaussianRational(Fraction(a * c + b * d, den), Fraction(b * c - a * d, den)))

    def __rtruediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return GaussianRational(p[0], p[1]) / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # comparison -------------------------------------------------------------

    def __eq__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return self.re == p[0] and self.im == p[1]

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if self.im == 0:
            return f"GaussianRational({self.re})"
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


Scalar = GaussianRational


def scalar(x) -> GaussianRational:
    """Lift any exact value to its canonical :class:`GaussianRational`."""
    return GaussianRational.of(x)


def is_real(x) -> bool:
    return not isinstance(x, GaussianRational) or x.im == 0


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> list[str]:
    """Text form ``[re, im]`` with rationals written ``p/q`` (``q`` omitted when 1)."""
    s = scalar(x)
    return [_fmt_q(s.re), _fmt_q(s.im)]


def parse_scalar(obj) -> Value:
    """Inverse of :func:`format_scalar`; also accepts a bare int or ``"p/q"``."""
    if isinstance(obj, bool):
        raise ValueError(f"invalid scalar {obj!r}")
    if isinstance(obj, (list, tuple)):
        if len(obj) != 2:
            raise ValueError(f"complex scalar must be [re, im], got {obj!r}")
        re, im = obj
        return normalize(GaussianRational(_parse_q(re), _parse_q(im)))
    return normalize(_parse_q(obj))


def _parse_q(obj) -> Fraction:
    if isinstance(obj, bool) or isinstance(obj, float):
        raise ValueError(f"invalid rational {obj!r}: use an int or a 'p/q' string")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        try:
            return Fraction(obj.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"invalid rational {obj!r}") from exc
    raise ValueError(f"invalid rational {obj!r}")
