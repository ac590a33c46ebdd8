"""Exact Gaussian-rational scalars.

Values are kept in the narrowest exact type that holds them: ``int`` when the
value is an integer, :class:`fractions.Fraction` when it is a real rational,
and :class:`GaussianRational` only when the imaginary part is nonzero. Python's
numeric coercion then keeps the common integer case fast.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union


class GaussianRational:
    """A complex number ``re + im*i`` with rational parts and ``im != 0``.

    Do not construct directly when ``im`` may vanish; use :func:`make` which
    collapses real values back to ``int``/``Fraction``.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return False  # im != 0 by construction
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return make(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return make(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return make(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, Fraction)):
            return make(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return make(self.re / other, self.im / other)
        if isinstance(other, GaussianRational):
            return self * other.conjugate() / other.norm()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return other * self.conjugate() / self.norm()
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return 1 / (self ** -k)
        result: Scalar = 1
        base: Scalar = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return True

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus."""
        return self.re * self.re + self.im * self.im

    def real(self) -> Fraction:
        return self.re

    def imag(self) -> Fraction:
        return self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))


Scalar = Union[int, Fraction, GaussianRational]

I = GaussianRational(0, 1)


def _narrow(x: Fraction) -> Union[int, Fraction]:
    return x.numerator if x.denominator == 1 else x


def make(re, im=0) -> Scalar:
    """Build a scalar from rational parts, narrowing the type when possible."""
    re = Fraction(re)
    im = Fraction(im)
    if im == 0:
        return _narrow(re)
    return GaussianRational(re, im)


def as_scalar(x) -> Scalar:
    """Coerce ``x`` to an exact scalar; floats are refused."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return _narrow(x)
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, str):
        return _narrow(Fraction(x))
    raise TypeError(f"not an exact scalar: {x!r}")


def conj(x: Scalar) -> Scalar:
    return x.conjugate() if isinstance(x, GaussianRational) else x


def real_part(x: Scalar) -> Fraction:
    return x.re if isinstance(x, GaussianRational) else Fraction(x)


def imag_part(x: Scalar) -> Fraction:
    return x.im if isinstance(x, GaussianRational) else Fraction(0)


def to_complex(x: Scalar) -> complex:
    if isinstance(x, GaussianRational):
        return complex(x)
    return complex(float(x), 0.0)


def is_unit_scalar(x: Scalar) -> bool:
    """True iff ``|x| == 1`` exactly."""
    if isinstance(x, GaussianRational):
        return x.norm() == 1
    return x == 1 or x == -1


def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def to_json(x: Scalar) -> dict:
    return {"re": _fmt(real_part(x)), "im": _fmt(imag_part(x))}


def from_json(obj) -> Scalar:
    """Decode ``{"re": "n/d", "im": "n/d"}``; bare ints and strings are accepted."""
    if isinstance(obj, dict):
        try:
            return make(Fraction(str(obj["re"])), Fraction(str(obj.get("im", "0"))))
        except (KeyError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad scalar {obj!r}") from exc
    if isinstance(obj, bool) or isinstance(obj, float):
        raise ValueError(f"bad scalar {obj!r}")
    if isinstance(obj, (int, str)):
        try:
            return as_scalar(obj)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad scalar {obj!r}") from exc
    raise ValueError(f"bad scalar {obj!r}")
