"""Exact arithmetic over the Gaussian rationals Q(i).

Rationals are :class:`fractions.Fraction`; a :class:`GaussianRational` is a
pair of them.  Nothing in this package ever touches floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

Rational = Fraction

Scalar = Union["GaussianRational", Fraction, int]


class GaussianRational:
    """Immutable complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    re: Fraction
    im: Fraction

    def __init__(self, re: Fraction | int = 0, im: Fraction | int = 0) -> None:
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    @classmethod
    def coerce(cls, x: Scalar) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        if isinstance(x, str):
            return parse_gaussian(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: Scalar) -> GaussianRational:
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re + other, self.im)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self.re, -self.im)

    def __pos__(self) -> GaussianRational:
        return self

    def __sub__(self, other: Scalar) -> GaussianRational:
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re - other, self.im)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: Scalar) -> GaussianRational:
        return (-self) + other

    def __mul__(self, other: Scalar) -> GaussianRational:
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        if not other.im:
            return GaussianRational(self.re * other.re, self.im * other.re)
        if not self.im:
            return GaussianRational(self.re * other.re, self.re * other.im)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> GaussianRational:
        if self.is_zero():
            raise ZeroDivisionError("GaussianRational division by zero")
        if not self.im:
            return GaussianRational(1 / self.re)
        n = self.norm()
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other: Scalar) -> GaussianRational:
        other = GaussianRational.coerce(other)
        if not other.im:
            if not other.re:
                raise ZeroDivisionError("GaussianRational division by zero")
            return GaussianRational(self.re / other.re, self.im / other.re)
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> GaussianRational:
        return GaussianRational.coerce(other) / self

    def __pow__(self, k: int) -> GaussianRational:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        # agree with hash(int) / hash(Fraction) for real values
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.re, self.im)

    def __lt__(self, other: GaussianRational) -> bool:
        return canonical_cmp(self, GaussianRational.coerce(other)) < 0

    def __str__(self) -> str:
        return format_gaussian(self)

    def __repr__(self) -> str:
        return f"GaussianRational('{format_gaussian(self)}')"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def arith(x: Scalar, y: Scalar, kind: str) -> GaussianRational:
    """Apply ``kind`` (add, sub, mul, div) to two field elements."""
    x = GaussianRational.coerce(x)
    y = GaussianRational.coerce(y)
    if kind == "add":
        return x + y
    if kind == "sub":
        return x - y
    if kind == "mul":
        return x * y
    if kind == "div":
        return x / y
    raise ValueError(f"unknown operation {kind!r}")


def norm(x: Scalar) -> Fraction:
    """Squared modulus ``re^2 + im^2``; ``|q| != 1`` iff ``norm(q) != 1``."""
    return GaussianRational.coerce(x).norm()


def canonical_cmp(x: GaussianRational, y: GaussianRational) -> int:
    """Total order: real parts first, imaginary parts break ties."""
    if x.re != y.re:
        return -1 if x.re < y.re else 1
    if x.im != y.im:
        return -1 if x.im < y.im else 1
    return 0


def _fmt_rational(r: Fraction) -> str:
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def format_gaussian(x: GaussianRational) -> str:
    """Canonical text: ``3``, ``-1/2``, ``2+1/3i``, ``-i``."""
    if not x.im:
        return _fmt_rational(x.re)
    mag = abs(x.im)
    imag = "i" if mag == 1 else _fmt_rational(mag) + "i"
    if not x.re:
        return imag if x.im > 0 else "-" + imag
    sign = "+" if x.im > 0 else "-"
    return _fmt_rational(x.re) + sign + imag


_RAT = r"\d+(?:/\d+)?"
_GAUSS_RE = re.compile(
    rf"^(?:(?P<re>[+-]?{_RAT})(?=$|[+-]))?"
    rf"(?:(?P<isign>[+-])?(?P<im>{_RAT})?(?P<i>i))?$"
)


def _parse_rational(text: str) -> Fraction:
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError("zero denominator")
    return Fraction(int(num), int(den) if den else 1)


def parse_gaussian(text: str) -> GaussianRational:
    """Inverse of :func:`format_gaussian`; also accepts non-reduced fractions."""
    m = _GAUSS_RE.match(text.strip())
    if not m or not text.strip() or (m.group("re") is None and m.group("i") is None):
        raise ValueError(f"not a Gaussian rational: {text!r}")
    re_part = _parse_rational(m.group("re")) if m.group("re") else Fraction(0)
    im_part = Fraction(0)
    if m.group("i"):
        if m.group("re") and not m.group("isign"):
            raise ValueError(f"not a Gaussian rational: {text!r}")
        im_part = _parse_rational(m.group("im")) if m.group("im") else Fraction(1)
        if m.group("isign") == "-":
            im_part = -im_part
    return GaussianRational(re_part, im_part)


def gr(x: Scalar | str) -> GaussianRational:
    """Shorthand constructor used throughout the tests and the CLI."""
    return GaussianRational.coerce(x)
