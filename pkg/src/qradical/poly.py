"""Univariate polynomials over Q(i), dense and factored.

``DensePoly`` stores coefficients in ascending order (index k is the
coefficient of z^k) and is used for ring arithmetic, gcds and evaluation.
``FactoredPoly`` stores a leading constant and a root multiset and is the
input form for everything that reasons about q-chains of roots.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Union

from .field import ONE, ZERO, GaussianRational, Scalar, canonical_cmp, format_gaussian

PolyLike = Union["DensePoly", "FactoredPoly"]


class DoesNotSplitError(ValueError):
    """Raised when a polynomial has roots outside the ones we can extract.

    ``residual`` is the monic factor left after deflating every root found;
    ``partial`` is the factorization of what did split.
    """

    def __init__(self, residual: DensePoly, partial: FactoredPoly) -> None:
        super().__init__(f"polynomial does not split over Q; residual factor {residual}")
        self.residual = residual
        self.partial = partial


def _strip(coeffs: Iterable[GaussianRational]) -> tuple[GaussianRational, ...]:
    cs = list(coeffs)
    while cs and cs[-1].is_zero():
        cs.pop()
    return tuple(cs)


class DensePoly:
    """Immutable dense polynomial; the zero polynomial has no coefficients."""

    __slots__ = ("coeffs",)

    coeffs: tuple[GaussianRational, ...]

    def __init__(self, coeffs: Iterable[Scalar] = ()) -> None:
        object.__setattr__(self, "coeffs", _strip(GaussianRational.coerce(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("DensePoly is immutable")

    def __reduce__(self):
        return (DensePoly, (self.coeffs,))

    @classmethod
    def constant(cls, c: Scalar) -> DensePoly:
        return cls([c])

    @classmethod
    def z(cls) -> DensePoly:
        return cls([0, 1])

    @classmethod
    def monomial(cls, c: Scalar, k: int) -> DensePoly:
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lead(self) -> GaussianRational:
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, k: int) -> GaussianRational:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def monic(self) -> DensePoly:
        if self.is_zero():
            return self
        inv = self.lead.inverse()
        return DensePoly(c * inv for c in self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, DensePoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.coeffs == DensePoly.constant(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    @staticmethod
    def _lift(other) -> DensePoly:
        if isinstance(other, DensePoly):
            return other
        if isinstance(other, FactoredPoly):
            return other.expand()
        return DensePoly.constant(other)

    def __add__(self, other) -> DensePoly:
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return DensePoly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self) -> DensePoly:
        return DensePoly(-c for c in self.coeffs)

    def __sub__(self, other) -> DensePoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> DensePoly:
        return self._lift(other) - self

    def __mul__(self, other) -> DensePoly:
        if isinstance(other, (int, Fraction, GaussianRational)):
            c = GaussianRational.coerce(other)
            return DensePoly(x * c for x in self.coeffs)
        other = self._lift(other)
        if not self.coeffs or not other.coeffs:
            return ZERO_POLY
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x.is_zero():
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] = out[i + j] + x * y
        return DensePoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> DensePoly:
        if k < 0:
            raise ValueError("negative polynomial power")
        result = ONE_POLY
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x: Scalar) -> GaussianRational:
        return evaluate(self, x)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"DensePoly('{format_poly(self)}')"


ZERO_POLY = DensePoly()
ONE_POLY = DensePoly([1])


def _root_key(r: GaussianRational):
    return r.sort_key()


class FactoredPoly:
    """``lead * prod(z - r)`` over a multiset of roots."""

    __slots__ = ("lead", "roots")

    lead: GaussianRational
    roots: tuple[GaussianRational, ...]

    def __init__(self, lead: Scalar, roots: Iterable[Scalar] = ()) -> None:
        lead = GaussianRational.coerce(lead)
        if lead.is_zero():
            raise ValueError("FactoredPoly needs a nonzero leading constant")
        rs = sorted((GaussianRational.coerce(r) for r in roots), key=_root_key)
        object.__setattr__(self, "lead", lead)
        object.__setattr__(self, "roots", tuple(rs))

    def __setattr__(self, name, value):
        raise AttributeError("FactoredPoly is immutable")

    def __reduce__(self):
        return (FactoredPoly, (self.lead, self.roots))

    @property
    def degree(self) -> int:
        return len(self.roots)

    def is_constant(self) -> bool:
        return not self.roots

    def multiset(self) -> Counter:
        return Counter(self.roots)

    def expand(self) -> DensePoly:
        return expand(self)

    def monic(self) -> FactoredPoly:
        return FactoredPoly(1, self.roots)

    def __mul__(self, other) -> FactoredPoly:
        if isinstance(other, FactoredPoly):
            return FactoredPoly(self.lead * other.lead, self.roots + other.roots)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return FactoredPoly(self.lead * GaussianRational.coerce(other), self.roots)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self) -> FactoredPoly:
        return FactoredPoly(-self.lead, self.roots)

    def __pow__(self, k: int) -> FactoredPoly:
        if k < 0:
            raise ValueError("negative polynomial power")
        return FactoredPoly(self.lead ** k, self.roots * k)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FactoredPoly):
            return self.lead == other.lead and self.roots == other.roots
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.lead, self.roots))

    def __str__(self) -> str:
        return format_factored(self)

    def __repr__(self) -> str:
        return f"FactoredPoly({format_gaussian(self.lead)!r}, [{', '.join(map(format_gaussian, self.roots))}])"


def as_dense(p: PolyLike) -> DensePoly:
    return p.expand() if isinstance(p, FactoredPoly) else p


# -- dense operations ---------------------------------------------------------


def dense_ops(p: DensePoly, r: DensePoly, kind: str) -> DensePoly:
    if kind == "add":
        return p + r
    if kind == "sub":
        return p - r
    if kind == "mul":
        return p * r
    raise ValueError(f"unknown operation {kind!r}")


def evaluate(p: DensePoly, x: Scalar) -> GaussianRational:
    """Horner evaluation."""
    x = GaussianRational.coerce(x)
    acc = ZERO
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def scale_arg(p: DensePoly, c: Scalar) -> DensePoly:
    """The polynomial ``z -> p(c z)``."""
    c = GaussianRational.coerce(c)
    if c.is_zero():
        raise ValueError("scale_arg needs a nonzero scale")
    out = []
    power = ONE
    for coeff in p.coeffs:
        out.append(coeff * power)
        power = power * c
    return DensePoly(out)


def divrem(p: DensePoly, d: DensePoly) -> tuple[DensePoly, DensePoly]:
    if d.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p.coeffs)
    dd = d.degree
    if len(rem) - 1 < dd:
        return ZERO_POLY, p
    inv = d.lead.inverse()
    quot = [ZERO] * (len(rem) - dd)
    for k in range(len(rem) - 1, dd - 1, -1):
        c = rem[k]
        if c.is_zero():
            continue
        c = c * inv
        quot[k - dd] = c
        for j, dc in enumerate(d.coeffs):
            rem[k - dd + j] = rem[k - dd + j] - c * dc
    return DensePoly(quot), DensePoly(rem[:dd])


def exact_div(p: DensePoly, d: DensePoly) -> DensePoly:
    q, r = divrem(p, d)
    if not r.is_zero():
        raise ArithmeticError(f"{d} does not divide {p}")
    return q


def divides(d: DensePoly, p: DensePoly) -> bool:
    return divrem(p, d)[1].is_zero()


def euclid_gcd(p: DensePoly, r: DensePoly) -> DensePoly:
    """Monic gcd by the Euclidean algorithm."""
    if p.is_zero() and r.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    a, b = p, r
    while not b.is_zero():
        a, b = b, divrem(a, b)[1].monic()
    return a.monic()


def gcd_many(polys: Iterable[DensePoly]) -> DensePoly:
    g = ZERO_POLY
    for p in polys:
        if g.is_zero():
            g = p.monic()
        elif not p.is_zero():
            g = euclid_gcd(g, p)
        if g == ONE_POLY:
            break
    if g.is_zero():
        raise ValueError("gcd of zero polynomials is undefined")
    return g


def derivative(p: DensePoly) -> DensePoly:
    """Classical derivative."""
    return DensePoly(c * k for k, c in enumerate(p.coeffs) if k)


def expand(f: FactoredPoly) -> DensePoly:
    coeffs = [f.lead]
    for r in f.roots:
        # multiply by (z - r)
        nxt = [ZERO] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] = nxt[k + 1] + c
            nxt[k] = nxt[k] - c * r
        coeffs = nxt
    return DensePoly(coeffs)


def zero_multiplicity(p: DensePoly) -> int:
    """Multiplicity of z = 0 as a root of a nonzero polynomial."""
    k = 0
    while k < len(p.coeffs) and p.coeffs[k].is_zero():
        k += 1
    return k


def shift_down(p: DensePoly, k: int) -> DensePoly:
    """Divide by z^k (caller guarantees exactness)."""
    return DensePoly(p.coeffs[k:])


def root_multiplicity(p: DensePoly, x: Scalar) -> int:
    if p.is_zero():
        raise ValueError("zero polynomial has every point as a root")
    x = GaussianRational.coerce(x)
    lin = DensePoly([-x, 1])
    k = 0
    while True:
        q, r = divrem(p, lin)
        if not r.is_zero():
            return k
        p, k = q, k + 1


# -- rational root extraction -------------------------------------------------


def _divisors(n: int) -> list[int]:
    """Positive divisors of n, from its factorization by trial division."""
    n = abs(n)
    if n == 0:
        return []
    divs = [1]
    p = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            divs = [d * p**e for d in divs for e in range(k + 1)]
        p += 1 if p == 2 else 2
    if n > 1:
        divs = divs + [d * n for d in divs]
    return sorted(divs)


def _integer_coeffs(p: DensePoly) -> list[int]:
    """Scale a polynomial with rational coefficients to primitive integers."""
    den = 1
    for c in p.coeffs:
        den = lcm(den, c.re.denominator)
    ints = [int(c.re * den) for c in p.coeffs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints] if g else ints


def _is_int_root(ints: list[int], num: int, den: int) -> bool:
    # homogenized Horner: sum a_k num^k den^(d-k)
    acc = 0
    scale = 1
    for a in reversed(ints):
        acc = acc * num + a * scale
        scale *= den
    return acc == 0


def _rational_root_candidates(p: DensePoly) -> list[Fraction]:
    """Rational roots of p, from the rational root theorem.

    Candidates num/den are pruned by the Cauchy bound and the classical
    tests (den - num) | P(1), (den + num) | P(-1) before exact evaluation.
    """
    ints = _integer_coeffs(p)
    while ints and ints[0] == 0:
        ints = ints[1:]
    if len(ints) < 2:
        return []
    lead, const = ints[-1], ints[0]
    bound = 1 + Fraction(max(abs(a) for a in ints[:-1]), abs(lead))
    p1 = sum(ints)
    pm1 = sum(a if k % 2 == 0 else -a for k, a in enumerate(ints))
    found = set()
    for den in _divisors(lead):
        for num in _divisors(const):
            if Fraction(num, den) > bound or gcd(num, den) != 1:
                continue
            for r in (num, -num):
                if p1 % (den - r) if den != r else p1:
                    continue
                if pm1 % (den + r) if den != -r else pm1:
                    continue
                if _is_int_root(ints, r, den):
                    found.add(Fraction(r, den))
    return sorted(found)


def _real_part_poly(p: DensePoly) -> DensePoly:
    return DensePoly(GaussianRational(c.re) for c in p.coeffs)


def _imag_part_poly(p: DensePoly) -> DensePoly:
    return DensePoly(GaussianRational(c.im) for c in p.coeffs)


def extract_rational_roots(p: DensePoly) -> FactoredPoly:
    """Factor ``p`` completely over Q, or raise :class:`DoesNotSplitError`.

    Coefficients may be Gaussian rationals: a rational root of the monic
    ``p`` is a common root of its real and imaginary parts, so candidates
    come from the rational root theorem applied to their gcd.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no factorization")
    lead = p.lead
    rest = p.monic()
    roots: list[GaussianRational] = []
    m0 = zero_multiplicity(rest)
    if m0:
        roots.extend([ZERO] * m0)
        rest = shift_down(rest, m0)
    if rest.degree > 0:
        im = _imag_part_poly(rest)
        search = _real_part_poly(rest) if im.is_zero() else euclid_gcd(_real_part_poly(rest), im)
        if search.degree > 0:
            for cand in _rational_root_candidates(search):
                x = GaussianRational(cand)
                lin = DensePoly([-x, 1])
                while rest.degree > 0:
                    q, r = divrem(rest, lin)
                    if not r.is_zero():
                        break
                    roots.append(x)
                    rest = q
    if rest.degree > 0:
        raise DoesNotSplitError(rest, FactoredPoly(lead, roots))
    return FactoredPoly(lead, roots)


def try_factor(p: PolyLike) -> FactoredPoly | None:
    """Factored form if available without new algebraic numbers, else None."""
    if isinstance(p, FactoredPoly):
        return p
    if p.is_zero():
        return None
    try:
        return extract_rational_roots(p)
    except DoesNotSplitError:
        return None


# -- printing -----------------------------------------------------------------


def _power_str(k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return "z"
    return f"z^{k}"


def format_poly(p: DensePoly) -> str:
    """Descending powers with explicit signs, e.g. ``2*z^2 - 3*z + 1``.

    The output is accepted back by :func:`qradical.parser.parse_poly`.
    """
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c.is_zero():
            continue
        mon = _power_str(k)
        if c.re and c.im:
            sign, body = "+", f"({format_gaussian(c)})"
        else:
            neg = (c.re < 0) if c.re else (c.im < 0)
            sign = "-" if neg else "+"
            body = format_gaussian(-c if neg else c)
        if mon:
            if body == "1":
                body = mon
            else:
                body = f"{body}*{mon}"
        if not parts:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def _linear_factor_str(r: GaussianRational) -> str:
    if r.is_zero():
        return "z"
    return "(" + format_poly(DensePoly([-r, 1])) + ")"


def format_factored(f: FactoredPoly) -> str:
    """Product form such as ``-2*z*(z - 1)^2``; also parseable."""
    counts: dict[GaussianRational, int] = {}
    for r in f.roots:
        counts[r] = counts.get(r, 0) + 1
    factors = []
    for r, k in counts.items():
        s = _linear_factor_str(r)
        factors.append(s if k == 1 else f"{s}^{k}")
    if not factors:
        lead = format_gaussian(f.lead)
        return f"({lead})" if f.lead.re and f.lead.im else lead
    body = "*".join(factors)
    if f.lead == 1:
        return body
    if f.lead == -1:
        return "-" + body
    lead = format_gaussian(f.lead)
    if f.lead.re and f.lead.im:
        lead = f"({lead})"
    return f"{lead}*{body}"


def sorted_roots(rs: Iterable[GaussianRational]) -> list[GaussianRational]:
    from functools import cmp_to_key

    return sorted(rs, key=cmp_to_key(canonical_cmp))
