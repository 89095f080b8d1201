"""q-numbers, q-binomials, q-power factors and the Jackson operator."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .field import ONE, ZERO, GaussianRational, Scalar, format_gaussian
from .poly import DensePoly, FactoredPoly, evaluate


class InadmissibleQError(ValueError):
    """q violates a hypothesis an operation depends on.

    ``hypothesis`` names the violated condition, e.g. ``"|q| != 1"``.
    """

    def __init__(self, q: GaussianRational, hypothesis: str, what: str = "") -> None:
        where = f" for {what}" if what else ""
        super().__init__(f"q = {format_gaussian(q)} violates {hypothesis}{where}")
        self.q = q
        self.hypothesis = hypothesis


@dataclass(frozen=True)
class QContext:
    q: GaussianRational

    def __post_init__(self) -> None:
        q = GaussianRational.coerce(self.q)
        object.__setattr__(self, "q", q)
        if q.is_zero():
            raise InadmissibleQError(q, "q != 0")

    @classmethod
    def of(cls, q: Scalar | str) -> QContext:
        return cls(GaussianRational.coerce(q))

    @property
    def is_one(self) -> bool:
        return self.q == 1

    @property
    def unit_norm(self) -> bool:
        return self.q.norm() == 1

    def require_jackson(self, what: str = "the Jackson operator") -> None:
        if self.is_one:
            raise InadmissibleQError(self.q, "q != 1", what)

    def require_admissible(self, what: str = "") -> None:
        if self.unit_norm:
            raise InadmissibleQError(self.q, "|q| != 1", what)

    def power(self, k: int) -> GaussianRational:
        return _qpow(self.q, k)

    def __str__(self) -> str:
        return format_gaussian(self.q)


@lru_cache(maxsize=4096)
def _qpow(q: GaussianRational, k: int) -> GaussianRational:
    return q ** k


def q_number(n: int, ctx: QContext) -> GaussianRational:
    """[n]_q = 1 + q + ... + q^(n-1); equals n at q = 1."""
    if n < 0:
        raise ValueError("q_number needs n >= 0")
    total = ZERO
    for k in range(n):
        total = total + ctx.power(k)
    return total


def q_factorial(n: int, ctx: QContext) -> GaussianRational:
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    out = ONE
    for k in range(1, n + 1):
        out = out * q_number(k, ctx)
    return out


def q_binomial(k: int, j: int, ctx: QContext) -> GaussianRational:
    """Gaussian binomial [k j]_q.

    Built with the recurrence [k j] = [k-1 j-1] + q^j [k-1 j] so it stays
    defined when some [i]_q vanishes (q a root of unity).
    """
    if j < 0 or k < 0 or j > k:
        raise ValueError(f"q_binomial needs 0 <= j <= k, got k={k}, j={j}")
    return _q_binomial_row(k, ctx.q)[j]


@lru_cache(maxsize=512)
def _q_binomial_row(k: int, q: GaussianRational) -> tuple[GaussianRational, ...]:
    if k == 0:
        return (ONE,)
    prev = _q_binomial_row(k - 1, q)
    row = [ONE]
    for j in range(1, k):
        row.append(prev[j - 1] + _qpow(q, j) * prev[j])
    row.append(ONE)
    return tuple(row)


def q_pow_factor(a: Scalar, n: int, ctx: QContext) -> FactoredPoly:
    """[z - a]_q^n = (z - a)(z - aq)...(z - aq^(n-1))."""
    if n < 0:
        raise ValueError("q_pow_factor needs n >= 0")
    a = GaussianRational.coerce(a)
    return FactoredPoly(1, [a * ctx.power(k) for k in range(n)])


def jackson(p: DensePoly, ctx: QContext) -> DensePoly:
    """D_q p: the coefficient of z^k becomes [k]_q times it, at z^(k-1)."""
    ctx.require_jackson()
    return DensePoly(q_number(k, ctx) * c for k, c in enumerate(p.coeffs) if k)


def jackson_iter(p: DensePoly, k: int, ctx: QContext) -> DensePoly:
    if k < 0:
        raise ValueError("jackson_iter needs k >= 0")
    if k:
        ctx.require_jackson()
    for _ in range(k):
        if p.is_zero():
            break
        p = jackson(p, ctx)
    return p


def _tri(n: int) -> int:
    return n * (n - 1) // 2


def shift_from_derivatives(p: DensePoly, k: int, z0: Scalar, ctx: QContext) -> GaussianRational:
    """p(q^k z0) rebuilt from D_q^j p(z0), j = 0..k."""
    ctx.require_jackson()
    z0 = GaussianRational.coerce(z0)
    step = ctx.q * z0 - z0
    total = ZERO
    d = p
    for j in range(k + 1):
        if j:
            d = jackson(d, ctx)
        term = ctx.power(_tri(j)) * step ** j * q_binomial(k, j, ctx) * evaluate(d, z0)
        total = total + term
    return total


def derivative_from_shifts(p: DensePoly, k: int, z0: Scalar, ctx: QContext) -> GaussianRational:
    """D_q^k p(z0) rebuilt from the values p(q^j z0), j = 0..k."""
    ctx.require_jackson()
    z0 = GaussianRational.coerce(z0)
    if z0.is_zero():
        raise ValueError("derivative_from_shifts is singular at z0 = 0")
    total = ZERO
    for j in range(k + 1):
        term = ctx.power(_tri(k - j)) * q_binomial(k, j, ctx) * evaluate(p, ctx.power(j) * z0)
        total = total + term if (k - j) % 2 == 0 else total - term
    step = ctx.q * z0 - z0
    return total / (ctx.power(_tri(k)) * step ** k)
