"""q-weights, q-chains and the q-difference radical.

Two routes compute the same objects:

* the chain route works on a :class:`FactoredPoly` root multiset and peels
  off maximal runs ``u, qu, ..., q^(n-1)u`` (chains);
* the dense route works on any :class:`DensePoly` through gcds of the
  rescaled polynomials ``p(q^s z)``, so it also handles factors whose
  roots lie outside Q(i).

For nonzero roots with multiplicity function ``m``, a chain element ``x``
is followed by at least ``n`` further elements of its chain exactly
``min(m(x), m(qx), ..., m(q^n x))`` times, which is the multiplicity of
``x`` in ``gcd(p(z), p(qz), ..., p(q^n z))``.  Zero roots form a single
chain and are handled separately on both routes.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Sequence

from .field import ZERO, GaussianRational, Scalar
from .poly import (
    ONE_POLY,
    DensePoly,
    FactoredPoly,
    PolyLike,
    as_dense,
    derivative,
    euclid_gcd,
    evaluate,
    exact_div,
    gcd_many,
    root_multiplicity,
    scale_arg,
    shift_down,
    try_factor,
    zero_multiplicity,
)
from .qcore import QContext


@dataclass(frozen=True)
class QChain:
    """The factor [z - head]_q^length."""

    head: GaussianRational
    length: int

    def roots(self, ctx: QContext) -> list[GaussianRational]:
        return [self.head * ctx.power(k) for k in range(self.length)]


@dataclass(frozen=True)
class ChainDecomposition:
    lead: GaussianRational
    chains: tuple[QChain, ...]

    @property
    def degree(self) -> int:
        return sum(c.length for c in self.chains)

    def flatten(self, ctx: QContext) -> list[GaussianRational]:
        return [r for c in self.chains for r in c.roots(ctx)]

    def signature(self) -> Counter:
        """Multiset of (head, length) pairs, independent of chain order."""
        return Counter((c.head, c.length) for c in self.chains)


def _chain_key(c: QChain):
    return (c.head.re, c.head.im, -c.length)


# -- q-weight -----------------------------------------------------------------


def q_weight(p: DensePoly, z0: Scalar, ctx: QContext) -> int:
    """Length of the vanishing run p(z0) = p(q z0) = ... = 0.

    At z0 = 0, or for q = 1, this is the ordinary multiplicity.
    """
    if p.is_zero():
        raise ValueError("q-weight of the zero polynomial is undefined")
    if not ctx.is_one:
        ctx.require_admissible("q-weight")
    z0 = GaussianRational.coerce(z0)
    if z0.is_zero() or ctx.is_one:
        return root_multiplicity(p, z0)
    n = 0
    x = z0
    while evaluate(p, x).is_zero():
        n += 1
        x = x * ctx.q
    return n


def q_weight_at_value(p: DensePoly, a: Scalar, z0: Scalar, ctx: QContext) -> int:
    """q-weight of z0 as an a-point of p."""
    return q_weight(p - DensePoly.constant(a), z0, ctx)


# -- chain route --------------------------------------------------------------


def chain_decompose(
    f: FactoredPoly,
    ctx: QContext,
    choose: Callable[[list[GaussianRational]], GaussianRational] | None = None,
) -> ChainDecomposition:
    """Greedy peeling of maximal q-runs from the root multiset of ``f``.

    Heads are nonzero roots ``u`` with ``u/q`` absent from the residual
    multiset; by default the smallest head in canonical order is taken
    next.  ``choose`` overrides that pick (used to probe uniqueness).
    """
    ctx.require_admissible("chain decomposition")
    q = ctx.q
    mult = Counter(f.roots)
    chains: list[QChain] = []
    zeros = mult.pop(ZERO, 0)
    if zeros:
        chains.append(QChain(ZERO, zeros))
    while mult:
        heads = [u for u in mult if (u / q) not in mult]
        if choose is None:
            u = min(heads, key=GaussianRational.sort_key)
        else:
            u = choose(heads)
        n, x = 0, u
        while mult.get(x, 0):
            mult[x] -= 1
            if not mult[x]:
                del mult[x]
            n += 1
            x = x * q
        chains.append(QChain(u, n))
    chains.sort(key=_chain_key)
    return ChainDecomposition(f.lead, tuple(chains))


def random_head_order(rng: random.Random) -> Callable[[list[GaussianRational]], GaussianRational]:
    return lambda heads: rng.choice(sorted(heads, key=GaussianRational.sort_key))


def rad_q(f: FactoredPoly, ctx: QContext) -> FactoredPoly:
    """Monic product of (z - head) over all chains."""
    dec = chain_decompose(f, ctx)
    return FactoredPoly(1, [c.head for c in dec.chains])


def _chain_prefixes(dec: ChainDecomposition, ctx: QContext, size: Callable[[int], int]) -> FactoredPoly:
    roots = []
    for c in dec.chains:
        roots.extend(c.head * ctx.power(k) for k in range(size(c.length)))
    return FactoredPoly(1, roots)


def rad_q_trunc(f: FactoredPoly, mu: int, ctx: QContext) -> FactoredPoly:
    """prod_j [z - z_j]_q^min(n_j, mu); mu = 1 gives rad_q."""
    if mu < 1:
        raise ValueError("truncation level must be positive")
    dec = chain_decompose(f, ctx)
    return _chain_prefixes(dec, ctx, lambda n: min(n, mu))


def gcd_tower(f: FactoredPoly, n: int, ctx: QContext) -> FactoredPoly:
    """Closed form of gcd(f, D_q f, ..., D_q^n f): prod_j [z - z_j]_q^[n_j - n]^+."""
    if n < 0:
        raise ValueError("gcd_tower needs n >= 0")
    dec = chain_decompose(f, ctx)
    return _chain_prefixes(dec, ctx, lambda length: max(length - n, 0))


def _run_in(mult: Counter, x: GaussianRational, q: GaussianRational) -> int:
    if x.is_zero():
        return mult.get(ZERO, 0)
    n = 0
    while mult.get(x, 0):
        n += 1
        x = x * q
    return n


def _one_sided_divisors(fm: Counter, gm: Counter, q: GaussianRational) -> set[GaussianRational]:
    found = set()
    for z0 in fm:
        w = _run_in(fm, z0, q)
        x = z0
        for _ in range(w):
            x = x * q
            if gm.get(x, 0):
                found.add(z0)
                break
    return found


def common_q_divisors(f: FactoredPoly, g: FactoredPoly, ctx: QContext) -> set[GaussianRational]:
    """Points z0 whose vanishing q-run in one polynomial continues into the other."""
    ctx.require_admissible("common q-divisors")
    fm, gm = f.multiset(), g.multiset()
    return _one_sided_divisors(fm, gm, ctx.q) | _one_sided_divisors(gm, fm, ctx.q)


@dataclass(frozen=True)
class QPrimeResult:
    """Outcome of a pairwise relative q-primeness check.

    On failure ``pair`` indexes the offending polynomials and ``divisor`` is
    either a common q-divisor point (chain route) or a polynomial whose
    roots are such points (dense route).
    """

    holds: bool
    pair: tuple[int, int] | None = None
    divisor: GaussianRational | DensePoly | None = None
    method: str = "chains"

    def __bool__(self) -> bool:
        return self.holds


def relatively_q_prime(fs: Sequence[FactoredPoly], ctx: QContext) -> QPrimeResult:
    ctx.require_admissible("relative q-primeness")
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            divs = common_q_divisors(fs[i], fs[j], ctx)
            if divs:
                return QPrimeResult(False, (i, j), min(divs, key=GaussianRational.sort_key))
    return QPrimeResult(True)


# -- dense route --------------------------------------------------------------


def _split_zero(p: DensePoly) -> tuple[int, DensePoly]:
    m0 = zero_multiplicity(p)
    return m0, shift_down(p, m0)


def _z_power(k: int) -> DensePoly:
    return DensePoly.monomial(1, k)


def gcd_tower_dense(p: DensePoly, n: int, ctx: QContext) -> DensePoly:
    """gcd(p(z), p(qz), ..., p(q^n z)) on nonzero roots, times z^[m0 - n]^+."""
    ctx.require_admissible("gcd tower")
    if p.is_zero():
        raise ValueError("zero polynomial")
    m0, rest = _split_zero(p)
    g = gcd_many(scale_arg(rest, ctx.power(s)) for s in range(n + 1))
    return g * _z_power(max(m0 - n, 0))


def rad_q_trunc_dense(p: DensePoly, mu: int, ctx: QContext) -> DensePoly:
    """First min(n_j, mu) elements of every chain, computed without roots."""
    ctx.require_admissible("q-radical")
    if mu < 1:
        raise ValueError("truncation level must be positive")
    if p.is_zero():
        raise ValueError("zero polynomial")
    m0, rest = _split_zero(p)
    rest = rest.monic()
    inv = ctx.q.inverse()
    g = gcd_many([rest] + [scale_arg(rest, inv ** s) for s in range(1, mu + 1)])
    return exact_div(rest, g).monic() * _z_power(min(m0, mu))


def rad_q_dense(p: DensePoly, ctx: QContext) -> DensePoly:
    return rad_q_trunc_dense(p, 1, ctx)


def q_divisor_poly_dense(p: DensePoly, r: DensePoly, ctx: QContext) -> DensePoly:
    """Monic polynomial whose roots are the x with p(x) = 0 and r(qx) = 0, or vice versa.

    Those roots are common q-divisors, and every run that continues into
    the other polynomial ends in one, so the result is constant exactly
    when p and r are relatively q-prime.
    """
    ctx.require_admissible("common q-divisors")
    g1 = euclid_gcd(p, scale_arg(r, ctx.q))
    g2 = euclid_gcd(r, scale_arg(p, ctx.q))
    return (g1 * g2).monic() if g1.degree or g2.degree else ONE_POLY


def relatively_q_prime_dense(fs: Sequence[DensePoly], ctx: QContext) -> QPrimeResult:
    ctx.require_admissible("relative q-primeness")
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            d = q_divisor_poly_dense(fs[i], fs[j], ctx)
            if d.degree > 0:
                return QPrimeResult(False, (i, j), d, method="gcd")
    return QPrimeResult(True, method="gcd")


# -- route selection ----------------------------------------------------------


def factor_all(fs: Sequence[PolyLike]) -> list[FactoredPoly] | None:
    out = []
    for f in fs:
        ff = try_factor(f)
        if ff is None:
            return None
        out.append(ff)
    return out


def relatively_q_prime_any(fs: Sequence[PolyLike], ctx: QContext) -> QPrimeResult:
    """Chain route when every input factors over Q(i), dense route otherwise."""
    if any(as_dense(f).is_zero() for f in fs):
        idx = next(i for i, f in enumerate(fs) if as_dense(f).is_zero())
        return QPrimeResult(False, (idx, idx), None, method="zero")
    factored = factor_all(fs)
    if factored is not None:
        return relatively_q_prime(factored, ctx)
    return relatively_q_prime_dense([as_dense(f) for f in fs], ctx)


def rad_q_trunc_degree(p: PolyLike, mu: int, ctx: QContext) -> int:
    """Chain route for factored input, gcd route for dense input; both agree."""
    if isinstance(p, FactoredPoly):
        return rad_q_trunc(p, mu, ctx).degree
    return rad_q_trunc_dense(p, mu, ctx).degree


def rad_q_degree(p: PolyLike, ctx: QContext) -> int:
    return rad_q_trunc_degree(p, 1, ctx)


def product(fs: Sequence[PolyLike]) -> PolyLike:
    """Product in factored form when every factor splits over Q(i), else dense."""
    factored = factor_all(fs)
    if factored is not None:
        out = FactoredPoly(1)
        for f in factored:
            out = out * f
        return out
    out_d = ONE_POLY
    for f in fs:
        out_d = out_d * as_dense(f)
    return out_d


# -- classical ----------------------------------------------------------------


def classical_rad(p: DensePoly) -> DensePoly:
    """Squarefree part p / gcd(p, p'), monic."""
    if p.is_constant():
        raise ValueError("classical radical needs a nonconstant polynomial")
    return exact_div(p, euclid_gcd(p, derivative(p))).monic()
