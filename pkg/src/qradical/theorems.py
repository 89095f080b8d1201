"""Premise-checking verifiers for the q-Stothers-Mason inequalities and the
q-Fermat nonexistence bounds, plus an exhaustive certificate search.

Verifiers never raise on a failed premise.  They return a report whose
``verdict`` is ``"holds"``, ``"violated"`` or ``"not-applicable"`` so that
searches can tally why candidates were discarded.  Only an inadmissible q
(|q| = 1) is an error.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .casorati import CasoratiInput, IndependenceReport, independence_report
from .field import GaussianRational, format_gaussian
from .poly import (
    ONE_POLY,
    DensePoly,
    FactoredPoly,
    PolyLike,
    as_dense,
    euclid_gcd,
    format_poly,
    scale_arg,
)
from .qcore import QContext
from .radical import (
    QPrimeResult,
    chain_decompose,
    classical_rad,
    product,
    q_divisor_poly_dense,
    rad_q_degree,
    rad_q_trunc_degree,
    relatively_q_prime_any,
)

HOLDS = "holds"
VIOLATED = "violated"
NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class Premise:
    name: str
    holds: bool
    witness: str | None = None


def _verdict(premises: Sequence[Premise], ok: bool) -> str:
    if not all(p.holds for p in premises):
        return NOT_APPLICABLE
    return HOLDS if ok else VIOLATED


def _qprime_premise(name: str, res: QPrimeResult) -> Premise:
    if res.holds:
        return Premise(name, True)
    i, j = res.pair
    if isinstance(res.divisor, GaussianRational):
        w = f"polys {i},{j}: common q-divisor z - ({format_gaussian(res.divisor)})"
    elif isinstance(res.divisor, DensePoly):
        w = f"polys {i},{j}: common q-divisors at roots of {format_poly(res.divisor)}"
    else:
        w = f"poly {i} is zero"
    return Premise(name, False, w)


def _deg(p: PolyLike) -> int:
    return p.degree


def _is_constant(p: PolyLike) -> bool:
    return as_dense(p).is_constant()


# -- [P]_q^n ------------------------------------------------------------------


def q_fermat_power(p: DensePoly, n: int, ctx: QContext) -> DensePoly:
    """[P]_q^n = P(z) P(qz) ... P(q^(n-1) z)."""
    if n < 1:
        raise ValueError("q_fermat_power needs n >= 1")
    out = ONE_POLY
    for i in range(n):
        out = out * scale_arg(p, ctx.power(i))
    return out


def q_fermat_power_factored(f: FactoredPoly, n: int, ctx: QContext) -> FactoredPoly:
    """Same product on a root multiset: roots of P(q^i z) are q^(-i) * roots(P)."""
    if n < 1:
        raise ValueError("q_fermat_power needs n >= 1")
    d = f.degree
    lead = f.lead ** n * ctx.power(d * n * (n - 1) // 2)
    roots = [r * ctx.power(-i) for i in range(n) for r in f.roots]
    return FactoredPoly(lead, roots)


def q_fermat_power_any(p: PolyLike, n: int, ctx: QContext) -> PolyLike:
    if isinstance(p, FactoredPoly):
        return q_fermat_power_factored(p, n, ctx)
    return q_fermat_power(p, n, ctx)


# -- q-Stothers-Mason ---------------------------------------------------------


@dataclass
class MasonReport:
    premises: list[Premise]
    max_deg: int
    rad_deg: int
    inequality_holds: bool
    sharp: bool
    method: str = "chains"
    chains: list[tuple[GaussianRational, int]] | None = None

    @property
    def verdict(self) -> str:
        return _verdict(self.premises, self.inequality_holds)


def verify_mason_q(a: PolyLike, b: PolyLike, c: PolyLike, ctx: QContext) -> MasonReport:
    """Check max deg(a, b, c) <= deg rad_q(abc) - 1 under its premises."""
    ctx.require_admissible("the q-Stothers-Mason theorem")
    polys = [a, b, c]
    dense = [as_dense(p) for p in polys]
    nonzero = all(not d.is_zero() for d in dense)
    premises = [
        Premise("admissible_q", True),
        Premise("nonzero", nonzero),
        Premise("sum_identity", dense[0] + dense[1] == dense[2],
                None if dense[0] + dense[1] == dense[2] else
                f"a + b - c = {format_poly(dense[0] + dense[1] - dense[2])}"),
        Premise("not_all_constant", not all(d.is_constant() for d in dense)),
    ]
    max_deg = max(d.degree for d in dense)
    if not nonzero:
        premises.append(Premise("relatively_q_prime", False, "zero polynomial"))
        return MasonReport(premises, max_deg, 0, False, False, method="none")
    premises.append(_qprime_premise("relatively_q_prime", relatively_q_prime_any(polys, ctx)))
    prod = product(polys)
    if isinstance(prod, FactoredPoly):
        dec = chain_decompose(prod, ctx)
        rad_deg = len(dec.chains)
        chains = [(c.head, c.length) for c in dec.chains]
        method = "chains"
    else:
        rad_deg = rad_q_degree(prod, ctx)
        chains = None
        method = "gcd"
    holds = max_deg <= rad_deg - 1
    return MasonReport(premises, max_deg, rad_deg, holds, max_deg == rad_deg - 1, method, chains)


def verify_mason_classical(a: DensePoly, b: DensePoly, c: DensePoly) -> MasonReport:
    """Classical Stothers-Mason: max deg <= deg rad(abc) - 1 for coprime a + b = c."""
    dense = [as_dense(p) for p in (a, b, c)]
    nonzero = all(not d.is_zero() for d in dense)
    coprime = nonzero
    witness = None
    if nonzero:
        for i, j in ((0, 1), (0, 2), (1, 2)):
            g = euclid_gcd(dense[i], dense[j])
            if g.degree > 0:
                coprime, witness = False, f"gcd of polys {i},{j} = {format_poly(g)}"
                break
    total = dense[0] + dense[1]
    premises = [
        Premise("nonzero", nonzero),
        Premise("sum_identity", total == dense[2]),
        Premise("not_all_constant", not all(d.is_constant() for d in dense)),
        Premise("relatively_prime", coprime, witness),
    ]
    max_deg = max(d.degree for d in dense)
    prod = dense[0] * dense[1] * dense[2]
    rad_deg = classical_rad(prod).degree if prod.degree > 0 else 0
    holds = max_deg <= rad_deg - 1
    return MasonReport(premises, max_deg, rad_deg, holds, max_deg == rad_deg - 1, method="classical")


# -- extended (m + 1 terms) ---------------------------------------------------


@dataclass
class ExtendedReport:
    premises: list[Premise]
    m: int
    lhs: int
    rad_trunc_deg: int
    rad_deg: int
    rhs_trunc: int
    rhs_rad: int
    independence: IndependenceReport

    @property
    def first_holds(self) -> bool:
        return self.lhs <= self.rhs_trunc

    @property
    def second_holds(self) -> bool:
        return self.rhs_trunc <= self.rhs_rad

    @property
    def both_hold(self) -> bool:
        return self.first_holds and self.second_holds

    @property
    def sharp(self) -> bool:
        return self.lhs == self.rhs_trunc

    @property
    def verdict(self) -> str:
        return _verdict(self.premises, self.both_hold)


def _independence_premise(rep: IndependenceReport) -> Premise:
    if rep.independent:
        return Premise("linearly_independent", True)
    note = f"casorati_nonzero={rep.casorati_nonzero}, coefficient_rank_full={rep.coefficient_rank_full}"
    if not rep.agree:
        note += " (signals disagree)"
    return Premise("linearly_independent", False, note)


def verify_mason_extended(fs: Sequence[PolyLike], ctx: QContext) -> ExtendedReport:
    """Check f_1 + ... + f_m = f_(m+1) against both truncated-radical bounds."""
    ctx.require_admissible("the extended q-Stothers-Mason theorem")
    if len(fs) < 3:
        raise ValueError("the extended theorem needs at least three polynomials (m >= 2)")
    m = len(fs) - 1
    dense = [as_dense(f) for f in fs]
    total = DensePoly()
    for d in dense[:m]:
        total = total + d
    nonzero = all(not d.is_zero() for d in dense)
    min_deg = min(d.degree for d in dense)
    indep = independence_report(CasoratiInput(tuple(dense[:m]), ctx))
    premises = [
        Premise("admissible_q", True),
        Premise("nonzero", nonzero),
        Premise("sum_identity", total == dense[m],
                None if total == dense[m] else f"difference {format_poly(total - dense[m])}"),
        Premise("min_degree", min_deg >= m - 1, f"min deg = {min_deg}, need >= {m - 1}"),
        _independence_premise(indep),
    ]
    lhs = max(d.degree for d in dense)
    tri = m * (m - 1) // 2
    if not nonzero:
        premises.append(Premise("pairwise_q_prime", False, "zero polynomial"))
        return ExtendedReport(premises, m, lhs, 0, 0, -tri, -tri, indep)
    premises.append(_qprime_premise("pairwise_q_prime", relatively_q_prime_any(fs, ctx)))
    prod = product(fs)
    rt = rad_q_trunc_degree(prod, m - 1, ctx)
    rd = rad_q_degree(prod, ctx)
    return ExtendedReport(premises, m, lhs, rt, rd, rt - tri, (m - 1) * rd - tri, indep)


# -- q-Fermat -----------------------------------------------------------------


@dataclass
class FermatReport:
    premises: list[Premise]
    n: int
    equation_holds: bool
    lhs: DensePoly
    rhs: DensePoly
    consistent: bool

    @property
    def verdict(self) -> str:
        if not self.equation_holds:
            return NOT_APPLICABLE
        return _verdict(self.premises, self.consistent)


def fermat_abc_consistent(n: int, any_constant: bool) -> bool:
    """n <= 2, and n = 1 as soon as one of a, b, c is constant."""
    return n <= 2 and (n == 1 or not any_constant)


def verify_fermat_instance(a: PolyLike, b: PolyLike, c: PolyLike, n: int, ctx: QContext) -> FermatReport:
    """Check [a]^n + [b]^n = [c]^n and whether it is compatible with n <= 2."""
    ctx.require_admissible("the q-Fermat theorem")
    if n < 1:
        raise ValueError("n must be positive")
    bases = [a, b, c]
    powers = [q_fermat_power_any(p, n, ctx) for p in bases]
    dense = [as_dense(p) for p in powers]
    lhs = dense[0] + dense[1]
    premises = [
        Premise("admissible_q", True),
        Premise("not_all_constant", not all(_is_constant(p) for p in bases)),
        _qprime_premise("powers_relatively_q_prime", relatively_q_prime_any(powers, ctx)),
    ]
    any_const = any(_is_constant(p) for p in bases)
    return FermatReport(premises, n, lhs == dense[2], lhs, dense[2], fermat_abc_consistent(n, any_const))


@dataclass
class MultiBoundReport:
    premises: list[Premise]
    m: int
    n: int
    max_deg: int
    bound: Fraction | None
    equation_holds: bool
    independence: IndependenceReport

    @property
    def bound_holds(self) -> bool:
        return self.bound is not None and self.n <= self.bound

    @property
    def verdict(self) -> str:
        if not self.equation_holds:
            return NOT_APPLICABLE
        return _verdict(self.premises, self.bound_holds)


def multi_fermat_bound(m: int, max_deg: int) -> Fraction:
    """m^2 - 1 - m(m-1) / (2 max_deg), exactly."""
    if max_deg < 1:
        raise ValueError("bound needs a nonconstant polynomial")
    return Fraction(m * m - 1) - Fraction(m * (m - 1), 2 * max_deg)


def verify_fermat_multi_bound(fs: Sequence[PolyLike], n: int, ctx: QContext) -> MultiBoundReport:
    """Check [f_1]^n + ... + [f_m]^n = [f_(m+1)]^n against the exponent bound."""
    ctx.require_admissible("the multi-term q-Fermat theorem")
    if len(fs) < 3:
        raise ValueError("need at least three polynomials (m >= 2)")
    if n < 1:
        raise ValueError("n must be positive")
    m = len(fs) - 1
    powers = [q_fermat_power_any(f, n, ctx) for f in fs]
    dense = [as_dense(p) for p in powers]
    total = DensePoly()
    for d in dense[:m]:
        total = total + d
    nonconstant = all(not _is_constant(f) for f in fs)
    indep = independence_report(CasoratiInput(tuple(dense[:m]), ctx))
    premises = [
        Premise("admissible_q", True),
        Premise("all_nonconstant", nonconstant),
        _qprime_premise("powers_pairwise_q_prime", relatively_q_prime_any(powers, ctx)),
        _independence_premise(indep),
    ]
    max_deg = max(_deg(f) for f in fs)
    bound = multi_fermat_bound(m, max_deg) if max_deg >= 1 else None
    return MultiBoundReport(premises, m, n, max_deg, bound, total == dense[m], indep)


# -- exhaustive search --------------------------------------------------------


@dataclass
class FermatCertificate:
    """Replayable record of an exhaustive q-Fermat search.

    ``filtered`` counts candidates by the first premise they failed;
    candidates passing every premise are tested against the equation.
    """

    parameters: dict
    total: int
    examined: int
    filtered: dict[str, int]
    premise_passing: int
    solutions: list[tuple[str, ...]] = field(default_factory=list)
    violations: list[tuple[str, ...]] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return self.examined == self.total

    @property
    def outcome(self) -> str:
        return "solutions-found" if self.solutions else "none-found"

    @property
    def verdict(self) -> str:
        if self.violations:
            return "counterexample"
        return "consistent" if self.complete else "incomplete"


def candidate_polys(max_deg: int, coeffs: Sequence[GaussianRational]) -> list[DensePoly]:
    """All polynomials of degree <= max_deg over ``coeffs``.

    Order: lexicographic in (c_maxdeg, ..., c_1, c_0) with the coefficient
    set sorted by real then imaginary part.
    """
    cs = sorted(set(coeffs), key=GaussianRational.sort_key)
    return [DensePoly(reversed(t)) for t in itertools.product(cs, repeat=max_deg + 1)]


_ABC_PREMISES = ("nonzero", "not_all_constant", "powers_relatively_q_prime")
_MULTI_PREMISES = ("nonzero", "all_nonconstant", "powers_pairwise_q_prime", "powers_independent")


def _decode(index: int, base: int, width: int) -> tuple[int, ...]:
    digits = []
    for _ in range(width):
        index, d = divmod(index, base)
        digits.append(d)
    return tuple(reversed(digits))


def _search_block(args) -> tuple[dict[str, int], int, list[tuple[str, ...]], list[tuple[str, ...]]]:
    lo, hi, polys, n, m, ctx = args
    width = 3 if m is None else m + 1
    names = _ABC_PREMISES if m is None else _MULTI_PREMISES
    base = len(polys)
    filtered = {name: 0 for name in names}
    passing = 0
    solutions: list[tuple[str, ...]] = []
    violations: list[tuple[str, ...]] = []
    powers: dict[int, DensePoly] = {}
    qprime: dict[tuple[int, int], bool] = {}

    def power(i: int) -> DensePoly:
        if i not in powers:
            powers[i] = q_fermat_power(polys[i], n, ctx)
        return powers[i]

    def pair_ok(i: int, j: int) -> bool:
        key = (i, j) if i <= j else (j, i)
        if key not in qprime:
            qprime[key] = q_divisor_poly_dense(power(key[0]), power(key[1]), ctx).degree == 0
        return qprime[key]

    for index in range(lo, hi):
        idx = _decode(index, base, width)
        ps = [polys[i] for i in idx]
        if any(p.is_zero() for p in ps):
            filtered["nonzero"] += 1
            continue
        consts = [p.is_constant() for p in ps]
        if m is None:
            if all(consts):
                filtered["not_all_constant"] += 1
                continue
        elif any(consts):
            filtered["all_nonconstant"] += 1
            continue
        if not all(pair_ok(idx[i], idx[j]) for i in range(width) for j in range(i + 1, width)):
            filtered[names[2]] += 1
            continue
        if m is not None:
            rep = independence_report(CasoratiInput(tuple(power(i) for i in idx[:m]), ctx))
            if not rep.independent:
                filtered["powers_independent"] += 1
                continue
        passing += 1
        total = DensePoly()
        for i in idx[:-1]:
            total = total + power(i)
        if total == power(idx[-1]):
            sol = tuple(format_poly(p) for p in ps)
            solutions.append(sol)
            if m is None:
                ok = fermat_abc_consistent(n, any(consts))
            else:
                ok = n <= multi_fermat_bound(m, max(p.degree for p in ps))
            if not ok:
                violations.append(sol)
    return filtered, passing, solutions, violations


def default_threads() -> int:
    return int(os.environ.get("QRADICAL_THREADS", "1"))


def fermat_search(
    n: int,
    max_deg: int,
    coeff_set: Iterable[GaussianRational],
    ctx: QContext,
    m: int | None = None,
    budget: int | None = None,
    threads: int | None = None,
) -> FermatCertificate:
    """Enumerate every tuple of candidate polynomials and test the q-Fermat equation.

    ``m=None`` searches [a]^n + [b]^n = [c]^n with the three-polynomial
    premises; an integer m >= 2 searches the (m+1)-polynomial equation with
    the multi-term premises.  Tuples are indexed lexicographically (first
    polynomial most significant) and only the first ``budget`` are examined.
    The candidate range is cut into contiguous blocks merged in block order,
    so the certificate does not depend on ``threads``.
    """
    ctx.require_admissible("the q-Fermat search")
    if n < 1:
        raise ValueError("n must be positive")
    if m is not None and m < 2:
        raise ValueError("m must be at least 2")
    coeffs = sorted(set(GaussianRational.coerce(c) for c in coeff_set), key=GaussianRational.sort_key)
    polys = candidate_polys(max_deg, coeffs) if coeffs else []
    width = 3 if m is None else m + 1
    total = len(polys) ** width if polys else 0
    limit = total if budget is None else min(total, budget)
    threads = max(1, threads if threads is not None else default_threads())
    nblocks = max(1, min(limit, threads * 4))
    edges = [limit * k // nblocks for k in range(nblocks + 1)]
    jobs = [(edges[k], edges[k + 1], polys, n, m, ctx) for k in range(nblocks) if edges[k] < edges[k + 1]]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_search_block, jobs))
    else:
        results = [_search_block(job) for job in jobs]

    names = _ABC_PREMISES if m is None else _MULTI_PREMISES
    filtered = {name: 0 for name in names}
    passing = 0
    solutions: list[tuple[str, ...]] = []
    violations: list[tuple[str, ...]] = []
    for f, p, s, v in results:
        for k, cnt in f.items():
            filtered[k] += cnt
        passing += p
        solutions.extend(s)
        violations.extend(v)
    params = {
        "n": n,
        "m": m,
        "mode": "abc" if m is None else "multi",
        "q": format_gaussian(ctx.q),
        "max_deg": max_deg,
        "coeff_set": [format_gaussian(c) for c in coeffs],
        "budget": budget,
        "order": "lexicographic; polynomial coefficients from highest power, first polynomial most significant",
    }
    return FermatCertificate(params, total, limit, filtered, passing, solutions, violations)
