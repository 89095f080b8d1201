"""Acceptance criteria AC1..AC11, all exact.

Each test carries a ``criterion`` marker; the conftest prints one PASS/FAIL
line per criterion at the end of the run.
"""

import io
import json
import random
from collections import Counter
from fractions import Fraction
from functools import lru_cache

import pytest

from oracles import random_dense, random_gaussian, random_orbit_factored
from qradical import (
    CasoratiInput,
    DensePoly,
    FactoredPoly,
    QContext,
    casorati,
    casorati_shift_form,
    chain_decompose,
    classical_rad,
    common_q_divisors,
    derivative_from_shifts,
    euclid_gcd,
    fermat_search,
    gcd_tower,
    gr,
    jackson,
    parse_poly,
    q_binomial,
    q_number,
    q_pow_factor,
    q_weight,
    q_weight_at_value,
    rad_q,
    rad_q_trunc,
    shift_from_derivatives,
    verify_mason_extended,
    verify_mason_q,
)
from qradical.cli import run
from qradical.poly import as_dense, gcd_many
from qradical.qcore import jackson_iter
from qradical.radical import random_head_order, rad_q_trunc_degree, relatively_q_prime_any

criterion = pytest.mark.criterion


# -- AC1 ----------------------------------------------------------------------


@criterion("AC1")
@pytest.mark.parametrize("q", ["2", "1/2", "3"])
def test_ac1_example_abc(q):
    ctx = QContext.of(q)
    a = parse_poly("qb(1;2)", ctx)
    b = parse_poly("-qb(-1;2)", ctx)
    c = parse_poly("-2*(q+1)*z", ctx)
    assert as_dense(a) + as_dense(b) == as_dense(c)
    rep = verify_mason_q(a, b, c, ctx)
    assert all(p.holds for p in rep.premises)
    assert rep.max_deg == 2
    assert rep.rad_deg == 3
    assert rep.inequality_holds and rep.sharp and rep.max_deg == rep.rad_deg - 1
    # rad_q(abc) = z(z^2 - 1)
    assert rad_q(a * b * c, ctx).expand() == DensePoly([0, -1, 0, 1])


# -- AC2 ----------------------------------------------------------------------


@criterion("AC2")
def test_ac2_section4_example():
    ctx = QContext.of(2)
    q = ctx.q
    f1 = q_pow_factor(1, 5, ctx)
    f2 = -q_pow_factor(-1, 5, ctx)
    f3 = DensePoly.monomial(2 * q_number(5, ctx), 4)
    f4 = f1.expand() + f2.expand() + f3
    assert f4 == DensePoly.monomial(-2 * q**3 * q_binomial(5, 2, ctx), 2) + DensePoly.constant(-2 * q**10)
    assert f4 == DensePoly([-2048, 0, -2480])
    fs = [f1, f2, f3, f4]
    for f in fs:
        assert rad_q_trunc_degree(f, 2, ctx) == 2
    rep = verify_mason_extended(fs, ctx)
    assert all(p.holds for p in rep.premises), rep.premises
    assert rep.lhs == 5 and rep.rad_trunc_deg == 8 and rep.rhs_trunc == 8 - 3 == 5
    assert rep.first_holds and rep.sharp and rep.second_holds
    # +-q^-1, 0, +-q, ..., +-q^5 are not zeros of f4
    points = [gr(0)] + [s * q**k for k in [-1, 1, 2, 3, 4, 5] for s in (1, -1)]
    assert all(not f4(x).is_zero() for x in points)
    assert relatively_q_prime_any(fs, ctx)


# -- AC3 ----------------------------------------------------------------------


@criterion("AC3")
def test_ac3_common_divisors():
    ctx = QContext.of(2)
    f = FactoredPoly(1, [1, 2, 4])
    g = FactoredPoly(1, [4, 8, 16])
    h = FactoredPoly(1, [8, 16])
    assert common_q_divisors(f, g, ctx) == {gr(1), gr(2), gr(4)}
    assert common_q_divisors(f, h, ctx) == {gr(1), gr(2), gr(4)}
    assert euclid_gcd(f.expand(), h.expand()) == DensePoly([1])


# -- AC4 ----------------------------------------------------------------------


def dq_by_evaluation(p, k, x, q):
    """D_q^k p(x) through the difference quotient, values only."""

    @lru_cache(maxsize=None)
    def d(j, y):
        if j == 0:
            return p(y)
        return (d(j - 1, y * q) - d(j - 1, y)) / (y * q - y)

    return d(k, x)


@criterion("AC4")
@pytest.mark.parametrize("q", ["2", "1/2", "2+i"])
def test_ac4_transform_directions(q):
    ctx = QContext.of(q)
    rng = random.Random(404)
    z0s = [gr(1), gr(-2), gr(Fraction(1, 3)), gr("1+i")]
    for _ in range(100):
        p = random_dense(rng, 6)
        for k in range(5):
            for z0 in z0s:
                assert shift_from_derivatives(p, k, z0, ctx) == p(ctx.power(k) * z0)
                direct = dq_by_evaluation(p, k, z0, ctx.q)
                assert direct == jackson_iter(p, k, ctx)(z0)
                assert derivative_from_shifts(p, k, z0, ctx) == direct


# -- AC5 ----------------------------------------------------------------------


@criterion("AC5")
def test_ac5_gcd_tower():
    rng = random.Random(505)
    qs = ["2", "1/2", "3", "2+i"]
    for trial in range(100):
        ctx = QContext.of(qs[trial % len(qs)])
        f = random_orbit_factored(rng, ctx, 8)
        p = f.expand()
        for n in range(4):
            tower = gcd_many(jackson_iter(p, j, ctx) for j in range(n + 1))
            got = gcd_tower(f, n, ctx)
            assert got.expand() == tower
            trunc = rad_q_trunc(f, n, ctx).degree if n else 0  # level 0 keeps nothing
            assert p.degree - got.degree == trunc


# -- AC6 ----------------------------------------------------------------------


@criterion("AC6")
def test_ac6_weight_drops_by_one():
    rng = random.Random(606)
    qs = ["2", "1/2", "3", "-2", "2+i", "1/3"]
    done = 0
    while done < 100:
        ctx = QContext.of(rng.choice(qs))
        z0 = random_gaussian(rng)
        if z0.is_zero():
            continue
        a = random_gaussian(rng)
        h = random_dense(rng, 3)
        if h.is_zero():
            continue
        p = q_pow_factor(z0, rng.randint(1, 4), ctx).expand() * h + DensePoly.constant(a)
        n = q_weight_at_value(p, a, z0, ctx)
        assert n >= 1
        assert q_weight(jackson(p, ctx), z0, ctx) == n - 1
        done += 1


# -- AC7 ----------------------------------------------------------------------


@criterion("AC7")
def test_ac7_abc_sweep():
    rng = random.Random(707)
    qs = ["2", "1/2", "3", "2+i"]
    pool = [gr(x) for x in (0, 1, -1, 2, -2, 3, -3, 4, 6, Fraction(1, 2), Fraction(-1, 3))] + [gr("i"), gr("1+i")]
    passing = violations = attempts = 0
    while passing < 200:
        attempts += 1
        assert attempts < 5000, "too few premise-passing triples"
        ctx = QContext.of(qs[attempts % len(qs)])
        a = FactoredPoly(random_gaussian(rng) or 1, rng.choices(pool, k=rng.randint(0, 3)))
        b = FactoredPoly(random_gaussian(rng) or 1, rng.choices(pool, k=rng.randint(0, 3)))
        c = a.expand() + b.expand()
        if c.is_zero():
            continue
        rep = verify_mason_q(a, b, c, ctx)
        if rep.verdict == "not-applicable":
            continue
        passing += 1
        violations += not rep.inequality_holds
    assert violations == 0


# -- AC8 ----------------------------------------------------------------------


def _search_doc(n, threads):
    out, err = io.StringIO(), io.StringIO()
    argv = ["search-fermat", "--q", "2", "--n", str(n), "--max-deg", "1", "--coeff", "-2..2", "--threads", str(threads)]
    code = run(argv, out, err)
    return code, json.loads(out.getvalue())


@criterion("AC8")
def test_ac8_fermat_n3_none_found():
    code, d = _search_doc(3, 1)
    assert code == 0 and d["verdict"] == "consistent"
    assert d["quantities"]["outcome"] == "none-found" and d["payload"]["solutions"] == []
    assert int(d["quantities"]["premise_passing"]) > 0
    assert int(d["quantities"]["examined"]) == int(d["quantities"]["total_candidates"]) == 5 ** 6


@criterion("AC8")
def test_ac8_fermat_n1_solutions():
    cert = fermat_search(1, 1, [gr(k) for k in range(-2, 3)], QContext.of(2))
    assert cert.outcome == "solutions-found" and len(cert.solutions) >= 1


@criterion("AC8")
@pytest.mark.parametrize("n", [1, 3])
def test_ac8_deterministic_across_threads(n):
    assert _search_doc(n, 1) == _search_doc(n, 2) == _search_doc(n, 3)


# -- AC9 ----------------------------------------------------------------------

AC9_QS = ["2", "1/2", "2+i", "-3"]


def _cas(polys, ctx):
    return casorati(CasoratiInput(tuple(polys), ctx))


@criterion("AC9")
def test_ac9_alternation_and_replacement():
    rng = random.Random(909)
    for trial in range(40):
        ctx = QContext.of(AC9_QS[trial % 4])
        m = 2 + trial % 3
        fs = [random_dense(rng, 5) for _ in range(m)]
        base = _cas(fs, ctx)
        i, j = rng.sample(range(m), 2)
        swapped = list(fs)
        swapped[i], swapped[j] = swapped[j], swapped[i]
        assert _cas(swapped, ctx) == -base
        repeated = list(fs)
        repeated[j] = repeated[i]
        assert _cas(repeated, ctx).is_zero()
        total = DensePoly()
        for f in fs:
            total = total + f
        replaced = list(fs)
        replaced[j] = total
        assert _cas(replaced, ctx) == base


@criterion("AC9")
def test_ac9_shift_form_identity():
    rng = random.Random(919)
    for trial in range(40):
        ctx = QContext.of(AC9_QS[trial % 4])
        m = 1 + trial % 4
        fs = tuple(random_dense(rng, 5) for _ in range(m))
        det, norm = casorati_shift_form(CasoratiInput(fs, ctx))
        assert det == norm * _cas(fs, ctx)
        assert norm.degree == m * (m - 1) // 2


def _printed_normalizer(m, ctx):
    return DensePoly([0, ctx.q - 1]) ** (m - 1)


@criterion("AC9")
@pytest.mark.parametrize("q", AC9_QS)
def test_ac9_printed_normalizer_m2(q):
    ctx = QContext.of(q)
    rng = random.Random(f"m2-{q}")
    for _ in range(10):
        fs = (random_dense(rng, 5), random_dense(rng, 5))
        det, norm = casorati_shift_form(CasoratiInput(fs, ctx))
        assert norm == _printed_normalizer(2, ctx)
        assert det == _printed_normalizer(2, ctx) * _cas(fs, ctx)


@criterion("AC9")
@pytest.mark.parametrize("q", AC9_QS)
def test_ac9_m3_needs_exponent_three(q):
    ctx = QContext.of(q)
    fs = (DensePoly([1]), DensePoly.z(), DensePoly.monomial(1, 2))
    det, norm = casorati_shift_form(CasoratiInput(fs, ctx))
    cas = _cas(fs, ctx)
    assert not cas.is_zero()
    assert det != _printed_normalizer(3, ctx) * cas  # exponent m - 1 = 2 fails
    assert det == DensePoly([0, ctx.q - 1]) ** 3 * ctx.q * cas  # q^1 (qz - z)^3
    assert norm.degree == 3


# -- AC10 ---------------------------------------------------------------------


def _q_related(x, y, q):
    """True when x = q^k y for some integer k != 0 (|q| != 1 bounds k)."""
    if x.is_zero() or y.is_zero():
        return False
    ratio = x / y
    nq = q.norm()
    for sign in (1, -1):
        k, v = 1, q if sign == 1 else q.inverse()
        while True:
            if v == ratio:
                return True
            big = (v.norm() > ratio.norm()) if (nq > 1) == (sign == 1) else (v.norm() < ratio.norm())
            if big or k > 64:
                break
            v, k = v * (q if sign == 1 else q.inverse()), k + 1
    return False


@criterion("AC10")
def test_ac10_squarefree_limit():
    rng = random.Random(1010)
    qs = ["2", "1/2", "3", "2+i"]
    done = 0
    while done < 50:
        ctx = QContext.of(qs[done % 4])
        roots = list({random_gaussian(rng) for _ in range(rng.randint(1, 6))})
        if any(_q_related(x, y, ctx.q) for x in roots for y in roots):
            continue
        f = FactoredPoly(rng.choice([1, -2, 5]), roots)
        assert rad_q(f, ctx).expand() == classical_rad(f.expand())
        done += 1


@criterion("AC10")
def test_ac10_q_to_one_claim_pinned():
    ctx = QContext.of(2)
    f = FactoredPoly(1, [1, 1])
    assert rad_q(f, ctx) == FactoredPoly(1, [1, 1])
    assert classical_rad(f.expand()) == DensePoly([-1, 1])
    assert rad_q(f, ctx).expand() != classical_rad(f.expand())


# -- AC11 ---------------------------------------------------------------------


@criterion("AC11")
def test_ac11_chain_uniqueness():
    rng = random.Random(1111)
    qs = ["2", "1/2", "3", "2+i", "-2"]
    violations = []
    for trial in range(200):
        ctx = QContext.of(qs[trial % len(qs)])
        f = random_orbit_factored(rng, ctx, 10)
        ref = chain_decompose(f, ctx).signature()
        for _ in range(5):
            got = chain_decompose(f, ctx, choose=random_head_order(rng))
            assert Counter(got.flatten(ctx)) == f.multiset()
            if got.signature() != ref:
                violations.append(f)
    assert violations == []
