import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from oracles import Z, gcd_ref, poly_sym, random_dense, same_poly, to_sym
from qradical import (
    DensePoly,
    DoesNotSplitError,
    FactoredPoly,
    GaussianRational,
    divrem,
    euclid_gcd,
    evaluate,
    expand,
    extract_rational_roots,
    format_poly,
    gr,
    scale_arg,
)
from qradical.poly import (
    derivative,
    divides,
    exact_div,
    format_factored,
    gcd_many,
    root_multiplicity,
    try_factor,
    zero_multiplicity,
)

small = st.fractions(min_value=-6, max_value=6, max_denominator=3)
scalars = st.builds(GaussianRational, small, small)
polys = st.lists(scalars, max_size=6).map(DensePoly)
roots = st.lists(st.builds(GaussianRational, small, st.sampled_from([0, 0, 0, 1, -1])), max_size=6)


def test_normalization_and_degree():
    assert DensePoly([1, 2, 0, 0]).coeffs == (gr(1), gr(2))
    assert DensePoly([0, 0]).degree == -1
    assert DensePoly([5]).degree == 0
    assert DensePoly.z().degree == 1
    assert DensePoly.monomial(3, 4).coeff(4) == 3


def test_format_known():
    assert format_poly(DensePoly([1, -3, 2])) == "2*z^2 - 3*z + 1"
    assert format_poly(DensePoly([0, GaussianRational(2, 1)])) == "(2+i)*z"
    assert format_poly(DensePoly([0, -1])) == "-z"
    assert format_poly(DensePoly([Fraction(1, 2), 0, 1])) == "z^2 + 1/2"
    assert format_poly(DensePoly()) == "0"
    assert format_factored(FactoredPoly(-2, [0, 1, 1])) == "-2*z*(z - 1)^2"


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@given(polys, polys, scalars)
def test_evaluation_is_homomorphism(a, b, x):
    assert evaluate(a * b, x) == evaluate(a, x) * evaluate(b, x)
    assert (a + b)(x) == a(x) + b(x)


@given(polys, polys.filter(lambda d: not d.is_zero()))
def test_divrem_identity(p, d):
    qt, r = divrem(p, d)
    assert qt * d + r == p
    assert r.degree < d.degree


@given(polys, scalars.filter(lambda c: not c.is_zero()), scalars)
def test_scale_arg(p, c, x):
    assert scale_arg(p, c)(x) == p(c * x)


def test_scale_arg_rejects_zero():
    with pytest.raises(ValueError):
        scale_arg(DensePoly([1, 1]), 0)


def test_euclid_gcd_against_sympy():
    rng = random.Random(7)
    for _ in range(40):
        common = random_dense(rng, 2)
        a = random_dense(rng, 3) * common
        b = random_dense(rng, 3) * common
        if a.is_zero() and b.is_zero():
            continue
        g = euclid_gcd(a, b)
        assert g.is_zero() or g.lead == 1
        assert same_poly(g, gcd_ref([poly_sym(a), poly_sym(b)]))


def test_gcd_many_and_divides():
    f = FactoredPoly(1, [1, 2, 2, 3]).expand()
    g = FactoredPoly(3, [2, 2, 5]).expand()
    h = FactoredPoly(-1, [2, 7]).expand()
    assert gcd_many([f, g, h]) == DensePoly([-2, 1])
    assert divides(DensePoly([-2, 1]), f)
    assert exact_div(f, FactoredPoly(1, [2, 2]).expand()) == FactoredPoly(1, [1, 3]).expand()
    with pytest.raises(ValueError):
        euclid_gcd(DensePoly(), DensePoly())


@given(roots, st.sampled_from([1, -2, GaussianRational(0, 1), Fraction(1, 3)]))
def test_expand_matches_sympy(rs, lead):
    f = FactoredPoly(lead, rs)
    e = sp.Integer(1)
    for r in rs:
        e *= Z - to_sym(r)
    assert same_poly(expand(f), sp.expand(to_sym(GaussianRational.coerce(lead)) * e))


@given(st.lists(small, max_size=6), st.sampled_from([1, -3, Fraction(2, 5)]))
def test_extract_roots_roundtrip(rs, lead):
    f = FactoredPoly(lead, rs)
    got = extract_rational_roots(f.expand())
    assert got == f
    assert got.multiset() == f.multiset()


def test_extract_known():
    f = extract_rational_roots(DensePoly([4, -6, 2]))
    assert f.lead == 2 and f.roots == (gr(1), gr(2))


def test_does_not_split():
    # +-i lie in the field but automatic extraction stops at rational roots
    with pytest.raises(DoesNotSplitError) as info:
        extract_rational_roots(DensePoly([1, 0, 1]))
    assert info.value.residual == DensePoly([1, 0, 1])
    with pytest.raises(ValueError):
        extract_rational_roots(DensePoly())
    q = DensePoly([-2, 0, 1]) * DensePoly([-3, 1])  # z^2 - 2 has no roots in Q(i)
    with pytest.raises(DoesNotSplitError) as info:
        extract_rational_roots(q)
    assert info.value.residual == DensePoly([-2, 0, 1])
    assert info.value.partial.roots == (gr(3),)
    assert try_factor(q) is None


def test_multiplicities():
    p = FactoredPoly(2, [0, 0, 1, 1, 1]).expand()
    assert zero_multiplicity(p) == 2
    assert root_multiplicity(p, 1) == 3
    assert root_multiplicity(p, 5) == 0
    assert derivative(DensePoly([1, 2, 3])) == DensePoly([2, 6])


def test_factored_algebra():
    f = FactoredPoly(2, [1, 3])
    g = FactoredPoly(-1, [3])
    assert (f * g).expand() == f.expand() * g.expand()
    assert (f**3).expand() == f.expand() ** 3
    assert (-f).expand() == -(f.expand())
    assert (f * gr(5)).lead == 10
    with pytest.raises(ValueError):
        FactoredPoly(0, [1])


def test_divisors_bruteforce():
    from qradical.poly import _divisors

    for n in range(1, 300):
        assert _divisors(n) == [d for d in range(1, n + 1) if n % d == 0]
    for n in (2 * 1000003, 2480, 97 * 97 * 101):
        ds = _divisors(n)
        assert all(n % d == 0 for d in ds) and ds == sorted(set(ds))
    assert len(_divisors(2**20 * 3**5)) == 21 * 6
    assert _divisors(0) == []


def test_roots_at_plus_minus_one_and_fractions():
    f = FactoredPoly(6, [1, 1, -1, Fraction(1, 2), Fraction(-1, 3), 0])
    assert extract_rational_roots(f.expand()) == f
    big = FactoredPoly(1, [2**12, -(3**7), Fraction(5, 2**9)])
    assert extract_rational_roots(big.expand()) == big
