import random

import pytest
import sympy as sp

from oracles import poly_sym, random_dense, same_poly, to_sym
from qradical import (
    CasoratiInput,
    DensePoly,
    InadmissibleQError,
    QContext,
    casorati,
    casorati_shift_form,
    independence_report,
    jackson_iter,
)
from qradical.casorati import coefficient_rank, matrix_rank, poly_det

Q2 = QContext.of(2)
ONE, ZZ, Z2 = DensePoly([1]), DensePoly.z(), DensePoly.monomial(1, 2)


def cas(polys, ctx=Q2):
    return casorati(CasoratiInput(tuple(polys), ctx))


def casorati_ref(polys, ctx):
    """sympy determinant of the D_q^i f_j matrix."""
    m = len(polys)
    M = sp.Matrix(m, m, lambda i, j: poly_sym(jackson_iter(polys[j], i, ctx)))
    return sp.expand(M.det(method="berkowitz"))


def test_examples():
    assert cas([ONE, ZZ]) == ONE
    f = DensePoly([1, 2, 3])
    assert cas([f, f * 5]).is_zero()
    assert cas([ONE, ZZ, Z2]) == DensePoly([3])


def test_shift_form_examples():
    det, norm = casorati_shift_form(CasoratiInput((ONE, ZZ), Q2))
    assert det == ZZ and norm == ZZ
    f = DensePoly([1, 2])
    det, norm = casorati_shift_form(CasoratiInput((f,), Q2))
    assert det == f and norm == ONE
    det, norm = casorati_shift_form(CasoratiInput((ONE, ZZ, Z2), Q2))
    assert norm == DensePoly.monomial(2, 3)  # q^1 (qz - z)^3 at q = 2
    assert det == norm * 3


@pytest.mark.parametrize("q", ["2", "1/2", "2+i", "-3"])
def test_determinant_against_sympy(q):
    ctx = QContext.of(q)
    rng = random.Random(f"cas-{q}")
    for m in range(1, 5):
        for _ in range(4):
            polys = [random_dense(rng, 4) for _ in range(m)]
            assert same_poly(cas(polys, ctx), casorati_ref(polys, ctx))


def test_poly_det_pivoting():
    # zero leading entry forces a row swap
    M = [[DensePoly(), ONE], [ONE, ZZ]]
    assert poly_det(M) == DensePoly([-1])


@pytest.mark.parametrize(
    "polys,full",
    [
        ((ONE, ZZ, Z2), True),
        ((DensePoly([1, 1]), DensePoly([2, 2])), False),
        ((DensePoly([1, 1]), DensePoly([-1, 1]), DensePoly([0, 2])), False),
    ],
)
def test_independence_examples(polys, full):
    rep = independence_report(CasoratiInput(polys, Q2))
    assert rep.casorati_nonzero == full
    assert rep.coefficient_rank_full == full
    assert rep.agree and rep.independent == full


def test_rank_against_sympy():
    rng = random.Random(11)
    for _ in range(30):
        polys = [random_dense(rng, 3, complex_ok=False) for _ in range(rng.randint(1, 4))]
        if rng.random() < 0.4 and len(polys) > 1:
            polys[-1] = polys[0] * 2 + polys[1]
        width = max(p.degree for p in polys) + 1
        M = sp.Matrix([[to_sym(p.coeff(k)) for k in range(width)] for p in polys])
        assert coefficient_rank(polys) == M.rank()
    assert matrix_rank([]) == 0


def test_rejects_q_one():
    with pytest.raises(InadmissibleQError):
        CasoratiInput((ONE,), QContext.of(1))
    with pytest.raises(ValueError):
        CasoratiInput((), Q2)


def test_casorati_vanishes_only_for_dependent_tuples():
    rng = random.Random(5)
    for _ in range(20):
        polys = [random_dense(rng, 4) for _ in range(3)]
        rep = independence_report(CasoratiInput(tuple(polys), Q2))
        assert rep.agree
