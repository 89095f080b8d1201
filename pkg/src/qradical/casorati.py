"""q-Casorati determinants of polynomial tuples."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .field import GaussianRational
from .poly import ONE_POLY, ZERO_POLY, DensePoly, exact_div, scale_arg
from .qcore import QContext, jackson


@dataclass(frozen=True)
class CasoratiInput:
    polys: tuple[DensePoly, ...]
    ctx: QContext

    def __post_init__(self) -> None:
        object.__setattr__(self, "polys", tuple(self.polys))
        if not self.polys:
            raise ValueError("q-Casorati determinant needs at least one polynomial")
        self.ctx.require_jackson("the q-Casorati determinant")


@dataclass(frozen=True)
class IndependenceReport:
    casorati_nonzero: bool
    coefficient_rank_full: bool

    @property
    def agree(self) -> bool:
        return self.casorati_nonzero == self.coefficient_rank_full

    @property
    def independent(self) -> bool:
        return self.casorati_nonzero and self.coefficient_rank_full


def poly_det(matrix: Sequence[Sequence[DensePoly]]) -> DensePoly:
    """Determinant over the polynomial ring by Bareiss elimination.

    Every division in the recurrence is exact, so all intermediate entries
    stay polynomials.
    """
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return ONE_POLY
    sign = 1
    prev = ONE_POLY
    for k in range(n - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return ZERO_POLY
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = exact_div(num, prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def casorati(inp: CasoratiInput) -> DensePoly:
    """det [D_q^i f_j], rows i = 0..m-1."""
    rows = [list(inp.polys)]
    for _ in range(len(inp.polys) - 1):
        rows.append([jackson(p, inp.ctx) for p in rows[-1]])
    return poly_det(rows)


def casorati_shift_form(inp: CasoratiInput) -> tuple[DensePoly, DensePoly]:
    """(det [f_j(q^i z)], normalizer) with det = normalizer * casorati.

    The normalizer is q^(sum_k k(k-1)/2) * (qz - z)^(m(m-1)/2); its
    exponent only reduces to m - 1 for m <= 2.
    """
    ctx = inp.ctx
    m = len(inp.polys)
    rows = [[scale_arg(p, ctx.power(i)) for p in inp.polys] for i in range(m)]
    shift_det = poly_det(rows)
    qexp = sum(k * (k - 1) // 2 for k in range(m))
    step = DensePoly([0, ctx.q - 1])
    normalizer = (step ** (m * (m - 1) // 2)) * ctx.power(qexp)
    return shift_det, normalizer


def matrix_rank(rows: Sequence[Sequence[GaussianRational]]) -> int:
    """Exact rank by Gaussian elimination."""
    a = [list(r) for r in rows]
    if not a:
        return 0
    ncols = max(len(r) for r in a)
    for r in a:
        r.extend([GaussianRational(0)] * (ncols - len(r)))
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(a)) if not a[i][col].is_zero()), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        inv = a[rank][col].inverse()
        for i in range(len(a)):
            if i != rank and not a[i][col].is_zero():
                f = a[i][col] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
        if rank == len(a):
            break
    return rank


def coefficient_rank(polys: Sequence[DensePoly]) -> int:
    return matrix_rank([p.coeffs for p in polys])


def independence_report(inp: CasoratiInput) -> IndependenceReport:
    return IndependenceReport(
        casorati_nonzero=not casorati(inp).is_zero(),
        coefficient_rank_full=coefficient_rank(inp.polys) == len(inp.polys),
    )
