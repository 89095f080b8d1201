"""Command line entry point: ``qradical <subcommand> [options] args``.

Exit status: 0 when the computation succeeded or the verdict holds, 1 for a
verified counterexample or an inapplicable premise, 2 for usage, parse or
inadmissible-q errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from typing import Sequence

from .casorati import CasoratiInput, casorati, casorati_shift_form, independence_report
from .field import GaussianRational, parse_gaussian
from .parser import parse_poly
from .poly import FactoredPoly, as_dense, try_factor
from .qcore import InadmissibleQError, QContext, jackson_iter, q_binomial, q_number
from .radical import (
    chain_decompose,
    common_q_divisors,
    gcd_tower_dense,
    q_divisor_poly_dense,
    q_weight,
    q_weight_at_value,
    rad_q_trunc,
    rad_q_trunc_dense,
    relatively_q_prime_any,
)
from .report import ReportDocument, premise_dicts
from .theorems import (
    fermat_search,
    verify_fermat_instance,
    verify_fermat_multi_bound,
    verify_mason_extended,
    verify_mason_q,
)

class UsageError(Exception):
    pass


def _coeff_range(text: str) -> list[GaussianRational]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError("expected lo..hi, e.g. -2..2")
    try:
        a, b = int(lo), int(hi)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad coefficient range {text!r}") from exc
    if a > b:
        raise argparse.ArgumentTypeError("empty coefficient range")
    return [GaussianRational(k) for k in range(a, b + 1)]


def _nat(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}") from exc
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", help="value of q, e.g. 2, 1/2, 2+i")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--text", dest="format", action="store_const", const="text")
    common.add_argument("--mu", type=_nat, help="truncation level for radical")
    common.add_argument("--n", type=_nat, help="exponent / iteration count")
    common.add_argument("--m", type=_nat, help="number of summands for multi-term Fermat")
    common.add_argument("--max-deg", type=_nat, help="search: maximal degree")
    common.add_argument("--coeff", type=_coeff_range, help="search: coefficient range lo..hi")
    common.add_argument("--threads", type=_nat, help="search: worker processes")
    common.add_argument("--budget", type=_nat, help="search: maximal number of candidates")
    common.add_argument("--value", help="weight: compute the q-weight of an a-point")

    parser = argparse.ArgumentParser(prog="qradical", description="q-difference radicals and q-Stothers-Mason checks")
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "qnum": ("q-number [n]_q", [("n", _nat, None)]),
        "qbinom": ("q-binomial [k j]_q", [("k", _nat, None), ("j", _nat, None)]),
        "expand": ("expand a polynomial expression", [("expr", str, None)]),
        "dq": ("iterated Jackson derivative (--n times, default 1)", [("expr", str, None)]),
        "weight": ("q-weight of a point", [("expr", str, None), ("z0", str, None)]),
        "radical": ("q-difference radical and chain decomposition", [("expr", str, None)]),
        "qprime": ("pairwise relative q-primeness", [("exprs", str, "+")]),
        "casorati": ("q-Casorati determinant", [("exprs", str, "+")]),
        "verify-mason": ("q-Stothers-Mason inequality for a + b = c", [("exprs", str, "+")]),
        "verify-extended": ("extended inequality for f1 + ... + fm = f(m+1)", [("exprs", str, "+")]),
        "verify-fermat": ("q-Fermat equation and exponent bound", [("exprs", str, "+")]),
        "search-fermat": ("exhaustive q-Fermat search", []),
    }
    for name, (help_text, positionals) in specs.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        for arg, typ, nargs in positionals:
            p.add_argument(arg, type=typ, nargs=nargs)
    return parser


def _ctx(args, required: bool = True) -> QContext | None:
    if args.q is None:
        if required:
            raise UsageError(f"{args.command} needs --q")
        return None
    try:
        return QContext(parse_gaussian(args.q))
    except ValueError as exc:
        if isinstance(exc, InadmissibleQError):
            raise
        raise UsageError(f"bad --q value: {exc}") from exc


def _poly(text: str, ctx: QContext | None):
    return parse_poly(text.strip(), ctx)


def _options(args) -> dict:
    keys = ("mu", "n", "m", "max_deg", "threads", "budget", "value")
    opts = {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}
    if getattr(args, "coeff", None) is not None:
        opts["coeff"] = [c for c in args.coeff]
    opts.pop("threads", None)  # never part of the result
    return opts


def _doc(args, ctx, verdict, argv_args, premises=(), quantities=None, payload=None) -> ReportDocument:
    return ReportDocument(
        command={"name": args.command, "args": [a.strip() for a in argv_args], "options": _options(args)},
        q=str(ctx) if ctx is not None else None,
        verdict=verdict,
        premises=premise_dicts(premises),
        quantities=quantities or {},
        payload=payload,
    )


def _poly_quantities(p) -> dict:
    d = as_dense(p)
    out = {"dense": d, "degree": d.degree}
    f = p if isinstance(p, FactoredPoly) else try_factor(p)
    if f is not None:
        out["factored"] = f
        out["roots"] = list(f.roots)
    return out


def cmd_qnum(args) -> ReportDocument:
    ctx = _ctx(args)
    return _doc(args, ctx, "ok", [str(args.n)], quantities={"n": args.n, "q_number": q_number(args.n, ctx)})


def cmd_qbinom(args) -> ReportDocument:
    ctx = _ctx(args)
    if args.j > args.k:
        raise UsageError("qbinom needs j <= k")
    val = q_binomial(args.k, args.j, ctx)
    return _doc(args, ctx, "ok", [str(args.k), str(args.j)], quantities={"k": args.k, "j": args.j, "q_binomial": val})


def cmd_expand(args) -> ReportDocument:
    ctx = _ctx(args, required=False)
    p = _poly(args.expr, ctx)
    return _doc(args, ctx, "ok", [args.expr], quantities=_poly_quantities(p))


def cmd_dq(args) -> ReportDocument:
    ctx = _ctx(args)
    k = 1 if args.n is None else args.n
    p = as_dense(_poly(args.expr, ctx))
    return _doc(args, ctx, "ok", [args.expr], quantities={"input": p, "k": k, "result": jackson_iter(p, k, ctx)})


def cmd_weight(args) -> ReportDocument:
    ctx = _ctx(args)
    p = as_dense(_poly(args.expr, ctx))
    z0 = parse_gaussian(args.z0)
    if args.value is None:
        w = q_weight(p, z0, ctx)
        quantities = {"z0": z0, "q_weight": w}
    else:
        a = parse_gaussian(args.value)
        w = q_weight_at_value(p, a, z0, ctx)
        quantities = {"z0": z0, "value": a, "q_weight": w}
    return _doc(args, ctx, "ok", [args.expr, args.z0], quantities=quantities)


def cmd_radical(args) -> ReportDocument:
    ctx = _ctx(args)
    ctx.require_admissible("the q-difference radical")
    mu = 1 if args.mu is None else args.mu
    if mu < 1:
        raise UsageError("--mu must be positive")
    p = _poly(args.expr, ctx)
    d = as_dense(p)
    if d.is_zero():
        raise UsageError("the zero polynomial has no radical")
    f = try_factor(p)
    quantities: dict = {"input": d, "degree": d.degree, "mu": mu}
    payload = None
    if f is not None:
        dec = chain_decompose(f, ctx)
        rad = rad_q_trunc(f, mu, ctx)
        quantities.update(rad_q=rad.expand(), rad_q_factored=rad, rad_degree=rad.degree, method="chains")
        payload = {"chains": [[c.head, c.length] for c in dec.chains]}
    else:
        rad = rad_q_trunc_dense(d, mu, ctx)
        quantities.update(rad_q=rad, rad_degree=rad.degree, method="gcd")
    quantities["gcd_tower"] = gcd_tower_dense(d, mu, ctx)
    return _doc(args, ctx, "ok", [args.expr], quantities=quantities, payload=payload)


def cmd_qprime(args) -> ReportDocument:
    ctx = _ctx(args)
    ctx.require_admissible("relative q-primeness")
    polys = [_poly(e, ctx) for e in args.exprs]
    res = relatively_q_prime_any(polys, ctx)
    pairs = []
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            fi, fj = try_factor(polys[i]), try_factor(polys[j])
            if fi is not None and fj is not None:
                divs = sorted(common_q_divisors(fi, fj, ctx), key=GaussianRational.sort_key)
                pairs.append({"pair": [i, j], "common_q_divisors": divs})
            else:
                dp = q_divisor_poly_dense(as_dense(polys[i]), as_dense(polys[j]), ctx)
                pairs.append({"pair": [i, j], "divisor_polynomial": dp})
    from .theorems import _qprime_premise

    premise = _qprime_premise("relatively_q_prime", res)
    verdict = "holds" if res.holds else "violated"
    return _doc(args, ctx, verdict, args.exprs, premises=[premise],
                quantities={"relatively_q_prime": res.holds, "method": res.method}, payload={"pairs": pairs})


def cmd_casorati(args) -> ReportDocument:
    ctx = _ctx(args)
    polys = tuple(as_dense(_poly(e, ctx)) for e in args.exprs)
    inp = CasoratiInput(polys, ctx)
    w = casorati(inp)
    shift_det, normalizer = casorati_shift_form(inp)
    rep = independence_report(inp)
    quantities = {
        "casorati": w,
        "shift_determinant": shift_det,
        "normalizer": normalizer,
        "shift_identity_holds": shift_det == normalizer * w,
        "casorati_nonzero": rep.casorati_nonzero,
        "coefficient_rank_full": rep.coefficient_rank_full,
        "agree": rep.agree,
    }
    return _doc(args, ctx, "ok", args.exprs, quantities=quantities)


def cmd_verify_mason(args) -> ReportDocument:
    ctx = _ctx(args)
    if len(args.exprs) != 3:
        raise UsageError("verify-mason takes exactly three polynomials a b c")
    ctx.require_admissible("the q-Stothers-Mason theorem")
    a, b, c = (_poly(e, ctx) for e in args.exprs)
    rep = verify_mason_q(a, b, c, ctx)
    quantities = {
        "max_deg": rep.max_deg,
        "rad_deg": rep.rad_deg,
        "inequality_holds": rep.inequality_holds,
        "sharp": rep.sharp,
        "method": rep.method,
    }
    prod = None
    if rep.chains is not None:
        quantities["rad_q"] = FactoredPoly(1, [h for h, _ in rep.chains]).expand()
        prod = {"chains": [[h, n] for h, n in rep.chains]}
    return _doc(args, ctx, rep.verdict, args.exprs, rep.premises, quantities, prod)


def cmd_verify_extended(args) -> ReportDocument:
    ctx = _ctx(args)
    if len(args.exprs) < 3:
        raise UsageError("verify-extended needs at least three polynomials")
    ctx.require_admissible("the extended q-Stothers-Mason theorem")
    fs = [_poly(e, ctx) for e in args.exprs]
    rep = verify_mason_extended(fs, ctx)
    quantities = {
        "m": rep.m,
        "lhs": rep.lhs,
        "rad_trunc_deg": rep.rad_trunc_deg,
        "rad_deg": rep.rad_deg,
        "rhs_trunc": rep.rhs_trunc,
        "rhs_rad": rep.rhs_rad,
        "both_hold": rep.both_hold,
        "sharp": rep.sharp,
        "casorati_nonzero": rep.independence.casorati_nonzero,
        "coefficient_rank_full": rep.independence.coefficient_rank_full,
    }
    return _doc(args, ctx, rep.verdict, args.exprs, rep.premises, quantities)


def cmd_verify_fermat(args) -> ReportDocument:
    ctx = _ctx(args)
    if args.n is None or args.n < 1:
        raise UsageError("verify-fermat needs --n >= 1")
    ctx.require_admissible("the q-Fermat theorem")
    fs = [_poly(e, ctx) for e in args.exprs]
    if len(fs) < 3:
        raise UsageError("verify-fermat needs at least three polynomials")
    if len(fs) == 3 and args.m is None:
        rep = verify_fermat_instance(fs[0], fs[1], fs[2], args.n, ctx)
        quantities = {
            "n": rep.n,
            "equation_holds": rep.equation_holds,
            "lhs": rep.lhs,
            "rhs": rep.rhs,
            "difference": rep.lhs - rep.rhs,
            "consistent_with_bound": rep.consistent,
        }
        return _doc(args, ctx, rep.verdict, args.exprs, rep.premises, quantities)
    if args.m is not None and args.m != len(fs) - 1:
        raise UsageError(f"--m {args.m} needs {args.m + 1} polynomials, got {len(fs)}")
    rep = verify_fermat_multi_bound(fs, args.n, ctx)
    quantities = {
        "m": rep.m,
        "n": rep.n,
        "max_deg": rep.max_deg,
        "bound": rep.bound,
        "bound_holds": rep.bound_holds,
        "equation_holds": rep.equation_holds,
    }
    return _doc(args, ctx, rep.verdict, args.exprs, rep.premises, quantities)


def cmd_search_fermat(args) -> ReportDocument:
    ctx = _ctx(args)
    if args.n is None or args.n < 1:
        raise UsageError("search-fermat needs --n >= 1")
    if args.max_deg is None or args.coeff is None:
        raise UsageError("search-fermat needs --max-deg and --coeff")
    if args.m is not None and args.m < 2:
        raise UsageError("--m must be at least 2")
    cert = fermat_search(args.n, args.max_deg, args.coeff, ctx, m=args.m, budget=args.budget, threads=args.threads)
    quantities = {
        "outcome": cert.outcome,
        "complete": cert.complete,
        "total_candidates": cert.total,
        "examined": cert.examined,
        "premise_passing": cert.premise_passing,
        "solution_count": len(cert.solutions),
        "violation_count": len(cert.violations),
    }
    payload = {
        "parameters": cert.parameters,
        "filtered": cert.filtered,
        "solutions": [list(s) for s in cert.solutions],
        "violations": [list(s) for s in cert.violations],
    }
    return _doc(args, ctx, cert.verdict, [], quantities=quantities, payload=payload)


HANDLERS = {
    "qnum": cmd_qnum,
    "qbinom": cmd_qbinom,
    "expand": cmd_expand,
    "dq": cmd_dq,
    "weight": cmd_weight,
    "radical": cmd_radical,
    "qprime": cmd_qprime,
    "casorati": cmd_casorati,
    "verify-mason": cmd_verify_mason,
    "verify-extended": cmd_verify_extended,
    "verify-fermat": cmd_verify_fermat,
    "search-fermat": cmd_search_fermat,
}


_FLAG = re.compile(r"^(--[a-z][a-z-]*(=.*)?|-h)$")


def protect_negatives(argv: Sequence[str]) -> list[str]:
    """Keep arguments such as ``-qb(-1;2)`` or ``-1/2`` from reading as flags.

    A leading space makes argparse treat them as values; every consumer
    strips surrounding whitespace.
    """
    return [" " + a if a.startswith("-") and not _FLAG.match(a) else a for a in argv]


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    argv = protect_negatives(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        doc = HANDLERS[args.command](args)
    except (UsageError, ValueError) as exc:
        # InadmissibleQError, ParseError and EvalError are ValueErrors
        print(f"error: {exc}", file=err)
        return 2
    print(doc.to_text() if args.format == "text" else doc.to_json(), file=out)
    return doc.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
