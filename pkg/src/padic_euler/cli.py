"""Command-line interface: ``table``, ``integrate`` and ``verify``.

Exit codes: 0 success, 1 verification failure, 2 domain/config error,
3 convergence failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from .characters import parse_character
from .errors import ConvergenceError, PadicError
from .euler import (
    bernoulli_analogue,
    euler_higher_order,
    euler_numbers,
    euler_polynomial_table,
    generalized_euler_numbers,
)
from .dsl import parse_function
from .measure import fermionic_integral
from .padic import PrecisionPolicy, make
from .verify import CHECKS, RUNNERS

EXIT_OK, EXIT_FAIL, EXIT_DOMAIN, EXIT_CONVERGENCE = 0, 1, 2, 3
PREC_ENV = "PADIC_EULER_PREC"

FAMILY_ALIASES = {
    "twisted": "twisted",
    "polynomial": "polynomial",
    "higher": "higher_order",
    "higher_order": "higher_order",
    "generalized": "generalized",
    "bernoulli": "bernoulli_analogue",
    "bernoulli_analogue": "bernoulli_analogue",
}


class CliError(PadicError):
    pass


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _default_prec() -> int:
    raw = os.environ.get(PREC_ENV)
    if raw is None:
        return 6
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"{PREC_ENV} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=3, help="odd prime (default 3)")
    common.add_argument("--prec", type=int, default=None, help=f"working precision M (default ${PREC_ENV} or 6)")
    common.add_argument("--guard", type=int, default=2, help="extra truncation depth for partial sums")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")

    parser = argparse.ArgumentParser(
        prog="padic-euler",
        description="Fermionic p-adic integrals and twisted Euler numbers in exact arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", parents=[common], help="tabulate a number/polynomial family")
    t.add_argument("--family", choices=sorted(FAMILY_ALIASES), default="twisted")
    t.add_argument("--lambda", dest="lam", type=_rational, default=Fraction(1))
    t.add_argument("--x", type=_rational, default=Fraction(0))
    t.add_argument("--r", type=int, default=1)
    t.add_argument("--w", type=_rational, default=Fraction(2))
    t.add_argument("--chi", default="quad:3", help="character as kind:F, e.g. quad:3, trivial:1, teich2:7")
    t.add_argument("--max-n", type=int, default=8)

    i = sub.add_parser("integrate", parents=[common], help="fermionic integral of a DSL function")
    i.add_argument("function", help="DSL text, e.g. 'x^3 * twist(lambda)'")
    i.add_argument("--d", type=int, default=1, help="integrate over X_d (odd, prime to p)")
    i.add_argument("--lambda", dest="lam", type=_rational, default=None, help="value bound to the name lambda")
    i.add_argument("--q", type=_rational, default=None, help="value bound to the name q")
    i.add_argument("--workers", type=int, default=1)

    v = sub.add_parser("verify", parents=[common], help="run an identity check over a grid")
    v.add_argument("check", choices=CHECKS)
    v.add_argument("--trials", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--F", type=_int_list, default=None, help="conductors, comma-separated")
    v.add_argument("--max-n", type=int, default=None)
    v.add_argument("--k", type=_int_list, default=None, help="q = 1 + p^k exponents for qlimit")
    v.add_argument("--lambda", dest="lam", type=_rational, action="append", default=None)
    v.add_argument("--chi", action="append", default=None)
    v.add_argument("--r", type=int, default=2)
    v.add_argument("--N", type=int, default=4, help="summation depth for higher_order")
    v.add_argument("--timing", action="store_true", help="include wall time (output is then not reproducible)")
    return parser


def _emit_table(table, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(table.to_json(), indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "value"])
        w.writerows(table.rows())
        return buf.getvalue().rstrip("\n")
    lines = [f"{table.family} {table.params} p={table.p} prec={table.achieved_prec} route={table.route}"]
    for n, v in enumerate(table.values):
        r = v.rational()
        lines.append(f"{n:>4}  {v.representative():>24}  {'' if r is None else r}")
    return "\n".join(lines)


def cmd_table(args) -> int:
    p, M = args.p, args.prec
    family = FAMILY_ALIASES[args.family]
    if family == "twisted":
        table = euler_numbers(make(p, M, args.lam), args.max_n)
    elif family == "polynomial":
        table = euler_polynomial_table(make(p, M, args.lam), make(p, M, args.x), args.max_n)
    elif family == "higher_order":
        table = euler_higher_order(make(p, M, args.lam), args.r, make(p, M, args.x), args.max_n)
    elif family == "generalized":
        table = generalized_euler_numbers(parse_character(args.chi, p, M), args.max_n)
    else:
        table = bernoulli_analogue(make(p, M, args.w), args.max_n)
    print(_emit_table(table, args.format))
    return EXIT_OK


def cmd_integrate(args) -> int:
    p, M = args.p, args.prec
    bindings = {}
    if args.lam is not None:
        bindings["lambda"] = make(p, M, args.lam)
    if args.q is not None:
        bindings["q"] = make(p, M, args.q)
    f = parse_function(args.function, p, M, bindings)
    value, report = fermionic_integral(f, p, PrecisionPolicy(M, args.guard), d=args.d, workers=args.workers)
    if args.format == "json":
        out = {"function": str(f), "p": p, "d": args.d, "value": value.to_json(), **report.to_json()}
        print(json.dumps(out, indent=2))
    elif args.format == "csv":
        print("value,N_used,achieved_prec,stabilized")
        print(f"{value.representative()},{report.N_used},{report.achieved_prec},{str(report.stabilized).lower()}")
    else:
        r = value.rational()
        print(f"I({f}) = {value}" + ("" if r is None else f"  ~ {r}"))
        print(f"N_used = {report.N_used}, achieved_prec = {report.achieved_prec}, stabilized = {report.stabilized}")
    return EXIT_OK


def cmd_verify(args) -> int:
    p, M, check = args.p, args.prec, args.check
    kw = {}
    if check in ("theorem1", "theorem2"):
        kw = dict(trials=args.trials, seed=args.seed, guard=args.guard)
    elif check == "witt":
        kw = dict(guard=args.guard, lambdas=args.lam)
        if args.max_n is not None:
            kw["max_n"] = args.max_n
    elif check in ("distribution", "egf9"):
        kw = dict(lambdas=args.lam)
        if args.F is not None:
            kw["Fs"] = args.F
        if args.max_n is not None:
            kw["max_n" if check == "distribution" else "order"] = args.max_n
    elif check == "theorem4":
        kw = dict(guard=args.guard)
        if args.chi:
            kw["chis"] = args.chi
        if args.max_n is not None:
            kw["max_n"] = args.max_n
    elif check == "higher_order":
        lam = args.lam[0] if args.lam else 1
        kw = dict(N=args.N, r=args.r, lam=lam)
        if args.max_n is not None:
            kw["max_n"] = args.max_n
    elif check == "qlimit":
        kw = dict(trials=args.trials, seed=args.seed)
        if args.k is not None:
            kw["ks"] = args.k
    elif check == "bernoulli":
        if args.max_n is not None:
            kw["order"] = args.max_n
    kw = {k: v for k, v in kw.items() if v is not None}
    if check == "higher_order":
        report = RUNNERS[check](p=p, **kw)
    else:
        report = RUNNERS[check](p, M, **kw)
    if args.format == "json":
        print(json.dumps(report.to_json(timing=args.timing), indent=2))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["case", "params", "passed", "lhs", "rhs", "detail"])
        for n, c in enumerate(report.cases):
            w.writerow([
                n,
                json.dumps(c.params, sort_keys=True),
                str(c.passed).lower(),
                "" if c.lhs is None else c.lhs.representative(),
                "" if c.rhs is None else c.rhs.representative(),
                c.detail,
            ])
        print(buf.getvalue().rstrip("\n"))
    else:
        print(report.render_text(timing=args.timing))
    return EXIT_OK if report.passed else EXIT_FAIL


COMMANDS = {"table": cmd_table, "integrate": cmd_integrate, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.prec is None:
            args.prec = _default_prec()
        if args.prec < 1:
            raise CliError(f"--prec must be >= 1, got {args.prec}")
        if args.guard < 0:
            raise CliError(f"--guard must be >= 0, got {args.guard}")
        return COMMANDS[args.command](args)
    except ConvergenceError as exc:
        print(f"error [{args.command}]: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except PadicError as exc:
        print(f"error [{args.command}]: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
