"""Command line entry point: ``etagoldbach <subcommand> ...``.

Exit codes: 0 success, 2 validation error, 3 budget or numerical error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .counting import (
    CountResult,
    minor_arc_scan,
    sandwich_counts,
    ternary_count,
    ternary_count_brute,
)
from .errors import BudgetExceeded, DomainError, NumericalError
from .harness import SweepConfig, emit, headline_report, parse_eta, parse_window, run_sweep
from .quadratic import best_convergent, cf_expand, convergents
from .series import sigma_window, singular_series
from .sieve import constrained_set, primes_up_to
from .window import coeff_bound, container_coeff, make_container, parse_rational, tail_bound


def _print(doc) -> None:
    print(json.dumps(doc, indent=1, sort_keys=True))


def cmd_primes(args) -> None:
    table = primes_up_to(args.n)
    doc = {"N": args.n, "pi": table.count}
    if args.eta or args.window:
        if not (args.eta and args.window):
            raise DomainError("--eta and --window go together")
        cset = constrained_set(args.n, args.eta, args.window, table)
        doc.update(piP=cset.count, density=cset.count / table.count, mu=float(args.window.width))
    _print(doc)


def cmd_cf(args) -> None:
    cf = cf_expand(args.eta, args.max_steps)
    doc = {
        "eta": str(args.eta),
        "preperiod": list(cf.preperiod),
        "period": list(cf.period),
        "convergents": [
            {"D": c.D, "Q": c.Q, "theta2": c.theta2} for c in convergents(cf, args.count)
        ],
    }
    if args.tau1:
        conv, c = best_convergent(args.eta, args.tau1)
        doc["best"] = {"D": conv.D, "Q": conv.Q, "theta2": conv.theta2, "c_measured": c}
    _print(doc)


def cmd_sigma(args) -> None:
    sw = sigma_window(args.eta, args.n, args.window, args.tol)
    sn = singular_series(args.n, args.tol, plus_sign=args.plus_sign)
    _print(
        {
            "N": args.n,
            "sigma_window": {"value": sw.value, "tail_bound": sw.tail_bound, "M": sw.truncation},
            "sigma_n": {
                "value": sn.value,
                "tail_bound": sn.tail_bound,
                "P": sn.truncation,
                "plus_sign": args.plus_sign,
            },
        }
    )


def cmd_count(args) -> None:
    if args.sandwich:
        if args.delta is None or args.r is None:
            raise DomainError("--sandwich needs --delta and --r")
        result = sandwich_counts(args.n, args.eta, args.window, args.delta, args.r)
    else:
        table = primes_up_to(args.n)
        cset = constrained_set(args.n, args.eta, args.window, table)
        result = CountResult(args.n, ternary_count(cset, args.n), ternary_count(table, args.n))
    doc = result.to_dict()
    if args.brute:
        table = primes_up_to(args.n)
        cset = constrained_set(args.n, args.eta, args.window, table)
        doc["J_brute"] = ternary_count_brute(cset, args.n)
        doc["I_brute"] = ternary_count_brute(table, args.n)
    _print(doc)


def cmd_sweep(args) -> None:
    with open(args.config) as fh:
        doc = json.load(fh)
    for key in ("eta", "window", "tol", "format", "threads"):
        value = getattr(args, key)
        if value is not None:
            doc[key] = value
    config = SweepConfig.from_dict(doc)
    rows = run_sweep(config)
    data = emit(rows, config.format)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data.decode())
    if args.report:
        print(json.dumps(headline_report(rows), indent=1), file=sys.stderr)


def cmd_arcs(args) -> None:
    report = minor_arc_scan(
        primes_up_to(args.n), args.A, args.B, args.samples, args.seed, args.eta
    )
    if not args.points:
        report.points = []
    print(report.to_json())


def cmd_container(args) -> None:
    c = make_container(args.alpha, args.beta, args.delta, args.r)
    doc = {"alpha": str(c.alpha), "beta": str(c.beta), "delta": str(c.delta), "r": c.r}
    if args.check_coeffs:
        worst, violations = 0.0, 0
        for m in range(-args.check_coeffs, args.check_coeffs + 1):
            ratio = abs(container_coeff(c, m)) / coeff_bound(c, m)
            worst = max(worst, ratio)
            violations += ratio > 1 + 1e-6
        doc.update(
            M=args.check_coeffs,
            max_coeff_to_bound=worst,
            violations=violations,
            tail_bound=tail_bound(c, args.check_coeffs),
        )
    _print(doc)


def _eta_arg(text):
    try:
        return parse_eta(text)
    except (DomainError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _window_arg(text):
    try:
        return parse_window(text)
    except (DomainError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="etagoldbach", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("primes", help="prime and window-constrained prime counts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eta", type=_eta_arg)
    p.add_argument("--window", type=_window_arg)
    p.set_defaults(func=cmd_primes)

    p = sub.add_parser("cf", help="continued fraction and convergents of eta")
    p.add_argument("--eta", type=_eta_arg, required=True)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--tau1", type=int)
    p.add_argument("--max-steps", type=int, default=10**6)
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("sigma", help="sigma(N, a, b) and the singular series")
    p.add_argument("--eta", type=_eta_arg, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--window", type=_window_arg, required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--plus-sign", action="store_true")
    p.set_defaults(func=cmd_sigma)

    p = sub.add_parser("count", help="exact J and I, optionally with container bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eta", type=_eta_arg, required=True)
    p.add_argument("--window", type=_window_arg, required=True)
    p.add_argument("--brute", action="store_true")
    p.add_argument("--sandwich", action="store_true")
    p.add_argument("--delta", type=parse_rational)
    p.add_argument("--r", type=int)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("sweep", help="run a sweep described by a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--eta")
    p.add_argument("--window")
    p.add_argument("--tol", type=float)
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--threads", type=int)
    p.add_argument("--output")
    p.add_argument("--report", action="store_true", help="print headline summary to stderr")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("arcs", help="major/minor arc exponential-sum diagnostics")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--A", type=float, default=10.0)
    p.add_argument("--B", type=float, default=10.0)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eta", type=_eta_arg, default=parse_eta("0,2,1"))
    p.add_argument("--points", action="store_true", help="include per-sample certificates")
    p.set_defaults(func=cmd_arcs)

    p = sub.add_parser("container", help="container coefficient-bound audit")
    p.add_argument("--alpha", type=parse_rational, required=True)
    p.add_argument("--beta", type=parse_rational, required=True)
    p.add_argument("--delta", type=parse_rational, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--check-coeffs", type=int)
    p.set_defaults(func=cmd_container)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (BudgetExceeded, NumericalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DomainError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
