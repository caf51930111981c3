"""Command line entry point.

Exit codes: 0 pass / independent, 1 check failed or inconclusive,
2 bad input, 3 expansion cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from .arith import Q
from .criterion import BigLogNumber, example1_params, example2_params, verdict
from .determinant import MAX_TERMS, MAX_VARS, CapExceeded, delta_constant, factorization_check
from .pade import LerchParams, build_system, verify_order

log = logging.getLogger("lerchpade")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _rational_list(text: str) -> list[Fraction]:
    if not text.strip():
        return []
    return [Q(t) for t in text.split(",")]


def _params(args) -> LerchParams:
    if args.alphas is None:
        raise InputError("--alphas is required")
    return LerchParams(args.r, args.m, args.n, Q(args.x), tuple(_rational_list(args.alphas)))


def _emit(payload: dict, args) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _plot_path(args, suffix: str) -> str | None:
    if args.plot:
        return args.plot
    if args.out and args.figures:
        return args.out.rsplit(".", 1)[0] + f"_{suffix}.png"
    return None


def cmd_build(args) -> int:
    system = build_system(_params(args))
    _emit(system.to_json(), args)
    return EXIT_OK


def cmd_verify(args) -> int:
    params = _params(args)
    K = args.window if args.window is not None else params.n + 3
    if K < params.n + 1:
        raise InputError(f"--window must be at least n + 1 = {params.n + 1}")
    system = build_system(params)
    report = verify_order(system, K)
    _emit(report.to_json(), args)
    path = _plot_path(args, "remainders")
    if path:
        from .plotting import plot_remainders

        plot_remainders(system, K, path)
        log.info("wrote %s", path)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_det(args) -> int:
    params = _params(args)
    report = delta_constant(params)
    _emit(report.to_json(), args)
    return EXIT_OK if report.passed else EXIT_FAIL


def _samples(text: str | None):
    if not text:
        return None
    return [tuple(_rational_list(chunk)) for chunk in text.split(";")]


def cmd_factor(args) -> int:
    w = factorization_check(args.n, args.u, args.m, args.r, Q(args.x), _samples(args.samples),
                            max_vars=args.max_vars, max_terms=args.max_terms)
    _emit(w.to_json(), args)
    return EXIT_OK if w.factorization_ok else EXIT_FAIL


def cmd_certify(args) -> int:
    if args.example == 1:
        params, beta = example1_params()
    elif args.example == 2:
        params, beta = example2_params(args.k)
    else:
        params, beta = _params(args), None
    if args.beta is not None:
        beta = BigLogNumber.parse(args.beta)
    if beta is None:
        raise InputError("--beta is required unless --example is given")
    report = verdict(params, beta, Q(args.tol))
    _emit(report.to_json(), args)
    path = _plot_path(args, "certificate")
    if path:
        from .plotting import plot_certificate

        plot_certificate(report, path)
        log.info("wrote %s", path)
    return EXIT_OK if report.verdict == "independent" else EXIT_FAIL


def _add_params(p, need_n=True):
    p.add_argument("--r", type=int, default=1, help="number of Lerch functions (depth)")
    p.add_argument("--m", type=int, default=1, help="number of points alpha_i")
    if need_n:
        p.add_argument("--n", type=int, default=1, help="weight of the approximation")
    p.add_argument("--x", default="0", help="shift x in [0, 1), as p/q")
    p.add_argument("--alphas", help="comma separated rationals, e.g. 1/2,1/3 (use --alphas=-1/2,... for a leading minus)")


def _add_output(p, figures=False):
    p.add_argument("--out", help="write JSON here instead of stdout")
    if figures:
        p.add_argument("--plot", help="write a PNG figure to this path")
        p.add_argument("--figures", action="store_true", help="write a PNG next to --out")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lerchpade", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct P_l and Q_{l,i,s} and print them as JSON")
    _add_params(p)
    _add_output(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="check the order conditions of every remainder")
    _add_params(p)
    p.add_argument("--window", type=int, help="number of remainder coefficients is window + 1 (default n + 3)")
    _add_output(p, figures=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("det", help="determinant constancy, non-vanishing and the alternative presentation")
    _add_params(p)
    _add_output(p)
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("factor", help="factorization of psi(P_{u,n}) at sample alphas")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--u", type=int, default=0)
    p.add_argument("--x", default="0")
    p.add_argument("--samples", help="alpha tuples separated by ';', e.g. '1,2;1/2,1/3'")
    p.add_argument("--max-vars", type=int, default=MAX_VARS)
    p.add_argument("--max-terms", type=int, default=MAX_TERMS)
    _add_output(p)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("certify", help="evaluate the independence criterion")
    _add_params(p, need_n=False)
    p.set_defaults(n=1)
    p.add_argument("--beta", help="p/q, base^exponent, or e^L for an integer with log|beta| >= L")
    p.add_argument("--example", type=int, choices=(1, 2), help="use a built-in fixture")
    p.add_argument("--k", type=int, default=2, help="size parameter of example 2 (r = m = 10^k)")
    p.add_argument("--tol", default="1/100000000000000000000", help="width of every log enclosure")
    _add_output(p, figures=True)
    p.set_defaults(func=cmd_certify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
