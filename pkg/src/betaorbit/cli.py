"""Command-line front end: pisot | orbit | dimension | expand | count | spectrum.

Outputs are deterministic (identical configs produce byte-identical output).
Exit codes: 0 success; 2 not Pisot; 3 Pisot status unknown; 4 orbit hit a cap;
5 dominant eigenvalue not verified (alpha still reported); 6 count-method
mismatch; 7 no period within the step budget; 64 usage/parse errors;
65 point outside the expansion interval.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import spacing
from .dynamics import ExpansionParams, ExpansionRule, count_prefixes_bruteforce, \
    digits_to_text, generate_expansion
from .errors import BetaOrbitError, OutsideInterval
from .expr import ExprError
from .field import IntPolynomial, NumberField
from .orbit import DivergenceReport, compute_orbit, count_prefixes_matrix, \
    transition_matrix
from .polys import decimal_str
from .spectral import check_dominance, dimension, log_base_interval, \
    perron_eigenvalue

EXIT_OK = 0
EXIT_NOT_PISOT = 2
EXIT_PISOT_UNKNOWN = 3
EXIT_DIVERGED = 4
EXIT_NO_DOMINANCE = 5
EXIT_COUNT_MISMATCH = 6
EXIT_NO_PERIOD = 7
EXIT_USAGE = 64
EXIT_OUTSIDE = 65


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _interval_strs(iv, places=30) -> list[str]:
    return [decimal_str(iv[0], places, -1), decimal_str(iv[1], places, +1)]


def _add_field_args(sub):
    sub.add_argument("--minpoly", required=True,
                     help="defining polynomial coefficients, constant first, e.g. '-1,-1,1' for z^2-z-1... "
                          "pass as 'c0,c1,...,1'")
    sub.add_argument("--root-rank", type=int, default=0,
                     help="pick the K-th largest real root (default 0, the largest)")


def _add_point_args(sub):
    _add_field_args(sub)
    sub.add_argument("-m", type=int, default=1, help="largest digit (default 1)")
    sub.add_argument("-x", required=True,
                     help="point: expression in b (e.g. '1/(b^2-1)') or FieldElement JSON")


def _build_field(args) -> NumberField:
    coeffs = tuple(int(c.strip()) for c in args.minpoly.split(","))
    return NumberField(IntPolynomial(coeffs), root_rank=args.root_rank)


def _build_params(args) -> tuple[ExpansionParams, "FieldElement"]:
    field = _build_field(args)
    params = ExpansionParams(field, args.m)
    x = params.parse_point(args.x)
    return params, x


def build_parser() -> _Parser:
    parser = _Parser(prog="betaorbit", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("pisot", help="certify whether the base is a Pisot number")
    _add_field_args(p)
    p.add_argument("--budget", type=int, default=96, help="refinement rounds per conjugate")
    p.set_defaults(handler=cmd_pisot)

    p = subs.add_parser("orbit", help="compute the branching orbit closure of x")
    _add_point_args(p)
    p.add_argument("--state-cap", type=int, default=100_000)
    p.add_argument("--depth-cap", type=int, default=1_000)
    p.add_argument("--out", help="write OUT.json, OUT.dot, OUT.matrix.json, OUT.matrix.csv")
    p.add_argument("--format", choices=["table", "json", "dot"], default="table")
    p.set_defaults(handler=cmd_orbit)

    p = subs.add_parser("dimension", help="dominant eigenvalue and expansion-set dimension")
    _add_point_args(p)
    p.add_argument("--state-cap", type=int, default=100_000)
    p.add_argument("--depth-cap", type=int, default=1_000)
    p.add_argument("--tol", default="1e-12", help="width of the alpha enclosure")
    p.add_argument("--gap-tol", default="1e-9", help="numeric spectral-gap tolerance")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(handler=cmd_dimension)

    p = subs.add_parser("expand", help="generate one expansion and detect its period")
    _add_point_args(p)
    p.add_argument("--rule", choices=["greedy", "lazy", "alternating"], default="greedy")
    p.add_argument("--steps", type=int, default=10_000)
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(handler=cmd_expand)

    p = subs.add_parser("count", help="count admissible digit words of length n")
    _add_point_args(p)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--method", choices=["matrix", "brute", "both"], default="both")
    p.add_argument("--state-cap", type=int, default=100_000)
    p.add_argument("--depth-cap", type=int, default=1_000)
    p.set_defaults(handler=cmd_count)

    p = subs.add_parser("spectrum", help="power-sum spectrum gap statistics per level")
    _add_field_args(p)
    p.add_argument("-m", type=int, default=1)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(handler=cmd_spectrum)

    return parser


def cmd_pisot(args) -> int:
    field = _build_field(args)
    cert = field.is_pisot(budget=args.budget)
    print(json.dumps(cert.to_json(), indent=2))
    if cert.status == "pisot":
        return EXIT_OK
    if cert.status == "not_pisot":
        return EXIT_NOT_PISOT
    return EXIT_PISOT_UNKNOWN


def cmd_orbit(args) -> int:
    params, x = _build_params(args)
    result = compute_orbit(params, x, state_cap=args.state_cap, depth_cap=args.depth_cap)
    if isinstance(result, DivergenceReport):
        print(f"diverged: {result.states_found} states found, {result.cap_hit} cap hit")
        return EXIT_DIVERGED
    print(f"k = {result.size}")
    if args.format == "json":
        print(json.dumps(result.to_json(), indent=2))
    elif args.format == "dot":
        print(result.to_dot(), end="")
    else:
        for j, state in enumerate(result.states, start=1):
            lo, hi = state.approx(Fraction(1, 10 ** 7))
            print(f"  {j}: {decimal_str((lo + hi) / 2, 5, -1)}  depth {result.discovery_depth[j - 1]}")
    if args.out:
        mat = transition_matrix(result)
        with open(args.out + ".json", "w") as fh:
            json.dump(result.to_json(), fh, indent=2)
        with open(args.out + ".dot", "w") as fh:
            fh.write(result.to_dot())
        with open(args.out + ".matrix.json", "w") as fh:
            json.dump(mat.to_json(), fh, indent=2)
        with open(args.out + ".matrix.csv", "w") as fh:
            fh.write(mat.to_csv())
    return EXIT_OK


def cmd_dimension(args) -> int:
    params, x = _build_params(args)
    result = compute_orbit(params, x, state_cap=args.state_cap, depth_cap=args.depth_cap)
    if isinstance(result, DivergenceReport):
        print(f"diverged: {result.states_found} states found, {result.cap_hit} cap hit")
        return EXIT_DIVERGED
    mat = transition_matrix(result)
    perron = perron_eigenvalue(mat, tol=Fraction(args.tol))
    dom = check_dominance(mat, numeric_gap_tol=Fraction(args.gap_tol))

    report = {
        "k": result.size,
        "alpha": _interval_strs(perron.alpha),
        "condition1": dom.status.value,
        "char_poly": list(perron.char_poly),
        "eigenvector": [_interval_strs(iv) for iv in perron.eigenvector],
    }
    if dom.verified:
        dim = dimension(params.m, perron, dom)
        report["dim"] = _interval_strs(dim.dim)
        report["certified"] = dim.certified
        code = EXIT_OK
    else:
        # without a verified dominant eigenvalue, log_{m+1}(alpha) is only an
        # upper bound on the dimension and on the upper growth rate
        upper = log_base_interval(perron.alpha, params.m + 1)
        report["dim"] = None
        report["dim_upper_bound"] = _interval_strs(upper)
        code = EXIT_NO_DOMINANCE

    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(f"k = {result.size}")
        print(f"alpha in [{report['alpha'][0]}, {report['alpha'][1]}]")
        print(f"condition1: {report['condition1']}")
        if report["dim"] is not None:
            print(f"dim in [{report['dim'][0]}, {report['dim'][1]}] "
                  f"({'certified' if report['certified'] else 'numeric'})")
        else:
            print(f"dim <= {report['dim_upper_bound'][1]} (dominance not verified)")
    return code


def cmd_expand(args) -> int:
    params, x = _build_params(args)
    rule = {
        "greedy": ExpansionRule.greedy,
        "lazy": ExpansionRule.lazy,
        "alternating": ExpansionRule.alternating,
    }[args.rule]()
    run = generate_expansion(params, x, rule, max_steps=args.steps)
    if args.format == "json":
        print(json.dumps(run.to_json(), indent=2))
    elif run.is_periodic:
        print(digits_to_text(run.preperiod_digits, params.m, run.period_digits))
        print(f"preperiod {run.preperiod_length}, period {run.period_length}")
    else:
        print(digits_to_text(run.digits, params.m))
        print(f"no period within {args.steps} steps")
    return EXIT_OK if run.is_periodic else EXIT_NO_PERIOD


def cmd_count(args) -> int:
    params, x = _build_params(args)
    if args.n < 0:
        raise _UsageError("n must be nonnegative")
    results = {}
    if args.method in ("matrix", "both"):
        closure = compute_orbit(params, x, state_cap=args.state_cap, depth_cap=args.depth_cap)
        if isinstance(closure, DivergenceReport):
            print(f"diverged: {closure.states_found} states found, {closure.cap_hit} cap hit")
            return EXIT_DIVERGED
        mat = transition_matrix(closure)
        results["matrix"] = count_prefixes_matrix(mat, 0, args.n)
    if args.method in ("brute", "both"):
        results["brute"] = count_prefixes_bruteforce(params, x, args.n)
    for name in ("matrix", "brute"):
        if name in results:
            print(f"{name}: {results[name]}")
    if args.method == "both" and results["matrix"] != results["brute"]:
        print("MISMATCH between matrix and brute-force counts")
        return EXIT_COUNT_MISMATCH
    return EXIT_OK


def cmd_spectrum(args) -> int:
    field = _build_field(args)
    csv = spacing.spectrum_csv(field, args.m, args.nmax)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(csv)
    else:
        print(csv, end="")
    return EXIT_OK


def _fold_minpoly(argv: list[str]) -> list[str]:
    """Join '--minpoly -1,-1,1' into '--minpoly=-1,-1,1' so leading minus
    signs are not mistaken for option strings."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--minpoly":
            val = next(it, None)
            if val is None:
                out.append(tok)
            else:
                out.append(f"--minpoly={val}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    argv = _fold_minpoly(list(argv))
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.handler(args)
    except OutsideInterval as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OUTSIDE
    except (_UsageError, ExprError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BetaOrbitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
