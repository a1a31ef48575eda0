"""``orbitact`` command line: ``kappa``, ``verify-paper`` and ``character``.

Exit codes: 0 success / agreement, 1 route disagreement or failed row,
2 invalid input.
"""
import argparse
import json
import sys

from .errors import OrbitactError
from .scenario import (ROUTES, to_canonical, character_eval, format_verify_table, load_config,
                       run_scenario, verify_paper)

EXIT_OK, EXIT_DISAGREE, EXIT_INVALID = 0, 1, 2


def _int_list(text):
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text):
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _routes(text):
    routes = [r.strip() for r in text.split(",") if r.strip()]
    bad = set(routes) - set(ROUTES)
    if bad or not routes:
        raise argparse.ArgumentTypeError(f"routes must be a subset of {','.join(ROUTES)}")
    return routes


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--steps", type=int, help="Lax integrator steps (default 1024)")
    common.add_argument("--samples", type=int, help="quadrature samples (default 8192)")
    common.add_argument("--routes", type=_routes,
                        help="comma-separated subset of " + ",".join(ROUTES))
    common.add_argument("--json", action="store_true", help="machine-readable report on stdout")

    parser = argparse.ArgumentParser(
        prog="orbitact",
        description="Holonomy invariant of closed Hamiltonian isotopies on SU(n) coadjoint orbits.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kappa", parents=[common], help="run the routes on one scenario file")
    p.add_argument("config", help="scenario JSON file")

    p = sub.add_parser("verify-paper", parents=[common], help="run the built-in reference scenario suite")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("character", help="evaluate a Schur character")
    p.add_argument("--mu", type=_int_list, required=True, help="dominant weight, e.g. 2,0")
    p.add_argument("--phases", type=_float_list, required=True,
                   help="torus phases in radians, summing to a multiple of 2 pi")
    p.add_argument("--json", action="store_true")
    return parser


def _cmd_kappa(args):
    config = load_config(args.config)
    if args.steps is not None or args.samples is not None or args.routes is not None:
        config = config.with_options(args.steps, args.samples, args.routes)
    report = run_scenario(config)
    print(report.to_json() if args.json else report.to_text())
    return report.exit_code


def _cmd_verify(args):
    rows = verify_paper(steps=args.steps, samples=args.samples, routes=args.routes,
                        workers=args.workers)
    if args.json:
        payload = [{"scenario": r.name, "expected": r.expected, "values": r.values,
                    "max_deviation": r.max_deviation, "passed": r.passed} for r in rows]
        print(json.dumps(to_canonical(payload), indent=2, sort_keys=True))
    else:
        print(format_verify_table(rows))
    return EXIT_OK if all(r.passed for r in rows) else EXIT_DISAGREE


def _cmd_character(args):
    value, dim = character_eval(args.mu, args.phases)
    if args.json:
        print(json.dumps(to_canonical({"character": value, "dimension": dim}), sort_keys=True))
    else:
        print(f"character = {value.real:+.12g} {value.imag:+.12g}i")
        print(f"dimension = {dim}")
    return EXIT_OK


def main(argv=None):
    args = build_parser().parse_args(argv)
    handler = {"kappa": _cmd_kappa, "verify-paper": _cmd_verify,
               "character": _cmd_character}[args.command]
    try:
        return handler(args)
    except (OrbitactError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
