"""Command line front end.

Reports go to stdout as JSON; diagnostics go to stderr.  Exit status is 0 on
success, 1 for validation or domain errors, 2 for I/O and parse errors
(argparse usage errors also exit 2).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from . import __version__, dyadic, harness
from .errors import QuasiMetricError
from .matrixio import MatrixParseError, parse_matrix, write_atomic, write_matrix
from .metrize import chain_metrize, chain_oracle, frink_check
from .qcore import classify, quasi_constant, snowflake, validate_space
from .scalar import parse_scalar, to_json

ORACLE_MAX_N = 9


def _load(path):
    with open(path, "rb") as fh:
        raw = fh.read()
    digest = "sha256:" + hashlib.sha256(raw).hexdigest()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MatrixParseError(str(exc)) from None
    return validate_space(parse_matrix(text)), digest


def _triple(t):
    return None if t is None else list(t)


def cmd_analyze(args):
    space, digest = _load(args.input)
    an = classify(space)
    return {
        "input_digest": digest,
        "n": space.n,
        "K": to_json(an.K),
        "C": to_json(an.C),
        "is_metric": an.is_metric,
        "is_ultrametric": an.is_ultrametric,
        "worst_triple_K": _triple(an.worst_triple_K),
        "worst_triple_C": _triple(an.worst_triple_C),
    }


def cmd_metrize(args):
    space, digest = _load(args.input)
    result = chain_metrize(space)
    fr = frink_check(space, result)
    report = {
        "input_digest": digest,
        "n": space.n,
        "K": to_json(fr.K),
        "applicable": fr.applicable,
        "lower_ok": fr.lower_ok,
        "upper_ok": fr.upper_ok,
        "min_ratio": to_json(fr.min_ratio),
        "argmin_pair": _triple(fr.argmin_pair),
    }
    if args.oracle:
        if space.n > ORACLE_MAX_N:
            raise QuasiMetricError(f"--oracle limited to n <= {ORACLE_MAX_N}, got n = {space.n}")
        oracle = chain_oracle(space, max(space.n - 2, 0))
        report["oracle_agrees"] = oracle == result.d.matrix() if space.exact else bool(
            all(abs(oracle[i][j] - result.d[i, j]) <= space.tol for i in range(space.n) for j in range(space.n))
        )
    write_matrix(args.output, result.d)
    return report


def cmd_snowflake(args):
    space, digest = _load(args.input)
    p = parse_scalar(args.p)
    if not space.exact and isinstance(p, Fraction):
        p = float(p)
    elif space.exact and isinstance(p, float) and p.is_integer():
        p = Fraction(int(p))
    out = snowflake(space, p)
    write_matrix(args.output, out)
    return {
        "input_digest": digest,
        "p": to_json(p),
        "K_before": to_json(quasi_constant(space)[0]),
        "K_after": to_json(quasi_constant(out)[0]),
    }


def cmd_dyadic(args):
    a = parse_scalar(args.a)
    if isinstance(a, float):
        raise QuasiMetricError("--a must be exact (integer or p/q)")
    params = dyadic.DyadicParams(a)
    N = args.depth
    report = {
        "a": to_json(params.a),
        "depth": N,
        "tau_infinity": to_json(params.tau_infinity),
        "bound_constant": to_json(params.bound_constant),
    }
    max_depth = dyadic.MAX_DEPTH if args.max_depth is None else args.max_depth
    space = dyadic.truncate(N, params, max_depth=max_depth)
    report["n_points"] = space.n
    if args.emit_matrix:
        write_matrix(args.emit_matrix, space)
    if args.check_facts:
        if N < 1:
            raise QuasiMetricError("--check-facts needs depth >= 1")
        fr = dyadic.verify_facts(N)
        report["facts"] = {
            "ok": fr.ok,
            "fact1": fr.fact1,
            "fact2": fr.fact2,
            "fact3": fr.fact3,
            "points_checked": fr.points_checked,
            "edges_checked": fr.edges_checked,
            "counterexamples": fr.counterexamples[:20],
        }
    if args.ratios:
        limit = harness.RATIO_MAX_DEPTH if args.max_depth is None else args.max_depth
        C, triple = harness.ratio_experiment(params, N, max_depth=limit)
        report["ratios"] = {"max_ratio": to_json(C), "argmax_triple": [str(z) for z in triple]}
    if args.collapse:
        if N < 1:
            raise QuasiMetricError("--collapse needs depth >= 1")
        rows = harness.collapse_experiment(params, N, max_depth=max_depth)
        report["collapse"] = [
            {
                "depth": r.depth,
                "d01": to_json(r.d01),
                "d01_float": float(r.d01),
                "upper_bound": to_json(r.upper_bound),
                "uniform_chain_cost": to_json(r.uniform_chain_cost),
            }
            for r in rows
        ]
    if args.tent is not None:
        z = dyadic.DyadicPoint.of(parse_scalar(args.tent))
        csv_text = dyadic.tent_csv(z)
        if args.tent_output:
            write_atomic(args.tent_output, csv_text)
        report["tent_csv"] = csv_text
    return report


def cmd_gen(args):
    p = None if args.p is None else float(parse_scalar(args.p))
    spec = harness.GeneratorSpec(args.kind, args.n, args.seed, p, args.delta)
    space = harness.generate_space(spec)
    write_matrix(args.output, space)
    return {"kind": spec.kind, "n": spec.n, "seed": spec.seed, "p": p, "delta": spec.delta, "output": args.output}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quasimetric", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="quasi-metric constants of a matrix")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("metrize", help="chain metric and Frink bounds")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--oracle", action="store_true", help="cross-check by chain enumeration")
    p.set_defaults(func=cmd_metrize)

    p = sub.add_parser("snowflake", help="entrywise power of a matrix")
    p.add_argument("--input", required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_snowflake)

    p = sub.add_parser("dyadic", help="dyadic counterexample experiments")
    p.add_argument("--a", required=True, help="edge base a in (0, 1/2], as p/q")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--check-facts", action="store_true")
    p.add_argument("--ratios", action="store_true")
    p.add_argument("--collapse", action="store_true")
    p.add_argument("--emit-matrix", metavar="FILE")
    p.add_argument("--tent", metavar="Z", help="dyadic point, e.g. 11/64")
    p.add_argument("--tent-output", metavar="FILE", help="also write the tent CSV here")
    p.add_argument("--max-depth", type=int, help="override the depth guards (12 for matrices, 8 for --ratios)")
    p.set_defaults(func=cmd_dyadic)

    p = sub.add_parser("gen", help="write a seeded random space")
    p.add_argument("--kind", required=True, choices=harness.KINDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--p")
    p.add_argument("--delta", type=float, default=0.5)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_gen)
    return parser


def run_cli(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        body = args.func(args)
    except (MatrixParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (QuasiMetricError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report = {"command": args.command, "version": __version__, **body}
    stdout.write(json.dumps(report, indent=2) + "\n")
    return 0


def main() -> None:
    sys.exit(run_cli())
