"""Command-line surface: predict, solve, verify, tables, props.

Exit codes: 0 when everything passes (or a prediction/solution was
produced), 1 on a mathematical failure (SUSPECT verdict, singular or
inconsistent system), 2 on usage errors.

Reports are JSON by default (CSV via --format csv).  Timing lives in a
separate "timing" section so that rerunning with the same --seed yields a
byte-identical "cases" payload.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import interp, theory, verify
from .gf import DEFAULT_PRIME, check_modulus
from .verify import DEFAULT_SEED, TrialPolicy

SCHEMA_VERSION = 1

USAGE_ERROR = 2
MATH_ERROR = 1


def _add_common(parser):
    parser.add_argument("--prime", type=int, default=DEFAULT_PRIME,
                        help="odd prime for the finite-field path (default 31991)")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--out", help="write the report to this path instead of stdout")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--trials", type=int, default=3)


def _policy(args) -> TrialPolicy:
    check_modulus(args.prime, max_degree=6)
    return TrialPolicy(trials=args.trials, prime=args.prime, seed=args.seed)


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _report_doc(args, reports) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "config": {
            "prime": args.prime,
            "seed": getattr(args, "seed", None),
            "trials": getattr(args, "trials", None),
            "deep": getattr(args, "deep", False),
        },
        "cases": [r.to_json() for r in reports],
        "all_pass": all(r.passed for r in reports),
        "timing": {r.case: round(r.millis, 3) for r in reports},
    }


def _reports_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    if any(r.extra.get("profile") for r in reports):
        writer.writerow(["profile", "degree", "max_delta", "type_vector",
                         "dim_measured", "dim_expected", "verdict"])
        for r in reports:
            e = r.extra
            if not e.get("profile"):
                continue
            writer.writerow([
                ",".join(map(str, e["profile"])), e["degree"], e["max_delta"],
                ",".join(map(str, e["type_vector"])),
                ";".join(map(str, r.measured)), e["dim_expected"], r.verdict,
            ])
    else:
        writer.writerow(["case", "kind", "predicted", "measured", "verdict",
                         "seed", "prime"])
        for r in reports:
            writer.writerow([r.case, r.kind, r.predicted,
                             ";".join(map(str, r.measured)), r.verdict,
                             r.seed, r.prime])
    return buf.getvalue()


def _emit_reports(args, reports) -> int:
    if args.format == "csv":
        _emit(args, _reports_csv(reports))
    else:
        _emit(args, json.dumps(_report_doc(args, reports), indent=2, sort_keys=True))
    for r in reports:
        if not r.passed:
            print(f"FAIL {r.case}: measured {r.measured}, predicted {r.predicted}",
                  file=sys.stderr)
    return 0 if all(r.passed for r in reports) else MATH_ERROR


def _parse_profile(text):
    try:
        return tuple(int(x) for x in text.split(",") if x != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma list of integers: {text!r}")


def cmd_predict(args) -> int:
    if (args.a is None) == (args.lengths is None):
        print("predict needs exactly one of -a or --lengths", file=sys.stderr)
        return USAGE_ERROR
    try:
        if args.lengths is not None:
            q = theory.predict_quadric_scheme(args.n, args.lengths) if args.d == 2 else None
            profile = tuple(l - 1 for l in sorted(args.lengths, reverse=True))
            prediction = theory.predict_profile(args.n, args.d, profile)
            doc = prediction.to_json()
            if q is not None:
                doc["quadric"] = q.to_json()
            doc["lengths"] = sorted(args.lengths, reverse=True)
        else:
            prediction = theory.predict_profile(args.n, args.d, args.a)
            doc = prediction.to_json()
            if args.d == 2:
                doc["quadric"] = theory.predict_quadric_affine(args.n, args.a).to_json()
            doc["a"] = sorted(args.a, reverse=True)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR
    doc.update({"schema_version": SCHEMA_VERSION, "n": args.n, "d": args.d})
    _emit(args, json.dumps(doc, indent=2, sort_keys=True))
    return 0


def cmd_solve(args) -> int:
    try:
        prob = interp.load_problem(args.problem)
    except (OSError, ValueError, KeyError) as err:
        print(f"error reading problem: {err}", file=sys.stderr)
        return USAGE_ERROR
    prime = args.prime if args.field == "gf" else None
    if args.field == "auto":
        prime = prob.prime
    try:
        result = interp.predict_then_solve(prob, prime)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR
    doc = {
        "schema_version": SCHEMA_VERSION,
        "prediction": result.prediction.to_json(),
    }
    if result.interpolant is not None:
        doc["interpolant"] = result.interpolant.to_json()
    if result.diagnosis is not None:
        doc["diagnosis"] = result.diagnosis
    _emit(args, json.dumps(doc, indent=2, sort_keys=True))
    return 0 if result.interpolant is not None else MATH_ERROR


def cmd_tables(args) -> int:
    policy = _policy(args)
    reports = verify.verify_tables(policy, args.n)
    return _emit_reports(args, reports)


def cmd_props(args) -> int:
    policy = _policy(args)
    which = args.prop
    try:
        if which == "4.5":
            reports = verify.verify_prop45(policy)
        elif which == "4.6":
            reports = verify.verify_remark46(policy)
        elif which == "4.8":
            reports = verify.verify_prop48_leftovers(policy, sample=args.sample)
        elif which in ("4.7", "4.13", "base"):
            if args.n > 5 and not args.deep:
                print(f"n={args.n} is behind --deep (combinatorial blow-up)",
                      file=sys.stderr)
                return USAGE_ERROR
            reports = verify.verify_props47_413_base(policy, args.n)
            if which != "base":
                reports = [r for r in reports if r.case.startswith(which + " ")]
        else:  # all
            reports = (verify.verify_prop45(policy) + verify.verify_remark46(policy)
                       + verify.verify_prop48_leftovers(policy, sample=args.sample)
                       + verify.verify_props47_413_base(policy, 5))
            if args.deep:
                for n in (6, 7):
                    reports += verify.verify_props47_413_base(policy, n)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR
    return _emit_reports(args, reports)


def cmd_verify(args) -> int:
    policy = _policy(args)
    has_case = args.a is not None or args.lengths is not None
    try:
        if has_case:
            if args.n is None or args.d is None:
                print("a single case needs -n and -d", file=sys.stderr)
                return USAGE_ERROR
            reports = [verify.verify_generic(policy, args.n, args.d,
                                             a=args.a, lengths=args.lengths)]
        else:
            reports = verify.run_suite(policy, args.suite, deep=args.deep)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR
    return _emit_reports(args, reports)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ppinterp",
        description="exact predictors, solvers and seeded rank verification "
                    "for partial polynomial interpolation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("predict", help="expected codimension and exception match")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-a", type=_parse_profile, help="derivative counts, e.g. 2,2,2")
    p.add_argument("--lengths", type=_parse_profile, help="component lengths, e.g. 4,4,2")
    p.add_argument("--out", help="write the prediction to this path instead of stdout")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("solve", help="solve a problem JSON file exactly")
    p.add_argument("problem")
    p.add_argument("--field", choices=("auto", "rational", "gf"), default="auto",
                   help="arithmetic domain; 'auto' follows the problem file")
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME,
                   help="prime for --field gf (default 31991)")
    p.add_argument("--out", help="write the result to this path instead of stdout")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("tables", help="regenerate a degree-2 exception table and measure dims")
    p.add_argument("-n", type=int, choices=(3, 4), required=True)
    _add_common(p)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("props", help="cubic verification sweeps in P^n")
    p.add_argument("--prop",
                   choices=("4.5", "4.6", "4.7", "4.8", "4.13", "base", "all"),
                   default="all")
    p.add_argument("-n", type=int, choices=(5, 6, 7), default=5,
                   help="ambient dimension for the 4.7/4.13 base sweeps")
    p.add_argument("--sample", type=int, help="cap combos per triple (4.8 only)")
    p.add_argument("--deep", action="store_true", help="allow the n=6,7 sweeps")
    _add_common(p)
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("verify", help="run a verification suite or one generic case")
    p.add_argument("--suite", choices=("all",) + verify.SUITES, default="all")
    p.add_argument("-n", type=int)
    p.add_argument("-d", type=int)
    p.add_argument("-a", type=_parse_profile)
    p.add_argument("--lengths", type=_parse_profile)
    p.add_argument("--deep", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
