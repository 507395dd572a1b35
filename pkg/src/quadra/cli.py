"""Command-line front end.

Commands:
  quadra solve <instance.json> [--allow-infinity] [--float] [--jobs N]
  quadra tmp <instance.json> [--next-odd R]
  quadra verify <measure.json> <instance.json> [--tol T]
  quadra gen [--atoms K --prescribe P --include-infinity --seed S --out DIR]

Instance files are UTF-8 JSON; rationals are "p/q" strings (decimal strings
rationalize exactly), floats only under --float.  Exit codes: 0 exists/match,
1 not-exists/mismatch, 2 invalid input, 3 indeterminate.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from multiprocessing import Pool
from numbers import Rational
from pathlib import Path

from .errors import IndeterminateError, QuadraError
from .moments import MomentSequence
from .prescribed import PrescribedProblem, QuadratureVerdict, solve
from .tmp import INFINITY, Measure, flat_extension, is_infinity, solve_tmp
from .verify import InstanceSpec, compare, moments_of, random_instance

EXIT_EXISTS = 0
EXIT_NOT_EXISTS = 1
EXIT_INVALID = 2
EXIT_INDETERMINATE = 3


class InputError(Exception):
    """Malformed file / flag combination; maps to exit 2."""


def parse_scalar(value, float_mode: bool = False):
    """Accept ints, JSON numbers, "p/q" strings, and decimal strings.
    Everything rationalizes exactly unless float_mode is set."""
    try:
        if isinstance(value, bool):
            raise InputError(f"not a number: {value!r}")
        if isinstance(value, int):
            out = Fraction(value)
        elif isinstance(value, float):
            out = Fraction(str(value))
        elif isinstance(value, str):
            out = Fraction(value.strip())
        else:
            raise InputError(f"not a number: {value!r}")
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse scalar {value!r}: {exc}") from exc
    return float(out) if float_mode else out


def scalar_to_json(x):
    if isinstance(x, Rational):
        f = Fraction(x)
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
    return float(x)


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from exc


def load_instance(path: str, force_float: bool = False):
    """Returns (MomentSequence, prescribed tuple, d2, allow_infinity)."""
    raw = _load_json(path)
    if not isinstance(raw, dict) or "moments" not in raw:
        raise InputError(f"{path}: expected an object with a 'moments' list")
    float_mode = force_float or raw.get("mode") == "float"
    moments = [parse_scalar(v, float_mode) for v in raw["moments"]]
    prescribed = tuple(parse_scalar(v, float_mode)
                       for v in raw.get("prescribed_nodes", []))
    d2 = raw.get("d2")
    if d2 is None:
        if (len(moments) - len(prescribed)) % 2 != 0:
            raise InputError(f"{path}: cannot infer d2 from lengths")
        d2 = (len(moments) - len(prescribed)) // 2
    if not isinstance(d2, int) or d2 < 1:
        raise InputError(f"{path}: d2 must be a positive integer")
    if prescribed and len(moments) != len(prescribed) + 2 * d2:
        raise InputError(
            f"{path}: expected {len(prescribed) + 2 * d2} moments for "
            f"d1={len(prescribed)}, d2={d2}, got {len(moments)}")
    return (MomentSequence(tuple(moments)), prescribed, d2,
            bool(raw.get("allow_infinity", False)))


def load_measure(path: str):
    raw = _load_json(path)
    if not isinstance(raw, dict) or "atoms" not in raw:
        raise InputError(f"{path}: expected an object with an 'atoms' list")
    pairs = []
    for entry in raw["atoms"]:
        node, density = entry["node"], entry["density"]
        atom = INFINITY if node in ("infinity", "inf") else parse_scalar(node)
        pairs.append((atom, parse_scalar(density)))
    try:
        return Measure(tuple(pairs))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def measure_to_json(measure: Measure) -> dict:
    return {"atoms": [
        {"node": "infinity" if is_infinity(a) else scalar_to_json(a),
         "density": scalar_to_json(d)} for a, d in measure.atoms]}


def _poly_coeffs_high_first(p) -> list:
    return [scalar_to_json(c) for c in reversed(p.coeffs)] if p is not None else []


def _verdict_report(verdict: QuadratureVerdict) -> dict:
    report = {"status": verdict.status}
    if verdict.certificate is not None:
        cert = {"stage": verdict.certificate.stage}
        if verdict.certificate.index is not None:
            cert["index"] = verdict.certificate.index
        report["certificate"] = cert
    nodes, weights = [], []
    if verdict.measure is not None:
        for a, d in verdict.measure.atoms:
            nodes.append("infinity" if is_infinity(a) else scalar_to_json(a))
            weights.append(scalar_to_json(d))
    report["nodes"] = nodes
    report["weights"] = weights
    report["g_coeffs"] = _poly_coeffs_high_first(verdict.g)
    report["h_coeffs"] = _poly_coeffs_high_first(verdict.h)
    report["extended_moments"] = (
        [scalar_to_json(x) for x in verdict.extended.gamma]
        if verdict.extended is not None else [])
    report["eigenvalue_report"] = verdict.eigenvalue_report()
    return report


_STATUS_EXIT = {"exists": EXIT_EXISTS, "not_exists": EXIT_NOT_EXISTS,
                "indeterminate": EXIT_INDETERMINATE}


def _solve_one(args_tuple):
    path, allow_infinity, float_mode = args_tuple
    gamma, prescribed, d2, file_allow_inf = load_instance(path, float_mode)
    problem = PrescribedProblem(gamma, prescribed, d2,
                                allow_infinity=allow_infinity or file_allow_inf)
    verdict = solve(problem)
    return _verdict_report(verdict), _STATUS_EXIT[verdict.status]


def cmd_solve(args) -> int:
    path = Path(args.instance)
    if path.is_dir():
        jobs = [(str(p), args.allow_infinity, args.float_mode)
                for p in sorted(path.glob("*.json"))]
        if args.jobs > 1:
            with Pool(args.jobs) as pool:
                results = pool.map(_solve_one, jobs)
        else:
            results = [_solve_one(j) for j in jobs]
        code = EXIT_EXISTS
        for (p, _, _), (report, rc) in zip(jobs, results):
            report["instance"] = p
            print(json.dumps(report))
            code = max(code, rc)
        return code
    report, code = _solve_one((str(path), args.allow_infinity, args.float_mode))
    print(json.dumps(report, indent=2))
    return code


def cmd_tmp(args) -> int:
    gamma, _, _, _ = load_instance_moments_only(args.instance)
    if args.next_odd is not None:
        gamma = flat_extension(gamma, parse_scalar(args.next_odd))
    verdict = solve_tmp(gamma)
    report = {"status": verdict.status}
    if verdict.rank is not None:
        report["rank"] = verdict.rank
    if verdict.certificate is not None:
        report["certificate"] = {"stage": verdict.certificate.stage,
                                 "index": verdict.certificate.index}
    if verdict.measure is not None:
        m = measure_to_json(verdict.measure)
        report["nodes"] = [a["node"] for a in m["atoms"]]
        report["weights"] = [a["density"] for a in m["atoms"]]
    print(json.dumps(report, indent=2))
    if verdict.status == "not_representable":
        return EXIT_NOT_EXISTS
    return EXIT_EXISTS


def load_instance_moments_only(path: str):
    raw = _load_json(path)
    if not isinstance(raw, dict) or "moments" not in raw:
        raise InputError(f"{path}: expected an object with a 'moments' list")
    float_mode = raw.get("mode") == "float"
    moments = tuple(parse_scalar(v, float_mode) for v in raw["moments"])
    return MomentSequence(moments), (), None, False


def cmd_verify(args) -> int:
    measure = load_measure(args.measure)
    gamma, _, _, _ = load_instance_moments_only(args.instance)
    result = compare(gamma, moments_of(measure, gamma.degree), args.tol)
    report = {"status": "match" if result.match else "mismatch"}
    if not result.match:
        report["index"] = result.index
        report["delta"] = scalar_to_json(result.delta)
    print(json.dumps(report, indent=2))
    return EXIT_EXISTS if result.match else EXIT_NOT_EXISTS


def cmd_gen(args) -> int:
    spec = InstanceSpec(atom_count=args.atoms, prescribe=args.prescribe,
                        include_infinity=args.include_infinity, seed=args.seed)
    measure, gamma, problem = random_instance(spec)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    instance = {
        "moments": [scalar_to_json(x) for x in gamma.gamma],
        "prescribed_nodes": [scalar_to_json(x) for x in problem.prescribed],
        "d2": problem.d2,
        "allow_infinity": problem.allow_infinity,
        "mode": "exact",
    }
    instance_path = out / f"instance_{args.seed}.json"
    solution_path = out / f"solution_{args.seed}.json"
    instance_path.write_text(json.dumps(instance, indent=2), encoding="utf-8")
    solution_path.write_text(json.dumps(measure_to_json(measure), indent=2),
                             encoding="utf-8")
    print(json.dumps({"instance": str(instance_path), "solution": str(solution_path)}))
    return EXIT_EXISTS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quadra")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="decide/construct a prescribed-node rule")
    p_solve.add_argument("instance", help="instance JSON file or directory of them")
    p_solve.add_argument("--allow-infinity", action="store_true")
    p_solve.add_argument("--float", dest="float_mode", action="store_true",
                         help="force the float pipeline end-to-end")
    p_solve.add_argument("--jobs", type=int, default=1)
    p_solve.set_defaults(func=cmd_solve)

    p_tmp = sub.add_parser("tmp", help="classical truncated moment problem")
    p_tmp.add_argument("instance")
    p_tmp.add_argument("--next-odd", default=None,
                       help="flat-extend a positive definite even sequence")
    p_tmp.set_defaults(func=cmd_tmp)

    p_verify = sub.add_parser("verify", help="compare measure moments to an instance")
    p_verify.add_argument("measure")
    p_verify.add_argument("instance")
    p_verify.add_argument("--tol", type=float, default=1e-6)
    p_verify.set_defaults(func=cmd_verify)

    p_gen = sub.add_parser("gen", help="generate a random instance + solution")
    p_gen.add_argument("--atoms", type=int, default=3)
    p_gen.add_argument("--prescribe", type=int, default=1)
    p_gen.add_argument("--include-infinity", action="store_true")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", default=".")
    p_gen.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, QuadraError) as exc:
        if isinstance(exc, IndeterminateError):
            print(f"indeterminate: {exc}", file=sys.stderr)
            return EXIT_INDETERMINATE
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
