"""Command-line front end.

Exit codes: 0 success (an empty classification or NOT REALIZABLE is still a
success), 1 oracle disagreement, 2 usage or parse error, 3 singular matrix,
4 oracle budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

from .classifier import (
    FORM_FILTERS,
    DetMismatch,
    HnfEnumSpec,
    classify_report,
    enumerate_hnf,
    realizable,
)
from .delta import (
    DeltaVector,
    InvalidForm,
    OneRowForm,
    delta_all_Dminus1,
    delta_from_hnf,
    delta_one_row,
    is_shifted_symmetric,
    s_values,
    symmetry_breakdown,
)
from .lattice import MatrixParseError, SingularMatrix, determinant, hermite_normal_form, parse_matrix
from .oracle import BudgetExceeded, OracleConfig, delta_bruteforce

EXIT_DISAGREE, EXIT_USAGE, EXIT_SINGULAR, EXIT_BUDGET = 1, 2, 3, 4


class UsageError(Exception):
    pass


def _read_matrix(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    try:
        return parse_matrix(text)
    except (MatrixParseError, ValueError) as exc:
        raise UsageError(f"cannot parse matrix: {exc}") from None


def _parse_delta(text: str, dim: int | None) -> DeltaVector:
    try:
        v = DeltaVector.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad delta-vector {text!r}: {exc}") from None
    if dim is not None and dim != v.dim:
        raise UsageError(f"--dim {dim} does not match delta-vector of length {len(v)}")
    return v


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print("\n".join(lines))


def cmd_hnf(args) -> int:
    m = _read_matrix(args.matrix)
    det = determinant(m)
    h = hermite_normal_form(m)
    _emit(
        args,
        {"hnf": h.matrix.to_lists(), "transform": h.transform.to_lists(), "det": det},
        ["HNF:", str(h.matrix), "U:", str(h.transform), f"det: {det}"],
    )
    return 0


def cmd_delta(args) -> int:
    m = _read_matrix(args.matrix)
    h = hermite_normal_form(m)
    v = delta_from_hnf(h)
    payload = {"delta": list(v.coeffs), "polynomial": v.polynomial(), "hnf": h.matrix.to_lists()}
    lines = [f"delta: {v}", f"polynomial: {v.polynomial()}"]
    if args.s_values:
        table = s_values(h)
        payload["s_values"] = [{"index": list(i), "s": s} for i, s in table]
        lines.append("index s")
        lines += [f"{','.join(map(str, i))} {s}" for i, s in table]
    code = 0
    if args.oracle:
        config = OracleConfig(args.budget) if args.budget else OracleConfig.from_env()
        w = delta_bruteforce(h.matrix, config)
        agree = w == v
        payload.update(oracle=list(w.coeffs), verdict="AGREE" if agree else "DISAGREE")
        lines += [f"oracle: {w}", "AGREE" if agree else "DISAGREE"]
        code = 0 if agree else EXIT_DISAGREE
    _emit(args, payload, lines)
    return code


def cmd_enumerate(args) -> int:
    if args.dim < 1 or args.det < 1:
        raise UsageError("--dim and --det must be positive")
    out = sys.stdout
    out.write("[")
    for n, m in enumerate(enumerate_hnf(HnfEnumSpec(args.dim, args.det, args.form))):
        rec = m.to_json()
        if args.with_delta:
            rec["delta"] = list(delta_from_hnf(m).coeffs)
        out.write(("," if n else "") + "\n" + json.dumps(rec, sort_keys=True))
    out.write("\n]\n")
    return 0


def cmd_classify(args) -> int:
    v = _parse_delta(args.delta, args.dim)
    det = args.det if args.det is not None else v.volume
    try:
        report = classify_report(HnfEnumSpec(v.dim, det, args.form), v, args.expand_all)
    except DetMismatch as exc:
        raise UsageError(str(exc)) from None
    print(json.dumps(report, sort_keys=True))
    return 0


def cmd_realize(args) -> int:
    v = _parse_delta(args.delta, args.dim)
    if v.volume > 4:
        raise UsageError(f"mass {v.volume} > 4 is not supported")
    verdict = realizable(v.dim, v)
    if verdict.realizable:
        lines = ["REALIZABLE", str(verdict.witness)]
    else:
        lines = ["NOT REALIZABLE", f"reason: {verdict.reason}"]
    _emit(args, verdict.to_json(), lines)
    return 0


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"bad integer list {text!r}") from None


def cmd_symmetry(args) -> int:
    d, D = args.dim, args.det
    try:
        if args.all_dminus1:
            mult = (0,) * (D - 2) + (d - 1,)
        elif args.multiplicities is not None:
            mult = _int_list(args.multiplicities)
        else:
            raise UsageError("give --multiplicities or --all-dminus1")
        f = OneRowForm(d, D, mult)
    except InvalidForm as exc:
        raise UsageError(str(exc)) from None
    v = delta_all_Dminus1(D, d) if args.all_dminus1 else delta_one_row(f)
    sym = is_shifted_symmetric(v)
    c = symmetry_breakdown(f)
    payload = {
        "delta": list(v.coeffs),
        "shifted_symmetric": sym,
        "conditions": {
            "coprime_weight": c.coprime_weight,
            "weight_gcd": c.weight_gcd,
            "only_units": c.only_units,
            "full_row": c.full_row,
            "all": bool(c),
        },
    }
    lines = [
        f"delta: {v}",
        f"shifted symmetric: {str(sym).lower()}",
        f"(1) gcd(sum j*d_j - 1, D) = {c.weight_gcd}: {str(c.coprime_weight).lower()}",
        f"(2) d_j = 0 unless gcd(j, D) = 1: {str(c.only_units).lower()}",
        f"(3) sum d_j = d - 1: {str(c.full_row).lower()}",
    ]
    if args.all_dminus1:
        payload["gcd_D_d"] = math.gcd(D, d)
        lines.append(f"gcd(D, d) = {math.gcd(D, d)}")
    _emit(args, payload, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(
        prog="hnfdelta",
        description="delta-vectors of lattice simplices via Hermite normal forms",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hnf", parents=[common], help="Hermite normal form of a matrix")
    p.add_argument("--matrix", required=True, help="matrix file ('-' for stdin)")
    p.set_defaults(func=cmd_hnf)

    p = sub.add_parser("delta", parents=[common], help="delta-vector of the simplex of a matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--oracle", action="store_true", help="cross-check by lattice-point counting")
    p.add_argument("--s-values", action="store_true", help="list congruence indices and s-values")
    p.add_argument("--budget", type=int, default=None, help="oracle candidate-point cap")
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("enumerate", parents=[common], help="stream all HNFs as JSON")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--det", type=int, required=True)
    p.add_argument("--form", choices=FORM_FILTERS, default="all")
    p.add_argument("--with-delta", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", parents=[common], help="all HNFs with a given delta-vector")
    p.add_argument("--delta", required=True, help="comma-separated, e.g. 1,0,3,2,0")
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--det", type=int, default=None)
    p.add_argument("--form", choices=FORM_FILTERS, default="all")
    p.add_argument("--expand-all", action="store_true", help="list every matrix, not one per family")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("realize", parents=[common], help="is a delta-vector of mass <= 4 realizable?")
    p.add_argument("--delta", required=True)
    p.add_argument("--dim", type=int, default=None)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("symmetry", parents=[common], help="shifted symmetry of one-row forms")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--det", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--multiplicities", help="d_1,...,d_{D-1}")
    g.add_argument("--all-dminus1", action="store_true")
    p.set_defaults(func=cmd_symmetry)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SingularMatrix:
        print("error: singular matrix", file=sys.stderr)
        return EXIT_SINGULAR
    except BudgetExceeded as exc:
        print(f"error: oracle budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
