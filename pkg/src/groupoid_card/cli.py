"""Command-line front end: verification suites and batch sweeps.

Exit codes: 0 all checks passed, 1 a mathematical check failed, 2 usage or
validation error. JSON output is schema-stable; text output is for humans.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .categorified import verify_categorified
from .cycle_stats import (
    METHOD_BRUTE,
    METHOD_CYCLE_TYPE,
    cll_rhs,
    expected_product_by_type,
    expected_total_cycles,
    monte_carlo_moment,
    verify_cll,
)
from .functors import (
    FunctorValidationError,
    functor_from_json,
    make_cycle_tuple_functor,
    make_fixed_point_functor,
    validate_functor,
    verify_general_theorem,
)
from .groups import GroupValidationError
from .groupoids import cardinality, perm_groupoid_skeleton, rational_str
from .permutations import (
    DEFAULT_ENUMERATION_CAP,
    CapExceededError,
    iter_pvectors,
    weight,
)

ENV_MAX_N = "GROUPOID_CARD_MAX_N"


class UsageError(ValueError):
    """Bad configuration detected after argument parsing."""


def _enumeration_cap(args) -> int:
    if getattr(args, "max_n", None) is not None:
        return args.max_n
    env = os.environ.get(ENV_MAX_N)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{ENV_MAX_N} must be an integer, got {env!r}")
    return DEFAULT_ENUMERATION_CAP


def _parse_pvector(text: str, n: int) -> tuple[int, ...]:
    try:
        p = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"could not parse p-vector {text!r}; expected comma-separated integers")
    if len(p) != n:
        raise UsageError(f"p-vector has length {len(p)}, expected {n}")
    if any(x < 0 for x in p):
        raise UsageError(f"p-vector entries must be nonnegative: {text!r}")
    return p


def _sweep_pvectors(args) -> list[tuple[int, ...]]:
    max_weight = args.max_weight if args.max_weight is not None else args.n
    return list(iter_pvectors(args.n, max_entry=args.max_entry, max_weight=max_weight))


def _emit(payload: dict, rows: list[dict], fmt: str, text_lines: list[str]) -> None:
    if fmt == "json":
        print(json.dumps(payload))
    elif fmt == "csv":
        if not rows:
            rows = [payload]
        fieldnames: list[str] = []
        for row in rows:
            for key in row:
                if key not in fieldnames:
                    fieldnames.append(key)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fieldnames)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        sys.stdout.write(buf.getvalue())
    else:
        for line in text_lines:
            print(line)


def _moment_row(report) -> dict:
    row = report.to_json_dict()
    row["p"] = ",".join(str(x) for x in report.p)
    return row


def cmd_verify_lemma(args) -> int:
    cap = _enumeration_cap(args)
    method = METHOD_CYCLE_TYPE if args.method == "cycle-type" else METHOD_BRUTE
    if args.all_p:
        pvectors = _sweep_pvectors(args)
    else:
        if args.p is None:
            raise UsageError("provide --p or --all-p")
        pvectors = [_parse_pvector(args.p, args.n)]
    reports = [verify_cll(args.n, p, method=method, cap=cap) for p in pvectors]
    failures = [r for r in reports if not r.equal]
    if len(reports) == 1 and not args.all_p:
        payload = {"command": "verify-lemma", **reports[0].to_json_dict()}
        rows = [_moment_row(reports[0])]
        text = [
            f"n={args.n} p={list(reports[0].p)} method={method}",
            f"expectation = {rational_str(reports[0].lhs)}",
            f"closed form = {rational_str(reports[0].rhs)}",
            f"equal: {reports[0].equal}",
        ]
    else:
        payload = {
            "command": "verify-lemma",
            "n": args.n,
            "method": method,
            "count": len(reports),
            "all_equal": not failures,
            "failures": [list(r.p) for r in failures],
        }
        rows = [_moment_row(r) for r in reports]
        text = [f"checked {len(reports)} p-vectors at n={args.n}: " + ("all equal" if not failures else f"{len(failures)} failures")]
    _emit(payload, rows, args.format, text)
    return 1 if failures else 0


def cmd_verify_categorified(args) -> int:
    cap = _enumeration_cap(args)
    if args.all_p:
        pvectors = _sweep_pvectors(args)
    else:
        if args.p is None:
            raise UsageError("provide --p or --all-p")
        pvectors = [_parse_pvector(args.p, args.n)]
    reports = [verify_categorified(args.n, p, cap=cap) for p in pvectors]
    failures = [r for r in reports if not r.ok]
    if len(reports) == 1 and not args.all_p:
        report = reports[0]
        payload = {"command": "verify-categorified", **report.to_json_dict()}
        rows = [{
            "n": report.n,
            "p": ",".join(str(x) for x in report.p),
            "equivalent": report.equivalent,
            "lhs_card": rational_str(report.lhs_card),
            "rhs_card": rational_str(report.rhs_card),
            "bridge_check": report.bridge_check,
            "q_size": report.q_size,
            "orbit_count": len(report.orbits),
        }]
        text = [
            f"n={report.n} p={list(report.p)}",
            f"quotient aut orders = {list(report.lhs_skeleton.aut_orders())}",
            f"product aut orders  = {list(report.rhs_skeleton.aut_orders())}",
            f"equivalent: {report.equivalent}  cardinalities: {rational_str(report.lhs_card)} vs {rational_str(report.rhs_card)}",
            f"bridge |Q|/n! identity: {report.bridge_check}",
        ]
    else:
        payload = {
            "command": "verify-categorified",
            "n": args.n,
            "count": len(reports),
            "all_ok": not failures,
            "failures": [list(r.p) for r in failures],
        }
        rows = [{
            "n": r.n,
            "p": ",".join(str(x) for x in r.p),
            "equivalent": r.equivalent,
            "lhs_card": rational_str(r.lhs_card),
            "rhs_card": rational_str(r.rhs_card),
            "bridge_check": r.bridge_check,
            "q_size": r.q_size,
            "orbit_count": len(r.orbits),
        } for r in reports]
        text = [f"checked {len(reports)} p-vectors at n={args.n}: " + ("all ok" if not failures else f"{len(failures)} failures")]
    _emit(payload, rows, args.format, text)
    return 1 if failures else 0


def cmd_skeleton(args) -> int:
    skeleton = perm_groupoid_skeleton(args.n)
    card = cardinality(skeleton)
    payload = {
        "command": "skeleton",
        "n": args.n,
        **skeleton.to_json_dict(),
        "cardinality": rational_str(card),
    }
    rows = [{"n": args.n, "aut_order": c.aut_order, "label": json.dumps(list(c.label) if isinstance(c.label, tuple) else c.label)} for c in skeleton.components]
    text = [f"degree {args.n}: {len(skeleton.components)} components, cardinality {rational_str(card)}"]
    for c in skeleton.components:
        text.append(f"  partition {list(c.label)}: aut order {c.aut_order}")
    _emit(payload, rows, args.format, text)
    return 0


def cmd_stats(args) -> int:
    if args.n < 1:
        raise UsageError(f"--n must be at least 1, got {args.n}")
    per_k = []
    ok = True
    total = Fraction(0)
    for k in range(1, args.n + 1):
        e_k = tuple(1 if m == k else 0 for m in range(1, args.n + 1))
        value = expected_product_by_type(args.n, e_k)
        target = Fraction(1, k)
        equal = value == target
        ok = ok and equal
        total += value
        per_k.append({"k": k, "expected": rational_str(value), "target": rational_str(target), "equal": equal})
    harmonic = expected_total_cycles(args.n)
    total_ok = total == harmonic
    payload = {
        "command": "stats",
        "n": args.n,
        "per_k": per_k,
        "total_expected_cycles": rational_str(total),
        "harmonic": rational_str(harmonic),
        "total_equal": total_ok,
        "all_equal": ok and total_ok,
    }
    rows = [{"n": args.n, **entry} for entry in per_k]
    text = [f"expected k-cycle counts at n={args.n}:"]
    for entry in per_k:
        text.append(f"  k={entry['k']}: {entry['expected']} (target {entry['target']})")
    text.append(f"total expected cycles: {rational_str(total)} (harmonic {rational_str(harmonic)})")
    _emit(payload, rows, args.format, text)
    return 0 if ok and total_ok else 1


def cmd_montecarlo(args) -> int:
    if args.samples < 2:
        raise UsageError(f"--samples must be at least 2, got {args.samples}")
    if args.p_one is not None:
        if not args.p_one.startswith("k="):
            raise UsageError(f'--p-one expects "k=<cycle length>", got {args.p_one!r}')
        try:
            k = int(args.p_one[2:])
        except ValueError:
            raise UsageError(f'--p-one expects "k=<cycle length>", got {args.p_one!r}')
        if not 1 <= k <= args.n:
            raise UsageError(f"--p-one cycle length {k} out of range 1..{args.n}")
        p = tuple(1 if m == k else 0 for m in range(1, args.n + 1))
    elif args.p is not None:
        p = _parse_pvector(args.p, args.n)
    else:
        raise UsageError("provide --p or --p-one")
    report = monte_carlo_moment(args.n, p, args.samples, args.seed)
    target = cll_rhs(args.n, p)
    if report.standard_error > 0:
        z = (report.estimate - float(target)) / report.standard_error
    else:
        z = 0.0 if report.estimate == float(target) else math.inf
    within = abs(z) <= 4.0
    payload = {
        "command": "montecarlo",
        **report.to_json_dict(),
        "target": rational_str(target),
        "z": z,
        "within_4se": within,
    }
    rows = [{**_moment_row(report), "target": rational_str(target), "z": z, "within_4se": within}]
    text = [
        f"n={args.n} p={list(p)} samples={args.samples} seed={args.seed}",
        f"estimate = {report.estimate} +- {report.standard_error}",
        f"target   = {rational_str(target)}",
        f"z = {z} ({'within' if within else 'OUTSIDE'} 4 standard errors)",
    ]
    _emit(payload, rows, args.format, text)
    return 0 if within else 1


def cmd_theorem_general(args) -> int:
    cap = _enumeration_cap(args)
    if args.functor is not None:
        with open(args.functor, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        functor = functor_from_json(data)
        report_validation = validate_functor(functor)
        if not report_validation.ok:
            raise FunctorValidationError(report_validation)
    elif args.builtin == "fixed-points":
        if args.n is None:
            raise UsageError("--builtin fixed-points requires --n")
        functor = make_fixed_point_functor(args.n, cap=cap)
    elif args.builtin == "cycle-tuples":
        if args.n is None or args.p is None:
            raise UsageError("--builtin cycle-tuples requires --n and --p")
        functor = make_cycle_tuple_functor(args.n, _parse_pvector(args.p, args.n), cap=cap)
    else:
        raise UsageError("provide --functor FILE or --builtin {fixed-points,cycle-tuples}")
    report = verify_general_theorem(functor)
    payload = {"command": "theorem-general", **report.to_json_dict()}
    rows = [{
        "functor": report.functor_name,
        "group": report.group_name,
        "expected_size": rational_str(report.expected),
        "elements_cardinality": rational_str(report.elements_cardinality),
        "equal": report.equal,
    }]
    text = [
        f"functor {report.functor_name} on {report.group_name} (order {report.group_order})",
        f"average fiber size    = {rational_str(report.expected)}",
        f"groupoid cardinality  = {rational_str(report.elements_cardinality)}",
        f"equal: {report.equal}",
    ]
    _emit(payload, rows, args.format, text)
    return 0 if report.equal else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groupoid-card",
        description="Exact groupoid cardinality and random-permutation cycle statistics.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p, with_format=True):
        if with_format:
            p.add_argument("--format", choices=["json", "csv", "text"], default="json")
        p.add_argument("--max-n", type=int, default=None, help=f"enumeration cap override (or set {ENV_MAX_N})")

    p = sub.add_parser("verify-lemma", help="check the expectation of falling-power products against the closed form")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=str, default=None, help="comma-separated p-vector of length n")
    p.add_argument("--all-p", action="store_true", help="sweep all bounded p-vectors")
    p.add_argument("--max-entry", type=int, default=2)
    p.add_argument("--max-weight", type=int, default=None)
    p.add_argument("--method", choices=["brute", "cycle-type"], default="brute")
    add_common(p)
    p.set_defaults(func=cmd_verify_lemma)

    p = sub.add_parser("verify-categorified", help="compare the decorated-permutation quotient against the product skeleton")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=str, default=None)
    p.add_argument("--all-p", action="store_true")
    p.add_argument("--max-entry", type=int, default=2)
    p.add_argument("--max-weight", type=int, default=None)
    add_common(p)
    p.set_defaults(func=cmd_verify_categorified)

    p = sub.add_parser("skeleton", help="print the permutation-groupoid skeleton for a degree")
    p.add_argument("--n", type=int, required=True)
    add_common(p, with_format=True)
    p.set_defaults(func=cmd_skeleton)

    p = sub.add_parser("stats", help="exact expected k-cycle counts and their harmonic total")
    p.add_argument("--n", type=int, required=True)
    add_common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("montecarlo", help="seeded sampling estimate of a falling-power moment")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=str, default=None)
    p.add_argument("--p-one", type=str, default=None, help='single cycle length, e.g. "k=2"')
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    add_common(p)
    p.set_defaults(func=cmd_montecarlo)

    p = sub.add_parser("theorem-general", help="check average fiber size against the category-of-elements cardinality")
    p.add_argument("--builtin", choices=["fixed-points", "cycle-tuples"], default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--p", type=str, default=None)
    p.add_argument("--functor", type=str, default=None, help="path to a functor JSON file")
    add_common(p)
    p.set_defaults(func=cmd_theorem_general)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except FunctorValidationError as exc:
        report = exc.report
        print(f"functor validation failed ({report.failing_law} law, witness {report.witness}): {report.message}", file=sys.stderr)
        return 2
    except (UsageError, CapExceededError, GroupValidationError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
