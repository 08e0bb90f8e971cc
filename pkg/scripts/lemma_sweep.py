#!/usr/bin/env python3
"""Sweep the exact falling-power moment checks over a range of degrees.

Writes one CSV row per (n, p) case with both exact methods and the closed
form, so a whole verification run can be archived or diffed.

    python scripts/lemma_sweep.py --max-n 6 --out sweep.csv
"""

import argparse
import csv
import sys

from groupoid_card.cycle_stats import cll_rhs, expected_product_brute, expected_product_by_type
from groupoid_card.groupoids import rational_str
from groupoid_card.permutations import iter_pvectors, weight


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=6)
    parser.add_argument("--max-entry", type=int, default=2)
    parser.add_argument("--weight-slack", type=int, default=2, help="allow weight up to n + slack")
    parser.add_argument("--out", type=str, default="-", help="CSV path, - for stdout")
    args = parser.parse_args()

    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    writer = csv.writer(out)
    writer.writerow(["n", "p", "weight", "brute", "cycle_type", "closed_form", "all_equal"])
    mismatches = 0
    cases = 0
    for n in range(args.max_n + 1):
        for p in iter_pvectors(n, max_entry=args.max_entry, max_weight=n + args.weight_slack):
            brute = expected_product_brute(n, p)
            typed = expected_product_by_type(n, p)
            rhs = cll_rhs(n, p)
            equal = brute == typed == rhs
            mismatches += 0 if equal else 1
            cases += 1
            writer.writerow([
                n,
                " ".join(str(x) for x in p),
                weight(p),
                rational_str(brute),
                rational_str(typed),
                rational_str(rhs),
                equal,
            ])
    if out is not sys.stdout:
        out.close()
        print(f"{cases} cases, {mismatches} mismatches -> {args.out}", file=sys.stderr)
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
