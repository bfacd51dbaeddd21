#!/usr/bin/env python3
"""Print the exact centered spin-sum table for a range of spins.

Rows are spins S = 1/2, 1, ..., s-max; columns are the odd exponents
2m+1. Every value is exact; the sign pattern (non-negative everywhere
except the S = 1 row) is the point of the table.

Usage: python3 scripts/conjecture_table.py [--s-max 6] [--m-max 5]
"""

import argparse

from wells_majorize.rationals import format_rational
from wells_majorize.spin_sums import SpinValue, spin_sum, verify_conjecture


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--s-max", default="6")
    parser.add_argument("--m-max", type=int, default=5)
    args = parser.parse_args()

    s_max = SpinValue.parse(args.s_max)
    header = ["S"] + [f"m={m}" for m in range(1, args.m_max + 1)]
    print("\t".join(header))
    for twice in range(1, s_max.twice + 1):
        S = SpinValue(twice)
        row = [str(S)] + [
            format_rational(spin_sum(S, m)) for m in range(1, args.m_max + 1)
        ]
        print("\t".join(row))

    report = verify_conjecture(s_max, args.m_max)
    print(f"\nsign pattern check: {report.status}")
    return report.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
