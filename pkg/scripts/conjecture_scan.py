#!/usr/bin/env python3
"""Tabulate exact tripartite outcomes against the conjectured parity cases.

The counts DP makes totals well beyond 10 vertices cheap; try --total 18
for a few thousand exact games.
"""

import argparse
from collections import Counter

from signgame.verification import explore_conjecture


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--total", type=int, default=12, help="largest l+m+n")
    parser.add_argument("--only-findings", action="store_true")
    args = parser.parse_args()

    report = explore_conjecture(args.total)
    tally = Counter()
    for row in report.rows:
        tally[row.consistent] += 1
        if args.only_findings and row.consistent:
            continue
        sizes = ",".join(map(str, row.sizes))
        mark = "ok" if row.consistent else "FINDING"
        print(
            f"K{sizes:9} first={row.first_role.value}  value {row.value:+3d} "
            f"({row.outcome.value:4})  conjectured {row.expected.value:4}  [{mark}]"
        )
    print(
        f"\n{len(report.rows)} cases in {report.elapsed:.2f}s: "
        f"{tally[True]} consistent, {tally[False]} findings"
    )


if __name__ == "__main__":
    main()
