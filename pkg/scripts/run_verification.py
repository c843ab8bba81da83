#!/usr/bin/env python3
"""Run every claim-verification sweep at full scale and print a summary.

Exit code 0 when everything passes, 1 otherwise.
"""

import argparse
import sys

from signgame.verification import SUITE_NAMES, run_suite


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max", type=int, default=None, help="cap instance sizes")
    args = parser.parse_args()

    all_pass = True
    for name in SUITE_NAMES:
        report = run_suite(name, args.max)
        status = "PASS" if report.passed else "FAIL"
        all_pass &= report.passed
        print(
            f"{status:4} {report.theorem_id:28} {report.cases_checked:6} cases "
            f"{report.elapsed:7.2f}s"
            + (f"  ({len(report.skipped)} skipped)" if report.skipped else "")
        )
        for instance, expected, got in report.failures:
            print(f"     failure: {instance}: expected {expected}, got {got}")
    return 0 if all_pass else 1


if __name__ == "__main__":
    sys.exit(main())
