#!/usr/bin/env python3
"""Run the invertibility report over the whole example suite and print a table.

The heavyweight member (the 27-dimensional small quantum group) is included
by default; pass --fast to skip it.
"""

import argparse
import os
import sys
import time

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(ROOT, "src"))

from braidcheck.coend import invertibility_report  # noqa: E402
from braidcheck.examples_zoo import suite_members  # noqa: E402
from braidcheck.hopf import integrals, is_factorizable  # noqa: E402


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--fast", action="store_true",
                        help="skip members of dimension above 16")
    args = parser.parse_args()

    print(f"{'member':34} {'dim':>4} {'omega':>6} {'Dr':>4} "
          f"{'unimod':>7} {'verdict':>8} {'secs':>7}")
    for name, H, R in suite_members():
        if args.fast and H.dim > 16:
            print(f"{name:34} {H.dim:>4} {'skipped':>34}")
            continue
        start = time.monotonic_ns()
        rep = invertibility_report(H, R)
        fact = is_factorizable(H, R)
        uni = integrals(H)["unimodular"]
        millis = (time.monotonic_ns() - start) // 1_000_000
        assert fact["verdict"] == rep.verdict
        print(f"{name:34} {rep.dim:>4} {rep.omega_rank:>6} {rep.drinfeld_rank:>4} "
              f"{str(uni):>7} {str(rep.verdict):>8} {millis:>6}ms")


if __name__ == "__main__":
    main()
