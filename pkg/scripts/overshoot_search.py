#!/usr/bin/env python3
"""Scan short strings for a budget-sensitive estimate: some (x, t) where the
anytime value strictly improves when the budget is quadrupled.  At two-state
scale the expected outcome is a negative report."""

import argparse

from kolmobench.enumeration import MachineRange
from kolmobench.estimator import phi
from kolmobench.halting import Simulator


def all_strings(max_len):
    yield ""
    for length in range(1, max_len + 1):
        for v in range(1 << length):
            yield format(v, f"0{length}b")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-len", type=int, default=4)
    ap.add_argument("--max-budget-log2", type=int, default=14)
    args = ap.parse_args()

    universe = MachineRange(1, 2)
    sim = Simulator(universe)
    schedule = [1 << k for k in range(args.max_budget_log2 + 1)]
    found = []
    for x in all_strings(args.max_len):
        values = {t: phi(t, x, universe, ceiling=1 << 26, sim=sim).value for t in schedule}
        drops = [(t, values[t], values[4 * t]) for t in schedule
                 if 4 * t in values and values[t] > values[4 * t]]
        marker = " overshoot!" if drops else ""
        print(f"  x={x!r:8s} phi: {[values[t] for t in schedule]}{marker}")
        found.extend((x, *d) for d in drops)

    if found:
        print("\nbudget-sensitive pairs (x, t, phi(t), phi(4t)):")
        for item in found:
            print(" ", item)
    else:
        print("\nno overshoot at this scale: every minimal program here halts "
              "as soon as it is enumerable, so quadrupling the budget never "
              "improves the value.")


if __name__ == "__main__":
    main()
