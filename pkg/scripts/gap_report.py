#!/usr/bin/env python3
"""Tabulate -log2 of the corrected universal-mixture mass against the direct
program-length upper bound for every short string.  The gap column is what
an additive O(1) constant would have to absorb; nothing certifies it away."""

import argparse

from kolmobench.ctm import UndefinedMassError, neg_log_estimate
from kolmobench.enumeration import MachineRange
from kolmobench.estimator import upper_bound_C
from kolmobench.halting import Simulator


def all_strings(max_len):
    yield ""
    for length in range(1, max_len + 1):
        for v in range(1 << length):
            yield format(v, f"0{length}b")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-len", type=int, default=3)
    ap.add_argument("--block-len", type=int, default=4)
    ap.add_argument("--budget", type=int, default=256)
    ap.add_argument("--interval", default="1:2000")
    args = ap.parse_args()

    lo, _, hi = args.interval.partition(":")
    universe = MachineRange(1, 2, int(lo), int(hi))
    sim = Simulator(universe)
    print(f"universe {universe.describe()}, L={args.block_len}, budget {args.budget}")
    print(f"{'x':>6}  {'-log2 m(x)':>11}  {'upper bound':>11}  {'gap':>8}")
    for x in all_strings(args.max_len):
        bound, _ = upper_bound_C(
            x, universe, args.budget, args.block_len, sim=sim
        )
        try:
            est = neg_log_estimate(x, universe, args.block_len, args.budget, sim=sim)
        except UndefinedMassError:
            print(f"{x!r:>6}  {'undefined':>11}  {bound:>11}  {'-':>8}")
            continue
        print(f"{x!r:>6}  {est:>11.3f}  {bound:>11}  {est - bound:>8.3f}")


if __name__ == "__main__":
    main()
