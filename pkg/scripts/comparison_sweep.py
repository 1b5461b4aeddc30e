"""Sweep both counting identities over every (Theta, supp eta) pair of each system.

Also counts how often the simple-root variant of the second identity fails.
"""
import argparse
import time
from itertools import chain, combinations

from whitcalc.rootsys import build_root_system
from whitcalc.whitdim import oshima_identity_check


def subsets(n):
    return chain.from_iterable(combinations(range(n), r) for r in range(n + 1))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("systems", nargs="*", default=["A1", "A2", "A3", "B2", "B3", "C3", "G2", "BC2", "F4"])
    args = ap.parse_args()
    print(f"{'system':>6} {'pairs':>6} {'id1':>5} {'id2':>5} {'simple':>7} {'secs':>6}")
    for label in args.systems:
        R = build_root_system(label)
        t = time.perf_counter()
        n = ok1 = ok2 = simple = 0
        for theta in subsets(R.rank):
            for supp in subsets(R.rank):
                c = oshima_identity_check(R, theta, supp)
                n += 1
                ok1 += c.identity1
                ok2 += c.identity2
                simple += c.identity2_simple
        print(f"{label:>6} {n:>6} {ok1:>5} {ok2:>5} {simple:>7} {time.perf_counter() - t:>6.1f}")


if __name__ == "__main__":
    main()
