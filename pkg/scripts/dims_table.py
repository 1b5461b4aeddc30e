"""Whittaker dimensions for the trivial-sigma principal series across Theta and supp eta."""
import argparse
from fractions import Fraction
from itertools import chain, combinations

from whitcalc.cells import ProblemInput
from whitcalc.rootsys import build_root_system, fundamental_to_simple
from whitcalc.weylgrp import weyl_group
from whitcalc.whitdim import dim_wh_algebraic, dim_wh_continuous

PRIMES = (5, 7, 11, 13, 17, 19, 23, 29)


def subsets(n):
    return chain.from_iterable(combinations(range(n), r) for r in range(n + 1))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("system", nargs="?", default="A2")
    args = ap.parse_args()
    R = build_root_system(args.system)
    lam = fundamental_to_simple(R, [Fraction(1, p) for p in PRIMES[:R.rank]])
    print(f"{R.label}: |W| = {len(weyl_group(R))}, lambda = {[str(c) for c in lam]}")
    print(f"{'theta':>10} {'supp':>10} {'cont':>5} {'alg':>12}  notes")
    for theta in subsets(R.rank):
        for supp in subsets(R.rank):
            inp = ProblemInput(R, theta, supp_eta=supp, lam=lam)
            c, a = dim_wh_continuous(inp), dim_wh_algebraic(inp)
            alg = str(a.value) if a.consistent else "/".join(str(v) for v in a.routes.values())
            flag = "" if c.in_proven_range else "outside proven range"
            print(f"{str(list(theta)):>10} {str(list(supp)):>10} {c.value:>5} {alg:>12}  {flag}")


if __name__ == "__main__":
    main()
