"""Build the twisted module for every cell of A2 and solve for Whittaker vectors."""
import argparse
from fractions import Fraction

from whitcalc.cells import ProblemInput, blocking_roots
from whitcalc.envelope import chevalley_basis
from whitcalc.rootsys import build_root_system
from whitcalc.scalars import I, fmt_scalar
from whitcalc.twist import (act, action_consistency_check, build_twist_model, character_module,
                            levi_whittaker_dimension, whittaker_solve)
from whitcalc.weylgrp import min_coset_reps, weyl_group


def show(c):
    re, im = fmt_scalar(c)
    if im == "0":
        return re
    return f"{im}i" if re == "0" else f"{re}+{im}i"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-K", type=int, default=4)
    ap.add_argument("-D", type=int, default=3)
    args = ap.parse_args()
    B = chevalley_basis(build_root_system("A2"))
    R = B.root
    V = character_module(B, (), (Fraction(1, 3), Fraction(1, 5)))
    eta = {0: I, 1: I}
    inp = ProblemInput(R, eta_values=eta)

    M = build_twist_model(B, weyl_group(R).longest, V, eta, args.K, args.D)
    v = M.vector(((0, 0, 0), (), 0))
    print("chain:", [B.names[g] for g in M.S.chain])
    for g in ("e1", "e2", "h1", "f1"):
        out = act(M, g, v)
        terms = ", ".join(f"{k[0]}: {show(c)}" for k, c in sorted(out.terms.items()))
        print(f"  {g} . e^-(1,1,1) v = {{{terms}}}")
    r = action_consistency_check(M, "e1", "f2")
    print(f"consistency [e1, f2]: residual {r.max_residual} on {r.checked} vectors\n")

    for w in min_coset_reps(R, ()):
        M = build_twist_model(B, w, V, eta, args.K, args.D)
        res = whittaker_solve(M)
        want = 0 if blocking_roots(inp, w) else levi_whittaker_dimension(B, w, V, eta)
        print(f"{str(w):>10}: basis {len(M.basis()):>4}, Whittaker dim {res.dimension} (cells predict {want})")


if __name__ == "__main__":
    main()
