"""Self-checks run by ``whit verify``; each returns a JSON-ready dict with ``passed``."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import chain, combinations, product

from .cells import ProblemInput, blocking_roots
from .envelope import (Envelope, _is_type_a, chevalley_basis, verify_S_relations,
                       verify_localized_commutation)
from .scalars import I, ONE, ZERO
from .twist import (action_consistency_check, build_twist_model, character_module, compose_check,
                    levi_whittaker_dimension, whittaker_solve)
from .weylgrp import factorize, min_coset_reps, parabolic_subgroup, weyl_group, word_str
from .whitdim import dim_wh_algebraic, dim_wh_continuous, oshima_identity_check

# envelope/twist suites are sized for desk runs
MAX_ALGEBRA_RANK = 3


def subsets(n):
    return chain.from_iterable(combinations(range(n), r) for r in range(n + 1))


def comparison_identities(R) -> dict:
    bad = []
    for theta in subsets(R.rank):
        for supp in subsets(R.rank):
            c = oshima_identity_check(R, theta, supp)
            if not c.ok:
                bad.append([list(theta), list(supp)])
    return {"passed": not bad, "failures": bad}


def coset_factorization(R) -> dict:
    G = weyl_group(R)
    bad = []
    for theta in subsets(R.rank):
        seen = {}
        for u in min_coset_reps(R, theta):
            for v in parabolic_subgroup(R, theta):
                x = u * v
                seen[x] = seen.get(x, 0) + 1
        covered = len(seen) == len(G) and set(seen.values()) == {1}
        split = all(u * v == w for w in G.elements for u, v in [factorize(R, theta, w)])
        if not (covered and split):
            bad.append(list(theta))
    return {"passed": not bad, "failures": bad}


def dimension_routes(inp) -> dict:
    cont, alg = dim_wh_continuous(inp), dim_wh_algebraic(inp)
    return {"passed": cont.consistent and alg.consistent,
            "continuous": cont.routes, "algebraic": alg.routes}


def _random_expr(alg, rng, deg):
    return alg.product([rng.randrange(alg.B.dim) for _ in range(deg)])


def pbw_confluence(B, seed, samples=50) -> dict:
    rng = random.Random(seed)
    alg = Envelope(B)
    bad = 0
    for _ in range(samples):
        x, y, z = (_random_expr(alg, rng, rng.randint(0, 2)) for _ in range(3))
        bad += (x * y) * z != x * (y * z)
    return {"passed": not bad, "checked": samples, "failures": bad}


def localized_commutation(B, kmax=3) -> dict:
    bad, n = [], 0
    for e in range(B.dim):
        if B.kinds[e] == "h":
            continue
        for X, c, k in product(range(B.dim), (ZERO, ONE, I), range(kmax + 1)):
            n += 1
            if not verify_localized_commutation(B, e, c, X, k).is_zero():
                bad.append([B.names[e], B.names[X], str(c), k])
    return {"passed": not bad, "checked": n, "failures": bad}


def longest_chain(B):
    from .twist import chain_roots, default_chain_order
    R = B.root
    up, _ = chain_roots(R, weyl_group(R).longest, ())
    return [B.e(r) for r in default_chain_order(R, up)]


def s_relations(B, eta, kmax=2) -> dict:
    chain_g = longest_chain(B)
    l = len(chain_g)
    bad, n = [], 0
    for t in range(l):
        for k in product(range(kmax + 1), repeat=l):
            if any(k[s] for s in range(t)):
                continue
            n += 1
            if verify_S_relations(B, chain_g, eta, 1, t=t, k=k):
                bad.append(["case1", t, list(k)])
    for X in range(B.dim):
        if B.kinds[X] != "e":
            continue
        n += 1
        if verify_S_relations(B, chain_g, eta, 3, X=X):
            bad.append(["case3", B.names[X]])
    return {"passed": not bad, "checked": n, "failures": bad}


def generic_weight(R, theta):
    """Rational weight orthogonal to theta with non-integral pairings elsewhere."""
    primes = [3, 5, 7, 11, 13, 17, 19, 23]
    out = [Fraction(0)] * R.rank
    for j in range(R.rank):
        if j not in theta:
            w = R.fundamental_weights[j]
            for i in range(R.rank):
                out[i] += w[i] / primes[j]
    return tuple(out)


def twist_action(B, eta, K, D, seed, cap=40) -> dict:
    R = B.root
    V = character_module(B, (), generic_weight(R, ()))
    M = build_twist_model(B, weyl_group(R).longest, V, eta, K, D)
    keys = M.basis()
    rng = random.Random(seed)
    sample = sorted(rng.sample(keys, min(cap, len(keys))))
    worst, n, skipped = 0, 0, 0
    for X, Y in product(range(B.dim), repeat=2):
        try:
            r = action_consistency_check(M, X, Y, sample)
        except RuntimeError:
            skipped += 1
            continue
        worst, n = max(worst, r.max_residual), n + r.checked
    return {"passed": worst == 0 and n > 0, "checked": n, "pairs_without_margin": skipped, "max_residual": worst}


def whittaker_cells(B, theta, eta, K, D) -> dict:
    R = B.root
    V = character_module(B, theta, generic_weight(R, theta))
    inp = ProblemInput(R, theta, eta_values=eta)
    rows, ok = [], True
    for w in min_coset_reps(R, theta):
        M = build_twist_model(B, w, V, eta, K, D)
        res = whittaker_solve(M)
        expect = 0 if blocking_roots(inp, w) else levi_whittaker_dimension(B, w, V, eta)
        good = res.dimension == expect and res.expected_form
        ok = ok and good
        rows.append({"w": word_str(w.word), "solved": res.dimension, "expected": expect, "ok": good})
    return {"passed": ok, "cells": rows}


def composition(B, eta, K, D) -> dict:
    R = B.root
    G = weyl_group(R)
    V = character_module(B, (), generic_weight(R, ()))
    bad, n = [], 0
    for w, w2 in product(G.elements, repeat=2):
        if (w * w2).length != w.length + w2.length:
            continue
        n += 1
        if not compose_check(B, w, w2, eta, V, K, D).agree:
            bad.append([word_str(w.word), word_str(w2.word)])
    return {"passed": not bad, "checked": n, "failures": bad}


def run_all(cfg) -> dict:
    inp = cfg.problem()
    R = inp.root
    out = {
        "comparison_identities": comparison_identities(R),
        "coset_factorization": coset_factorization(R),
        "dimension_routes": dimension_routes(inp),
    }
    if not _is_type_a(R) or R.rank > MAX_ALGEBRA_RANK:
        out["algebra"] = {"passed": None, "note": f"envelope and twist suites need type A of rank <= {MAX_ALGEBRA_RANK}"}
        return out
    B = chevalley_basis(R)
    K, D = cfg.truncation["K"], cfg.truncation["D"]
    eta = inp.eta_values
    out["pbw_confluence"] = pbw_confluence(B, cfg.seed)
    out["localized_commutation"] = localized_commutation(B, 3 if R.rank <= 2 else 1)
    out["s_relations"] = s_relations(B, eta, 2 if R.rank <= 2 else 1)
    out["twist_action"] = twist_action(B, eta, K, D, cfg.seed)
    out["whittaker_cells"] = whittaker_cells(B, inp.theta, eta, K, D)
    out["composition"] = composition(B, eta, min(K, 3), D)
    return out
