from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from whitcalc.cells import ProblemInput, blocking_roots
from whitcalc.envelope import InvalidSplit, chevalley_basis
from whitcalc.rootsys import build_root_system
from whitcalc.scalars import I, ONE, cq
from whitcalc.twist import (BadModule, LeviModule, LengthNotAdditive, act, action_consistency_check,
                            adjoint_levi_module, build_twist_model, character_module, check_module, compose_check,
                            key_weight, levi_generators, levi_whittaker_dimension, truncated_character, weyl_permutation,
                            whittaker_solve)
from sympy.polys.domains import QQ_I
from whitcalc.weylgrp import element, min_coset_reps, weyl_group

import oracles

F = Fraction
A1 = chevalley_basis(build_root_system("A1"))
A2 = chevalley_basis(build_root_system("A2"))
V1 = character_module(A1, (), (F(1, 3),))
V2 = character_module(A2, (), (F(1, 3), F(1, 5)))
W0 = weyl_group(A2.root).longest


def el(B, word):
    return element(B.root, word)


def test_model_shapes():
    M = build_twist_model(A1, el(A1, "s1"), V1, {0: I}, K=5, D=3)
    assert (M.l, M.c) == (1, 0)
    assert M.basis() == [((k,), (), 0) for k in range(6)]
    M = build_twist_model(A1, el(A1, "e"), V1, None, K=5, D=3)
    assert (M.l, M.c) == (0, 1)
    assert len(M.basis()) == 4
    M = build_twist_model(A2, W0, V2, None, K=3, D=2)
    assert M.l == 3 and M.c == 0
    assert [A2.names[A2.e(r)] for r in M.chain_roots] == ["e12", "e1", "e2"]


@pytest.mark.parametrize("word", ["e", "s1", "s2", "s1.s2", "s2.s1", "s1.s2.s1"])
def test_basis_count_and_character_mass(word):
    w = el(A2, word)
    for V in (V2, adjoint_levi_module(A2, ())):
        M = build_twist_model(A2, w, V, None, K=3, D=2)
        nk = sum(1 for k in product(range(4), repeat=M.l) if sum(k) <= 3)
        nm = sum(1 for m in oracles_words(M.c, 2))
        assert len(M.basis()) == nk * nm * V.dim
        assert sum(truncated_character(M).values()) == len(M.basis())
        assert M.l == w.length and M.l + M.c == 3


def oracles_words(c, D):
    return [m for d in range(D + 1) for m in product(range(c), repeat=d) if list(m) == sorted(m)]


def test_a1_character():
    M = build_twist_model(A1, el(A1, "s1"), V1, None, K=3, D=0)
    assert truncated_character(M) == {(F(-4, 3),): 1, (F(-7, 3),): 1, (F(-10, 3),): 1, (F(-13, 3),): 1}
    empty = check_module(A1, LeviModule((), 0, {g: () for g in levi_generators(A1, ())}))
    assert not truncated_character(build_twist_model(A1, el(A1, "s1"), empty, None, K=3, D=0))


def test_act_examples():
    c = I
    M = build_twist_model(A1, el(A1, "s1"), V1, {0: c}, K=6, D=0)
    v = M.vector(((0,), (), 0))
    assert act(M, "e1", v).terms == {((0,), (), 0): c}
    # h e^{-1} v = e^{-1} hv - 2 e^{-1} v - 2c e^{-2} v, hv = -(2/3) v after the twist
    assert act(M, "h1", v).terms == {((0,), (), 0): cq(F(-8, 3)), ((1,), (), 0): -2 * c}
    assert not act(M, "e1", v).truncated
    combo = act(M, {"e1": 2, "h1": 1}, v)
    assert combo.terms == {((0,), (), 0): 2 * c + cq(F(-8, 3)), ((1,), (), 0): -2 * c}


def test_truncation_is_flagged():
    M = build_twist_model(A1, el(A1, "s1"), V1, {0: I}, K=2, D=0)
    v = act(M, "h1", M.vector(((2,), (), 0)))
    assert v.truncated


def test_cartan_acts_by_weight():
    M = build_twist_model(A2, W0, V2, None, K=3, D=0)
    for key in M.basis():
        for i in range(2):
            out = act(M, A2.h(i), M.vector(key)).terms
            assert out == {key: cq(A2.root.pairing(key_weight(M, key), i))}


@pytest.mark.parametrize("word,eta", [("s1.s2.s1", {0: I, 1: ONE + I}), ("s1", {0: I}), ("s2.s1", {1: I})])
def test_chain_generators_act_nilpotently_after_shift(word, eta):
    M = build_twist_model(A2, el(A2, word), V2, eta, K=4, D=2)
    for key in M.basis():
        bound = sum(key[0]) + 1 + len(key[1])
        for s, g in enumerate(M.S.chain):
            v = M.vector(key)
            for _ in range(bound):
                v = act(M, g, v) - v.scale(M.shifts[s])
            assert not v


def test_consistency_examples():
    M = build_twist_model(A1, el(A1, "s1"), V1, {0: I}, K=8, D=0)
    assert action_consistency_check(M, "e1", "e1").max_residual == 0
    r = action_consistency_check(M, "e1", "f1")
    assert r.max_residual == 0 and r.checked > 0


@pytest.mark.parametrize("word", ["s1", "s2.s1", "e"])
def test_consistency_with_cochain(word):
    M = build_twist_model(A2, el(A2, word), V2, {0: I}, K=6, D=4)
    for X, Y in product(range(A2.dim), repeat=2):
        assert action_consistency_check(M, X, Y).max_residual == 0


def test_consistency_with_adjoint_module():
    M = build_twist_model(A2, el(A2, "e"), adjoint_levi_module(A2, ()), None, K=0, D=4)
    for X, Y in product(range(A2.dim), repeat=2):
        assert action_consistency_check(M, X, Y).max_residual == 0


def test_weyl_permutation_matches_root_action():
    R = A2.root
    for w in weyl_group(R).elements:
        pi = weyl_permutation(w)
        for r in R.positive_roots:
            i, j = min(a for a, c in enumerate(r) if c), max(a for a, c in enumerate(r) if c) + 1
            a, b = pi[i], pi[j]
            img = tuple(1 if min(a, b) <= t < max(a, b) else 0 for t in range(2))
            assert w.act(r) == (img if a < b else tuple(-x for x in img))


def test_whittaker_examples():
    M = build_twist_model(A1, el(A1, "s1"), V1, {0: I}, K=5, D=0)
    r = whittaker_solve(M)
    assert r.dimension == 1 and r.expected_form and r.dims == (1, 1)
    assert whittaker_solve(build_twist_model(A1, el(A1, "e"), V1, {0: I}, K=5, D=4)).dimension == 0
    assert whittaker_solve(build_twist_model(A1, el(A1, "e"), V1, None, K=5, D=4)).dimension == 1


def _null_dim(V, B, w, eta):
    R = B.root
    simple = {R.simple_root(i).coords: i for i in range(R.rank)}
    rows = []
    for r in R.theta_roots(V.theta):
        img = w.act(r)
        c = eta.get(simple[img], 0) if img in simple else 0
        g = B.e(r)
        for out in range(V.dim):
            rows.append([sym(V.action[g][b].get(out, 0)) - (sym(c) if out == b else 0) for b in range(V.dim)])
    return oracles.null_dim(rows, V.dim)


def sym(x):
    return QQ_I.to_sympy(x) if hasattr(x, "y") else sympy.Integer(x)


@pytest.mark.parametrize("theta", [(), (0,), (1,)])
@pytest.mark.parametrize("eta", [{}, {0: I}, {1: I}, {0: I, 1: ONE + I}])
def test_whittaker_matches_cell_theorem_a2(theta, eta):
    R = A2.root
    shift = _orth(R, theta)
    inp = ProblemInput(R, theta, eta_values=eta)
    for V in (character_module(A2, theta, shift), adjoint_levi_module(A2, theta, shift)):
        for w in min_coset_reps(R, theta):
            M = build_twist_model(A2, w, V, eta, K=4, D=3)
            res = whittaker_solve(M)
            oracle = _null_dim(V, A2, w, eta)
            assert levi_whittaker_dimension(A2, w, V, eta) == oracle
            assert res.dimension == (0 if blocking_roots(inp, w) else oracle), (w, theta, eta)
            assert res.expected_form


def _orth(R, theta):
    out = [F(0), F(0)]
    for j, p in ((0, 3), (1, 5)):
        if j not in theta:
            for i in range(2):
                out[i] += R.fundamental_weights[j][i] / p
    return tuple(out)


def test_chain_order_independence():
    eta = {0: I, 1: ONE + I}
    orders = [[(1, 1), (1, 0), (0, 1)], [(1, 1), (0, 1), (1, 0)]]
    dims, chars = [], []
    for order in orders:
        M = build_twist_model(A2, W0, V2, eta, K=4, D=0, chain_order=order)
        dims.append(whittaker_solve(M).dimension)
        chars.append(truncated_character(M))
        for X, Y in [("e1", "f1"), ("f12", "e2"), ("f1", "f2")]:
            assert action_consistency_check(M, X, Y).max_residual == 0
    assert dims == [1, 1] and chars[0] == chars[1]
    with pytest.raises(InvalidSplit):
        build_twist_model(A2, W0, V2, eta, K=2, D=0, chain_order=[(1, 0), (0, 1), (1, 1)])


def test_bad_modules():
    with pytest.raises(BadModule):
        character_module(A1, (0,), (F(1, 3),))
    gens = levi_generators(A1, (0,))
    one = ({0: ONE},)
    action = {g: (one if A1.kinds[g] == "h" else ({},)) for g in gens}
    with pytest.raises(BadModule):
        check_module(A1, LeviModule((0,), 1, action))
    with pytest.raises(BadModule):
        check_module(A1, LeviModule((), 1, {}))
    with pytest.raises(BadModule):
        adjoint_levi_module(A2, (0,), (F(1, 3), 0))


def test_adjoint_levi_module_weights():
    V = adjoint_levi_module(A2, (0,))
    assert sorted(tuple(w) for w in V.weights) == sorted(tuple(Fraction(c) for c in w) for w in A2.weights)


def test_compose_examples():
    R = A2.root
    e, s1, s2 = el(A2, "e"), el(A2, "s1"), el(A2, "s2")
    r = compose_check(A2, s1, e, {}, V2, 4, 2)
    assert r.agree and r.route_a == r.route_b
    assert compose_check(A2, s1, s2, {0: I}, V2, 4, 2).agree
    with pytest.raises(LengthNotAdditive):
        compose_check(A2, s1, s1, {}, V2, 4, 2)


@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_consistency_on_random_pairs(data):
    w = data.draw(st.sampled_from(weyl_group(A2.root).elements))
    X, Y = data.draw(st.integers(0, 7)), data.draw(st.integers(0, 7))
    M = build_twist_model(A2, w, V2, {0: I}, K=4, D=4)
    sample = data.draw(st.lists(st.sampled_from(M.basis()), min_size=1, max_size=6, unique=True))
    try:
        r = action_consistency_check(M, X, Y, sample)
    except RuntimeError:
        return
    assert r.max_residual == 0
