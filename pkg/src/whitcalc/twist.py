"""Truncated model of T_{w,eta}(U(g) (x)_{U(p)} V) for g of type A.

Basis vectors are e^{-(k+1)} (x) T (x) v: k indexes the Ore denominators over
the chain (root vectors of w(Sigma^- minus Sigma_Theta^-) that are positive),
T is a PBW word in the cochain (the negative ones), and v runs over a weight
basis of V.  The generators of Ad(w)p act on V through Ad(w)^{-1}; the
nilradical of p acts by 0.
"""
from __future__ import annotations

import copy
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product

from sympy.polys.matrices import DomainMatrix
from sympy.polys.domains import QQ_I

from .envelope import ChainModel, ChevalleyBasis, InvalidSplit, _add, chain_shifts, check_ideal_chain
from .rootsys import Weight
from .scalars import ZERO, to_scalar
from .weylgrp import WeylElement, weyl_group


class BadModule(ValueError):
    pass


class InsufficientTruncation(RuntimeError):
    pass


class Unstable(RuntimeError):
    pass


class LengthNotAdditive(ValueError):
    pass


# -- Levi modules -------------------------------------------------------------

@dataclass
class LeviModule:
    """Finite-dimensional module over the Levi m + a of the parabolic for ``theta``.

    ``action[g]`` lists, for each basis vector b, the image of b under the
    base generator g as {b': coeff}.  Only Levi generators (all h_i and the
    root vectors of Sigma_Theta) appear.
    """

    theta: tuple
    dim: int
    action: dict
    weights: tuple = ()

    def apply(self, g, vec: dict) -> dict:
        cols = self.action[g]
        out = {}
        for b, c in vec.items():
            for b2, d in cols[b].items():
                _add(out, b2, c * d)
        return out


def levi_generators(B: ChevalleyBasis, theta) -> list:
    R = B.root
    theta = frozenset(theta)
    out = []
    for g in range(B.dim):
        if B.kinds[g] == "h" or R.support(B.weights[g]) <= theta:
            out.append(g)
    return out


def check_module(B: ChevalleyBasis, V: LeviModule) -> LeviModule:
    """Validate the bracket relations and read off the weights of the basis."""
    gens = levi_generators(B, V.theta)
    if set(V.action) != set(gens):
        raise BadModule("action must be given on exactly the Levi generators")
    for g in gens:
        if len(V.action[g]) != V.dim:
            raise BadModule(f"{B.names[g]} has the wrong number of columns")
    for x in gens:
        for y in gens:
            for b in range(V.dim):
                lhs = V.apply(x, V.apply(y, {b: 1}))
                for k, c in V.apply(y, V.apply(x, {b: 1})).items():
                    _add(lhs, k, -c)
                for z, c in B.bracket(x, y).items():
                    for k, d in V.apply(z, {b: 1}).items():
                        _add(lhs, k, -c * d)
                if lhs:
                    raise BadModule(f"[{B.names[x]}, {B.names[y]}] is not respected")
    R = B.root
    fund = R.fundamental_weights
    weights = []
    for b in range(V.dim):
        wt = Weight.zero(R.rank)
        for i in range(R.rank):
            col = V.action[B.h(i)][b]
            if set(col) - {b}:
                raise BadModule("basis is not a weight basis")
            val = col.get(b, ZERO)
            if val.y:
                raise BadModule("weights must be rational")
            wt = wt + Weight(fund[i]) * Fraction(int(val.x.numerator), int(val.x.denominator))
        weights.append(wt)
    V.weights = tuple(weights)
    return V


def _shift_value(B, shift, g):
    if shift is None or B.kinds[g] != "h":
        return ZERO
    return to_scalar(B.root.pairing(shift, g - B.dim_neg))


def _check_orthogonal(B, theta, mu):
    for i in theta:
        if B.root.pairing(mu, i):
            raise BadModule(f"character is not trivial on the coroot of simple root {i}")


def character_module(B: ChevalleyBasis, theta, mu) -> LeviModule:
    """One-dimensional module: h acts by mu, root vectors by 0."""
    mu = Weight(tuple(mu))
    _check_orthogonal(B, theta, mu)
    action = {g: ({0: _shift_value(B, mu, g)} if B.kinds[g] == "h" else {},)
              for g in levi_generators(B, theta)}
    for g, cols in action.items():
        action[g] = tuple({k: v for k, v in c.items() if v} for c in cols)
    return check_module(B, LeviModule(tuple(sorted(theta)), 1, action))


def adjoint_levi_module(B: ChevalleyBasis, theta, shift=None) -> LeviModule:
    """g under the adjoint action of the Levi, tensored with the character ``shift``."""
    if shift is not None:
        shift = Weight(tuple(shift))
        _check_orthogonal(B, theta, shift)
    action = {}
    for g in levi_generators(B, theta):
        s = _shift_value(B, shift, g)
        cols = []
        for b in range(B.dim):
            col = dict(B.bracket(g, b))
            col = {k: to_scalar(v) for k, v in col.items()}
            if s:
                _add(col, b, s)
            cols.append(col)
        action[g] = tuple(cols)
    return check_module(B, LeviModule(tuple(sorted(theta)), B.dim, action))


# -- the model ----------------------------------------------------------------

def default_chain_order(R, roots) -> list:
    """Descending height, then lexicographically descending coefficients."""
    return sorted(roots, key=lambda r: (-sum(r), tuple(-c for c in r)))


def chain_roots(R, w: WeylElement, theta) -> tuple:
    """(chain, cochain) root sets: images under w of Sigma^- minus Sigma_Theta^-, split by sign."""
    theta = frozenset(theta)
    up, down = [], []
    for b in R.positive_roots:
        if R.support(b) <= theta:
            continue
        img = w.act(tuple(-c for c in b))
        (up if R.is_positive(img) else down).append(img)
    return up, down


def weyl_permutation(w: WeylElement) -> tuple:
    """pi with w(eps_a) = eps_pi(a), composed from adjacent transpositions."""
    n = len(w.cols) + 1
    pi = list(range(n))
    for i in reversed(w.word):
        pi = [pi[a] if pi[a] not in (i, i + 1) else (i + 1 if pi[a] == i else i) for a in range(n)]
    return tuple(pi)


@dataclass
class TwistVector:
    terms: dict
    truncated: bool = False

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add(out, k, c)
        return TwistVector(out, self.truncated or other.truncated)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return TwistVector({k: v * c for k, v in self.terms.items() if v * c}, self.truncated)

    def __bool__(self):
        return bool(self.terms)


class TwistModel:
    def __init__(self, B: ChevalleyBasis, w: WeylElement, V: LeviModule, eta=None, K: int = 4, D: int = 4,
                 chain_order=None):
        R = B.root
        if any(min(w.cols[i]) < 0 for i in V.theta):
            raise ValueError(f"{w} is not a minimal coset representative for theta {V.theta}")
        self.B, self.w, self.V, self.K, self.D = B, w, V, K, D
        self.eta = {int(i): to_scalar(v) for i, v in (eta or {}).items() if v}
        up, down = chain_roots(R, w, V.theta)
        if chain_order is None:
            chain = default_chain_order(R, up)
        else:
            chain = [tuple(r) for r in chain_order]
            if sorted(chain) != sorted(up):
                raise InvalidSplit("chain order must list exactly the chain roots")
        self.chain_roots = tuple(chain)
        self.cochain_roots = tuple(sorted(down, key=lambda r: B.f(tuple(-c for c in r))))
        chain_g = [B.e(r) for r in self.chain_roots]
        cochain_g = [B.f(tuple(-c for c in r)) for r in self.cochain_roots]
        check_ideal_chain(B, chain_g)
        self.shifts = chain_shifts(B, chain_g, self.eta)
        self.S = ChainModel(B, chain_g, self.shifts, rest_order=cochain_g)
        self.alg = self.S.alg
        self.l, self.c = len(chain_g), len(cochain_g)
        self.pi = weyl_permutation(w)
        winv = weyl_group(R).inverse(w)
        self._rest_ops = {}
        theta = frozenset(V.theta)
        inv_pi = {b: a for a, b in enumerate(self.pi)}
        for p in range(self.l + self.c, B.dim):
            g = self.alg.order[p]
            mat = {(inv_pi[r], inv_pi[c]): v for (r, c), v in B.matrix(g).items()}
            pre = B.decompose(mat)
            if B.kinds[g] != "h":
                (g2,) = pre
                assert B.weights[g2] == tuple(winv.act(B.weights[g]))
                if not R.support(B.weights[g2]) <= theta:
                    if not R.is_positive(B.weights[g2]):
                        raise AssertionError("cochain bookkeeping is inconsistent")
                    self._rest_ops[p] = {}
                    continue
            self._rest_ops[p] = pre
        self._cache = {}

    def with_truncation(self, K: int, D: int) -> "TwistModel":
        """Same model with other bounds; the action cache is shared."""
        out = copy.copy(self)
        out.K, out.D = K, D
        return out

    # -- basis ---------------------------------------------------------------
    def k_indices(self, K=None) -> list:
        K = self.K if K is None else K
        return [k for k in product(range(K + 1), repeat=self.l) if sum(k) <= K]

    def cochain_words(self, D=None) -> list:
        D = self.D if D is None else D
        letters = range(self.l, self.l + self.c)
        out = []
        for d in range(D + 1):
            out.extend(combinations_with_replacement(letters, d))
        return out if self.c else [()]

    def basis(self) -> list:
        return [(k, m, b) for k in self.k_indices() for m in self.cochain_words() for b in range(self.V.dim)]

    def vector(self, key) -> TwistVector:
        return TwistVector({key: to_scalar(1)})

    def in_range(self, key) -> bool:
        k, m, _ = key
        return sum(k) <= self.K and len(m) <= self.D

    # -- action ----------------------------------------------------------------
    def _apply_rest(self, word, b) -> dict:
        vec = {b: to_scalar(1)}
        for p in reversed(word):
            op = self._rest_ops[p]
            nxt = {}
            for g, c in op.items():
                for b2, d in self.V.apply(g, vec).items():
                    _add(nxt, b2, c * d)
            vec = nxt
            if not vec:
                break
        return vec

    def act_basis(self, g: int, key) -> dict:
        hit = self._cache.get((g, key))
        if hit is not None:
            return hit
        k, m, b = key
        S, alg = self.S, self.alg
        out = {}
        for k1, vec in S.left_through(g, k).items():
            for y, cy in vec.items():
                for word, cw in alg.word_word((alg.pos[y],), m).items():
                    cword, tail = S.split_word(word)
                    i = 0
                    while i < len(tail) and tail[i] < self.l + self.c:
                        i += 1
                    mword, rword = tail[:i], tail[i:]
                    vv = self._apply_rest(rword, b)
                    if not vv:
                        continue
                    for k2, d in S.absorb_word(k1, cword).items():
                        t = cy * cw * d
                        for b2, e in vv.items():
                            _add(out, (k2, mword, b2), t * e)
        self._cache[(g, key)] = out
        return out

    def act_generator(self, g, v: TwistVector) -> TwistVector:
        g = self.B.index(g)
        out = {}
        for key, c in v.terms.items():
            for k2, d in self.act_basis(g, key).items():
                _add(out, k2, c * d)
        flag = v.truncated or any(not self.in_range(key) for key in out)
        return TwistVector(out, flag)


def build_twist_model(B, w, V, eta=None, K=4, D=4, chain_order=None) -> TwistModel:
    return TwistModel(B, w, V, eta, K, D, chain_order)


def act(M: TwistModel, X, v: TwistVector) -> TwistVector:
    """X is a generator name/index or a degree-1 vector {generator: coeff}."""
    if not isinstance(X, dict):
        return M.act_generator(X, v)
    out = TwistVector({})
    for g, c in X.items():
        out = out + M.act_generator(g, v).scale(to_scalar(c))
    return out


# -- weights and characters -----------------------------------------------------

def key_weight(M: TwistModel, key) -> tuple:
    k, m, b = key
    R = M.B.root
    wt = [Fraction(0)] * R.rank
    for ks, r in zip(k, M.chain_roots):
        for i in range(R.rank):
            wt[i] -= (ks + 1) * r[i]
    for p in m:
        r = M.B.weights[M.alg.order[p]]
        for i in range(R.rank):
            wt[i] += r[i]
    vw = M.w.act(M.V.weights[b])
    return tuple(a + Fraction(c) for a, c in zip(wt, vw))


def truncated_character(M: TwistModel) -> Counter:
    return Counter(key_weight(M, key) for key in M.basis())


# -- consistency of the action ------------------------------------------------------

@dataclass
class ConsistencyReport:
    max_residual: int
    checked: int
    truncated: int
    failures: list = field(default_factory=list)


def _height(x):
    return sum(x)


def safe_for_pair(M: TwistModel, key, gx: int, gy: int) -> bool:
    """A priori bound: both orders of X, Y applied to key stay inside K and D.

    The weight of a basis vector pins down sum_s (k_s + 1) ht(beta_s); the
    cochain part and V can only move it by bounded amounts per step.
    """
    k, m, b = key
    if M.c and len(m) + 2 > M.D:
        return False
    if not M.l:
        return True
    B = M.B
    hts = [_height(r) for r in M.chain_roots]
    H = sum((ks + 1) * h for ks, h in zip(k, hts))
    hc = max((-_height(r) for r in M.cochain_roots), default=0)
    vh = [_height(M.w.act(wt)) for wt in M.V.weights]
    spread = max(vh) - min(vh)
    A = -sum(_height(B.weights[M.alg.order[p]]) for p in m)
    worst = 0
    for g1, g2 in ((gx, gy), (gy, gx)):
        H1 = H + A + spread - _height(B.weights[g1])
        H2 = H1 + hc * (len(m) + 1) + spread - _height(B.weights[g2])
        worst = max(worst, H1, H2)
    return worst - sum(hts) <= M.K


def action_consistency_check(M: TwistModel, X, Y, sample=None) -> ConsistencyReport:
    """[X,Y].v - X.(Y.v) + Y.(X.v) on basis vectors; reports the largest residual support."""
    B = M.B
    gx, gy = B.index(X), B.index(Y)
    keys = M.basis() if sample is None else list(sample)
    safe = [key for key in keys if safe_for_pair(M, key, gx, gy)]
    if not safe:
        raise InsufficientTruncation("no sample vector has a safe truncation margin")
    worst, flagged, fails = 0, 0, []
    for key in safe:
        v = M.vector(key)
        res = act(M, B.bracket(gx, gy), v) - act(M, gx, act(M, gy, v)) + act(M, gy, act(M, gx, v))
        flagged += res.truncated
        if res.terms:
            fails.append(key)
        worst = max(worst, len(res.terms))
    return ConsistencyReport(worst, len(safe), flagged, fails)


# -- Whittaker vectors -----------------------------------------------------------

@dataclass
class WhittakerResult:
    dimension: int
    solutions: list
    expected_form: bool
    dims: tuple


def _null_space(M: TwistModel, eta) -> list:
    R = M.B.root
    cols = M.basis()
    rows, row_index = {}, {}
    for i in range(R.rank):
        g = M.B.e(R.simple_root(i).coords)
        c = to_scalar(eta.get(i, 0))
        for j, key in enumerate(cols):
            img = dict(M.act_basis(g, key))
            if c:
                _add(img, key, -c)
            for out_key, v in img.items():
                r = row_index.setdefault((i, out_key), len(row_index))
                rows.setdefault(r, {})[j] = v
    if not cols:
        return []
    if not row_index:
        return [M.vector(key) for key in cols]
    mat = DomainMatrix(rows, (len(row_index), len(cols)), QQ_I)
    out = []
    for vec in mat.nullspace().to_list():
        out.append(TwistVector({cols[j]: v for j, v in enumerate(vec) if v}))
    return out


def whittaker_solve(M: TwistModel, eta=None) -> WhittakerResult:
    """Exact solutions of (e_alpha_i - eta_i) v = 0 for all simple i on the truncated model."""
    eta = M.eta if eta is None else {int(i): to_scalar(v) for i, v in eta.items()}
    sols = _null_space(M, eta)
    dims = (len(sols),)
    if M.K >= 1 and M.l:
        smaller = M.with_truncation(M.K - 1, M.D)
        prev = len(_null_space(smaller, eta))
        dims = (prev, len(sols))
        if prev != len(sols):
            raise Unstable(f"solution dimension changes from {prev} to {len(sols)} between K-1 and K")
    form = all(not any(k) and not m for v in sols for (k, m, _) in v.terms)
    return WhittakerResult(len(sols), sols, form, dims)


def levi_whittaker_dimension(B: ChevalleyBasis, w: WeylElement, V: LeviModule, eta) -> int:
    """dim {v in V : (Y - eta(Ad(w)Y)) v = 0 for root vectors Y of m cap n0}."""
    R = B.root
    eta = {int(i): to_scalar(c) for i, c in (eta or {}).items()}
    simple = {R.simple_root(i).coords: i for i in range(R.rank)}
    rows = []
    for r in R.theta_roots(V.theta):
        g = B.e(r)
        image = tuple(w.act(r))
        c = eta.get(simple[image], ZERO) if image in simple else ZERO
        for out in range(V.dim):
            rows.append([V.action[g][b].get(out, ZERO) - (c if out == b else ZERO) for b in range(V.dim)])
    if not rows:
        return V.dim
    mat = DomainMatrix(rows, (len(rows), V.dim), QQ_I)
    return V.dim - mat.rank()


# -- composition ------------------------------------------------------------------

@dataclass
class ComposeReport:
    agree: bool
    chain_split: bool
    route_a: Counter
    route_b: Counter


def compose_check(B: ChevalleyBasis, w: WeylElement, w2: WeylElement, psi, V: LeviModule, K: int, D: int):
    """Character of the model for w w2 against the two-step decomposition through w2 then w."""
    R = B.root
    ww = w * w2
    if ww.length != w.length + w2.length:
        raise LengthNotAdditive(f"l({w}) + l({w2}) != l({ww})")
    first, _ = chain_roots(R, w, ())
    inner = TwistModel(B, w2, V, None, K, D)
    moved = [tuple(w.act(r)) for r in inner.chain_roots]
    order = moved + default_chain_order(R, first)
    M = TwistModel(B, ww, V, psi, K, D, chain_order=order)
    split = sorted(M.chain_roots) == sorted(first + moved) and not set(first) & set(moved)
    route_a = truncated_character(M)
    # T_{w2} J, then twist by w: cochain letters of w2 with positive w-image are
    # swallowed by the localization along chain(w).
    keep = [p for p in range(inner.l, inner.l + inner.c)
            if not R.is_positive(w.act(B.weights[inner.alg.order[p]]))]
    route_b = Counter()
    kw = [k for k in product(range(K + 1), repeat=len(first)) if sum(k) <= K]
    for k2 in inner.k_indices():
        for m in inner.cochain_words():
            if any(p not in keep for p in m):
                continue
            for b in range(V.dim):
                base = tuple(Fraction(c) for c in w.act(key_weight(inner, (k2, m, b))))
                for k1 in kw:
                    if sum(k1) + sum(k2) > K:
                        continue
                    wt = list(base)
                    for ks, r in zip(k1, default_chain_order(R, first)):
                        for i in range(R.rank):
                            wt[i] -= (ks + 1) * r[i]
                    route_b[tuple(wt)] += 1
    return ComposeReport(route_a == route_b and split, split, route_a, route_b)
