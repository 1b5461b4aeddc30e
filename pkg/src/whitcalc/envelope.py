"""Exact arithmetic in U(g) for g of type A, with Ore localization at root vectors.

PBW monomials are stored as nondecreasing words of generator positions in
the chosen order (a word is the same data as an exponent vector).  Structure
constants come from elementary matrices, so everything stays integral until
complex shifts enter.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .rootsys import RootDatum
from .scalars import ZERO, cq, to_scalar


class UnsupportedType(ValueError):
    pass


class NotNilpotent(RuntimeError):
    pass


class InvalidSplit(ValueError):
    pass


def _is_type_a(R: RootDatum) -> bool:
    n = R.rank
    return R.reduced and all(
        R.cartan[i][j] == (2 if i == j else -1 if abs(i - j) == 1 else 0)
        for i in range(n) for j in range(n))


def _add(d, key, c):
    v = d.get(key, 0) + c
    if v:
        d[key] = v
    else:
        d.pop(key, None)


class ChevalleyBasis:
    """Chevalley basis of sl(n+1): f_beta (root order), h_1..h_n, e_beta (root order)."""

    def __init__(self, R: RootDatum):
        if not _is_type_a(R):
            raise UnsupportedType(f"structure constants are only built for type A, got {R!r}")
        if R.rank > 7:
            raise UnsupportedType("rank above 7 is not supported")
        self.root = R
        n = R.rank
        pos = R.positive_roots
        mats, names, weights, kinds = [], [], [], []
        for sign, kind in ((-1, "f"), (0, "h"), (1, "e")):
            if sign == 0:
                for i in range(n):
                    mats.append({(i, i): 1, (i + 1, i + 1): -1})
                    names.append(f"h{i + 1}")
                    weights.append((0,) * n)
                    kinds.append("h")
                continue
            for r in pos:
                idx = [i for i, c in enumerate(r) if c]
                a, b = idx[0], idx[-1] + 1
                mats.append({(a, b): 1} if sign > 0 else {(b, a): 1})
                names.append(kind + "".join(str(i + 1) for i in idx))
                weights.append(tuple(sign * c for c in r))
                kinds.append(kind)
        self.names = tuple(names)
        self.weights = tuple(weights)
        self.kinds = tuple(kinds)
        self.dim = len(names)
        self._mats = mats
        self._offdiag = {next(iter(m)): g for g, m in enumerate(mats) if kinds[g] != "h"}
        self._index = {name: g for g, name in enumerate(names)}
        self.brackets = {}
        for a in range(self.dim):
            for b in range(self.dim):
                v = self.decompose(_commutator(mats[a], mats[b]))
                if v:
                    self.brackets[a, b] = v

    def decompose(self, mat) -> dict:
        """Express a traceless sparse matrix in the basis."""
        out, diag = {}, {}
        for (r, c), v in mat.items():
            if not v:
                continue
            if r == c:
                diag[r] = v
            else:
                out[self._offdiag[r, c]] = v
        if sum(diag.values()):
            raise ValueError("matrix is not traceless")
        run = 0
        n = self.root.rank
        for i in range(n):
            run += diag.get(i, 0)
            if run:
                out[self.dim_neg + i] = run
        return out

    @property
    def dim_neg(self) -> int:
        return len(self.root.positive_roots)

    def matrix(self, g) -> dict:
        return dict(self._mats[self.index(g)])

    def index(self, g) -> int:
        if isinstance(g, str):
            return self._index[g]
        if not 0 <= g < self.dim:
            raise IndexError(g)
        return int(g)

    def e(self, root) -> int:
        return self.dim_neg + self.root.rank + self.root.root_index[tuple(root)]

    def f(self, root) -> int:
        return self.root.root_index[tuple(root)]

    def h(self, i) -> int:
        return self.dim_neg + i

    def root_vector(self, root) -> int:
        root = tuple(root)
        return self.e(root) if self.root.is_positive(root) else self.f(tuple(-c for c in root))

    def bracket(self, a, b) -> dict:
        if isinstance(a, str) or isinstance(b, str):
            a, b = self.index(a), self.index(b)
        return self.brackets.get((a, b), {})

    def ad(self, a, vec: dict) -> dict:
        """[a, vec] for a degree-1 vector {generator: coeff}."""
        out = {}
        for g, c in vec.items():
            for h, d in self.brackets.get((a, g), {}).items():
                _add(out, h, c * d)
        return out

    def jacobi_residual(self) -> int:
        """Number of generator triples violating antisymmetry or Jacobi."""
        bad = 0
        for a in range(self.dim):
            for b in range(self.dim):
                ab, ba = self.bracket(a, b), self.bracket(b, a)
                if any(ab.get(k, 0) + ba.get(k, 0) for k in set(ab) | set(ba)):
                    bad += 1
                for c in range(self.dim):
                    tot = {}
                    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                        for k, v in self.ad(x, self.bracket(y, z)).items():
                            _add(tot, k, v)
                    bad += bool(tot)
        return bad


def _commutator(A, B):
    out = {}
    for (i, j), a in A.items():
        for (k, l), b in B.items():
            if j == k:
                _add(out, (i, l), a * b)
            if l == i:
                _add(out, (k, j), -a * b)
    return out


@lru_cache(maxsize=None)
def chevalley_basis(R: RootDatum) -> ChevalleyBasis:
    return ChevalleyBasis(R)


class Envelope:
    """U(g) with a fixed PBW order; ``leading`` generators come first, in the given order."""

    def __init__(self, B: ChevalleyBasis, leading=()):
        lead = [B.index(g) for g in leading]
        if len(set(lead)) != len(lead):
            raise ValueError("repeated leading generator")
        self.B = B
        self.order = tuple(lead + [g for g in range(B.dim) if g not in lead])
        self.pos = {g: p for p, g in enumerate(self.order)}
        m = B.dim
        self._br = [[tuple((self.pos[g], c) for g, c in B.bracket(self.order[p], self.order[q]).items())
                     for q in range(m)] for p in range(m)]
        self._gm = {}
        self._ww = {}

    # -- word arithmetic (integer coefficients) -------------------------
    def gen_word(self, p: int, word: tuple) -> dict:
        """Normal form of x_p * word."""
        key = (p, word)
        hit = self._gm.get(key)
        if hit is not None:
            return hit
        if not word or p <= word[0]:
            res = {(p,) + word: 1}
        else:
            x, rest = word[0], word[1:]
            res = {}
            for w2, c2 in self.gen_word(p, rest).items():
                for w3, c3 in self.gen_word(x, w2).items():
                    _add(res, w3, c2 * c3)
            for y, cy in self._br[p][x]:
                for w3, c3 in self.gen_word(y, rest).items():
                    _add(res, w3, cy * c3)
        self._gm[key] = res
        return res

    def word_word(self, u: tuple, v: tuple) -> dict:
        key = (u, v)
        hit = self._ww.get(key)
        if hit is not None:
            return hit
        cur = {v: 1}
        for p in reversed(u):
            nxt = {}
            for w, c in cur.items():
                for w2, c2 in self.gen_word(p, w).items():
                    _add(nxt, w2, c * c2)
            cur = nxt
        self._ww[key] = cur
        return cur

    # -- element constructors ------------------------------------------
    def element(self, terms) -> "UEAElement":
        return UEAElement(self, terms)

    def one(self) -> "UEAElement":
        return UEAElement(self, {(): 1})

    def gen(self, g) -> "UEAElement":
        return UEAElement(self, {(self.pos[self.B.index(g)],): 1})

    def vector(self, vec: dict) -> "UEAElement":
        """Degree-1 element from {base generator: coeff}."""
        return UEAElement(self, {(self.pos[g],): c for g, c in vec.items()})

    def product(self, gens) -> "UEAElement":
        out = self.one()
        for g in gens:
            out = out * self.gen(g)
        return out

    def exponents(self, word) -> tuple:
        out = [0] * self.B.dim
        for p in word:
            out[p] += 1
        return tuple(out)

    def word_name(self, word) -> str:
        if not word:
            return "1"
        parts, i = [], 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            name = self.B.names[self.order[word[i]]]
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(parts)


class UEAElement:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: Envelope, terms):
        self.alg = alg
        self.terms = {tuple(w): c for w, c in dict(terms).items() if c}

    def _coerce(self, other):
        if isinstance(other, UEAElement):
            if other.alg is not self.alg:
                raise ValueError("elements from different PBW orders")
            return other
        return UEAElement(self.alg, {(): other})

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            _add(out, w, c)
        return UEAElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return UEAElement(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UEAElement):
            return UEAElement(self.alg, {w: c * other for w, c in self.terms.items()})
        other = self._coerce(other)
        out = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                for w, c in self.alg.word_word(u, v).items():
                    _add(out, w, a * b * c)
        return UEAElement(self.alg, out)

    def __rmul__(self, scalar):
        return UEAElement(self.alg, {w: scalar * c for w, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, UEAElement):
            other = self._coerce(other)
        return not (self - other).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{self.alg.word_name(w)}" for w, c in sorted(self.terms.items()))


def pbw_normal_form(alg: Envelope, expr) -> UEAElement:
    """Normal form of a formal sum of products: [(coeff, [gen, gen, ...]), ...]."""
    out = UEAElement(alg, {})
    for coeff, gens in expr:
        out = out + alg.product(gens) * coeff
    return out


def ad_power(alg, e, X, n: int) -> UEAElement:
    """ad(e)^n X.  ``alg`` may be an Envelope or a ChevalleyBasis (then X may be a generator)."""
    if isinstance(alg, ChevalleyBasis):
        alg = _localized_algebra(alg, None)
    X = _as_element(alg, X)
    E = alg.gen(e)
    for _ in range(n):
        X = E * X - X * E
    return X


def ad_series(alg: Envelope, e, X: UEAElement) -> list:
    """[X, ad(e)X, ad(e)^2 X, ...] up to the last nonzero term."""
    out = [X]
    limit = alg.B.dim + 1
    while out[-1]:
        if len(out) > limit:
            raise NotNilpotent(f"ad({alg.B.names[alg.B.index(e)]}) does not terminate")
        out.append(ad_power(alg, e, out[-1], 1))
    return out[:-1]


# -- localization ---------------------------------------------------------

class LocalizedElement:
    """(e - c)^{-N} * numerator, with e the leading generator of the algebra."""

    __slots__ = ("alg", "c", "N", "numerator")

    def __init__(self, alg: Envelope, c, N: int, numerator: UEAElement):
        self.alg, self.c, self.N, self.numerator = alg, c, N, numerator

    @property
    def denom_gen(self) -> int:
        return self.alg.order[0]

    def raise_power(self, N: int) -> "LocalizedElement":
        """Same element written over (e - c)^{-N}, N >= self.N."""
        u = self.numerator
        for _ in range(N - self.N):
            u = e_minus_c_times(u, self.c)
        return LocalizedElement(self.alg, self.c, N, u)

    def canonical(self) -> "LocalizedElement":
        N, u = self.N, self.numerator
        while N > 0 and u:
            q = divide_e_minus_c(u, self.c)
            if q is None:
                break
            N, u = N - 1, q
        if not u:
            N = 0
        return LocalizedElement(self.alg, self.c, N, u)

    def __add__(self, other):
        N = max(self.N, other.N)
        a, b = self.raise_power(N), other.raise_power(N)
        return LocalizedElement(self.alg, self.c, N, a.numerator + b.numerator).canonical()

    def __neg__(self):
        return LocalizedElement(self.alg, self.c, self.N, -self.numerator)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self) -> bool:
        return not self.canonical().numerator

    def zero_in_quotient(self) -> bool:
        """Vanishes in S = U_(e-c) / U."""
        return self.canonical().N == 0

    def __repr__(self):
        x = self.canonical()
        return f"(e-{x.c})^-{x.N} * [{x.numerator!r}]"


def e_minus_c_times(u: UEAElement, c) -> UEAElement:
    """(e - c) u, where e sits at position 0 of the PBW order."""
    out = {}
    for w, a in u.terms.items():
        _add(out, (0,) + w, a)
        _add(out, w, -c * a)
    return UEAElement(u.alg, out)


def divide_e_minus_c(u: UEAElement, c):
    """q with u = (e - c) q, or None when u is not in (e - c)U."""
    groups = {}
    for w, a in u.terms.items():
        k = 0
        while k < len(w) and w[k] == 0:
            k += 1
        groups.setdefault(w[k:], {})[k] = a
    out = {}
    for rest, poly in groups.items():
        d = max(poly)
        # synthetic division by (e - c), top coefficient first
        q = [ZERO] * d
        carry = ZERO
        for a in range(d, 0, -1):
            carry = poly.get(a, ZERO) + c * carry
            q[a - 1] = carry
        if poly.get(0, ZERO) + c * carry:
            return None
        for a, v in enumerate(q):
            if v:
                out[(0,) * a + rest] = v
    return UEAElement(u.alg, out)


def _as_element(alg: Envelope, X) -> UEAElement:
    if isinstance(X, UEAElement):
        if X.alg is alg:
            return X
        return UEAElement(alg, {tuple(sorted(alg.pos[X.alg.order[p]] for p in w)): c
                                for w, c in X.terms.items() if len(w) <= 1})
    return alg.gen(X)


@lru_cache(maxsize=None)
def _localized_algebra(B: ChevalleyBasis, e) -> Envelope:
    return Envelope(B, leading=[] if e is None else [e])


def verify_localized_commutation(B: ChevalleyBasis, e, c, X, k: int) -> LocalizedElement:
    """Residual of X(e-c)^{-(k+1)} = sum_n C(n+k,k)(e-c)^{-(n+k+1)} ad(e)^n X.

    The right side is multiplied by (e-c)^{k+1} on the right one factor at a
    time using u(e-c) = (e-c)u - ad(e)(u), then compared with X.
    """
    e = B.index(e)
    c = to_scalar(c)
    alg = _localized_algebra(B, e)
    X = _as_element(alg, X)
    E = alg.gen(e)
    series = ad_series(alg, e, X)
    laurent = {n + k + 1: Y * cq(comb(n + k, k)) for n, Y in enumerate(series)}
    for _ in range(k + 1):
        nxt = {}
        for s, u in laurent.items():
            for t, v in ((s - 1, u), (s, -(E * u - u * E))):
                if v:
                    nxt[t] = nxt[t] + v if t in nxt else v
        laurent = {s: u for s, u in nxt.items() if u}
    N = max([0] + list(laurent))
    num = UEAElement(alg, {})
    for s, u in laurent.items():
        for _ in range(N - s):
            u = e_minus_c_times(u, c)
        num = num + u
    lhs = LocalizedElement(alg, c, N, num)
    return (lhs - LocalizedElement(alg, c, 0, X)).canonical()


def polynomial_commutation_residual(B: ChevalleyBasis, e, c, X, k: int, side: str = "left") -> UEAElement:
    """Clear all denominators of the commutation formula and compare inside U(g).

    side="left":  (e-c)^M X = sum_n C(n+k,k) (e-c)^{M-n-k-1} ad(e)^n(X) (e-c)^{k+1}
    side="right": X (e-c)^M = sum_n (-1)^n C(n+k,k) (e-c)^{k+1} ad(e)^n(X) (e-c)^{M-n-k-1}
    with M = k + 1 + (last n).  The second is the mirrored formula used to move
    elements into a denominator from the right.
    """
    e = B.index(e)
    alg = Envelope(B)
    X = _as_element(alg, X)
    c = to_scalar(c)
    P = alg.gen(e) - c

    def power(m):
        out = alg.one()
        for _ in range(m):
            out = out * P
        return out

    series = ad_series(alg, e, X)
    M = k + len(series)
    if side == "left":
        lhs = power(M) * X
        rhs = sum((power(M - n - k - 1) * Y * power(k + 1) * cq(comb(n + k, k))
                   for n, Y in enumerate(series)), UEAElement(alg, {}))
    else:
        lhs = X * power(M)
        rhs = sum((power(k + 1) * Y * power(M - n - k - 1) * cq((-1) ** n * comb(n + k, k))
                   for n, Y in enumerate(series)), UEAElement(alg, {}))
    return lhs - rhs


# -- ordered-weight comparison and the bracket filtration ------------------

def weight_less(x, y) -> bool:
    """Total order: compare height, then the first nonzero coordinate of y - x."""
    d = [b - a for a, b in zip(x, y)]
    h = sum(d)
    if h:
        return h > 0
    for v in d:
        if v:
            return v > 0
    return False


def _closed(B: ChevalleyBasis, span) -> bool:
    span = set(span)
    return all(set(B.bracket(a, b)) <= span for a in span for b in span)


def bracket_filtration_check(B: ChevalleyBasis, F, c, k: int, xi, E_family, complement, attached=None):
    """Normal-form [(F - c)^k, E^xi] with the E-family leftmost and test the filtration.

    Every monomial must be E^xi' times a word in the complement, with xi' of
    smaller degree or of equal degree and smaller attached weight.  Attached
    roots default to the negatives of the E-family roots.  Returns
    (member, violations) where violations lists the offending words.
    """
    E = [B.index(g) for g in E_family]
    C = [B.index(g) for g in complement]
    F = B.index(F)
    if len(xi) != len(E):
        raise ValueError("xi must have one entry per E-family generator")
    if set(E) & set(C) or F not in C:
        raise InvalidSplit("F must lie in the complement, which must be disjoint from the E-family")
    for span, what in ((E, "E-family"), (C, "complement"), (E + C, "E-family + complement")):
        if not _closed(B, span):
            raise InvalidSplit(f"{what} span is not a subalgebra")
    if attached is None:
        attached = [tuple(-c for c in B.weights[g]) for g in E]
    alg = Envelope(B, leading=E + C)
    c = to_scalar(c)
    P = alg.one()
    for _ in range(k):
        P = P * (alg.gen(F) - c)
    Exi = UEAElement(alg, {tuple(p for p, x in enumerate(xi) for _ in range(x)): 1})
    comm = P * Exi - Exi * P
    nE = len(E)
    base_deg = sum(xi)
    base_wt = [sum(x * a[i] for x, a in zip(xi, attached)) for i in range(B.root.rank)]
    bad = []
    for w in comm.terms:
        pre = [p for p in w if p < nE]
        if any(p >= nE + len(C) for p in w) or w[:len(pre)] != tuple(pre):
            bad.append(w)
            continue
        xp = [pre.count(s) for s in range(nE)]
        deg = sum(xp)
        wt = [sum(x * a[i] for x, a in zip(xp, attached)) for i in range(B.root.rank)]
        if deg < base_deg or (deg == base_deg and weight_less(wt, base_wt)):
            continue
        bad.append(w)
    return not bad, [alg.word_name(w) for w in bad]


# -- iterated quotient S_{e_1} (x)_U ... (x)_U S_{e_l} -----------------------

class ChainModel:
    """Right U(g)-module sum_k C e^{-(k+1)} (x)_{U(u)} U(g) with its left g-action.

    ``chain`` is an ideal chain e_1..e_l of root vectors (each prefix span an
    ideal in the next); ``shifts`` are the scalars c_s in (e_s - c_s).  An
    element is a dict {(k, rest_word): coeff} where rest_word is a PBW word in
    the non-chain generators, ordered as ``rest_order`` and then base order.
    """

    def __init__(self, B: ChevalleyBasis, chain, shifts=None, rest_order=()):
        self.B = B
        self.chain = tuple(B.index(g) for g in chain)
        self.l = len(self.chain)
        self.shifts = tuple(shifts) if shifts is not None else (ZERO,) * self.l
        if len(self.shifts) != self.l:
            raise ValueError("one shift per chain generator")
        check_ideal_chain(B, self.chain)
        self.alg = Envelope(B, leading=list(self.chain) + [B.index(g) for g in rest_order])
        self._chain_index = {g: s for s, g in enumerate(self.chain)}
        self._left_cache = {}
        self._absorb_cache = {}

    def basis(self, k) -> dict:
        return {(tuple(k), ()): cq(1)}

    def _as_chain(self, vec: dict, below: int) -> dict:
        out = {}
        for g, c in vec.items():
            s = self._chain_index.get(g)
            if s is None or s >= below:
                raise InvalidSplit("chain is not an ideal chain")
            out[s] = c
        return out

    def left_through(self, g: int, k: tuple) -> dict:
        """Move generator g rightwards through every denominator: {k': degree-1 vector}."""
        key = (g, k)
        hit = self._left_cache.get(key)
        if hit is not None:
            return hit
        B = self.B
        states = {k: {g: 1}}
        for s in range(self.l):
            es = self.chain[s]
            nxt = {}
            for kk, vec in states.items():
                ks, n = kk[s], 0
                while vec:
                    if n > B.dim:
                        raise NotNilpotent("ad-series did not terminate")
                    k2 = kk[:s] + (ks + n,) + kk[s + 1:]
                    tgt = nxt.setdefault(k2, {})
                    coef = comb(n + ks, ks)
                    for h, c in vec.items():
                        _add(tgt, h, coef * c)
                    vec = B.ad(es, vec)
                    n += 1
            states = {kk: v for kk, v in nxt.items() if v}
        self._left_cache[key] = states
        return states

    def absorb(self, k: tuple, t: int) -> dict:
        """e^{-(k+1)} * e_t as {k': coeff}."""
        key = (k, t)
        hit = self._absorb_cache.get(key)
        if hit is not None:
            return hit
        B = self.B
        pending = {(k, t): 1}
        done = {}
        for s in reversed(range(self.l)):
            es, cs = self.chain[s], self.shifts[s]
            nxt = {}
            for (kk, j), c in pending.items():
                ks = kk[s]
                if j == s:
                    if ks:
                        _add(done, kk[:s] + (ks - 1,) + kk[s + 1:], c)
                    if cs:
                        _add(done, kk, c * cs)
                    continue
                vec, n = {self.chain[j]: 1}, 0
                while vec:
                    k2 = kk[:s] + (ks + n,) + kk[s + 1:]
                    coef = (-1) ** n * comb(n + ks, ks)
                    for j2, d in self._as_chain(vec, s).items():
                        _add(nxt, (k2, j2), c * coef * d)
                    vec = B.ad(es, vec)
                    n += 1
            pending = nxt
        assert not pending
        self._absorb_cache[key] = done
        return done

    def absorb_word(self, k: tuple, chain_word) -> dict:
        cur = {k: 1}
        for p in chain_word:
            nxt = {}
            for kk, c in cur.items():
                for k2, d in self.absorb(kk, p).items():
                    _add(nxt, k2, c * d)
            cur = nxt
        return cur

    def split_word(self, word):
        i = 0
        while i < len(word) and word[i] < self.l:
            i += 1
        return word[:i], word[i:]

    def right_mul(self, elem: dict, u: UEAElement) -> dict:
        out = {}
        for (k, rest), a in elem.items():
            for v, b in u.terms.items():
                for w, c in self.alg.word_word(rest, v).items():
                    cw, rw = self.split_word(w)
                    for k2, d in self.absorb_word(k, cw).items():
                        _add(out, (k2, rw), a * b * c * d)
        return out

    def left_act(self, g, elem: dict) -> dict:
        g = self.B.index(g)
        out = {}
        for (k, rest), a in elem.items():
            for k1, vec in self.left_through(g, k).items():
                for y, cy in vec.items():
                    for w, c in self.alg.word_word((self.alg.pos[y],), rest).items():
                        cw, rw = self.split_word(w)
                        for k2, d in self.absorb_word(k1, cw).items():
                            _add(out, (k2, rw), a * cy * c * d)
        return out


def check_ideal_chain(B: ChevalleyBasis, chain) -> None:
    for j, ej in enumerate(chain):
        if B.kinds[ej] == "h":
            raise InvalidSplit("chain generators must be root vectors")
        for i in range(j):
            if not set(B.bracket(ej, chain[i])) <= set(chain[:j]):
                raise InvalidSplit(
                    f"span of the first {j} chain vectors is not an ideal after adding {B.names[ej]}")


def chain_shifts(B: ChevalleyBasis, chain, eta) -> tuple:
    """c_s = eta(e_s) when e_s is a simple root vector, else 0."""
    R = B.root
    simple = {R.simple_root(i).coords: i for i in range(R.rank)}
    out = []
    for g in chain:
        i = simple.get(B.weights[g])
        out.append(to_scalar(eta.get(i, 0)) if i is not None else ZERO)
    return tuple(out)


def verify_S_relations(B: ChevalleyBasis, chain, eta=None, case: int = 1, **params) -> dict:
    """Residual of one instance of the S_w relations; {} certifies it.

    case 1: params t (0-based), k with k_s = 0 for s < t:
            (e_t - c_t) e^{-(k+1)} = e^{-(k+1)} with k_t lowered (0 if k_t = 0).
    case 2: params t, k, supp (simple indices of supp eta); e_t must lie in the
            nilradical n_eta and k_s = 0 for earlier chain vectors in n_eta.
    case 3: param X, a positive root vector normalizing the chain span:
            X e^{-1} = e^{-1} X.
    """
    chain = [B.index(g) for g in chain]
    eta = eta or {}
    shifts = chain_shifts(B, chain, eta)
    S = ChainModel(B, chain, shifts)
    l = len(chain)
    R = B.root
    if case in (1, 2):
        t, k = params["t"], tuple(params["k"])
        if len(k) != l or not 0 <= t < l:
            raise ValueError("bad t or k")
        if case == 1:
            early = range(t)
        else:
            supp = frozenset(params["supp"])
            in_n = [not R.support(B.weights[g]) <= supp for g in chain]
            if not in_n[t]:
                raise ValueError("e_t is not in the nilradical of supp eta")
            early = [s for s in range(t) if in_n[s]]
        if any(k[s] for s in early):
            raise ValueError("the relation needs k_s = 0 for the earlier chain vectors")
        lhs = S.left_act(chain[t], S.basis(k))
        for key, c in S.basis(k).items():
            _add(lhs, key, -shifts[t] * c)
        rhs = S.basis(k[:t] + (k[t] - 1,) + k[t + 1:]) if k[t] else {}
    elif case == 3:
        X = B.index(params["X"])
        if B.kinds[X] != "e":
            raise ValueError("case 3 needs a positive root vector")
        if not all(set(B.bracket(X, g)) <= set(chain) for g in chain):
            raise ValueError("X does not normalize the chain span")
        k0 = (0,) * l
        lhs = S.left_act(X, S.basis(k0))
        rhs = S.right_mul(S.basis(k0), S.alg.gen(X))
    else:
        raise ValueError("case must be 1, 2 or 3")
    res = dict(lhs)
    for key, c in rhs.items():
        _add(res, key, -c)
    return res
