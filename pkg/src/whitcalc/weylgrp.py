"""Weyl group enumeration, coset representatives and Bruhat order.

Elements are integer matrices on simple-root coordinates (stored by columns:
column j is the image of a_j), tagged with their lexicographically minimal
reduced word.  Words are 0-based internally; ``word_str`` renders them
1-based as ``"s1.s2.s1"``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import sympy

from .rootsys import RootDatum

DEFAULT_CAP = 10**6


class GroupTooLarge(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class WeylElement:
    cols: tuple
    word: tuple
    root: RootDatum = field(repr=False, compare=False)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.cols == other.cols

    def __hash__(self):
        return hash(self.cols)

    def __repr__(self):
        return f"WeylElement({word_str(self.word)})"

    def __str__(self):
        return word_str(self.word)

    @property
    def matrix(self) -> tuple:
        n = len(self.cols)
        return tuple(tuple(self.cols[j][i] for j in range(n)) for i in range(n))

    @property
    def length(self) -> int:
        return len(self.word)

    def act(self, x) -> tuple:
        n = len(self.cols)
        out = [0] * n
        for j, xj in enumerate(x):
            if xj:
                col = self.cols[j]
                for i in range(n):
                    out[i] += xj * col[i]
        return tuple(out)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return weyl_group(self.root).lookup(tuple(self.act(c) for c in other.cols))

    def inverse(self) -> "WeylElement":
        return weyl_group(self.root).inverse(self)


def word_str(word) -> str:
    return ".".join(f"s{i + 1}" for i in word) if word else "e"


def parse_word(text: str) -> tuple:
    text = text.strip()
    if text in ("", "e", "1"):
        return ()
    out = []
    for part in text.split("."):
        part = part.strip()
        if not part.startswith("s") or not part[1:].isdigit() or int(part[1:]) < 1:
            raise ValueError(f"bad reduced-word token {part!r}")
        out.append(int(part[1:]) - 1)
    return tuple(out)


def _times_simple(R: RootDatum, cols, i):
    """Columns of w*s_i given the columns of w."""
    ci = cols[i]
    out = []
    for j, cj in enumerate(cols):
        if j == i:
            out.append(tuple(-c for c in ci))
        else:
            a = R.cartan[j][i]
            out.append(cj if a == 0 else tuple(x - a * y for x, y in zip(cj, ci)))
    return tuple(out)


def weyl_order(R: RootDatum) -> int:
    """|W| = prod over simple components of n! * det(C) * prod of highest-root coefficients."""
    n = R.rank
    left, total = set(range(n)), 1
    while left:
        comp, stack = set(), [min(left)]
        while stack:
            i = stack.pop()
            if i in comp:
                continue
            comp.add(i)
            stack.extend(j for j in range(n) if R.cartan[i][j] and j not in comp)
        left -= comp
        idx = sorted(comp)
        det = sympy.Matrix([[R.cartan[i][j] for j in idx] for i in idx]).det()
        top = max((r for r in R.indivisible_positive if R.support(r) <= comp), key=sum)
        total *= math.factorial(len(idx)) * int(det) * math.prod(top[i] for i in idx)
    return total


class WeylGroup:
    def __init__(self, R: RootDatum, cap: int = DEFAULT_CAP):
        self.root = R
        n = R.rank
        if weyl_order(R) > cap:
            raise GroupTooLarge(f"|W| = {weyl_order(R)} exceeds cap {cap}")
        ident = tuple(tuple(int(i == j) for i in range(n)) for j in range(n))
        elems = [WeylElement(ident, (), R)]
        index = {ident: 0}
        level = [0]
        # BFS by length; scanning a level in lex order with generators in
        # increasing order discovers each element through its lex-minimal word.
        while level:
            nxt = []
            for k in level:
                w = elems[k]
                for i in range(n):
                    cols = _times_simple(R, w.cols, i)
                    if cols in index:
                        continue
                    index[cols] = len(elems)
                    nxt.append(len(elems))
                    elems.append(WeylElement(cols, w.word + (i,), R))
                    if len(elems) > cap:
                        raise GroupTooLarge(f"|W| exceeds cap {cap}")
            level = nxt
        self.elements = tuple(elems)
        self._index = index

    def __len__(self):
        return len(self.elements)

    def lookup(self, cols) -> WeylElement:
        return self.elements[self._index[tuple(cols)]]

    def from_word(self, word) -> WeylElement:
        n = self.root.rank
        cols = tuple(tuple(int(i == j) for i in range(n)) for j in range(n))
        for i in word:
            if not 0 <= i < n:
                raise ValueError(f"simple index {i} out of range")
            cols = _times_simple(self.root, cols, i)
        return self.lookup(cols)

    @lru_cache(maxsize=None)
    def inverse(self, w: WeylElement) -> WeylElement:
        return self.from_word(tuple(reversed(w.word)))

    @property
    def identity(self) -> WeylElement:
        return self.elements[0]

    @property
    def longest(self) -> WeylElement:
        return self.elements[-1]


@lru_cache(maxsize=64)
def weyl_group(R: RootDatum, cap: int = DEFAULT_CAP) -> WeylGroup:
    return WeylGroup(R, cap)


def generate_weyl_group(R: RootDatum, cap: int = DEFAULT_CAP) -> list:
    return list(weyl_group(R, cap).elements)


def element(R: RootDatum, word) -> WeylElement:
    if isinstance(word, str):
        word = parse_word(word)
    return weyl_group(R).from_word(tuple(word))


def inversion_count(w: WeylElement) -> int:
    R = w.root
    return sum(1 for r in R.indivisible_positive if not R.is_positive(w.act(r)))


def _in_min_coset(w: WeylElement, theta) -> bool:
    return all(min(w.cols[i]) >= 0 for i in theta)


def min_coset_reps(R: RootDatum, theta) -> list:
    """W(Theta) = {w : w(Theta) positive}, in enumeration order."""
    theta = tuple(theta)
    return [w for w in weyl_group(R).elements if _in_min_coset(w, theta)]


def parabolic_subgroup(R: RootDatum, theta) -> list:
    """Subgroup generated by the simple reflections in theta (closure search)."""
    G = weyl_group(R)
    gens = sorted(set(theta))
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for w in frontier:
            for i in gens:
                u = G.lookup(_times_simple(R, w.cols, i))
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return [w for w in G.elements if w in seen]


def pair_set(R: RootDatum, theta1, theta2) -> list:
    """W(Theta1, Theta2): w in W(Theta1), w^-1 in W(Theta2), w(Sigma_Theta1) misses Sigma_Theta2."""
    t2 = frozenset(theta2)
    sub1 = R.theta_roots(theta1)
    G = weyl_group(R)
    out = []
    for w in min_coset_reps(R, theta1):
        if not _in_min_coset(G.inverse(w), theta2):
            continue
        if any(R.support(w.act(r)) <= t2 for r in sub1):
            continue
        out.append(w)
    return out


def bruhat_leq(u: WeylElement, w: WeylElement) -> bool:
    """u <= w iff u is a subword product of the stored reduced word of w."""
    if u.length > w.length:
        return False
    R = w.root
    reach = {weyl_group(R).identity.cols}
    for i in w.word:
        reach |= {_times_simple(R, c, i) for c in reach}
    return u.cols in reach


def factorize(R: RootDatum, theta, w: WeylElement):
    """Return (u, v) with w = u v, u in W(Theta), v in W_Theta."""
    G = weyl_group(R)
    theta = tuple(theta)
    u, v_word = w, []
    while True:
        # descent: u a_i < 0 for some i in theta, so u s_i is shorter
        i = next((i for i in theta if min(u.cols[i]) < 0), None)
        if i is None:
            break
        u = G.lookup(_times_simple(R, u.cols, i))
        v_word.insert(0, i)
    return u, G.from_word(v_word)


def length_additive(w: WeylElement, w2: WeylElement) -> bool:
    return (w * w2).length == w.length + w2.length
