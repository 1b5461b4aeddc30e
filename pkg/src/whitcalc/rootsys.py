"""Root systems in the simple-root basis, with exact rational inner products.

Conventions:
  * ``cartan[i][j] = 2<a_i, a_j> / <a_j, a_j>``, so the simple reflection is
    ``s_j(x) = x - (sum_i x_i cartan[i][j]) a_j``.
  * the Gram matrix is scaled so the longest roots of every simple component
    have squared length 2 (for BC_n these are the doubled roots 2e_i).
  * positive roots are ordered by height, then by descending coefficient
    vector, so the simple roots come first in their natural order.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import sympy


class NonFiniteType(ValueError):
    pass


class InvalidCartan(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


MAX_RANK = 8
# E8 has 120 positive roots; nothing of rank <= 8 has more.
MAX_POSITIVE_ROOTS = 120


@dataclass(frozen=True)
class Weight:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    @classmethod
    def zero(cls, n: int) -> "Weight":
        return cls((0,) * n)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __add__(self, other):
        _check_len(self, other)
        return Weight(a + b for a, b in zip(self.coords, other))

    def __sub__(self, other):
        _check_len(self, other)
        return Weight(a - b for a, b in zip(self.coords, other))

    def __neg__(self):
        return Weight(-a for a in self.coords)

    def __mul__(self, c):
        c = Fraction(c)
        return Weight(c * a for a in self.coords)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def _check_len(a, b):
    if len(a) != len(b):
        raise DimensionMismatch(f"length {len(a)} vs {len(b)}")


def _frac(x) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def solve(A, B):
    """Exact solution X of A X = B (A square, B a list of columns)."""
    M = sympy.Matrix([[sympy.Rational(a.numerator, a.denominator) for a in row] for row in A])
    rhs = sympy.Matrix([[sympy.Rational(Fraction(b).numerator, Fraction(b).denominator) for b in col]
                        for col in B]).T
    X = M.LUsolve(rhs)
    return [[_frac(X[i, j]) for i in range(X.rows)] for j in range(X.cols)]


@dataclass(frozen=True)
class RootDatum:
    rank: int
    cartan: tuple
    positive_roots: tuple
    form: tuple
    reduced: bool = True
    label: str = ""

    def __repr__(self):
        return f"RootDatum({self.label or self.cartan})"

    # -- basic geometry -------------------------------------------------
    def inner(self, a, b) -> Fraction:
        n = self.rank
        if len(a) != n or len(b) != n:
            raise DimensionMismatch(f"expected {n} coordinates, got {len(a)} and {len(b)}")
        F = self.form
        return sum((a[i] * F[i][j] * b[j] for i in range(n) for j in range(n) if a[i] and b[j]),
                   Fraction(0))

    def norm2(self, a) -> Fraction:
        return self.inner(a, a)

    def pairing(self, x, j: int) -> Fraction:
        """<x, a_j^vee> = 2<x, a_j>/<a_j, a_j>."""
        return sum((Fraction(x[i]) * self.cartan[i][j] for i in range(self.rank) if x[i]), Fraction(0))

    def reflect(self, j: int, x) -> tuple:
        p = self.pairing(x, j)
        out = list(x)
        out[j] = out[j] - p
        return tuple(out)

    def simple_root(self, i: int) -> Weight:
        return Weight(int(j == i) for j in range(self.rank))

    # -- root bookkeeping -----------------------------------------------
    @cached_property
    def roots(self) -> tuple:
        return self.positive_roots + tuple(tuple(-c for c in r) for r in self.positive_roots)

    @cached_property
    def root_set(self) -> frozenset:
        return frozenset(self.roots)

    @cached_property
    def root_index(self) -> dict:
        return {r: k for k, r in enumerate(self.positive_roots)}

    @cached_property
    def indivisible_positive(self) -> tuple:
        out = []
        for r in self.positive_roots:
            if all(c % 2 == 0 for c in r) and tuple(c // 2 for c in r) in self.root_set:
                continue
            out.append(r)
        return tuple(out)

    def is_root(self, x) -> bool:
        return tuple(x) in self.root_set

    @staticmethod
    def is_positive(x) -> bool:
        return all(c >= 0 for c in x) and any(c > 0 for c in x)

    @staticmethod
    def height(x):
        return sum(x)

    @staticmethod
    def support(x) -> frozenset:
        return frozenset(i for i, c in enumerate(x) if c)

    def theta_roots(self, theta) -> tuple:
        """Positive roots in the span of theta (Sigma_Theta^+)."""
        theta = frozenset(theta)
        return tuple(r for r in self.positive_roots if self.support(r) <= theta)

    @cached_property
    def highest_root(self) -> tuple:
        return max(self.positive_roots, key=lambda r: (sum(r), r))

    @cached_property
    def fundamental_weights(self) -> tuple:
        """omega_i in simple-root coordinates: <omega_i, a_j^vee> = delta_ij."""
        n = self.rank
        cols = [[self.form[j][j] / 2 * int(i == j) for j in range(n)] for i in range(n)]
        return tuple(Weight(c) for c in solve([list(r) for r in self.form], cols))

    def project(self, x, theta) -> Weight:
        """Orthogonal projection of x onto the span of the simple roots in theta."""
        theta = sorted(theta)
        out = [Fraction(0)] * self.rank
        if not theta:
            return Weight(out)
        G = [[self.form[i][j] for j in theta] for i in theta]
        rhs = [self.inner(x, self.simple_root(i)) for i in theta]
        (c,) = solve(G, [rhs])
        for i, ci in zip(theta, c):
            out[i] = ci
        return Weight(out)


def inner_product(R: RootDatum, a, b) -> Fraction:
    return R.inner(a, b)


def half_sum(R: RootDatum, subset=None, multiplicities=None) -> Weight:
    """Half the (multiplicity-weighted) sum of the selected positive roots."""
    idx = range(len(R.positive_roots)) if subset is None else subset
    total = [Fraction(0)] * R.rank
    for k in idx:
        m = 1 if multiplicities is None else multiplicities[k]
        for i, c in enumerate(R.positive_roots[k]):
            total[i] += m * c
    return Weight(t / 2 for t in total)


def fundamental_to_simple(R: RootDatum, coords) -> Weight:
    if len(coords) != R.rank:
        raise DimensionMismatch(f"expected {R.rank} coordinates, got {len(coords)}")
    out = Weight.zero(R.rank)
    for c, w in zip(coords, R.fundamental_weights):
        out = out + Fraction(c) * w
    return out


# -- construction ---------------------------------------------------------

_LABEL = re.compile(r"^(BC|A|B|C|D|E|F|G)(\d+)$")


def _label_gram(kind: str, n: int):
    ok = {"A": n >= 1, "B": n >= 2, "C": n >= 2, "D": n >= 4, "E": 6 <= n <= 8,
          "F": n == 4, "G": n == 2, "BC": n >= 1}[kind]
    if not ok or n > MAX_RANK:
        raise InvalidCartan(f"unknown root system {kind}{n}")
    G = [[Fraction(0)] * n for _ in range(n)]

    def link(i, j, v):
        G[i][j] = G[j][i] = Fraction(v)

    if kind in ("A", "B", "BC", "D"):
        for i in range(n):
            G[i][i] = Fraction(2)
        for i in range(n - 1):
            link(i, i + 1, -1)
        if kind in ("B", "BC"):
            G[n - 1][n - 1] = Fraction(1)
        if kind == "D":
            link(n - 2, n - 1, 0)
            link(n - 3, n - 1, -1)
    elif kind == "C":
        for i in range(n):
            G[i][i] = Fraction(1)
        for i in range(n - 1):
            link(i, i + 1, Fraction(-1, 2))
        G[n - 1][n - 1] = Fraction(2)
        link(n - 2, n - 1, -1)
    elif kind == "E":
        for i in range(n):
            G[i][i] = Fraction(2)
        for i, j in [(0, 2), (1, 3)] + [(k, k + 1) for k in range(2, n - 1)]:
            link(i, j, -1)
    elif kind == "F":
        for i, d in enumerate([2, 2, 1, 1]):
            G[i][i] = Fraction(d)
        link(0, 1, -1)
        link(1, 2, -1)
        link(2, 3, Fraction(-1, 2))
    elif kind == "G":
        G[0][0], G[1][1] = Fraction(2, 3), Fraction(2)
        link(0, 1, -1)
    if kind == "BC":
        # the doubled short roots are the longest ones
        G = [[g / 2 for g in row] for row in G]
    return G


def _cartan_from_gram(G):
    n = len(G)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            v = 2 * G[i][j] / G[j][j]
            assert v.denominator == 1
            row.append(int(v))
        out.append(tuple(row))
    return tuple(out)


def _gram_from_cartan(C):
    n = len(C)
    for i in range(n):
        if C[i][i] != 2:
            raise InvalidCartan(f"diagonal entry {i} is {C[i][i]}, expected 2")
        for j in range(n):
            if i != j and (C[i][j] > 0 or (C[i][j] == 0) != (C[j][i] == 0)):
                raise InvalidCartan(f"bad off-diagonal pair at ({i},{j})")
    # d_j = <a_j,a_j>/2 with C[i][j] d_j = C[j][i] d_i
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp, stack = [start], [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j == i or C[i][j] == 0:
                    continue
                dj = Fraction(C[j][i]) * d[i] / C[i][j]
                if d[j] is None:
                    d[j] = dj
                    comp.append(j)
                    stack.append(j)
                elif d[j] != dj:
                    raise NonFiniteType("Cartan matrix is not symmetrizable")
        top = max(d[j] for j in comp)
        for j in comp:
            d[j] = d[j] / top
    return [[Fraction(C[i][j]) * d[j] for j in range(n)] for i in range(n)]


def _positive_definite(G) -> bool:
    M = sympy.Matrix([[sympy.Rational(g.numerator, g.denominator) for g in row] for row in G])
    return all(M[:k, :k].det() > 0 for k in range(1, M.rows + 1))


def _generate_positive(cartan):
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for r in frontier:
            for j in range(n):
                p = sum(r[i] * cartan[i][j] for i in range(n))
                if p == 0:
                    continue
                s = list(r)
                s[j] -= p
                s = tuple(s)
                if min(s) < 0 or s in seen:
                    continue
                seen.add(s)
                new.append(s)
                if len(seen) > MAX_POSITIVE_ROOTS:
                    raise NonFiniteType("root generation exceeded the finite-type bound")
        frontier = new
    return seen


def _root_key(r):
    return (sum(r), tuple(-c for c in r))


@lru_cache(maxsize=None)
def _build(key) -> RootDatum:
    if isinstance(key, str):
        m = _LABEL.match(key.strip().upper())
        if not m:
            raise InvalidCartan(f"unrecognized label {key!r}")
        kind, n = m.group(1), int(m.group(2))
        G = _label_gram(kind, n)
        C = _cartan_from_gram(G)
        label = f"{kind}{n}"
    else:
        C = key
        n = len(C)
        if n == 0 or n > MAX_RANK or any(len(row) != n for row in C):
            raise InvalidCartan("Cartan matrix must be square of size 1..8")
        G = _gram_from_cartan(C)
        kind, label = None, ""
    if not _positive_definite(G):
        raise NonFiniteType("Gram matrix is not positive definite")
    pos = _generate_positive(C)
    reduced = kind != "BC"
    if not reduced:
        Gf = [list(r) for r in G]

        def n2(r):
            return sum(r[i] * Gf[i][j] * r[j] for i in range(n) for j in range(n))

        short = min(n2(r) for r in pos)
        pos |= {tuple(2 * c for c in r) for r in list(pos) if n2(r) == short}
    return RootDatum(
        rank=n,
        cartan=tuple(tuple(row) for row in C),
        positive_roots=tuple(sorted(pos, key=_root_key)),
        form=tuple(tuple(row) for row in G),
        reduced=reduced,
        label=label,
    )


def build_root_system(label_or_cartan) -> RootDatum:
    """Build a root system from a label such as ``"B3"``/``"BC2"`` or an integer Cartan matrix."""
    if isinstance(label_or_cartan, RootDatum):
        return label_or_cartan
    if isinstance(label_or_cartan, str):
        return _build(label_or_cartan.strip().upper())
    try:
        key = tuple(tuple(int(c) for c in row) for row in label_or_cartan)
    except (TypeError, ValueError) as exc:
        raise InvalidCartan(f"malformed Cartan matrix: {exc}") from None
    for row_in, row in zip(label_or_cartan, key):
        if any(Fraction(a) != b for a, b in zip(row_in, row)):
            raise InvalidCartan("Cartan entries must be integers")
    return _build(key)
