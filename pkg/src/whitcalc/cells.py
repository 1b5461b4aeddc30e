"""Bruhat cells of the parabolic filtration and their survival test."""
from __future__ import annotations

from dataclasses import dataclass, field

from .rootsys import RootDatum, Weight
from .scalars import I
from .weylgrp import WeylElement, min_coset_reps, weyl_group


class NotACosetRep(ValueError):
    pass


@dataclass
class ProblemInput:
    """Everything the cell and dimension computations need.

    ``eta_values`` maps a simple-root index to the (Gaussian rational) value of
    the character on that root space; the support is read off from it.  If only
    ``supp_eta`` is given, the values default to ``i``.  The representation
    sigma is either finite-dimensional with highest weight ``nu_tilde`` or
    described by ``wh_table`` (WeylElement -> dim of its Whittaker space); with
    neither, sigma is the trivial representation.
    """

    root: RootDatum
    theta: tuple = ()
    eta_values: dict = field(default_factory=dict)
    unitary: bool = True
    lam: Weight | None = None
    nu_tilde: Weight | None = None
    wh_table: dict | None = None
    exponents: tuple = ()
    mu_tilde: Weight | None = None
    genericity_variant: int = 1
    multiplicities: tuple | None = None
    compact_root: RootDatum | None = None
    compact_weight: Weight | None = None
    complex_root: RootDatum | None = None
    restriction: tuple | None = None
    embedding: tuple | None = None
    supp_eta: tuple | None = None

    def __post_init__(self):
        n = self.root.rank
        self.theta = tuple(sorted(set(self.theta)))
        if any(not 0 <= i < n for i in self.theta):
            raise ValueError(f"theta {self.theta} not inside 0..{n - 1}")
        if self.supp_eta is not None and not self.eta_values:
            self.eta_values = {i: I for i in self.supp_eta}
        self.eta_values = {int(i): v for i, v in sorted(self.eta_values.items()) if v}
        if any(not 0 <= i < n for i in self.eta_values):
            raise ValueError("eta value on a non-simple index")
        supp = tuple(sorted(self.eta_values))
        if self.supp_eta is not None and tuple(sorted(self.supp_eta)) != supp:
            raise ValueError("supp_eta disagrees with the nonzero eta values")
        self.supp_eta = supp
        if self.lam is None:
            self.lam = Weight.zero(n)
        for name in ("lam", "nu_tilde", "mu_tilde"):
            v = getattr(self, name)
            if v is not None and len(v) != n:
                raise ValueError(f"{name} has {len(v)} coordinates, expected {n}")
        if self.genericity_variant not in (1, 2):
            raise ValueError("genericity_variant must be 1 or 2")

    @property
    def finite_dimensional(self) -> bool:
        return self.nu_tilde is not None or self.wh_table is None

    @property
    def sigma_weight(self) -> Weight:
        return self.nu_tilde if self.nu_tilde is not None else Weight.zero(self.root.rank)


@dataclass(frozen=True)
class CellReport:
    w: WeylElement
    index: int
    survives: bool
    unitary_ok: bool
    blocking_roots: tuple
    jacquet_nonzero: bool


def enumerate_cells_ordered(R: RootDatum, theta) -> list:
    """W(Theta) sorted by length then lex word: a linear extension of Bruhat order."""
    return sorted(min_coset_reps(R, theta), key=lambda w: (w.length, w.word))


def blocking_roots(inp: ProblemInput, w: WeylElement) -> tuple:
    """Simple roots in supp eta lying in w(Sigma^+ minus Sigma_Theta^+)."""
    R = inp.root
    winv = weyl_group(R).inverse(w)
    theta = frozenset(inp.theta)
    out = []
    for i in inp.supp_eta:
        pre = winv.act(R.simple_root(i))
        if R.is_positive(pre) and not R.support(pre) <= theta:
            out.append(i)
    return tuple(out)


def finite_jacquet_nonzero(inp: ProblemInput, w: WeylElement) -> bool:
    """supp eta misses w(Sigma_Theta^+)."""
    R = inp.root
    hit = {w.act(r) for r in R.theta_roots(inp.theta)}
    return not any(R.simple_root(i).coords in hit for i in inp.supp_eta)


def cell_survival(inp: ProblemInput, w: WeylElement, index: int = -1) -> CellReport:
    if any(min(w.cols[i]) < 0 for i in inp.theta):
        raise NotACosetRep(f"{w} does not keep theta positive")
    if inp.finite_dimensional:
        jac = finite_jacquet_nonzero(inp, w)
    else:
        # an absent entry is not evidence of vanishing
        jac = inp.wh_table.get(w, 1) > 0
    block = blocking_roots(inp, w)
    return CellReport(
        w=w,
        index=index,
        survives=inp.unitary and not block and jac,
        unitary_ok=inp.unitary,
        blocking_roots=block,
        jacquet_nonzero=jac,
    )


def survivor_set(inp: ProblemInput) -> list:
    cells = enumerate_cells_ordered(inp.root, inp.theta)
    return [cell_survival(inp, w, i) for i, w in enumerate(cells)]


def survivors(reports) -> list:
    return [r for r in reports if r.survives]
