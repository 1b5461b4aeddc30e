import pytest
from hypothesis import given, settings, strategies as st

from whitcalc.cells import (NotACosetRep, ProblemInput, cell_survival, enumerate_cells_ordered, survivor_set,
                            survivors)
from whitcalc.rootsys import build_root_system
from whitcalc.weylgrp import bruhat_leq, element, min_coset_reps, weyl_group, word_str

SYSTEMS = ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "BC2"]


def names(ws):
    return [word_str(w.word) for w in ws]


def alive(inp):
    return names(r.w for r in survivors(survivor_set(inp)))


def brute_survivors(R, theta, supp):
    """Cells whose image of the non-Levi positive roots misses supp, and whose Levi image misses it too."""
    m_plus = set(R.theta_roots(theta))
    simple = {R.simple_root(i).coords for i in supp}
    out = []
    for w in weyl_group(R).elements:
        if any(not R.is_positive(w.act(R.simple_root(i).coords)) for i in theta):
            continue
        outer = {w.act(r) for r in R.positive_roots if r not in m_plus}
        inner = {w.act(r) for r in m_plus}
        if not (outer & simple) and not (inner & simple):
            out.append(w)
    return out


def test_ordering_examples():
    A1, A2 = build_root_system("A1"), build_root_system("A2")
    assert names(enumerate_cells_ordered(A1, ())) == ["e", "s1"]
    assert names(enumerate_cells_ordered(A2, ())) == ["e", "s1", "s2", "s1.s2", "s2.s1", "s1.s2.s1"]
    assert names(enumerate_cells_ordered(A2, (0,))) == ["e", "s2", "s1.s2"]


@pytest.mark.parametrize("label", SYSTEMS)
def test_prefixes_are_bruhat_closed(label):
    R = build_root_system(label)
    for theta in [(), (0,), (R.rank - 1,)]:
        cells = enumerate_cells_ordered(R, theta)
        assert set(cells) == set(min_coset_reps(R, theta))
        for i, w in enumerate(cells):
            assert all(not bruhat_leq(v, w) for v in cells[i + 1:])
        assert all(bruhat_leq(v, cells[-1]) for v in cells)


def test_survival_examples():
    A1, A2 = build_root_system("A1"), build_root_system("A2")
    reports = survivor_set(ProblemInput(A1, supp_eta=(0,)))
    assert [r.blocking_roots for r in reports] == [(0,), ()]
    assert [r.survives for r in reports] == [False, True]
    assert alive(ProblemInput(A2, supp_eta=(0,))) == ["s1", "s1.s2", "s1.s2.s1"]
    assert alive(ProblemInput(A2, supp_eta=(0, 1))) == ["s1.s2.s1"]


@pytest.mark.parametrize("label", SYSTEMS)
def test_trivial_character_keeps_every_cell(label):
    R = build_root_system(label)
    for theta in [(), (0,), tuple(range(R.rank))]:
        assert len(alive(ProblemInput(R, theta))) == len(min_coset_reps(R, theta))


@pytest.mark.parametrize("label", SYSTEMS + ["A4", "B4", "C4", "D4", "F4"])
def test_nondegenerate_leaves_only_longest(label):
    R = build_root_system(label)
    assert alive(ProblemInput(R, supp_eta=tuple(range(R.rank)))) == [word_str(weyl_group(R).longest.word)]


def test_non_unitary_kills_everything():
    A2 = build_root_system("A2")
    reports = survivor_set(ProblemInput(A2, supp_eta=(0,), unitary=False))
    assert not survivors(reports)
    assert all(not r.unitary_ok for r in reports)


def test_non_coset_rep_rejected():
    A2 = build_root_system("A2")
    with pytest.raises(NotACosetRep):
        cell_survival(ProblemInput(A2, (0,)), element(A2, "s1"))


def test_table_controls_jacquet_flag():
    A1 = build_root_system("A1")
    e, s = weyl_group(A1).elements
    inp = ProblemInput(A1, wh_table={e: 3, s: 0})
    assert [r.survives for r in survivor_set(inp)] == [True, False]
    # missing entries are not read as zero
    assert survivor_set(ProblemInput(A1, wh_table={e: 3}))[1].jacquet_nonzero


@pytest.mark.parametrize("label", ["A2", "A3", "B3", "G2"])
def test_survivors_match_brute_force(label):
    R = build_root_system(label)
    subsets = [(), (0,), (1,), (0, 1), tuple(range(R.rank))]
    for theta in subsets:
        for supp in subsets:
            assert alive(ProblemInput(R, theta, supp_eta=supp)) == names(
                sorted(brute_survivors(R, theta, supp), key=lambda w: (w.length, w.word)))


@settings(max_examples=80, deadline=None)
@given(label=st.sampled_from(["A3", "B3", "C3", "G2"]), data=st.data())
def test_shrinking_support_never_shrinks_survivors(label, data):
    R = build_root_system(label)
    idx = st.sets(st.integers(0, R.rank - 1))
    theta, supp = data.draw(idx), data.draw(idx)
    smaller = data.draw(st.sets(st.sampled_from(sorted(supp)))) if supp else set()
    big = set(alive(ProblemInput(R, tuple(theta), supp_eta=tuple(supp))))
    small = set(alive(ProblemInput(R, tuple(theta), supp_eta=tuple(smaller))))
    assert big <= small


@settings(max_examples=60, deadline=None)
@given(label=st.sampled_from(SYSTEMS), data=st.data())
def test_report_invariant(label, data):
    R = build_root_system(label)
    idx = st.sets(st.integers(0, R.rank - 1))
    inp = ProblemInput(R, tuple(data.draw(idx)), supp_eta=tuple(data.draw(idx)), unitary=data.draw(st.booleans()))
    for r in survivor_set(inp):
        assert r.survives == (r.unitary_ok and not r.blocking_roots and r.jacquet_nonzero)
